//! Central finite-difference stencils of order 2 and 4.

use crate::error::{Error, Result};
use crate::numerics::tensor::{levi_civita, BiTensor3, Point3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FDConfig {
    /// Accuracy order of the stencil, 2 or 4.
    pub order: u8,
    /// Step relative to `|x|` (or absolute when `x == 0`).
    pub step_scale: f64,
    /// Region in which the function may be sampled.
    pub domain: Option<(f64, f64)>,
}

impl Default for FDConfig {
    fn default() -> Self {
        Self {
            order: 4,
            step_scale: 1e-3,
            domain: None,
        }
    }
}

impl FDConfig {
    pub fn new(order: u8, step_scale: f64) -> Result<Self> {
        let cfg = Self {
            order,
            step_scale,
            domain: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn within(mut self, lo: f64, hi: f64) -> Self {
        self.domain = Some((lo, hi));
        self
    }

    fn validate(&self) -> Result<()> {
        if self.order != 2 && self.order != 4 {
            return Err(Error::Domain(format!(
                "stencil order must be 2 or 4, got {}",
                self.order
            )));
        }
        if !(self.step_scale > 0.0 && self.step_scale < 0.1) {
            return Err(Error::Domain(format!(
                "step_scale must lie in (0, 0.1), got {}",
                self.step_scale
            )));
        }
        Ok(())
    }

    fn step(&self, x: f64) -> f64 {
        let scale = if x == 0.0 { 1.0 } else { x.abs() };
        self.step_scale * scale
    }
}

/// Offsets (in units of h) and weights for the first and second derivative.
fn stencil(order: u8, derivative: u8) -> &'static [(f64, f64)] {
    match (order, derivative) {
        (2, 1) => &[(-1.0, -0.5), (1.0, 0.5)],
        (2, 2) => &[(-1.0, 1.0), (0.0, -2.0), (1.0, 1.0)],
        (4, 1) => &[
            (-2.0, 1.0 / 12.0),
            (-1.0, -2.0 / 3.0),
            (1.0, 2.0 / 3.0),
            (2.0, -1.0 / 12.0),
        ],
        (4, 2) => &[
            (-2.0, -1.0 / 12.0),
            (-1.0, 4.0 / 3.0),
            (0.0, -5.0 / 2.0),
            (1.0, 4.0 / 3.0),
            (2.0, -1.0 / 12.0),
        ],
        _ => unreachable!("validated stencil order/derivative"),
    }
}

fn reach(order: u8) -> f64 {
    if order == 4 {
        2.0
    } else {
        1.0
    }
}

/// First or second derivative of `f` at `x` with an explicit step `h`.
pub fn fd_derivative_with_step<F>(f: F, x: f64, derivative: u8, order: u8, h: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if derivative != 1 && derivative != 2 {
        return Err(Error::Domain(format!(
            "derivative order must be 1 or 2, got {derivative}"
        )));
    }
    if order != 2 && order != 4 {
        return Err(Error::Domain(format!("stencil order must be 2 or 4, got {order}")));
    }
    let sum: f64 = stencil(order, derivative)
        .iter()
        .map(|&(off, w)| w * f(x + off * h))
        .sum();
    Ok(sum / h.powi(derivative as i32))
}

/// First or second derivative of `f` at `x` with the configured stencil.
pub fn fd_derivative<F>(f: F, x: f64, derivative: u8, cfg: &FDConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    let h = cfg.step(x);
    if let Some((lo, hi)) = cfg.domain {
        let r = reach(cfg.order) * h;
        if x - r < lo || x + r > hi {
            return Err(Error::Stencil {
                reach: r,
                detail: format!("x = {x} with valid region [{lo}, {hi}]"),
            });
        }
    }
    fd_derivative_with_step(f, x, derivative, cfg.order, h)
}

/// Partial derivative of a tensor field along axis `k`, step `h`.
pub fn fd_partial<F>(field: &F, p: &Point3, k: usize, order: u8, h: f64) -> Result<BiTensor3>
where
    F: Fn(&Point3) -> Result<BiTensor3>,
{
    let mut acc = BiTensor3::zeros();
    for &(off, w) in stencil(order, 1) {
        let mut q = *p;
        q[k] += off * h;
        acc = acc + field(&q)? * w;
    }
    Ok(acc * (1.0 / h))
}

/// Curl acting on the row (field) index: `(∇×F)_ij = ε_ikl ∂_k F_lj`.
pub fn fd_curl<F>(field: &F, p: &Point3, order: u8, h: f64) -> Result<BiTensor3>
where
    F: Fn(&Point3) -> Result<BiTensor3>,
{
    if order != 2 && order != 4 {
        return Err(Error::Domain(format!("stencil order must be 2 or 4, got {order}")));
    }
    let partials = [
        fd_partial(field, p, 0, order, h)?,
        fd_partial(field, p, 1, order, h)?,
        fd_partial(field, p, 2, order, h)?,
    ];
    let mut out = BiTensor3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let mut s = 0.0;
            for k in 0..3 {
                for l in 0..3 {
                    let e = levi_civita(i, k, l);
                    if e != 0.0 {
                        s += e * partials[k].get(l, j);
                    }
                }
            }
            out.set(i, j, s);
        }
    }
    Ok(out)
}
