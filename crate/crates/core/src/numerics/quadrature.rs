//! Adaptive panel quadrature for integrands that decay exponentially on `[0, ∞)`.
//!
//! The half-line is truncated at `truncation_constant / decay_rate`; past that
//! point an integrand bounded by `exp(-decay_rate·κ)` has lost about
//! `exp(-truncation_constant)` of its scale. The truncated interval is covered by
//! Gauss–Legendre panels. Each panel is compared against the sum of its two
//! halves, and the panel with the largest discrepancy is bisected until the
//! total discrepancy meets the tolerance. Panel order and accumulation order are
//! fixed, so results are bit-reproducible.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const GAUSS_POINTS: usize = 15;
const INITIAL_PANELS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Truncation point in units of the inverse decay rate.
    pub truncation_constant: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 0.0,
            max_subdivisions: 4000,
            truncation_constant: 42.0,
        }
    }
}

impl QuadratureConfig {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) {
            return Err(Error::Domain(
                "quadrature tolerances must satisfy rel_tol > 0, abs_tol >= 0".into(),
            ));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Domain("max_subdivisions must be at least 1".into()));
        }
        if !(self.truncation_constant > 0.0) {
            return Err(Error::Domain("truncation_constant must be positive".into()));
        }
        Ok(())
    }
}

/// Integral value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<const N: usize> {
    pub value: [f64; N],
    pub error: f64,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton iteration on `P_n`).
fn gauss_legendre() -> &'static ([f64; GAUSS_POINTS], [f64; GAUSS_POINTS]) {
    static RULE: OnceLock<([f64; GAUSS_POINTS], [f64; GAUSS_POINTS])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_POINTS;
        let mut x = [0.0; GAUSS_POINTS];
        let mut w = [0.0; GAUSS_POINTS];
        for i in 0..n {
            let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, t);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
                let step = p1 / dp;
                t -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
        (x, w)
    })
}

fn panel<const N: usize, F>(f: &mut F, a: f64, b: f64) -> Result<[f64; N]>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    let (x, w) = gauss_legendre();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = [0.0; N];
    for (xi, wi) in x.iter().zip(w) {
        let y = f(mid + half * xi)?;
        for (s, v) in acc.iter_mut().zip(y) {
            *s += wi * v;
        }
    }
    Ok(acc.map(|s| s * half))
}

fn max_abs<const N: usize>(v: &[f64; N]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

struct Leaf<const N: usize> {
    a: f64,
    b: f64,
    left: [f64; N],
    right: [f64; N],
    error: f64,
}

impl<const N: usize> Leaf<N> {
    fn build<F>(f: &mut F, a: f64, b: f64, whole: [f64; N]) -> Result<Self>
    where
        F: FnMut(f64) -> Result<[f64; N]>,
    {
        let mid = 0.5 * (a + b);
        let left = panel(f, a, mid)?;
        let right = panel(f, mid, b)?;
        let mut diff = [0.0; N];
        for k in 0..N {
            diff[k] = whole[k] - (left[k] + right[k]);
        }
        // rounding floor so that the estimate never claims more than the arithmetic delivers
        let floor = 64.0 * f64::EPSILON * (max_abs(&left) + max_abs(&right));
        Ok(Self {
            a,
            b,
            left,
            right,
            error: max_abs(&diff).max(floor),
        })
    }
}

/// Adaptive integration of a vector-valued integrand over `[a, b]`.
///
/// The convergence test uses the largest component: the summed error estimate
/// must not exceed `max(abs_tol, rel_tol·max_k |I_k|)`.
pub fn integrate_interval<const N: usize, F>(mut f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Estimate<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Domain(format!(
            "integration interval [{a}, {b}] must be finite and non-empty"
        )));
    }
    let width = (b - a) / INITIAL_PANELS as f64;
    let mut leaves = Vec::with_capacity(64);
    for i in 0..INITIAL_PANELS {
        let lo = a + width * i as f64;
        let hi = if i + 1 == INITIAL_PANELS { b } else { lo + width };
        let whole = panel(&mut f, lo, hi)?;
        leaves.push(Leaf::build(&mut f, lo, hi, whole)?);
    }

    let mut subdivisions = 0;
    loop {
        let mut total = [0.0; N];
        let mut error = 0.0;
        let mut worst = 0;
        for (i, leaf) in leaves.iter().enumerate() {
            for k in 0..N {
                total[k] += leaf.left[k] + leaf.right[k];
            }
            error += leaf.error;
            if leaf.error > leaves[worst].error {
                worst = i;
            }
        }
        if error <= cfg.abs_tol.max(cfg.rel_tol * max_abs(&total)) {
            return Ok(Estimate { value: total, error });
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(Error::Convergence {
                value: total[0],
                error,
                subdivisions,
            });
        }
        let leaf = leaves.swap_remove(worst);
        let mid = 0.5 * (leaf.a + leaf.b);
        let lower = Leaf::build(&mut f, leaf.a, mid, leaf.left)?;
        let upper = Leaf::build(&mut f, mid, leaf.b, leaf.right)?;
        leaves.push(lower);
        leaves.push(upper);
        // keep the accumulation order independent of the bisection history
        leaves.sort_by(|x, y| x.a.total_cmp(&y.a));
        subdivisions += 1;
    }
}

/// Integrates a vector-valued integrand over `[0, ∞)`.
///
/// The integrand must be bounded by `C·exp(-decay_rate·κ)`. The returned error
/// includes a tail estimate `max_k |f_k(κ_max)| / decay_rate`.
pub fn integrate_semi_infinite_vec<const N: usize, F>(
    mut f: F,
    decay_rate: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    if !(decay_rate > 0.0 && decay_rate.is_finite()) {
        return Err(Error::Domain(format!(
            "decay rate must be positive and finite, got {decay_rate}"
        )));
    }
    let kappa_max = cfg.truncation_constant / decay_rate;
    let tail = max_abs(&f(kappa_max)?) / decay_rate;
    let mut est = integrate_interval(f, 0.0, kappa_max, cfg)?;
    est.error += tail;
    Ok(est)
}

/// Scalar form of [`integrate_semi_infinite_vec`]; returns `(value, error_estimate)`.
pub fn integrate_semi_infinite<F>(f: F, decay_rate: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let est = integrate_semi_infinite_vec(|x| Ok([f(x)]), decay_rate, cfg)?;
    Ok((est.value[0], est.error))
}
