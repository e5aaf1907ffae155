//! Electromagnetic Green bi-tensor of the fish eye at imaginary wavenumber iκ.
//!
//! The free (mirrorless) Green function is
//!
//! ```text
//! G0_ij = −ε_ikl ε_jmp ∂_k ∂0_m [ n(r′) ∂_l ∂0_p D(r′) ] / (n(r) n(r0) κ²)
//! ```
//!
//! with `∂` acting on the field point, `∂0` on the source point, and
//! `n(r′) = 2/(1 + r′²)` evaluated at the Möbius separation. The left curl acts
//! on rows (field index) and the right curl on columns (source index).
//! Derivatives are exact: the scalar composite `D(r′(r, r0))` is evaluated on
//! fourth-order nested dual numbers, one perturbation direction per index.
//!
//! The perfect mirror at `|r| = 1` is represented by an image source: the
//! reflected wave is `−P(r)·G0(r/r², r0)` with `P` the inversion Jacobian.
//! The delta-function part of the full Green function is never represented;
//! field and source points closer than an exclusion radius are rejected.

use crate::error::{domain, Error, Result};
use crate::medium::{
    image_point, index_from_r2, inversion_jacobian, mobius_separation, mobius_separation_sq, on_axis_separation,
};
use crate::numerics::dual::hyper;
use crate::numerics::{fd_curl, levi_civita, BiTensor3, Dual, Dual4, Point3, Real};
use crate::scalar_green::{d2d_dr2, dd_dr, scalar_d_generic, ScalarGreenPoint};

/// Default separation below which field and source points count as coincident.
pub const DEFAULT_EXCLUSION_RADIUS: f64 = 1e-6;

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(domain(format!("kappa must be positive and finite, got {kappa}")));
    }
    Ok(())
}

fn check_finite(p: &Point3, name: &str) -> Result<()> {
    if !p.iter().all(|x| x.is_finite()) {
        return Err(domain(format!("{name} must be finite, got {p:?}")));
    }
    Ok(())
}

fn seed(x: f64, a: f64, b: f64, c: f64, d: f64) -> Dual4 {
    Dual::new(
        Dual::new(hyper(x, a, b), hyper(d, 0.0, 0.0)),
        Dual::constant(hyper(c, 0.0, 0.0)),
    )
}

fn unit(i: usize, k: usize) -> f64 {
    if i == k {
        1.0
    } else {
        0.0
    }
}

/// `∂_k ∂0_m [ n(r′) ∂_l ∂0_p D(r′) ]`.
fn curl_kernel_term(r: &Point3, r0: &Point3, kappa: f64, k: usize, l: usize, m: usize, p: usize) -> f64 {
    let x: [Dual4; 3] = std::array::from_fn(|i| seed(r[i], unit(i, k), 0.0, unit(i, l), 0.0));
    let x0: [Dual4; 3] = std::array::from_fn(|i| seed(r0[i], 0.0, unit(i, m), 0.0, unit(i, p)));
    let s2 = mobius_separation_sq(&x, &x0);
    let d = scalar_d_generic(s2.sqrt(), kappa);
    // inner pair (l, p) lives on the two outer dual levels
    let inner = d.du.du;
    let n = index_from_r2(s2.re.re);
    (n * inner).du.du
}

fn free_unchecked(r: &Point3, r0: &Point3, kappa: f64) -> BiTensor3 {
    let mut t = BiTensor3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let mut sum = 0.0;
            for k in 0..3 {
                for l in 0..3 {
                    let e1 = levi_civita(i, k, l);
                    if e1 == 0.0 {
                        continue;
                    }
                    for m in 0..3 {
                        for p in 0..3 {
                            let e2 = levi_civita(j, m, p);
                            if e2 != 0.0 {
                                sum += e1 * e2 * curl_kernel_term(r, r0, kappa, k, l, m, p);
                            }
                        }
                    }
                }
            }
            t.set(i, j, sum);
        }
    }
    let scale = -1.0 / (index_from_r2(r.norm_squared()) * index_from_r2(r0.norm_squared()) * kappa * kappa);
    t * scale
}

/// Free fish-eye Green function with an explicit exclusion radius.
pub fn green_free_excluding(r: &Point3, r0: &Point3, kappa: f64, exclusion_radius: f64) -> Result<BiTensor3> {
    check_kappa(kappa)?;
    check_finite(r, "field point")?;
    check_finite(r0, "source point")?;
    let separation = (r - r0).norm();
    if separation < exclusion_radius {
        return Err(Error::Coincidence {
            separation,
            radius: exclusion_radius,
        });
    }
    // rejects the antipodal configuration where the Möbius radicand vanishes
    mobius_separation(r, r0)?;
    Ok(free_unchecked(r, r0, kappa))
}

/// Green function of the fish eye extended to infinity (no mirror).
pub fn green_free(r: &Point3, r0: &Point3, kappa: f64) -> Result<BiTensor3> {
    green_free_excluding(r, r0, kappa, DEFAULT_EXCLUSION_RADIUS)
}

/// `(G(r, r0) + G(r0, r)ᵀ)/2` for any Green-function evaluator.
pub fn symmetrized<F>(green: F, r: &Point3, r0: &Point3, kappa: f64) -> Result<BiTensor3>
where
    F: Fn(&Point3, &Point3, f64) -> Result<BiTensor3>,
{
    let forward = green(r, r0, kappa)?;
    let backward = green(r0, r, kappa)?;
    Ok((forward + backward.transpose()) * 0.5)
}

fn reflected_unchecked(r: &Point3, r0: &Point3, kappa: f64) -> Result<BiTensor3> {
    let p = inversion_jacobian(r)?;
    let g = green_free(&image_point(r)?, r0, kappa)?;
    Ok(-(p * g))
}

/// Reflected wave `−P(r)·G0(r/r², r0)` for a field point strictly inside the mirror.
///
/// Finite at `r = r0`, where it supplies the regularized vacuum correlations.
pub fn green_reflected(r: &Point3, r0: &Point3, kappa: f64) -> Result<BiTensor3> {
    check_kappa(kappa)?;
    let r_norm = r.norm();
    if !(r_norm > 0.0 && r_norm < 1.0) {
        return Err(domain(format!(
            "reflected Green function needs 0 < |r| < 1, got |r| = {r_norm}"
        )));
    }
    check_finite(r0, "source point")?;
    reflected_unchecked(r, r0, kappa)
}

/// Green function inside the mirror, `G0(r, r0) − P(r)·G0(r/r², r0)`.
///
/// Points on the mirror itself (`|r| = 1`) are accepted so that the boundary
/// condition can be checked there, with a few ulps of slack for normalized
/// vectors.
pub fn green_total(r: &Point3, r0: &Point3, kappa: f64) -> Result<BiTensor3> {
    check_kappa(kappa)?;
    let r_norm = r.norm();
    if !(r_norm > 0.0 && r_norm <= 1.0 + 4.0 * f64::EPSILON) {
        return Err(domain(format!(
            "total Green function needs 0 < |r| <= 1, got |r| = {r_norm}"
        )));
    }
    Ok(green_free(r, r0, kappa)? + reflected_unchecked(r, r0, kappa)?)
}

/// Which part of the Green function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenPart {
    Free,
    Reflected,
    Total,
}

impl GreenPart {
    pub fn evaluate(self, r: &Point3, r0: &Point3, kappa: f64) -> Result<BiTensor3> {
        match self {
            GreenPart::Free => green_free(r, r0, kappa),
            GreenPart::Reflected => green_reflected(r, r0, kappa),
            GreenPart::Total => green_total(r, r0, kappa),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GreenPart::Free => "free",
            GreenPart::Reflected => "reflected",
            GreenPart::Total => "total",
        }
    }
}

/// On-axis coincidence form of the reflected wave:
/// `−P G0(r⁻¹) = prefactor · diag(d1, d2, d2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectedDiagonal {
    pub d1: f64,
    pub d2: f64,
    pub prefactor: f64,
}

impl ReflectedDiagonal {
    pub fn tensor(&self) -> BiTensor3 {
        BiTensor3::diagonal(self.d1, self.d2, self.d2) * self.prefactor
    }

    /// κ²-weighted radial and transverse entries (the κ⁻² in the prefactor cancels).
    pub fn kappa_weighted(&self, kappa: f64) -> (f64, f64) {
        let w = kappa * kappa * self.prefactor;
        (w * self.d1, w * self.d2)
    }
}

/// Reflected wave at `r = r0 = (r, 0, 0)` from the scalar derivatives:
/// `d1 = 2 D′`, `d2 = −D′ − r′ D″`, prefactor `(1 + r²)²/(16 κ² r⁴ r′)`,
/// with `r′ = (1/r − r)/2`.
pub fn reflected_diagonal_on_axis(r: f64, kappa: f64) -> Result<ReflectedDiagonal> {
    check_kappa(kappa)?;
    let (s, p) = on_axis_point(r, kappa)?;
    let d1 = 2.0 * dd_dr(&p);
    let d2 = -dd_dr(&p) - s * d2d_dr2(&p);
    let q = 1.0 + r * r;
    Ok(ReflectedDiagonal {
        d1,
        d2,
        prefactor: q * q / (16.0 * kappa * kappa * r.powi(4) * s),
    })
}

fn on_axis_point(r: f64, kappa: f64) -> Result<(f64, ScalarGreenPoint)> {
    let s = on_axis_separation(r)?;
    Ok((s, ScalarGreenPoint::new(s, kappa)?))
}

const MIXED_STENCIL: [(f64, f64); 4] = [
    (-2.0, 1.0 / 12.0),
    (-1.0, -2.0 / 3.0),
    (1.0, 2.0 / 3.0),
    (2.0, -1.0 / 12.0),
];

/// Magnetic Green function `−∇×G×∇0← / (n(r) n(r0) κ²)` by 4th-order finite
/// differences of `green` in both arguments, with step `h`.
///
/// For an impedance-matched medium this reproduces `G` itself away from the
/// source, up to stencil error `O(h⁴)`.
pub fn magnetic_green_oracle<F>(green: F, r: &Point3, r0: &Point3, kappa: f64, h: f64) -> Result<BiTensor3>
where
    F: Fn(&Point3, &Point3, f64) -> Result<BiTensor3>,
{
    check_kappa(kappa)?;
    if !(h > 0.0) {
        return Err(domain(format!("finite-difference step must be positive, got {h}")));
    }
    let separation = (r - r0).norm();
    let reach = 2.0 * h * 2.0_f64.sqrt();
    if reach >= separation {
        return Err(Error::Stencil {
            reach,
            detail: format!("distance to the source is {separation:e}"),
        });
    }
    // mixed[k][m] = ∂_k ∂0_m G
    let mut mixed = [[BiTensor3::zeros(); 3]; 3];
    for (k, row) in mixed.iter_mut().enumerate() {
        for (m, cell) in row.iter_mut().enumerate() {
            let mut acc = BiTensor3::zeros();
            for &(a, wa) in &MIXED_STENCIL {
                let mut x = *r;
                x[k] += a * h;
                for &(b, wb) in &MIXED_STENCIL {
                    let mut x0 = *r0;
                    x0[m] += b * h;
                    acc = acc + green(&x, &x0, kappa)? * (wa * wb);
                }
            }
            *cell = acc * (1.0 / (h * h));
        }
    }
    let mut out = BiTensor3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let mut sum = 0.0;
            for k in 0..3 {
                for l in 0..3 {
                    let e1 = levi_civita(i, k, l);
                    if e1 == 0.0 {
                        continue;
                    }
                    for m in 0..3 {
                        for p in 0..3 {
                            let e2 = levi_civita(j, m, p);
                            if e2 != 0.0 {
                                sum += e1 * e2 * mixed[k][m].get(l, p);
                            }
                        }
                    }
                }
            }
            out.set(i, j, sum);
        }
    }
    let scale = -1.0 / (index_from_r2(r.norm_squared()) * index_from_r2(r0.norm_squared()) * kappa * kappa);
    Ok(out * scale)
}

/// Relative residual of `∇×(1/n)∇×G + nκ²G` at a field point away from the
/// source, with nested 4th-order finite-difference curls of step `h`.
pub fn wave_equation_residual<F>(green: F, r: &Point3, r0: &Point3, kappa: f64, h: f64) -> Result<f64>
where
    F: Fn(&Point3, &Point3, f64) -> Result<BiTensor3>,
{
    check_kappa(kappa)?;
    let separation = (r - r0).norm();
    if 4.0 * h >= separation {
        return Err(Error::Stencil {
            reach: 4.0 * h,
            detail: format!("distance to the source is {separation:e}"),
        });
    }
    let field = |x: &Point3| green(x, r0, kappa);
    let inner =
        |x: &Point3| -> Result<BiTensor3> { Ok(fd_curl(&field, x, 4, h)? * (1.0 / index_from_r2(x.norm_squared()))) };
    let outer = fd_curl(&inner, r, 4, h)?;
    let mass = green(r, r0, kappa)? * (index_from_r2(r.norm_squared()) * kappa * kappa);
    Ok((outer + mass).max_abs() / mass.max_abs())
}

/// Largest tangential (row-projected) entry relative to the largest entry.
pub fn tangential_fraction(g: &BiTensor3, r: &Point3) -> f64 {
    let u = r.normalize();
    let projector = BiTensor3::from_fn(|i, j| unit(i, j) - u[i] * u[j]);
    (projector * *g).max_abs() / g.max_abs()
}
