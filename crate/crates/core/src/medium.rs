//! Maxwell's fish-eye medium, the Möbius separation of its hypersphere
//! geometry, and the inversion `r → r/r²` that maps points to their mirror images.
//!
//! Everything except [`MediumParams`] and [`refractive_index`] works in reduced
//! units: lengths in units of the mirror radius `a`, index constant `n₁ = 1`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numerics::{BiTensor3, Point3, Real};

/// Mirror radius `a` and index constant `n₁` of the profile `n = 2n₁/(1 + r²/a²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediumParams {
    a: f64,
    n1: f64,
}

impl MediumParams {
    pub fn new(a: f64, n1: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(domain(format!("mirror radius a must be positive and finite, got {a}")));
        }
        if !(n1 > 0.0 && n1.is_finite()) {
            return Err(domain(format!(
                "index constant n1 must be positive and finite, got {n1}"
            )));
        }
        Ok(Self { a, n1 })
    }

    /// `a = 1`, `n₁ = 1`.
    pub fn reduced() -> Self {
        Self { a: 1.0, n1: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n1(&self) -> f64 {
        self.n1
    }

    /// Converts a physical radius to `r/a`, rejecting `r < 0` and `r >= a`.
    pub fn reduce_interior(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(domain(format!("radius must be non-negative, got {r}")));
        }
        let x = r / self.a;
        if !(x < 1.0) {
            return Err(domain(format!(
                "radius must lie inside the mirror (r < a = {}), got {r}",
                self.a
            )));
        }
        Ok(x)
    }
}

impl Default for MediumParams {
    fn default() -> Self {
        Self::reduced()
    }
}

/// Fish-eye index in reduced units as a function of `r²`.
#[inline]
pub(crate) fn index_from_r2<T: Real>(r2: T) -> T {
    (r2 + 1.0).recip() * 2.0
}

/// `n(r) = 2n₁/(1 + r²/a²)`; the medium is impedance matched, so this is also ε and μ.
pub fn refractive_index(r: f64, params: &MediumParams) -> Result<f64> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(domain(format!("radius must be non-negative and finite, got {r}")));
    }
    let x = r / params.a;
    Ok(2.0 * params.n1 / (1.0 + x * x))
}

pub(crate) fn dot<T: Real>(a: &[T; 3], b: &[T; 3]) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Square of the Möbius separation, `|r − r0|² / (1 + 2 r·r0 + r² r0²)`.
///
/// Generic so the Green-function code can differentiate through it.
pub(crate) fn mobius_separation_sq<T: Real>(r: &[T; 3], r0: &[T; 3]) -> T {
    let d = [r[0] - r0[0], r[1] - r0[1], r[2] - r0[2]];
    let den = dot(r, r0) * 2.0 + dot(r, r) * dot(r0, r0) + 1.0;
    dot(&d, &d) / den
}

fn as_array(p: &Point3) -> [f64; 3] {
    [p[0], p[1], p[2]]
}

/// Möbius separation `r′` between two points: the tangent of their distance on the hypersphere.
///
/// Symmetric in its arguments, bit for bit.
pub fn mobius_separation(r: &Point3, r0: &Point3) -> Result<f64> {
    let (a, b) = (as_array(r), as_array(r0));
    let den = 1.0 + 2.0 * dot(&a, &b) + dot(&a, &a) * dot(&b, &b);
    if !(den > 0.0) {
        return Err(domain(format!(
            "Möbius separation radicand must be positive, got {den} for r = {a:?}, r0 = {b:?}"
        )));
    }
    Ok(mobius_separation_sq(&a, &b).sqrt())
}

/// Separation between an on-axis point at radius `r` and its image at `1/r`: `(1/r − r)/2`.
pub fn on_axis_separation(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(domain(format!("on-axis separation needs 0 < r < 1, got {r}")));
    }
    Ok(0.5 * (1.0 / r - r))
}

/// Mirror image `r/r²` of a point.
pub fn image_point(r: &Point3) -> Result<Point3> {
    let r2 = r.norm_squared();
    if !(r2 > 0.0) {
        return Err(domain("image point is undefined at r = 0"));
    }
    Ok(r / r2)
}

/// Jacobian of the inversion, `P = 1/r² − 2 r⊗r/r⁴`.
pub fn inversion_jacobian(r: &Point3) -> Result<BiTensor3> {
    let r2 = r.norm_squared();
    if !(r2 > 0.0) {
        return Err(domain("inversion Jacobian is undefined at r = 0"));
    }
    let r4 = r2 * r2;
    Ok(BiTensor3::from_fn(|i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta / r2 - 2.0 * r[i] * r[j] / r4
    }))
}
