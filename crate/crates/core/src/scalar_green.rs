//! Green function of the conformally coupled scalar field on the hypersphere,
//!
//! ```text
//! D(r′, κ) = (r′ + 1/r′) · sinh(2κθ) / (8π sinh πκ),   θ = arccot r′ ∈ (0, π/2),
//! ```
//!
//! together with its r′-derivatives and its integral over imaginary wavenumbers.
//! Every tensor quantity of the fish eye is built from this function.
//!
//! The sinh ratio is evaluated as `e^{-2κφ}(1 − e^{-4κθ})/(1 − e^{-2πκ})` with
//! `φ = arctan r′ = π/2 − θ`; this neither overflows for large κ nor loses the
//! decay rate `2φ` to cancellation when r′ is small.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::numerics::{integrate_semi_infinite, QuadratureConfig, Real};

/// Evaluation point `(r′, κ)` of the scalar Green function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarGreenPoint {
    r_prime: f64,
    kappa: f64,
}

impl ScalarGreenPoint {
    pub fn new(r_prime: f64, kappa: f64) -> Result<Self> {
        check_separation(r_prime)?;
        if !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(domain(format!("kappa must be non-negative and finite, got {kappa}")));
        }
        Ok(Self { r_prime, kappa })
    }

    pub fn r_prime(&self) -> f64 {
        self.r_prime
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Geodesic angle θ = arccot r′ on the hypersphere.
    pub fn theta(&self) -> f64 {
        PI / 2.0 - self.r_prime.atan()
    }
}

fn check_separation(r_prime: f64) -> Result<()> {
    if !(r_prime > 0.0 && r_prime.is_finite()) {
        return Err(domain(format!(
            "separation r' must be positive and finite, got {r_prime}"
        )));
    }
    Ok(())
}

/// Exponential decay rate in κ of D and its derivatives: `π − 2 arccot r′ = 2 arctan r′`.
pub fn decay_rate(r_prime: f64) -> f64 {
    2.0 * r_prime.atan()
}

/// `sinh(2κθ)/sinh(πκ)` written in terms of `φ = π/2 − θ`.
fn sinh_ratio<T: Real>(phi: T, kappa: f64) -> T {
    if kappa == 0.0 {
        return (-phi + PI / 2.0) * (2.0 / PI);
    }
    let theta = -phi + PI / 2.0;
    let num = -(theta * (-4.0 * kappa)).exp_m1();
    let den = -(-2.0 * PI * kappa).exp_m1();
    (phi * (-2.0 * kappa)).exp() * num / den
}

/// `κ cosh(2κθ)/sinh(πκ)`, with the κ → 0 limit `1/π`.
fn cosh_ratio_scaled(phi: f64, kappa: f64) -> f64 {
    if kappa == 0.0 {
        return 1.0 / PI;
    }
    let theta = PI / 2.0 - phi;
    let num = 1.0 + (-4.0 * kappa * theta).exp();
    let den = -(-2.0 * PI * kappa).exp_m1();
    kappa * (-2.0 * kappa * phi).exp() * num / den
}

/// D as a function of a (possibly dual-valued) separation, κ fixed.
pub(crate) fn scalar_d_generic<T: Real>(r_prime: T, kappa: f64) -> T {
    let phi = r_prime.atan();
    (r_prime + r_prime.recip()) * sinh_ratio(phi, kappa) / (8.0 * PI)
}

/// `D(r′, κ)`.
pub fn scalar_d(p: &ScalarGreenPoint) -> f64 {
    scalar_d_generic(p.r_prime, p.kappa)
}

struct Pieces {
    a: f64,
    a1: f64,
    a2: f64,
    r: f64,
    r_t: f64,
    r_tt: f64,
    t1: f64,
    t2: f64,
}

// D = A(r′)·R(θ(r′)) with A = r′ + 1/r′ and R = sinh(2κθ)/(8π sinh πκ)
fn pieces(p: &ScalarGreenPoint) -> Pieces {
    let s = p.r_prime;
    let k = p.kappa;
    let phi = s.atan();
    let r = sinh_ratio(phi, k) / (8.0 * PI);
    let q = 1.0 + s * s;
    Pieces {
        a: s + 1.0 / s,
        a1: 1.0 - 1.0 / (s * s),
        a2: 2.0 / (s * s * s),
        r,
        r_t: 2.0 * cosh_ratio_scaled(phi, k) / (8.0 * PI),
        r_tt: 4.0 * k * k * r,
        t1: -1.0 / q,
        t2: 2.0 * s / (q * q),
    }
}

/// `∂D/∂r′` in closed form.
pub fn dd_dr(p: &ScalarGreenPoint) -> f64 {
    let c = pieces(p);
    c.a1 * c.r + c.a * c.r_t * c.t1
}

/// `∂²D/∂r′²` in closed form.
pub fn d2d_dr2(p: &ScalarGreenPoint) -> f64 {
    let c = pieces(p);
    c.a2 * c.r + 2.0 * c.a1 * c.r_t * c.t1 + c.a * (c.r_tt * c.t1 * c.t1 + c.r_t * c.t2)
}

/// `∫₀^∞ D dκ = (1 + r′²)/(16π r′²)`.
pub fn integral_d_closed(r_prime: f64) -> Result<f64> {
    check_separation(r_prime)?;
    Ok((1.0 + r_prime * r_prime) / (16.0 * PI * r_prime * r_prime))
}

/// First and second r′-derivatives of [`integral_d_closed`]: `−1/(8π r′³)` and `3/(8π r′⁴)`.
pub fn integral_d_derivs(r_prime: f64) -> Result<(f64, f64)> {
    check_separation(r_prime)?;
    let s3 = r_prime.powi(3);
    Ok((-1.0 / (8.0 * PI * s3), 3.0 / (8.0 * PI * s3 * r_prime)))
}

/// `∫₀^∞ D dκ` by adaptive quadrature; returns `(value, error_estimate)`.
pub fn integral_d_quad(r_prime: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    check_separation(r_prime)?;
    integrate_semi_infinite(|k| scalar_d_generic(r_prime, k), decay_rate(r_prime), cfg)
}
