//! Regularized vacuum correlations, the Casimir stress and its force density.
//!
//! Only the mirror-reflected part of the Green function enters: the free
//! hypersphere Green function produces a uniform background, which is the
//! subtracted regularizer and is never computed. Electric and magnetic
//! correlations are taken equal for the impedance-matched medium, which gives
//!
//! ```text
//! τ − τ0 = −(2n/π) ∫₀^∞ κ² G_s(r, r; iκ) dκ = (1 + r²)/(π² (1 − r²)⁴) 𝟙
//! σ      = τ − 𝟙 Tr τ / 2
//! ```
//!
//! in reduced units. Quadrature routes are provided next to the closed forms so
//! that each step can be checked independently.

use std::f64::consts::PI;

use serde::Serialize;

use crate::em_green::{green_reflected, reflected_diagonal_on_axis};
use crate::error::{domain, Result};
use crate::medium::{index_from_r2, on_axis_separation, MediumParams};
use crate::numerics::{integrate_semi_infinite_vec, BiTensor3, Point3, QuadratureConfig};
use crate::scalar_green::decay_rate;

/// Equal-time field correlation tensor `τ − τ0`, units ħc/a⁴.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTensor(pub BiTensor3);

/// Casimir stress tensor, units ħc/a⁴.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "[[f64; 3]; 3]")]
pub struct StressTensor(pub BiTensor3);

impl From<StressTensor> for [[f64; 3]; 3] {
    fn from(s: StressTensor) -> Self {
        s.0.rows()
    }
}

impl CorrelationTensor {
    /// Mean eigenvalue (exact for the isotropic tensors produced here).
    pub fn eigenvalue(&self) -> f64 {
        self.0.trace() / 3.0
    }
}

impl StressTensor {
    pub fn eigenvalue(&self) -> f64 {
        self.0.trace() / 3.0
    }
}

fn check_reduced_interior(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(domain(format!("reduced radius must satisfy 0 <= r < 1, got {r}")));
    }
    Ok(())
}

/// `τ − τ0 = (1 + r²)/(π²(1 − r²)⁴)·𝟙`, valid at the center.
pub fn tau_regularized(r: f64) -> Result<CorrelationTensor> {
    check_reduced_interior(r)?;
    let r2 = r * r;
    let t = (1.0 + r2) / (PI * PI * (1.0 - r2).powi(4));
    Ok(CorrelationTensor(BiTensor3::identity() * t))
}

/// `τ − τ0` on the x axis by κ-quadrature of the on-axis reflected diagonal.
pub fn tau_regularized_quadrature(r: f64, cfg: &QuadratureConfig) -> Result<CorrelationTensor> {
    if !(r > 0.0 && r < 1.0) {
        return Err(domain(format!("quadrature route needs 0 < r < 1, got {r}")));
    }
    let rate = decay_rate(on_axis_separation(r)?);
    let est = integrate_semi_infinite_vec(
        |k| {
            if k == 0.0 {
                return Ok([0.0, 0.0]);
            }
            let (a, b) = reflected_diagonal_on_axis(r, k)?.kappa_weighted(k);
            Ok([a, b])
        },
        rate,
        cfg,
    )?;
    let scale = -2.0 * index_from_r2(r * r) / PI;
    let [radial, transverse] = est.value;
    Ok(CorrelationTensor(
        BiTensor3::diagonal(radial, transverse, transverse) * scale,
    ))
}

/// `τ − τ0` at an arbitrary interior point from the full symmetrized reflected
/// bi-tensor at coincidence, all nine entries integrated over κ.
pub fn tau_regularized_full_tensor(point: &Point3, cfg: &QuadratureConfig) -> Result<CorrelationTensor> {
    let r = point.norm();
    if !(r > 0.0 && r < 1.0) {
        return Err(domain(format!("full-tensor route needs 0 < |r| < 1, got {r}")));
    }
    let rate = decay_rate(on_axis_separation(r)?);
    let est = integrate_semi_infinite_vec(
        |k| {
            let g = green_reflected(point, point, k)?;
            let gs = (g + g.transpose()) * (0.5 * k * k);
            Ok(std::array::from_fn::<f64, 9, _>(|n| gs.get(n / 3, n % 3)))
        },
        rate,
        cfg,
    )?;
    let scale = -2.0 * index_from_r2(r * r) / PI;
    Ok(CorrelationTensor(
        BiTensor3::from_fn(|i, j| est.value[3 * i + j]) * scale,
    ))
}

/// `σ = τ − 𝟙 Tr τ / 2`.
pub fn stress_from_tau(tau: &CorrelationTensor) -> StressTensor {
    let tr = tau.0.trace();
    StressTensor(tau.0 - BiTensor3::identity() * (0.5 * tr))
}

/// Stress eigenvalue in reduced units, `−(1 + x²)/(2π²(1 − x²)⁴)`.
pub fn stress_eigenvalue_reduced(x: f64) -> Result<f64> {
    check_reduced_interior(x)?;
    let x2 = x * x;
    Ok(-(1.0 + x2) / (2.0 * PI * PI * (1.0 - x2).powi(4)))
}

/// Radial force density in reduced units, `−x(5 + 3x²)/(π²(1 − x²)⁵)`.
pub fn force_density_reduced(x: f64) -> Result<f64> {
    check_reduced_interior(x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let x2 = x * x;
    Ok(-x * (5.0 + 3.0 * x2) / (PI * PI * (1.0 - x2).powi(5)))
}

/// Casimir stress `σ = −ħc 𝟙/(π² a⁴ n(r) (1 − r²/a²)⁴)` at physical radius `r`, ħc = 1.
pub fn casimir_stress(r: f64, params: &MediumParams) -> Result<StressTensor> {
    let x = params.reduce_interior(r)?;
    let a = params.a();
    let n = 2.0 * params.n1() / (1.0 + x * x);
    let s = -1.0 / (PI * PI * a.powi(4) * n * (1.0 - x * x).powi(4));
    Ok(StressTensor(BiTensor3::identity() * s))
}

/// Radial component of `∇·σ` at physical radius `r`, ħc = 1; negative values point to the center.
pub fn force_density(r: f64, params: &MediumParams) -> Result<f64> {
    let x = params.reduce_interior(r)?;
    Ok(force_density_reduced(x)? / (params.a().powi(5) * params.n1()))
}

/// Restores units: `σ(r; a, n₁) = σ_reduced(r/a)/(a⁴ n₁)`.
pub fn rescale(sigma_reduced: &StressTensor, params: &MediumParams) -> StressTensor {
    StressTensor(sigma_reduced.0 * (1.0 / (params.a().powi(4) * params.n1())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tau_values() {
        assert_relative_eq!(
            tau_regularized(0.0).unwrap().eigenvalue(),
            1.0 / (PI * PI),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            tau_regularized(0.5).unwrap().eigenvalue(),
            0.400_281_219_327_754_2,
            max_relative = 1e-14
        );
        assert!(tau_regularized(1.0).is_err());
        assert!(tau_regularized(-0.1).is_err());
    }

    #[test]
    fn stress_algebra() {
        let iso = stress_from_tau(&CorrelationTensor(BiTensor3::identity() * 3.0));
        assert_eq!(iso.0, BiTensor3::identity() * -1.5);
        let s = stress_from_tau(&CorrelationTensor(BiTensor3::diagonal(1.0, 0.0, 0.0)));
        assert_eq!(s.0, BiTensor3::diagonal(0.5, -0.5, -0.5));
        assert_eq!(
            stress_from_tau(&CorrelationTensor(BiTensor3::zeros())).0,
            BiTensor3::zeros()
        );
    }

    #[test]
    fn stress_values() {
        let p = MediumParams::reduced();
        assert_relative_eq!(
            casimir_stress(0.0, &p).unwrap().eigenvalue(),
            -1.0 / (2.0 * PI * PI),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            casimir_stress(0.5, &p).unwrap().eigenvalue(),
            -0.200_140_609_663_877_1,
            max_relative = 1e-14
        );
        assert!(casimir_stress(1.0, &p).is_err());
    }

    #[test]
    fn force_values() {
        let p = MediumParams::reduced();
        let f0 = force_density(0.0, &p).unwrap();
        assert!(f0 == 0.0 && f0.is_sign_positive());
        assert_relative_eq!(
            force_density(0.5, &p).unwrap(),
            -1.227_529_072_605_113,
            max_relative = 1e-14
        );
        assert!(force_density(1.0, &p).is_err());
    }

    #[test]
    fn rescale_examples() {
        let sigma0 = StressTensor(BiTensor3::identity() * stress_eigenvalue_reduced(0.0).unwrap());
        let a2 = MediumParams::new(2.0, 1.0).unwrap();
        assert_relative_eq!(
            rescale(&sigma0, &a2).eigenvalue(),
            -1.0 / (32.0 * PI * PI),
            max_relative = 1e-15
        );
        let n3 = MediumParams::new(1.0, 3.0).unwrap();
        assert_relative_eq!(
            rescale(&sigma0, &n3).eigenvalue(),
            -1.0 / (6.0 * PI * PI),
            max_relative = 1e-15
        );
        assert_eq!(rescale(&sigma0, &MediumParams::reduced()), sigma0);
    }

    #[test]
    fn physical_radius_is_reduced_by_a() {
        let p = MediumParams::new(2.0, 1.0).unwrap();
        let direct = casimir_stress(1.0, &p).unwrap();
        let reduced = StressTensor(BiTensor3::identity() * stress_eigenvalue_reduced(0.5).unwrap());
        assert!(direct.0.relative_difference(&rescale(&reduced, &p).0) < 1e-15);
    }

    #[test]
    fn quadrature_route_on_axis() {
        let cfg = QuadratureConfig::with_rel_tol(1e-12);
        let q = tau_regularized_quadrature(0.5, &cfg).unwrap();
        let c = tau_regularized(0.5).unwrap();
        assert!(q.0.relative_difference(&c.0) < 1e-9);
    }
}
