//! Casimir stress inside Maxwell's fish eye bounded by a perfect spherical mirror.
//!
//! The medium `n(r) = 2n₁/(1 + r²/a²)` maps the inside of the mirror onto a
//! hemisphere of the 3-sphere, which makes the electromagnetic Green function
//! available in closed form. The mirror is an image source under `r → r/r²`.
//! Subtracting the uniform hypersphere background leaves the isotropic stress
//!
//! ```text
//! σ(r) = −ħc 𝟙 / (π² a⁴ n(r) (1 − r²/a²)⁴),
//! ```
//!
//! which this crate reproduces both in closed form and through the full
//! Green-function pipeline, with independent numerical cross-checks.
//!
//! Internally every routine works in reduced units `a = 1`, `n₁ = 1`, `ħc = 1`;
//! [`MediumParams`] is applied only at the API boundary.

// `!(x > 0.0)` style guards reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod em_green;
pub mod error;
pub mod medium;
pub mod numerics;
pub mod profile;
pub mod scalar_green;
pub mod stress;
pub mod verify;

pub use em_green::{
    green_free, green_reflected, green_total, magnetic_green_oracle, reflected_diagonal_on_axis, GreenPart,
    ReflectedDiagonal,
};
pub use error::{Error, Result};
pub use medium::{
    image_point, inversion_jacobian, mobius_separation, on_axis_separation, refractive_index, MediumParams,
};
pub use numerics::{BiTensor3, Point3, QuadratureConfig};
pub use profile::{radial_profile, RadialProfileSample};
pub use scalar_green::{scalar_d, ScalarGreenPoint};
pub use stress::{
    casimir_stress, force_density, rescale, stress_from_tau, tau_regularized, CorrelationTensor, StressTensor,
};
pub use verify::{run_checks, CheckStatus, Level, VerificationReport};
