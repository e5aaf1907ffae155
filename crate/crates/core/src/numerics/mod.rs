//! Numerical machinery shared by the physics modules.

pub mod dual;
pub mod finite_diff;
pub mod quadrature;
pub mod tensor;

pub use dual::{dual_evaluate, Dual, Dual4, HyperDual, Real, ScalarField, SecondOrder};
pub use finite_diff::{fd_curl, fd_derivative, fd_derivative_with_step, fd_partial, FDConfig};
pub use quadrature::{
    integrate_interval, integrate_semi_infinite, integrate_semi_infinite_vec, Estimate, QuadratureConfig,
};
pub use tensor::{check_rotation, levi_civita, rotate_tensor, BiTensor3, Point3, Rotation};
