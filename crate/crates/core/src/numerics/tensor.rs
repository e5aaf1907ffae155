//! 3×3 bi-tensors and rotations.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix3, SymmetricEigen, Vector3};

use crate::error::{Error, Result};

/// Position in units of the mirror radius.
pub type Point3 = Vector3<f64>;

/// Rotations are accepted as plain matrices and checked by [`rotate_tensor`].
pub type Rotation = Matrix3<f64>;

/// Tolerance on `RᵀR = 1` and `det R = 1`.
pub const ROTATION_TOL: f64 = 1e-12;

/// Levi-Civita symbol `ε_ijk`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// 3×3 real matrix; row index = field direction at `r`, column index = source
/// direction at `r0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiTensor3(pub Matrix3<f64>);

impl BiTensor3 {
    pub fn zeros() -> Self {
        Self(Matrix3::zeros())
    }

    pub fn identity() -> Self {
        Self(Matrix3::identity())
    }

    pub fn from_fn(f: impl FnMut(usize, usize) -> f64) -> Self {
        Self(Matrix3::from_fn(f))
    }

    pub fn diagonal(a: f64, b: f64, c: f64) -> Self {
        Self(Matrix3::from_diagonal(&Vector3::new(a, b, c)))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.0[(i, j)] = v;
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)]))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Largest entrywise difference relative to the largest entry of `reference`.
    pub fn relative_difference(&self, reference: &BiTensor3) -> f64 {
        (*self - *reference).max_abs() / reference.max_abs()
    }

    /// Eigenvalues of the symmetric part, ascending.
    pub fn symmetric_eigenvalues(&self) -> [f64; 3] {
        let sym = (self.0 + self.0.transpose()) * 0.5;
        let mut ev: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2]]
    }

    /// `(λ_max − λ_min) / max |λ|` of the symmetric part.
    pub fn eigenvalue_spread(&self) -> f64 {
        let ev = self.symmetric_eigenvalues();
        let scale = ev[0].abs().max(ev[2].abs());
        (ev[2] - ev[0]) / scale
    }
}

impl Add for BiTensor3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(self.0 + o.0)
    }
}

impl Sub for BiTensor3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(self.0 - o.0)
    }
}

impl Neg for BiTensor3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Mul<f64> for BiTensor3 {
    type Output = Self;
    fn mul(self, c: f64) -> Self {
        Self(self.0 * c)
    }
}

impl Mul for BiTensor3 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self(self.0 * o.0)
    }
}

/// Checks that `r` is orthogonal with determinant +1.
pub fn check_rotation(r: &Rotation) -> Result<()> {
    let defect = (r.transpose() * r - Matrix3::identity())
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max((r.determinant() - 1.0).abs());
    if defect > ROTATION_TOL {
        return Err(Error::NotRotation { defect });
    }
    Ok(())
}

/// `R·T·Rᵀ`.
pub fn rotate_tensor(t: &BiTensor3, r: &Rotation) -> Result<BiTensor3> {
    check_rotation(r)?;
    Ok(BiTensor3(r * t.0 * r.transpose()))
}
