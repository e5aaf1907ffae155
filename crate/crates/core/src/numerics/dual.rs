//! Forward-mode differentiation arithmetic.
//!
//! [`Dual<T>`] carries a value and one directional derivative. Nesting it
//! (`Dual<Dual<f64>>`, `Dual<Dual<Dual<Dual<f64>>>>`) yields exact mixed
//! partials of any order, one perturbation direction per level. Every level
//! implements [`Real`], so a function written once against `Real` can be
//! evaluated on plain `f64` or on any nesting depth.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic and the elementary functions used by the Green-function code.
///
/// Only the functions needed here are provided; a composition that needs
/// anything else will not type-check.
pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(x: f64) -> Self;
    /// Innermost real part.
    fn value(self) -> f64;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn exp_m1(self) -> Self;
    fn atan(self) -> Self;
    fn recip(self) -> Self;

    fn square(self) -> Self {
        self * self
    }
}

impl Real for f64 {
    fn cst(x: f64) -> Self {
        x
    }
    fn value(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn exp_m1(self) -> Self {
        f64::exp_m1(self)
    }
    fn atan(self) -> Self {
        f64::atan(self)
    }
    fn recip(self) -> Self {
        f64::recip(self)
    }
}

/// `re + du·ε` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub du: T,
}

impl<T: Real> Dual<T> {
    pub fn new(re: T, du: T) -> Self {
        Self { re, du }
    }

    pub fn constant(re: T) -> Self {
        Self { re, du: T::cst(0.0) }
    }

    /// Chain rule for a scalar function with value `f` and derivative `df` at `re`.
    #[inline]
    fn chain(self, f: T, df: T) -> Self {
        Self {
            re: f,
            du: df * self.du,
        }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.du + o.du)
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.du - o.du)
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re, self.re * o.du + self.du * o.re)
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let inv = o.re.recip();
        let q = self.re * inv;
        Self::new(q, (self.du - q * o.du) * inv)
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.du)
    }
}

impl<T: Real> Add<f64> for Dual<T> {
    type Output = Self;
    #[inline]
    fn add(self, c: f64) -> Self {
        Self::new(self.re + c, self.du)
    }
}

impl<T: Real> Sub<f64> for Dual<T> {
    type Output = Self;
    #[inline]
    fn sub(self, c: f64) -> Self {
        Self::new(self.re - c, self.du)
    }
}

impl<T: Real> Mul<f64> for Dual<T> {
    type Output = Self;
    #[inline]
    fn mul(self, c: f64) -> Self {
        Self::new(self.re * c, self.du * c)
    }
}

impl<T: Real> Div<f64> for Dual<T> {
    type Output = Self;
    #[inline]
    fn div(self, c: f64) -> Self {
        Self::new(self.re / c, self.du / c)
    }
}

impl<T: Real> Real for Dual<T> {
    fn cst(x: f64) -> Self {
        Self::constant(T::cst(x))
    }

    fn value(self) -> f64 {
        self.re.value()
    }

    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        self.chain(s, (s * 2.0).recip())
    }

    fn exp(self) -> Self {
        let e = self.re.exp();
        self.chain(e, e)
    }

    fn exp_m1(self) -> Self {
        self.chain(self.re.exp_m1(), self.re.exp())
    }

    fn atan(self) -> Self {
        self.chain(self.re.atan(), (self.re.square() + 1.0).recip())
    }

    fn recip(self) -> Self {
        let inv = self.re.recip();
        self.chain(inv, -inv.square())
    }
}

/// Second-order (hyper-dual) number: two independent perturbation directions.
pub type HyperDual = Dual<Dual<f64>>;

/// Fourth-order nesting used for the curl–curl structure of the vector Green function.
pub type Dual4 = Dual<Dual<HyperDual>>;

/// Seeds a hyper-dual variable with value `x` and derivatives `du` (outer
/// direction) and `dv` (inner direction).
pub fn hyper(x: f64, du: f64, dv: f64) -> HyperDual {
    Dual::new(Dual::new(x, dv), Dual::new(du, 0.0))
}

/// A scalar function of several variables that can be evaluated on any [`Real`].
pub trait ScalarField {
    fn eval<T: Real>(&self, x: &[T]) -> T;
}

impl<F: ScalarField + ?Sized> ScalarField for &F {
    fn eval<T: Real>(&self, x: &[T]) -> T {
        (**self).eval(x)
    }
}

/// Value with exact first partials along two directions and the mixed second partial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondOrder {
    pub value: f64,
    pub d_u: f64,
    pub d_v: f64,
    pub d_uv: f64,
}

/// Evaluates `f` at `point` with exact derivatives along `u` and `v`.
///
/// With `u == v` the mixed term is the second directional derivative.
///
/// # Panics
///
/// Panics if `point`, `u` and `v` have different lengths.
pub fn dual_evaluate<F: ScalarField>(f: &F, point: &[f64], u: &[f64], v: &[f64]) -> SecondOrder {
    assert!(
        point.len() == u.len() && point.len() == v.len(),
        "point and directions must have the same dimension"
    );
    let x: Vec<HyperDual> = point
        .iter()
        .zip(u.iter().zip(v))
        .map(|(&p, (&du, &dv))| hyper(p, du, dv))
        .collect();
    let y = f.eval(&x);
    SecondOrder {
        value: y.re.re,
        d_u: y.du.re,
        d_v: y.re.du,
        d_uv: y.du.du,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    struct Square;
    impl ScalarField for Square {
        fn eval<T: Real>(&self, x: &[T]) -> T {
            x[0] * x[0]
        }
    }

    struct Arccot;
    impl ScalarField for Arccot {
        fn eval<T: Real>(&self, x: &[T]) -> T {
            x[0].recip().atan()
        }
    }

    struct Mixed;
    impl ScalarField for Mixed {
        fn eval<T: Real>(&self, x: &[T]) -> T {
            (x[0] * x[1]).exp() + (x[0].square() + x[1].square()).sqrt()
        }
    }

    #[test]
    fn square() {
        let r = dual_evaluate(&Square, &[3.0], &[1.0], &[1.0]);
        assert_eq!(r.value, 9.0);
        assert_eq!(r.d_u, 6.0);
        assert_eq!(r.d_uv, 2.0);
    }

    #[test]
    fn arccot_derivative() {
        let r = dual_evaluate(&Arccot, &[1.0], &[1.0], &[1.0]);
        assert_relative_eq!(r.value, std::f64::consts::FRAC_PI_4, epsilon = 1e-15);
        assert_relative_eq!(r.d_u, -0.5, epsilon = 1e-15);
        // d²/dx² arccot x = 2x/(1+x²)²
        assert_relative_eq!(r.d_uv, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn mixed_partial() {
        let (x, y) = (0.3, 0.7);
        let r = dual_evaluate(&Mixed, &[x, y], &[1.0, 0.0], &[0.0, 1.0]);
        let rho = (x * x + y * y).sqrt();
        let expect = (1.0 + x * y) * (x * y).exp() - x * y / rho.powi(3);
        assert_relative_eq!(r.d_uv, expect, epsilon = 1e-14);
        assert_relative_eq!(r.d_u, y * (x * y).exp() + x / rho, epsilon = 1e-14);
        assert_relative_eq!(r.d_v, x * (x * y).exp() + y / rho, epsilon = 1e-14);
    }

    #[test]
    fn exp_m1_and_division() {
        let x = Dual::new(1e-3, 1.0);
        let y = x.exp_m1() / x;
        // d/dx (e^x - 1)/x at x -> 0 is 1/2
        assert_relative_eq!(y.du, 0.5, epsilon = 1e-3);
        let z = Dual::new(2.0, 1.0).recip();
        assert_eq!(z.du, -0.25);
    }

    #[test]
    fn fourth_order_nesting() {
        // x⁴ along one direction at every level: d⁴/dx⁴ = 24
        let one = hyper(1.0, 0.0, 0.0);
        let seed = |v: f64| -> Dual4 { Dual::new(Dual::new(hyper(v, 1.0, 1.0), one), Dual::constant(one)) };
        let x = seed(2.0);
        let y = x.square().square();
        assert_eq!(y.du.du.du.du, 24.0);
        assert_eq!(y.value(), 16.0);
    }
}
