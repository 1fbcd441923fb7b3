use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic needed to push forward-mode derivatives through closed forms.
pub trait Scalar:
    Copy
    + Debug
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
    fn from_f64(x: f64) -> Self;
    /// The underlying real value with all infinitesimal parts dropped.
    fn value(&self) -> f64;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;

    fn powi(self, n: u32) -> Self {
        let mut acc = Self::from_f64(1.0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn powi(self, n: u32) -> Self {
        f64::powi(self, n as i32)
    }
}

/// First-order dual number `re + eps·ε` with `ε² = 0`. Nest for higher orders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Self { re, eps }
    }

    pub fn constant(re: T) -> Self {
        Self { re, eps: T::from_f64(0.0) }
    }

    /// Independent variable: derivative seed 1.
    pub fn variable(re: T) -> Self {
        Self { re, eps: T::from_f64(1.0) }
    }
}

impl Dual<Dual<f64>> {
    /// Seed `x` for value, first and second derivative extraction.
    pub fn second_order(x: f64) -> Self {
        Dual::new(Dual::variable(x), Dual::constant(1.0))
    }

    /// (value, first derivative, second derivative).
    pub fn jet(&self) -> (f64, f64, f64) {
        (self.re.re, self.eps.re, self.eps.eps)
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn from_f64(x: f64) -> Self {
        Dual::constant(T::from_f64(x))
    }
    fn value(&self) -> f64 {
        self.re.value()
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Dual::new(s, self.eps / (s * 2.0))
    }
    fn sin(self) -> Self {
        Dual::new(self.re.sin(), self.eps * self.re.cos())
    }
    fn cos(self) -> Self {
        Dual::new(self.re.cos(), -(self.eps * self.re.sin()))
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual::new(self.re * o.re, self.re * o.eps + self.eps * o.re)
    }
}

impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q = self.re / o.re;
        Dual::new(q, (self.eps - q * o.eps) / o.re)
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<T: Scalar> Add<f64> for Dual<T> {
    type Output = Self;
    fn add(self, o: f64) -> Self {
        Dual::new(self.re + o, self.eps)
    }
}

impl<T: Scalar> Sub<f64> for Dual<T> {
    type Output = Self;
    fn sub(self, o: f64) -> Self {
        Dual::new(self.re - o, self.eps)
    }
}

impl<T: Scalar> Mul<f64> for Dual<T> {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        Dual::new(self.re * o, self.eps * o)
    }
}

impl<T: Scalar> Div<f64> for Dual<T> {
    type Output = Self;
    fn div(self, o: f64) -> Self {
        Dual::new(self.re / o, self.eps / o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f<S: Scalar>(x: S) -> S {
        (x * x + 1.0).sqrt() / (x.sin() + 2.0)
    }

    #[test]
    fn first_derivative_matches_closed_form() {
        let x = 0.7_f64;
        let d = f(Dual::variable(x));
        let num = (x * x + 1.0).sqrt();
        let den = x.sin() + 2.0;
        let expect = (x / num * den - num * x.cos()) / (den * den);
        assert!((d.re - f(x)).abs() < 1e-15);
        assert!((d.eps - expect).abs() < 1e-14);
    }

    #[test]
    fn nested_second_derivative() {
        let x = 0.3_f64;
        let y = Dual::second_order(x).sin() * Dual::second_order(x);
        let (v, d1, d2) = y.jet();
        assert!((v - x * x.sin()).abs() < 1e-15);
        assert!((d1 - (x.sin() + x * x.cos())).abs() < 1e-15);
        assert!((d2 - (2.0 * x.cos() - x * x.sin())).abs() < 1e-15);
    }
}
