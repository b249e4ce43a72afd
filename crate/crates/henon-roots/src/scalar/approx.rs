//! Double-precision complex scalars.

use std::fmt;

use num_complex::Complex64;

use super::Scalar;

/// A complex number in the floating regime.
#[derive(Clone, Copy, PartialEq)]
pub struct ApproxScalar(pub Complex64);

impl ApproxScalar {
    pub fn new(re: f64, im: f64) -> Self {
        ApproxScalar(Complex64::new(re, im))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }
}

impl From<Complex64> for ApproxScalar {
    fn from(c: Complex64) -> Self {
        ApproxScalar(c)
    }
}

impl Scalar for ApproxScalar {
    const EXACT: bool = false;

    fn zero() -> Self {
        ApproxScalar(Complex64::new(0.0, 0.0))
    }

    fn one() -> Self {
        ApproxScalar(Complex64::new(1.0, 0.0))
    }

    fn from_int(n: i64) -> Self {
        ApproxScalar(Complex64::new(n as f64, 0.0))
    }

    fn add(&self, other: &Self) -> Self {
        ApproxScalar(self.0 + other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        ApproxScalar(self.0 - other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        ApproxScalar(self.0 * other.0)
    }

    fn neg(&self) -> Self {
        ApproxScalar(-self.0)
    }

    fn invert(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(ApproxScalar(self.0.inv()))
        }
    }

    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }

    fn embed(&self) -> Complex64 {
        self.0
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.0 - other.0).norm() <= tol
    }

    fn is_finite_value(&self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }

    fn nth_roots(&self, n: u32) -> Vec<Self> {
        assert!(n >= 1);
        if self.is_zero() {
            return vec![Self::zero()];
        }
        let r = self.0.norm().powf(1.0 / n as f64);
        let theta = self.0.arg() / n as f64;
        (0..n)
            .map(|j| {
                let phi = theta + 2.0 * std::f64::consts::PI * (j as f64) / n as f64;
                ApproxScalar(Complex64::from_polar(r, phi))
            })
            .collect()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $delegate:ident) => {
        impl std::ops::$trait for ApproxScalar {
            type Output = ApproxScalar;
            fn $method(self, rhs: ApproxScalar) -> ApproxScalar {
                Scalar::$delegate(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Div for ApproxScalar {
    type Output = ApproxScalar;
    fn div(self, rhs: ApproxScalar) -> ApproxScalar {
        ApproxScalar(self.0 / rhs.0)
    }
}

impl std::ops::Neg for ApproxScalar {
    type Output = ApproxScalar;
    fn neg(self) -> ApproxScalar {
        ApproxScalar(-self.0)
    }
}

impl fmt::Debug for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ApproxScalar({})", self.0)
    }
}

impl fmt::Display for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{}", self.0.re)
        } else if self.0.re == 0.0 {
            write!(f, "{}i", self.0.im)
        } else if self.0.im < 0.0 {
            write!(f, "{}{}i", self.0.re, self.0.im)
        } else {
            write!(f, "{}+{}i", self.0.re, self.0.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_recompose() {
        let x = ApproxScalar::new(-2.0, 3.0);
        for r in x.nth_roots(5) {
            let p = r.pow_int(5).unwrap();
            assert!(p.approx_eq(&x, 1e-10));
        }
    }

    #[test]
    fn finiteness_detection() {
        let big = ApproxScalar::new(1e308, 0.0);
        let product = big.mul(&big);
        assert!(!product.is_finite_value());
    }
}
