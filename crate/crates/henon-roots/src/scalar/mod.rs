//! Coefficient regimes: exact cyclotomic-rational complex numbers and
//! double-precision complex numbers, unified behind the [`Scalar`] trait.
//!
//! Everything algebraic in this crate is generic over `Scalar`, so the same
//! composition and verification code runs exactly (when inputs are exact) or
//! in floating point (when speed matters or coefficients left the field).

mod approx;
mod exact;
mod snap;

pub use approx::ApproxScalar;
pub use exact::{euler_phi, ExactScalar};
pub use snap::{snap_to_exact, SnapError, DEFAULT_HEIGHT_BOUND};

use num_complex::Complex64;
use std::fmt;

/// Errors surfaced by scalar operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("overflow while embedding exact value into doubles")]
    Overflow,
}

/// A complex number in one of the two coefficient regimes.
///
/// The trait deliberately exposes arithmetic as methods rather than operator
/// bounds: generic polynomial code stays readable and the two regimes keep
/// their own operator implementations for concrete use.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    /// True when arithmetic in this regime is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn invert(&self) -> Option<Self>;

    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// The canonical embedding into the complex plane.
    fn embed(&self) -> Complex64;

    /// Equality at the regime's native precision: exact equality for the
    /// exact regime, `|a - b| <= tol` for the approximate one.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    /// False only for non-finite floating values.
    fn is_finite_value(&self) -> bool;

    /// All `n`-th roots representable in the regime. The exact regime only
    /// recognizes values of the form rational × root of unity and returns an
    /// empty list otherwise; callers treat that as loss of exactness.
    fn nth_roots(&self, n: u32) -> Vec<Self>;

    fn magnitude(&self) -> f64 {
        self.embed().norm()
    }

    fn pow_int(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut result = Self::one();
        let mut acc = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&acc);
            }
            acc = acc.mul(&acc);
            k >>= 1;
        }
        Some(result)
    }
}

/// Checked embedding of an exact scalar into the approximate regime.
pub fn approximate(x: &ExactScalar) -> Result<ApproxScalar, ScalarError> {
    let c = x.embed();
    if c.re.is_finite() && c.im.is_finite() {
        Ok(ApproxScalar(c))
    } else {
        Err(ScalarError::Overflow)
    }
}
