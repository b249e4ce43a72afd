//! Exact recognition of floating values: snap a complex double back into a
//! cyclotomic field, used after numeric root searches.
//!
//! The recognized set is deliberately concrete: rational multiples of roots
//! of unity of the target conductor, plus Gaussian rationals when `4 | N`.
//! Among the candidates within tolerance the one of least height wins; a tie
//! between distinct values is reported as ambiguity rather than guessed.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{ApproxScalar, ExactScalar, Scalar};

/// Largest numerator/denominator magnitude the snapper will produce.
pub const DEFAULT_HEIGHT_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SnapError {
    #[error("no exact value of height <= {bound} within {tol} of {value}")]
    NoMatch { value: String, tol: f64, bound: u64 },
    #[error("ambiguous snap: {first} and {second} both match within tolerance")]
    Ambiguous { first: String, second: String },
}

/// Find the unique least-height element of the `conductor`-th cyclotomic
/// field within `tol` of `x`.
pub fn snap_to_exact(x: ApproxScalar, conductor: u32, tol: f64) -> Result<ExactScalar, SnapError> {
    snap_with_bound(x, conductor, tol, DEFAULT_HEIGHT_BOUND)
}

pub fn snap_with_bound(
    x: ApproxScalar,
    conductor: u32,
    tol: f64,
    bound: u64,
) -> Result<ExactScalar, SnapError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let target = x.0;
    let mut candidates: Vec<ExactScalar> = Vec::new();

    // rational multiples of each root of unity
    let zeta = ExactScalar::primitive_root(conductor);
    let mut power = ExactScalar::one();
    for _ in 0..conductor {
        let rotated = target * power.embed().conj();
        if rotated.im.abs() <= tol {
            if let Some(r) = reconstruct_rational(rotated.re, tol, bound) {
                candidates.push(ExactScalar::from_rational(r).mul(&power));
            }
        }
        power = power.mul(&zeta);
    }

    // Gaussian rationals when i lives in the field
    if conductor.is_multiple_of(4) {
        if let (Some(re), Some(im)) = (
            reconstruct_rational(target.re, tol, bound),
            reconstruct_rational(target.im, tol, bound),
        ) {
            let c = ExactScalar::from_rational(re)
                .add(&ExactScalar::from_rational(im).mul(&ExactScalar::i()));
            candidates.push(c.lift_into(conductor));
        }
    }

    // keep verified candidates only
    candidates.retain(|c| (c.embed() - target).norm() <= tol);

    // dedupe by exact value
    let mut distinct: Vec<ExactScalar> = Vec::new();
    for c in candidates {
        if !distinct.iter().any(|d| d == &c) {
            distinct.push(c);
        }
    }
    if distinct.is_empty() {
        return Err(SnapError::NoMatch {
            value: format!("{x}"),
            tol,
            bound,
        });
    }
    distinct.sort_by_key(|a| a.height());
    if distinct.len() > 1 && distinct[0].height() == distinct[1].height() {
        return Err(SnapError::Ambiguous {
            first: format!("{}", distinct[0]),
            second: format!("{}", distinct[1]),
        });
    }
    Ok(distinct.into_iter().next().unwrap())
}

impl ExactScalar {
    /// Lift into the conductor-`m` field when possible, otherwise into the
    /// lcm of the two conductors.
    fn lift_into(&self, m: u32) -> ExactScalar {
        let target = num_integer::Integer::lcm(&(self.conductor() as u64), &(m as u64)) as u32;
        self.lift(target)
    }
}

/// Minimal-denominator rational within `tol` of `x`, by continued fractions.
fn reconstruct_rational(x: f64, tol: f64, bound: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let bound = bound as i128;
    let sign = if x < 0.0 { -1i128 } else { 1i128 };
    let mut v = x.abs();
    let (mut p_prev, mut q_prev): (i128, i128) = (1, 0);
    let (mut p, mut q): (i128, i128) = (v.floor() as i128, 1);
    for _ in 0..64 {
        if q > bound || p > bound {
            return None;
        }
        let approx = p as f64 / q as f64;
        if (x.abs() - approx).abs() <= tol {
            return Some(BigRational::new(BigInt::from(sign * p), BigInt::from(q)));
        }
        let frac = v - v.floor();
        if frac < 1e-15 {
            return None;
        }
        v = 1.0 / frac;
        let a = v.floor() as i128;
        let p_next = a.checked_mul(p)?.checked_add(p_prev)?;
        let q_next = a.checked_mul(q)?.checked_add(q_prev)?;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    None
}
