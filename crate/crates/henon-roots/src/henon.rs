//! Generalized Hénon maps and their finite compositions.
//!
//! A factor is `(z,w) ↦ (w, p(w) - a·z)` with `p` monic of degree at least 2
//! and `a ≠ 0`. Compositions apply factors right to left and display left to
//! right joined by `o`.

use std::fmt;

use crate::poly::{Axis, BiPoly, PolyError, PolyMap2, UniPoly};
use crate::scalar::{ApproxScalar, Scalar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HenonError {
    #[error("p must be monic (leading coefficient 1); normalization belongs to the word layer")]
    NotMonic,
    #[error("p must have degree at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("the parameter a must be nonzero")]
    ZeroParameter,
    #[error("a composition needs at least one factor")]
    Empty,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One generalized Hénon factor `(w, p(w) - a·z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HenonFactor<S: Scalar> {
    p: UniPoly<S>,
    a: S,
}

impl<S: Scalar> HenonFactor<S> {
    pub fn new(p: UniPoly<S>, a: S) -> Result<Self, HenonError> {
        let deg = p.degree().unwrap_or(0);
        if deg < 2 {
            return Err(HenonError::DegreeTooSmall(deg));
        }
        if !p.is_monic() {
            return Err(HenonError::NotMonic);
        }
        if a.is_zero() {
            return Err(HenonError::ZeroParameter);
        }
        Ok(HenonFactor { p, a })
    }

    pub fn p(&self) -> &UniPoly<S> {
        &self.p
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    pub fn degree(&self) -> u32 {
        self.p.degree().unwrap_or(0) as u32
    }

    /// The factor as an explicit plane map.
    pub fn as_map(&self) -> PolyMap2<S> {
        let first = BiPoly::var_w();
        let second = self
            .p
            .to_bipoly(Axis::W)
            .sub(&BiPoly::monomial(self.a.clone(), 1, 0));
        PolyMap2::new(first, second)
    }

    /// The inverse as a plane map: `(z,w) ↦ ((p(z) - w)/a, z)`.
    pub fn inverse_as_map(&self) -> PolyMap2<S> {
        let ainv = self.a.invert().expect("a is nonzero by construction");
        let first = self.p.to_bipoly(Axis::Z).sub(&BiPoly::var_w()).scale(&ainv);
        PolyMap2::new(first, BiPoly::var_z())
    }

    /// One forward application to a point.
    pub fn apply(&self, pt: (&S, &S)) -> (S, S) {
        let (z, w) = pt;
        let second = self.p.eval(w).sub(&self.a.mul(z));
        (w.clone(), second)
    }

    /// One backward application to a point.
    pub fn apply_inverse(&self, pt: (&S, &S)) -> (S, S) {
        let (z, w) = pt;
        let ainv = self.a.invert().expect("a is nonzero by construction");
        let first = self.p.eval(z).sub(w).mul(&ainv);
        (first, z.clone())
    }

    /// Certified escape radius for this factor:
    /// `R = max(2, 1 + |a| + Σ|p_j|)` makes `|p(w) - a·z| >= 2|w|`
    /// whenever `|w| >= R` and `|w| >= |z|`.
    pub fn escape_radius(&self) -> f64 {
        let coeff_sum: f64 = self.p.coeffs().iter().map(|c| c.magnitude()).sum();
        (1.0 + self.a.magnitude() + coeff_sum).max(2.0)
    }

    pub fn to_approx(&self) -> HenonFactor<ApproxScalar> {
        HenonFactor {
            p: self.p.to_approx(),
            a: ApproxScalar(self.a.embed()),
        }
    }
}

impl<S: Scalar> fmt::Display for HenonFactor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "henon(p={}, a={})", self.p, self.a)
    }
}

/// A nonempty composition of Hénon factors, applied right to left:
/// `factors[0]` is outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct HenonComposition<S: Scalar> {
    factors: Vec<HenonFactor<S>>,
}

impl<S: Scalar> HenonComposition<S> {
    pub fn new(factors: Vec<HenonFactor<S>>) -> Result<Self, HenonError> {
        if factors.is_empty() {
            return Err(HenonError::Empty);
        }
        Ok(HenonComposition { factors })
    }

    pub fn single(factor: HenonFactor<S>) -> Self {
        HenonComposition {
            factors: vec![factor],
        }
    }

    pub fn factors(&self) -> &[HenonFactor<S>] {
        &self.factors
    }

    /// Composition with another: `self ∘ other`.
    pub fn then_inner(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        HenonComposition { factors }
    }

    /// `n`-fold compositional power, `n >= 1`.
    pub fn power(&self, n: u32) -> Result<Self, HenonError> {
        if n == 0 {
            return Err(HenonError::Empty);
        }
        let mut factors = Vec::with_capacity(self.factors.len() * n as usize);
        for _ in 0..n {
            factors.extend(self.factors.iter().cloned());
        }
        Ok(HenonComposition { factors })
    }

    /// Product of factor degrees.
    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|f| f.degree() as u64).product()
    }

    /// The composition as an explicit plane map.
    pub fn as_map(&self) -> Result<PolyMap2<S>, HenonError> {
        let mut acc = PolyMap2::identity();
        for factor in self.factors.iter().rev() {
            acc = factor.as_map().compose(&acc)?;
        }
        Ok(acc)
    }

    /// The inverse as an explicit plane map: factor inverses composed in
    /// reverse order.
    pub fn inverse_map(&self) -> Result<PolyMap2<S>, HenonError> {
        let mut acc = PolyMap2::identity();
        for factor in &self.factors {
            acc = factor.inverse_as_map().compose(&acc)?;
        }
        Ok(acc)
    }

    /// One forward application of the whole composition to a point.
    pub fn apply(&self, pt: (&S, &S)) -> (S, S) {
        let mut cur = (pt.0.clone(), pt.1.clone());
        for factor in self.factors.iter().rev() {
            cur = factor.apply((&cur.0, &cur.1));
        }
        cur
    }

    /// One backward application of the whole composition to a point.
    pub fn apply_inverse(&self, pt: (&S, &S)) -> (S, S) {
        let mut cur = (pt.0.clone(), pt.1.clone());
        for factor in &self.factors {
            cur = factor.apply_inverse((&cur.0, &cur.1));
        }
        cur
    }

    /// Certified escape radius: the max of the per-factor bounds, floored at
    /// 2. Any orbit entering `|w| > R, |w| >= |z|` grows monotonically under
    /// forward iteration (and the analogous region under the inverse).
    pub fn escape_radius(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| f.escape_radius())
            .fold(2.0, f64::max)
    }

    pub fn to_approx(&self) -> HenonComposition<ApproxScalar> {
        HenonComposition {
            factors: self.factors.iter().map(|f| f.to_approx()).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for HenonComposition<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " o ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;

    type Q = ExactScalar;

    fn int(n: i64) -> Q {
        Q::from_int(n)
    }

    pub(crate) fn basic_factor() -> HenonFactor<Q> {
        // p = w², a = 1
        HenonFactor::new(UniPoly::new(vec![int(0), int(0), int(1)], 'w'), int(1)).unwrap()
    }

    #[test]
    fn construction_guards() {
        // non-monic rejected
        let err = HenonFactor::new(UniPoly::new(vec![int(0), int(0), int(2)], 'w'), int(1));
        assert_eq!(err.unwrap_err(), HenonError::NotMonic);
        // degree 1 rejected
        let err = HenonFactor::new(UniPoly::new(vec![int(0), int(1)], 'w'), int(1));
        assert!(matches!(err.unwrap_err(), HenonError::DegreeTooSmall(1)));
        // a = 0 rejected
        let err = HenonFactor::new(UniPoly::new(vec![int(0), int(0), int(1)], 'w'), int(0));
        assert_eq!(err.unwrap_err(), HenonError::ZeroParameter);
    }

    #[test]
    fn single_factor_map_shapes() {
        let f = basic_factor();
        let m = f.as_map();
        assert_eq!(format!("{m}"), "(w, w^2 - z)");

        // p = w² + c, a = b gives (w, w² + c - b·z)
        let c = int(5);
        let b = int(3);
        let f2 = HenonFactor::new(UniPoly::new(vec![c, int(0), int(1)], 'w'), b).unwrap();
        let m2 = f2.as_map();
        assert_eq!(m2.second.coeff(0, 0), int(5));
        assert_eq!(m2.second.coeff(1, 0), int(-3));
        assert_eq!(m2.second.coeff(0, 2), int(1));
    }

    #[test]
    fn two_factor_composition_matches_compose() {
        let f = basic_factor();
        let h = HenonComposition::new(vec![f.clone(), f.clone()]).unwrap();
        let direct = h.as_map().unwrap();
        let via = f.as_map().compose(&f.as_map()).unwrap();
        assert_eq!(direct, via);
        assert_eq!(h.degree(), 4);
        assert_eq!(direct.total_degree(), Some(4));
    }

    #[test]
    fn inverse_is_hand_computed_and_round_trips() {
        let f = basic_factor();
        // inverse of (w, w² - z) is (z² - w, z)
        let inv = f.inverse_as_map();
        assert_eq!(format!("{inv}"), "(z^2 - w, z)");

        let round = f.as_map().compose(&inv).unwrap();
        assert!(round.is_identity());
        let round2 = inv.compose(&f.as_map()).unwrap();
        assert!(round2.is_identity());
    }

    #[test]
    fn composition_inverse_round_trips() {
        let f = basic_factor();
        let g = HenonFactor::new(
            UniPoly::new(vec![int(1), int(-1), int(0), int(1)], 'w'),
            int(2),
        )
        .unwrap();
        let h = HenonComposition::new(vec![f, g]).unwrap();
        let m = h.as_map().unwrap();
        let inv = h.inverse_map().unwrap();
        assert!(m.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&m).unwrap().is_identity());

        // pointwise too, on a handful of exact points
        for k in 0..20i64 {
            let z = int(k % 5 - 2);
            let w = int(k % 7 - 3);
            let fwd = h.apply((&z, &w));
            let back = h.apply_inverse((&fwd.0, &fwd.1));
            assert_eq!(back.0, z);
            assert_eq!(back.1, w);
        }
    }

    #[test]
    fn degrees_multiply() {
        let f = basic_factor(); // degree 2
        let g = HenonFactor::new(
            UniPoly::new(vec![int(0), int(-1), int(0), int(1)], 'w'),
            int(2),
        )
        .unwrap(); // degree 3
        let h = HenonComposition::new(vec![f.clone(), g]).unwrap();
        assert_eq!(h.degree(), 6);
        assert_eq!(HenonComposition::single(f).degree(), 2);
    }

    #[test]
    fn second_coordinate_degree_dominates() {
        let f = basic_factor();
        let g = HenonFactor::new(
            UniPoly::new(vec![int(1), int(0), int(0), int(1)], 'w'),
            int(-1),
        )
        .unwrap();
        for h in [
            HenonComposition::single(f.clone()),
            HenonComposition::new(vec![f.clone(), g.clone()]).unwrap(),
            HenonComposition::new(vec![g, f]).unwrap(),
        ] {
            let m = h.as_map().unwrap();
            let df = m.first.total_degree().unwrap();
            let dg = m.second.total_degree().unwrap();
            assert!(dg > df, "second degree {dg} must exceed first {df}");
            assert_eq!(dg as u64, h.degree());
        }
    }

    #[test]
    fn escape_radius_formula() {
        let f = basic_factor();
        // 1 + |a| + Σ|coeffs| = 1 + 1 + 1 = 3
        assert_eq!(f.escape_radius(), 3.0);
        assert!(HenonComposition::single(f).escape_radius() >= 2.0);

        // scaling coefficients up increases the radius
        let big =
            HenonFactor::new(UniPoly::new(vec![int(10), int(0), int(1)], 'w'), int(4)).unwrap();
        assert!(big.escape_radius() > 3.0);
    }

    #[test]
    fn escape_region_grows_monotonically() {
        // sampled growth property: |w| >= R >= |z| implies the second
        // coordinate modulus strictly increases under the map
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let f = basic_factor().to_approx();
        let h = HenonComposition::single(f);
        let r = h.escape_radius();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10_000 {
            let mag = r + rng.random::<f64>() * 10.0;
            let theta = rng.random::<f64>() * std::f64::consts::TAU;
            let w = ApproxScalar::new(mag * theta.cos(), mag * theta.sin());
            let zmag = rng.random::<f64>() * mag;
            let phi = rng.random::<f64>() * std::f64::consts::TAU;
            let z = ApproxScalar::new(zmag * phi.cos(), zmag * phi.sin());
            let mut prev = w.magnitude();
            let mut cur = (z, w);
            for _ in 0..50 {
                cur = h.apply((&cur.0, &cur.1));
                let next = cur.1.magnitude();
                if !next.is_finite() {
                    break;
                }
                assert!(next >= 2.0 * prev, "escape growth violated");
                prev = next;
            }
        }
    }
}
