//! Property tests for the algebraic invariants: field axioms in the exact
//! scalars, homomorphy of the embedding, snap round-trips, associativity of
//! composition, and parser round-trips.

use proptest::prelude::*;

use henon_roots::cli::{parse_map, MapExpr};
use henon_roots::poly::{BiPoly, PolyMap2};
use henon_roots::scalar::{approximate, snap_to_exact, ExactScalar, Scalar};

type Q = ExactScalar;

/// Elements of small cyclotomic fields with small rational coordinates.
fn exact_scalar() -> impl Strategy<Value = Q> {
    let conductor = prop::sample::select(vec![1u32, 2, 3, 4, 6, 12]);
    (
        conductor,
        prop::collection::vec((-6i64..=6, 1i64..=4), 1..=4),
    )
        .prop_map(|(n, parts)| {
            let zeta = Q::primitive_root(n);
            let mut acc = Q::zero();
            let mut pw = Q::one();
            for (num, den) in parts {
                acc = acc.add(&Q::from_ratio(num, den).mul(&pw));
                pw = pw.mul(&zeta);
            }
            acc
        })
}

/// Rational multiples of roots of unity with small height: the set the
/// snapper recognizes.
fn snappable_scalar() -> impl Strategy<Value = (Q, u32)> {
    (
        prop::sample::select(vec![1u32, 3, 4, 6, 12]),
        -20i64..=20,
        1i64..=20,
        0u32..12,
    )
        .prop_map(|(n, num, den, k)| {
            let num = if num == 0 { 1 } else { num };
            let v = Q::from_ratio(num, den)
                .mul(&Q::primitive_root(n).pow_int(k as i64 % n as i64).unwrap());
            (v, n)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_field_axioms(a in exact_scalar(), b in exact_scalar(), c in exact_scalar()) {
        // associativity and commutativity
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        // distributivity
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // inverses
        if !a.is_zero() {
            prop_assert!(a.mul(&a.invert().unwrap()).is_one());
        }
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn embedding_is_a_homomorphism(a in exact_scalar(), b in exact_scalar()) {
        let ea = a.embed();
        let eb = b.embed();
        let scale = 1.0 + ea.norm() + eb.norm();
        prop_assert!((a.add(&b).embed() - (ea + eb)).norm() <= 1e-12 * scale);
        prop_assert!((a.mul(&b).embed() - (ea * eb)).norm() <= 1e-12 * scale * scale);
    }

    #[test]
    fn snap_inverts_the_embedding((x, conductor) in snappable_scalar()) {
        let approx = approximate(&x).unwrap();
        let back = snap_to_exact(approx, conductor, 1e-9).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn composition_is_associative(
        seeds in prop::collection::vec(0i64..100, 12)
    ) {
        // three small maps with coefficients from the seed pool
        let s = |k: usize| Q::from_int(seeds[k] % 4 - 2);
        let m1 = PolyMap2::new(
            BiPoly::from_terms([((1, 0), s(0)), ((0, 2), s(1)), ((0, 0), s(2))]),
            BiPoly::from_terms([((0, 1), s(3)), ((2, 0), s(4))]),
        );
        let m2 = PolyMap2::new(
            BiPoly::from_terms([((0, 1), s(5)), ((1, 1), s(6))]),
            BiPoly::from_terms([((1, 0), s(7)), ((0, 0), s(8))]),
        );
        let m3 = PolyMap2::new(
            BiPoly::from_terms([((1, 0), s(9)), ((0, 1), s(10))]),
            BiPoly::from_terms([((0, 1), s(11)), ((1, 0), Q::one())]),
        );
        let left = m1.compose(&m2).unwrap().compose(&m3).unwrap();
        let right = m1.compose(&m2.compose(&m3).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_agrees_with_evaluation(
        coeffs in prop::collection::vec(-3i64..=3, 8),
        zs in -5i64..=5,
        ws in -5i64..=5,
    ) {
        let c = |k: usize| Q::from_int(coeffs[k]);
        let outer = PolyMap2::new(
            BiPoly::from_terms([((1, 0), c(0)), ((0, 2), c(1))]),
            BiPoly::from_terms([((0, 1), c(2)), ((2, 0), c(3))]),
        );
        let inner = PolyMap2::new(
            BiPoly::from_terms([((0, 1), c(4)), ((0, 0), c(5))]),
            BiPoly::from_terms([((1, 0), c(6)), ((0, 2), c(7))]),
        );
        let composed = outer.compose(&inner).unwrap();
        let z = Q::from_int(zs);
        let w = Q::from_int(ws);
        let step = inner.eval((&z, &w));
        let direct = outer.eval((&step.0, &step.1));
        let via = composed.eval((&z, &w));
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn printed_pairs_reparse(
        coeffs in prop::collection::vec((-9i64..=9, 1i64..=3), 6)
    ) {
        let c = |k: usize| Q::from_ratio(coeffs[k].0, coeffs[k].1);
        let expr = MapExpr::Pair(
            BiPoly::from_terms([((1, 0), c(0)), ((0, 2), c(1)), ((0, 0), c(2))]),
            BiPoly::from_terms([((0, 1), c(3)), ((2, 1), c(4)), ((1, 0), c(5))]),
        );
        let printed = format!("{expr}");
        let reparsed = parse_map(&printed).unwrap();
        prop_assert_eq!(expr, reparsed.expr, "through '{}'", printed);
    }
}
