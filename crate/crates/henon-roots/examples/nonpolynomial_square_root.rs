//! The map F(z,w) = (-(z + w(w⁴+1)), -w) has the square-root family
//! φ(z,w) = (i(z + w(w⁴+1)/2 + w³k(w⁴)), iw) for any entire function k:
//! the k-dependent terms cancel termwise when squaring, so φ² = F holds
//! exactly for every polynomial truncation, independent of degree. With k
//! transcendental, φ is a nonpolynomial root of a polynomial map.
//!
//! Run: cargo run --release -p henon-roots --example nonpolynomial_square_root

use henon_roots::elementary::nonpolynomial_root_example;
use henon_roots::poly::UniPoly;
use henon_roots::scalar::{ExactScalar, Scalar};

fn main() {
    let truncations: Vec<(&str, UniPoly<ExactScalar>)> = vec![
        ("k = 0", UniPoly::zero('t')),
        ("k = t", UniPoly::variable('t')),
        (
            "k = 3t^7 - t^2",
            UniPoly::new(
                vec![
                    ExactScalar::zero(),
                    ExactScalar::zero(),
                    ExactScalar::from_int(-1),
                    ExactScalar::zero(),
                    ExactScalar::zero(),
                    ExactScalar::zero(),
                    ExactScalar::zero(),
                    ExactScalar::from_int(3),
                ],
                't',
            ),
        ),
    ];

    for (label, k) in truncations {
        let (phi, target) = nonpolynomial_root_example(&k).unwrap();
        println!("{label}:");
        println!("  phi   = {phi}");
        println!("  phi^2 = {}", phi.iterate(2).unwrap());
        assert_eq!(phi.iterate(2).unwrap(), target);
        println!("  equals F exactly\n");
    }
    println!("the cancellation is termwise: any truncation degree works");
}
