//! Every plane polynomial automorphism is an alternating word of affine and
//! elementary letters. This example decomposes maps by degree peeling,
//! recomposes them exactly, and brings a twisted map to Hénon normal form.
//!
//! Run: cargo run --release -p henon-roots --example word_round_trip

use henon_roots::cli::parse_map;
use henon_roots::word::{decompose, henon_normal_form, random_reduced_word, HenonNormalForm};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() {
    // a Hénon map is the word [tau, shear]
    let h = parse_map("(w, w^2 - z)")
        .unwrap()
        .expr
        .to_poly_map()
        .unwrap();
    let word = decompose(&h).unwrap();
    println!("decomposition of {h}:");
    println!("{word}\n");
    assert_eq!(word.recompose().unwrap(), h);

    // random alternating words round-trip with their length preserved
    let mut rng = StdRng::seed_from_u64(1);
    for len in 1..=6 {
        let w = random_reduced_word(&mut rng, len, 3);
        let m = w.recompose().unwrap();
        let back = decompose(&m).unwrap();
        assert_eq!(back.recompose().unwrap(), m);
        assert_eq!(back.len(), w.len());
        println!(
            "length {len}: degree {:>3} map decomposed back to {} letters",
            m.total_degree().unwrap_or(0),
            back.len()
        );
    }

    // the twisted square root (ωw, ω²z + ω²w²) is affinely conjugate to a
    // monic Hénon map
    let twisted = parse_map("(zeta(3)*w, zeta(3)^2*z + zeta(3)^2*w^2)")
        .unwrap()
        .expr
        .to_poly_map()
        .unwrap();
    match henon_normal_form(&twisted).unwrap() {
        HenonNormalForm::Henon {
            composition,
            conjugator,
        } => {
            println!("\nnormal form of {twisted}:");
            println!("  composition = {composition}");
            println!("  conjugator  = {}", conjugator.as_map());
        }
        other => panic!("unexpected verdict {other:?}"),
    }

    // an elementary map gets the elementary verdict
    let elem = parse_map("(z + w^3, w)")
        .unwrap()
        .expr
        .to_poly_map()
        .unwrap();
    match henon_normal_form(&elem).unwrap() {
        HenonNormalForm::ConjugateToElementary { .. } => {
            println!("\n{elem} is conjugate to an elementary map");
        }
        other => panic!("unexpected verdict {other:?}"),
    }
}
