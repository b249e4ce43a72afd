//! The degree-4 composition H = F² with F(z,w) = (w, z + w²) has exactly
//! three square roots: F itself and its two twists F∘(ω²z, ωw), ω³ = 1.
//!
//! This example finds them numerically by coefficient matching, snaps the
//! coefficients back into the cyclotomic field, verifies each exactly by
//! symbolic squaring, and cross-checks against the diagonal symmetry family.
//!
//! Run: cargo run --release -p henon-roots --example three_square_roots

use henon_roots::cli::parse_map;
use henon_roots::roots::{find_roots, symmetry_roots, RootSearchConfig};

fn main() {
    let h = parse_map("henon(p=w^2, a=-1)^2")
        .unwrap()
        .expr
        .to_henon_composition()
        .unwrap();
    println!("H = {h}   (degree {})", h.degree());

    let cfg = RootSearchConfig::default();
    let found = find_roots(&h, 2, &cfg).unwrap();
    println!("\nsquare roots found by the search: {}", found.len());
    for (k, c) in found.iter().enumerate() {
        println!(
            "  {}: {}  [{}]",
            k + 1,
            c.map.exact().expect("snapped to the exact field"),
            c.status
        );
    }

    // F = (w, z + w²) is one root; the others are its diagonal twists
    let f = parse_map("(w, z + w^2)")
        .unwrap()
        .expr
        .to_poly_map()
        .unwrap();
    let family = symmetry_roots(&f, 2, &h).unwrap();
    println!("\nsymmetry family of F: {} members", family.len());
    for c in &family {
        let (sigma, rho) = c.twist.clone().unwrap();
        println!("  twist (sigma, rho) = ({sigma}, {rho})");
    }

    // the two routes agree
    assert_eq!(found.len(), 3);
    assert_eq!(family.len(), 3);
    for c in &family {
        let m = c.map.exact().unwrap();
        assert!(found
            .iter()
            .any(|d| d.map.exact().map(|x| x == m).unwrap_or(false)));
    }
    println!("\nboth routes agree: these are the only square roots of H");
}
