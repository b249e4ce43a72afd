//! Any root of an elementary non-flow map is conjugate to a polynomial one.
//! The pipeline: split the triangular root's h at the exponent threshold,
//! solve the cohomological equation f(aw) - a^μ f(w) = h₂(w) coefficientwise,
//! and conjugate by ψ = (z + f(w), w). Resonant exponents (a^j = a^μ) are
//! rejected by name.
//!
//! Run: cargo run --release -p henon-roots --example conjugate_perturbed_root

use henon_roots::cli::parse_map;
use henon_roots::elementary::{
    conjugate_to_polynomial, construct_root, twisted_sum_check, TriangularMap,
};
use henon_roots::poly::UniPoly;
use henon_roots::scalar::{ExactScalar, Scalar};

fn main() {
    let f = parse_map("elem_nonflow(r=2, mu=1, q=t^2 + 1, beta=-1)")
        .unwrap()
        .expr
        .to_elem_nonflow()
        .cloned()
        .unwrap();
    let g = construct_root(&f, 1).unwrap(); // cube root
    let tri = TriangularMap::from_map(&g).unwrap();
    println!("F = {}", f.as_map());
    println!("cube root G = {g}");
    println!(
        "twisted-sum identity holds: {}\n",
        twisted_sum_check(&tri, &f, 3)
    );

    // perturb by a coboundary f0(aw) - a^mu f0(w): still conjugate to G
    let t0 = (f.mu() + f.k() * f.r() + 1) as usize;
    let f0 = UniPoly::monomial(ExactScalar::from_ratio(2, 3), t0, 'w');
    let coboundary = f0
        .scale_argument(&tri.a)
        .sub(&f0.scale(&tri.a.pow_int(f.mu() as i64).unwrap()));
    let mut perturbed = tri.clone();
    perturbed.h = perturbed.h.add(&coboundary);
    println!("perturbed root phi = {}", perturbed.as_map());
    println!(
        "twisted sum is blind to the coboundary: {}",
        twisted_sum_check(&perturbed, &f, 3)
    );

    let (psi, conjugated) = conjugate_to_polynomial(&perturbed, &f, 3).unwrap();
    println!("psi = {psi}");
    println!("psi^-1 . phi . psi = {conjugated}");
    assert_eq!(conjugated, g);
    println!("recovered the unperturbed polynomial root; psi^-1 . phi^3 . psi = F verified\n");

    // a resonant perturbation cannot be conjugated away
    let t_res = (f.mu() + f.r() * (f.k() + 1)) as usize;
    let mut resonant = tri.clone();
    resonant.h = resonant
        .h
        .add(&UniPoly::monomial(ExactScalar::one(), t_res, 'w'));
    match conjugate_to_polynomial(&resonant, &f, 3) {
        Err(e) => println!("resonant perturbation at w^{t_res} rejected: {e}"),
        Ok(_) => unreachable!("resonant exponents cannot be absorbed"),
    }
}
