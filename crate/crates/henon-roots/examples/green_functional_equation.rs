//! The forward Green's function satisfies G⁺∘H = d·G⁺, and a compositional
//! root of order n scales it by exactly d^{1/n}. This example estimates G⁺
//! numerically, checks the functional equation on escaping points, and fits
//! the multiplier of a square root.
//!
//! Run: cargo run --release -p henon-roots --example green_functional_equation

use henon_roots::cli::parse_map;
use henon_roots::green::{fit_multiplier, green_plus, GreenParams};
use henon_roots::scalar::ApproxScalar;
use num_complex::Complex64;

fn main() {
    let h = parse_map("henon(p=w^2, a=-1)^2")
        .unwrap()
        .expr
        .to_henon_composition()
        .unwrap()
        .to_approx();
    let d = h.degree() as f64;
    let prm = GreenParams::for_composition(&h);
    println!(
        "H of degree {d}, escape radius {}, tol {}",
        prm.escape_radius, prm.tol
    );

    // the functional equation at a few escaping points
    println!("\nG+(H(p)) versus d*G+(p):");
    for (z, w) in [(0.0, 25.0), (3.0, 8.0), (-7.0, 9.5), (0.5, 1e5)] {
        let pt = (Complex64::new(z, 0.0), Complex64::new(w, 0.0));
        let g = green_plus(pt, &h, &prm);
        let (iz, iw) = h.apply((&ApproxScalar(pt.0), &ApproxScalar(pt.1)));
        let gh = green_plus((iz.0, iw.0), &h, &prm);
        println!(
            "  p = ({z:>5}, {w:>7}): G+ = {:>12.8} , G+ after one step = {:>13.8} , defect {:.2e}",
            g.value,
            gh.value,
            (gh.value - d * g.value).abs()
        );
    }

    // the multiplier of a square root is sqrt(d)
    let f = parse_map("(w, z + w^2)")
        .unwrap()
        .expr
        .to_poly_map()
        .unwrap();
    let fit = fit_multiplier(&f.to_approx(), &h, &prm, 300, 0).unwrap();
    println!(
        "\nmultiplier of the square root: b = {:.10} over {} samples (residual {:.2e})",
        fit.multiplier, fit.samples, fit.residual
    );
    println!(
        "b^2 = {:.10} against d = {d}",
        fit.multiplier * fit.multiplier
    );
}
