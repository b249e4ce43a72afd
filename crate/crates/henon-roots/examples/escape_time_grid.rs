//! Render the bounded-orbit mask and the Green's function of a Hénon map
//! over the symmetric slice z = conj(w), writing PGM images next to the
//! current directory.
//!
//! Run: cargo run --release -p henon-roots --example escape_time_grid

use henon_roots::cli::parse_map;
use henon_roots::green::GreenParams;
use henon_roots::grid::{emit_grid, write_pgm, GridQuantity, Slice};
use num_complex::Complex64;
use std::fs::File;

fn main() {
    let h = parse_map("henon(p=w^2 - 11/10, a=1)")
        .unwrap()
        .expr
        .to_henon_composition()
        .unwrap()
        .to_approx();
    let prm = GreenParams::for_composition(&h);
    let slice = Slice::conjugate_plane(Complex64::new(0.0, 0.0), 2.5);

    for (what, name) in [
        (GridQuantity::KPlusMask, "kplus_mask.pgm"),
        (GridQuantity::GreenPlus, "green_plus.pgm"),
    ] {
        let grid = emit_grid(&h, &slice, (256, 256), &prm, what);
        let bounded = grid.values.iter().filter(|&&v| v == 0.0).count();
        let mut file = File::create(name).unwrap();
        write_pgm(&grid, &mut file, true).unwrap();
        println!(
            "wrote {name}: 256x256, {} cells at value zero, min {:.4}, max {:.4}",
            bounded,
            grid.values.iter().cloned().fold(f64::INFINITY, f64::min),
            grid.values
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max),
        );
    }
    println!("view the images with any PGM-capable viewer");
}
