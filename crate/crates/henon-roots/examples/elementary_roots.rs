//! Elementary maps that are not time-1 flow maps have roots of arbitrarily
//! high order: dividing the polynomial part of
//! F(z,w) = (β^μ(z + w^μ q(w^r)), βw) by lr+1 yields an (lr+1)-st root.
//!
//! Run: cargo run --release -p henon-roots --example elementary_roots

use henon_roots::cli::parse_map;
use henon_roots::elementary::{construct_root, random_nonflow};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn main() {
    // the worked example: F(z,w) = (-(z + w(w⁴+1)), -w)
    let f = parse_map("elem_nonflow(r=2, mu=1, q=t^2 + 1, beta=-1)")
        .unwrap()
        .expr
        .to_elem_nonflow()
        .cloned()
        .unwrap();
    println!("F = {}", f.as_map());
    for l in 1..=3 {
        let order = l * f.r() + 1;
        let g = construct_root(&f, l).unwrap();
        println!("  order {order}: G = {g}");
        assert_eq!(g.iterate(order).unwrap(), f.as_map());
    }
    println!("  every construction was verified by exact symbolic composition\n");

    // randomized sweep
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..5 {
        let f = random_nonflow(&mut rng, 4, 3, 3);
        let l = rng.random_range(1..=3);
        let order = l * f.r() + 1;
        let g = construct_root(&f, l).unwrap();
        assert_eq!(g.iterate(order).unwrap(), f.as_map());
        println!("verified order-{order} root of {f}");
    }
}
