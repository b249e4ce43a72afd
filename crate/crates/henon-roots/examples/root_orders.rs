//! Compositional roots can exist only at finitely many orders: an order-n
//! root of a degree-d composition has integer degree d^{1/n} ≥ 2, so the
//! admissible orders are pinned by pure arithmetic.
//!
//! Run: cargo run --release -p henon-roots --example root_orders

use henon_roots::cli::parse_map;
use henon_roots::roots::{possible_root_orders, root_orders_of_degree};

fn main() {
    let inputs = [
        "henon(p=w^2, a=1)",                     // degree 2
        "henon(p=w^2, a=1)^2",                   // degree 4
        "henon(p=w^2, a=1) o henon(p=w^3, a=1)", // degree 6
        "henon(p=w^2, a=1)^6",                   // degree 64
        "henon(p=w^3, a=1)^4",                   // degree 81
    ];
    for src in inputs {
        let comp = parse_map(src).unwrap().expr.to_henon_composition().unwrap();
        let orders = possible_root_orders(&comp);
        println!(
            "degree {:>3}: orders {:?}    ({src})",
            comp.degree(),
            orders
        );
    }

    println!("\nperfect-power degrees up to 100:");
    for d in 2..=100u64 {
        let orders = root_orders_of_degree(d);
        if !orders.is_empty() {
            println!("  d = {d:>3}: {orders:?}");
        }
    }
}
