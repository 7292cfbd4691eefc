//! Exploratory scans comparing two descriptions of the same subsets.

use totpos::involutions::{scan_theta_phi, scan_u_lambda};
use totpos::rootdata::CartanDatum;

fn main() {
    let a2 = CartanDatum::parse("A2").unwrap();
    let r = scan_u_lambda(&a2, &[vec![1, 2], vec![3, 0]], 3).unwrap();
    println!("{}: {}", r.grid, r.verdict);

    let a3 = CartanDatum::parse("A3").unwrap();
    let r = scan_u_lambda(&a3, &[vec![1, 0, 1]], 2).unwrap();
    println!("{}: {} ({} counterexamples)", r.grid, r.verdict, r.counterexamples.len());

    let r = scan_theta_phi(&a2, &[vec![1, 1], vec![2, 0]], 30, 11).unwrap();
    println!("{}: {}", r.grid, r.verdict);
    for c in r.counterexamples.iter().take(3) {
        println!("  {} at {:?}, lambda {:?}: {} vs {}", c.check, c.coords, c.lambda, c.lhs, c.rhs);
    }
}
