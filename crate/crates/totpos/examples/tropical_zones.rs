//! Checking that procedures commute with passing to zones, and tropical chart moves.

use totpos::rootdata::CartanDatum;
use totpos::tropical::{tropicalize_check, PROCEDURES};

fn main() {
    let d = CartanDatum::parse("A2").unwrap();
    for p in PROCEDURES {
        let r = tropicalize_check(p, &d, 20, 1).unwrap();
        let n: usize = r.checks.iter().map(|c| c.passed).sum();
        println!("{p:>17}: {} ({n} cases)", r.verdict);
    }
}
