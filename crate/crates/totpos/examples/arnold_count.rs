//! Counting classes of sign patterns mod 2 for small types.

use totpos::rootdata::CartanDatum;
use totpos::tropical::sigma2_components;

fn main() {
    for t in ["A1", "A2", "A3", "B2", "G2"] {
        let d = CartanDatum::parse(t).unwrap();
        let r = sigma2_components(&d, 2).unwrap();
        println!("{t}: {r}");
    }
}
