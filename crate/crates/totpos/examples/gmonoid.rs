//! Generator words in the big monoid and their canonical triples.

use totpos::charts::Letter;
use totpos::gmonoid::{GElement, Generator};
use totpos::rootdata::CartanDatum;
use totpos::semifield::PosRat;

fn main() {
    let d = CartanDatum::parse("B2").unwrap();
    let gens = [
        Generator::from_letter(Letter::Neg(0), PosRat::int(2)),
        Generator::from_letter(Letter::Pos(1), PosRat::int(1)),
        Generator::from_letter(Letter::Torus(0), PosRat::int(3)),
        Generator::from_letter(Letter::Pos(0), PosRat::from_ints(1, 2)),
    ];
    let g = GElement::from_generators(&d, &gens);
    println!("g = {g}");
    let (h, c) = g.canonical_chart();
    let cs: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    println!("canonical chart {}: {}", totpos::charts::fmt_chart(&h), cs.join(" "));
    println!("g*g = {}", g.mul(&g));
}
