//! Products, the antiautomorphism, characters and zero patterns in the unipotent monoid.

use totpos::rootdata::{word1, CartanDatum};
use totpos::semifield::{PosRat, TropInt};
use totpos::umonoid::UElement;

fn main() {
    let d = CartanDatum::parse("A3").unwrap();
    let x = UElement::from_letters(&d, &[(0, PosRat::int(1)), (1, PosRat::int(2)), (0, PosRat::int(3))]);
    let y = UElement::from_letters(&d, &[(2, PosRat::int(1)), (1, PosRat::from_ints(1, 2))]);
    let xy = x.mul(&y);
    println!("x  = {x}");
    println!("y  = {y}");
    println!("xy = {xy}");
    println!("psi(xy) = {}", xy.psi());
    println!("theta_(1,0,1)(xy) = {}", xy.theta(&[1, 0, 1]));

    let w = word1(&[1, 2, 1, 3, 2, 1]);
    let z = UElement::from_word(&d, &w, &[0, 1, 0, 2, 0, 0].map(TropInt::new)).unwrap();
    let chi = z.chi().unwrap();
    println!("chi of {z} = {:?} (length {})", chi.canonical_word(), chi.length());
}
