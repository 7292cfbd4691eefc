//! The involution on the unipotent monoid and its identities.

use totpos::involutions::{check_phi_identities, phi, phiprime};
use totpos::rootdata::{word1, CartanDatum};
use totpos::semifield::{PosRat, TropInt};
use totpos::umonoid::UElement;

fn main() {
    let d = CartanDatum::parse("A2").unwrap();
    let w = word1(&[2, 1, 2]);
    let x = UElement::from_word(&d, &w, &[1, 2, 3].map(PosRat::int)).unwrap();
    let y = phi(&x).unwrap();
    let show = |u: &UElement<PosRat>| u.coords_in(&w).unwrap().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    println!("x        = (2,1,2): {}", show(&x));
    println!("phi(x)   = (2,1,2): {}", show(&y));
    println!("phi^2(x) = (2,1,2): {}", show(&phi(&y).unwrap()));
    println!("phi'(x)  = {}", phiprime(&x).unwrap());

    let t = UElement::from_word(&d, &w, &[2, -1, 0].map(TropInt::new)).unwrap();
    println!("tropical: {t} -> {}", phi(&t).unwrap());

    let r = check_phi_identities(&CartanDatum::parse("A3").unwrap(), 10, 3).unwrap();
    for c in &r.checks {
        println!("{:>12}: {} passed, {} failed", c.name, c.passed, c.failed);
    }
}
