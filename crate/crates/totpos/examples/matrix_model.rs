//! Evaluating monoid elements as matrices in SL_n.

use totpos::gmonoid::GElement;
use totpos::matrixmodel::{eval_g, eval_u, theta_tilde};
use totpos::rootdata::CartanDatum;
use totpos::semifield::PosRat;
use totpos::umonoid::UElement;

fn show(rows: &[Vec<num_rational::BigRational>]) {
    for r in rows {
        let s: Vec<String> = r.iter().map(|x| format!("{x:>6}")).collect();
        println!("  [{}]", s.join(" "));
    }
}

fn main() {
    let d = CartanDatum::parse("A2").unwrap();
    let u = UElement::from_word(&d, &[0, 1, 0], &[PosRat::int(1), PosRat::int(2), PosRat::int(3)]).unwrap();
    let m = eval_u(&u).unwrap();
    println!("{u}:");
    show(m.rows());
    println!("minor character (1,1): {}", theta_tilde(&m, &[1, 1]).unwrap());
    println!("chart character (1,1): {}", u.theta(&[1, 1]));

    let g = GElement::from_chart(&d, &totpos::charts::parse_chart("-1,~1,~2,2").unwrap(), &[2, 1, 1, 5].map(PosRat::int)).unwrap();
    println!("{g}:");
    show(eval_g(&g).unwrap().rows());
}
