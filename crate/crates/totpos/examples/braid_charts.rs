//! Moving coordinates between reduced words of the longest element.

use totpos::braid::{chart_transition, fold_rank2};
use totpos::rootdata::CartanDatum;
use totpos::semifield::{PosRat, TropInt};

fn main() {
    for t in ["A2", "B2", "G2"] {
        let d = CartanDatum::parse(t).unwrap();
        let words: Vec<_> = d.longest_element().reduced_words().collect();
        let ones = vec![PosRat::int(1); d.nu()];
        let to = chart_transition(&d, &words[0], &words[1], &ones).unwrap();
        let to_s: Vec<String> = to.iter().map(|x| x.to_string()).collect();
        println!("{t}: {:?} -> {:?}: {}", words[0], words[1], to_s.join(" "));
    }

    // the order-4 move over the tropical semifield
    let b2 = CartanDatum::parse("B2").unwrap();
    let x = [3, -1, 2, 0].map(TropInt::new);
    let y = fold_rank2(&b2, 0, 1, &x).unwrap();
    println!("B2 tropical: {x:?} -> {y:?}");
}
