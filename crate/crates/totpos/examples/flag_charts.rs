//! Points of the positive flag variety in charts, moved by the monoid.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use totpos::charts::{component, fmt_chart};
use totpos::flagcharts::{xi_chart, FlagPoint};
use totpos::gmonoid::GElement;
use totpos::rootdata::CartanDatum;
use totpos::semifield::PosRat;

fn main() {
    let d = CartanDatum::parse("A2").unwrap();
    let start = xi_chart(&d, d.longest_word());
    let mut charts: Vec<_> = component(&d, &start, true).into_iter().collect();
    charts.sort();
    println!("{} charts reachable from {}", charts.len(), fmt_chart(&start));

    let p = FlagPoint::new(&d, start.clone(), (1..=5).map(PosRat::int).collect()).unwrap();
    println!("p = {p}");
    let q = p.change_chart(&charts[charts.len() / 2]).unwrap();
    println!("  = {q}");

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = GElement::<PosRat>::random(&d, &d.longest_element(), &d.identity(), &mut rng);
    let gp = p.act(&g).unwrap();
    println!("g = {g}");
    println!("g.p = {gp}");
    println!("reduced: {}", gp.reduce());
}
