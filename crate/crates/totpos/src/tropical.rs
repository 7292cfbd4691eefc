//! Zones, the tropicalization harness, and the mod 2 class count.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::chart_transition;
use crate::charts::{self, Chart, Letter};
use crate::error::{Error, Result};
use crate::flagcharts::{xi_chart, FlagPoint};
use crate::gmonoid::{GElement, Generator};
use crate::involutions::{box_points, phi, CheckCount, Counterexample, ScanReport, Verdict};
use crate::rootdata::{CartanDatum, WeylElement, Word};
use crate::semifield::{monomial_lift, valuation, valuations, PosRatFunc, Sample, TropInt};
use crate::umonoid::UElement;

/// Structures over rational functions with a componentwise zone.
pub trait Zone {
    type Out;
    fn zone_of(&self) -> Self::Out;
}

impl Zone for UElement<PosRatFunc> {
    type Out = UElement<TropInt>;
    fn zone_of(&self) -> Self::Out {
        self.zone()
    }
}

impl Zone for GElement<PosRatFunc> {
    type Out = GElement<TropInt>;
    fn zone_of(&self) -> Self::Out {
        self.zone()
    }
}

impl Zone for FlagPoint<PosRatFunc> {
    type Out = FlagPoint<TropInt>;
    fn zone_of(&self) -> Self::Out {
        self.map(valuation)
    }
}

impl Zone for Vec<PosRatFunc> {
    type Out = Vec<TropInt>;
    fn zone_of(&self) -> Self::Out {
        valuations(self)
    }
}

pub fn zone_of<T: Zone>(x: &T) -> T::Out {
    x.zone_of()
}

pub const PROCEDURES: [&str; 6] = [
    "chart_transition",
    "umonoid_mul",
    "gmonoid_mul",
    "phi",
    "flag_move",
    "constant",
];

fn random_trop(n: usize, rng: &mut ChaCha8Rng) -> Vec<TropInt> {
    (0..n).map(|_| TropInt::sample(rng)).collect()
}

fn pick<T: Clone>(xs: &[T], rng: &mut ChaCha8Rng) -> T {
    xs[rng.gen_range(0..xs.len())].clone()
}

fn random_u(datum: &CartanDatum, w: &WeylElement, rng: &mut ChaCha8Rng) -> (UElement<PosRatFunc>, UElement<TropInt>) {
    let word = w.canonical_word();
    let n = random_trop(word.len(), rng);
    let lifted = monomial_lift(rng, &n);
    (
        UElement::from_word(datum, &word, &lifted).expect("reduced"),
        UElement::from_word(datum, &word, &n).expect("reduced"),
    )
}

fn random_g(datum: &CartanDatum, rng: &mut ChaCha8Rng) -> (GElement<PosRatFunc>, GElement<TropInt>) {
    let all = datum.elements();
    let (w, w2) = (pick(&all, rng), pick(&all, rng));
    let (u1, v1) = random_u(datum, &w, rng);
    let (u2, v2) = random_u(datum, &w2, rng);
    let n = random_trop(datum.rank(), rng);
    let t = monomial_lift(rng, &n);
    (
        GElement::from_parts(u1, t, u2).expect("same datum"),
        GElement::from_parts(v1, n, v2).expect("same datum"),
    )
}

fn random_gens(datum: &CartanDatum, len: usize, rng: &mut ChaCha8Rng) -> (GElement<PosRatFunc>, GElement<TropInt>) {
    let r = datum.rank();
    let (mut gs, mut ns) = (Vec::new(), Vec::new());
    for _ in 0..len {
        let i = rng.gen_range(0..r);
        let l = match rng.gen_range(0..3) {
            0 => Letter::Pos(i),
            1 => Letter::Neg(i),
            _ => Letter::Torus(i),
        };
        let n = random_trop(1, rng);
        gs.push(Generator::from_letter(l, monomial_lift(rng, &n).remove(0)));
        ns.push(Generator::from_letter(l, n[0].clone()));
    }
    (GElement::from_generators(datum, &gs), GElement::from_generators(datum, &ns))
}

fn mismatch(proc_id: &str, inputs: &[TropInt], lhs: String, rhs: String) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample {
        check: proc_id.into(),
        coords: inputs.iter().map(|x| x.to_string()).collect(),
        lambda: vec![],
        lhs,
        rhs,
    })
}

/// One monomial case: valuation after the procedure against the procedure on valuations.
fn trop_case(proc_id: &str, datum: &CartanDatum, flag_charts: &[Chart], rng: &mut ChaCha8Rng) -> Result<Option<Counterexample>> {
    let w0 = datum.longest_element();
    match proc_id {
        "chart_transition" => {
            let words: Vec<Word> = w0.reduced_words().take(64).collect();
            let (a, b) = (pick(&words, rng), pick(&words, rng));
            let n = random_trop(a.len(), rng);
            let x = monomial_lift(rng, &n);
            let lhs = valuations(&chart_transition(datum, &a, &b, &x)?);
            let rhs = chart_transition(datum, &a, &b, &n)?;
            Ok(mismatch(proc_id, &n, format!("{lhs:?}"), format!("{rhs:?}")))
        }
        "umonoid_mul" => {
            let all = datum.elements();
            let (x, nx) = random_u(datum, &pick(&all, rng), rng);
            let (y, ny) = random_u(datum, &pick(&all, rng), rng);
            let lhs = x.mul(&y).zone();
            let rhs = nx.mul(&ny);
            let inputs: Vec<TropInt> = nx.coords().iter().chain(ny.coords()).cloned().collect();
            Ok(mismatch(proc_id, &inputs, lhs.to_string(), rhs.to_string()))
        }
        "gmonoid_mul" => {
            let (x, nx) = random_g(datum, rng);
            let (y, ny) = random_g(datum, rng);
            let lhs = x.mul(&y).zone();
            let rhs = nx.mul(&ny);
            let inputs: Vec<TropInt> = nx.canonical_chart().1.into_iter().chain(ny.canonical_chart().1).collect();
            Ok(mismatch(proc_id, &inputs, lhs.to_string(), rhs.to_string()))
        }
        "phi" => {
            let (x, nx) = random_u(datum, &w0, rng);
            let lhs = phi(&x)?.zone();
            let rhs = phi(&nx)?;
            Ok(mismatch(proc_id, nx.coords(), lhs.to_string(), rhs.to_string()))
        }
        "flag_move" => {
            let (h1, h2) = (pick(flag_charts, rng), pick(flag_charts, rng));
            let n = random_trop(h1.len(), rng);
            let p = FlagPoint::new(datum, h1.clone(), monomial_lift(rng, &n))?;
            let np = FlagPoint::new(datum, h1, n.clone())?;
            let (g, ng) = random_gens(datum, rng.gen_range(1..=2), rng);
            let lhs = p.change_chart(&h2)?.act(&g)?.zone_of();
            let rhs = np.change_chart(&h2)?.act(&ng)?;
            Ok(mismatch(proc_id, &n, lhs.to_string(), rhs.to_string()))
        }
        "constant" => {
            let n = random_trop(1, rng);
            let x = monomial_lift(rng, &n);
            Ok(mismatch(proc_id, &n, valuation(&x[0]).to_string(), n[0].to_string()))
        }
        other => Err(Error::UnknownProcedure(other.into())),
    }
}

/// Runs a registered procedure on monomial inputs over rational functions and
/// on their valuations over the tropical integers.
pub fn tropicalize_check(proc_id: &str, datum: &CartanDatum, samples: usize, seed: u64) -> Result<ScanReport> {
    if !PROCEDURES.contains(&proc_id) {
        return Err(Error::UnknownProcedure(proc_id.into()));
    }
    if proc_id == "phi" && !datum.is_type_a() {
        return Err(Error::TypeNotSupported);
    }
    let flag_charts: Vec<Chart> = if proc_id == "flag_move" {
        let mut v: Vec<Chart> = charts::component(datum, &xi_chart(datum, datum.longest_word()), true)
            .into_iter()
            .collect();
        v.sort();
        v
    } else {
        Vec::new()
    };
    let results: Vec<Option<Counterexample>> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            trop_case(proc_id, datum, &flag_charts, &mut rng)
        })
        .collect::<Result<_>>()?;
    let failed = results.iter().filter(|c| c.is_some()).count();
    let counterexamples: Vec<Counterexample> = results.into_iter().flatten().collect();
    Ok(ScanReport {
        grid: format!("{proc_id} on {} x {samples} monomial samples, seed {seed}", datum.name()),
        checks: vec![CheckCount {
            name: proc_id.into(),
            passed: samples - failed,
            failed,
        }],
        verdict: if counterexamples.is_empty() {
            Verdict::AllPass
        } else {
            Verdict::CounterexamplesFound
        },
        counterexamples,
    })
}

/// Work allowed for one class count, in chart evaluations.
pub const MAX_SIGMA2_WORK: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sigma2Report {
    #[serde(rename = "type")]
    pub datum: String,
    pub radius: u32,
    pub components: usize,
    pub previous: Option<usize>,
    pub stable: bool,
    /// Smallest point of each class in the reference chart, sorted.
    #[serde(skip)]
    pub representatives: Vec<Vec<i64>>,
}

/// Classes of the mod 2 relation restricted to `[-radius, radius]^nu` in `reference`.
pub fn sigma2_classes(datum: &CartanDatum, radius: u32, reference: &[usize], max_work: u128) -> Result<Vec<Vec<i64>>> {
    let w0 = datum.longest_element();
    if !datum.is_reduced(reference) || datum.element(reference) != w0 {
        return Err(Error::NotReduced(reference.to_vec()));
    }
    let nu = datum.nu();
    if nu > 64 {
        return Err(Error::BoxTooLarge(u128::MAX, max_work));
    }
    let points = (2 * radius as u128 + 1).saturating_pow(nu as u32);
    if points > max_work {
        return Err(Error::BoxTooLarge(points, max_work));
    }
    let cap = (max_work / points) as usize;
    let words: Vec<Word> = w0.reduced_words().take(cap.saturating_add(1)).collect();
    let work = points * words.len() as u128;
    if words.len() > cap {
        return Err(Error::BoxTooLarge(work, max_work));
    }
    let pts: Vec<Vec<i64>> = box_points(nu, -(radius as i64), radius as i64).collect();
    let keys: Vec<Vec<u64>> = pts
        .par_iter()
        .map(|p| {
            let x: Vec<TropInt> = p.iter().map(|&v| TropInt::new(v)).collect();
            words
                .iter()
                .map(|w| {
                    let c = chart_transition(datum, reference, w, &x)?;
                    Ok(c.iter()
                        .enumerate()
                        .fold(0u64, |acc, (s, v)| acc | (((v.to_i64() & 1) as u64) << s)))
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<_>>()?;
    let mut uf = UnionFind::<usize>::new(pts.len());
    for k in 0..words.len() {
        let mut first: HashMap<u64, usize> = HashMap::new();
        for (idx, key) in keys.iter().enumerate() {
            let f = *first.entry(key[k]).or_insert(idx);
            uf.union(f, idx);
        }
    }
    let mut reps: HashMap<usize, usize> = HashMap::new();
    for idx in 0..pts.len() {
        reps.entry(uf.find(idx)).or_insert(idx);
    }
    let mut out: Vec<Vec<i64>> = reps.values().map(|&i| pts[i].clone()).collect();
    out.sort();
    Ok(out)
}

/// Class count at `radius`, compared with the count at `radius - 1`.
pub fn sigma2_components(datum: &CartanDatum, radius: u32) -> Result<Sigma2Report> {
    sigma2_components_in(datum, radius, datum.longest_word(), MAX_SIGMA2_WORK)
}

pub fn sigma2_components_in(datum: &CartanDatum, radius: u32, reference: &[usize], max_work: u128) -> Result<Sigma2Report> {
    let classes = sigma2_classes(datum, radius, reference, max_work)?;
    let previous = if radius > 0 {
        Some(sigma2_classes(datum, radius - 1, reference, max_work)?.len())
    } else {
        None
    };
    Ok(Sigma2Report {
        datum: datum.name().to_string(),
        radius,
        components: classes.len(),
        previous,
        stable: previous == Some(classes.len()),
        representatives: classes,
    })
}

impl std::fmt::Display for Sigma2Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "components: {} ({})",
            self.components,
            if self.stable { "stable" } else { "not stable" }
        )
    }
}
