//! The involutions of the longest-element piece, the rescalings `S_lambda`,
//! and scanners for the two open identities.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gmonoid::GElement;
use crate::matrixmodel::phi_matrix;
use crate::semifield::{valuation, PosRat, PosRatFunc, Sample, Semifield, TropInt, Unit};
use crate::umonoid::UElement;
use crate::rootdata::CartanDatum;

/// Semifields on which the involution is computable.
pub trait PhiScalar: Semifield {
    fn phi(u: &UElement<Self>) -> Result<UElement<Self>>;
}

impl PhiScalar for PosRat {
    fn phi(u: &UElement<Self>) -> Result<UElement<Self>> {
        phi_matrix(u)
    }
}

impl PhiScalar for PosRatFunc {
    fn phi(u: &UElement<Self>) -> Result<UElement<Self>> {
        phi_matrix(u)
    }
}

impl PhiScalar for TropInt {
    /// Lifts `n` to `t^n`, computes over rational functions, takes valuations.
    fn phi(u: &UElement<Self>) -> Result<UElement<Self>> {
        let lifted = u.map(|n| PosRatFunc::t_pow(n.to_i64()));
        Ok(phi_matrix(&lifted)?.map(valuation))
    }
}

impl PhiScalar for Unit {
    fn phi(u: &UElement<Self>) -> Result<UElement<Self>> {
        if !u.datum().is_type_a() {
            return Err(Error::TypeNotSupported);
        }
        if *u.weyl() != u.datum().longest_element() {
            return Err(Error::NotLongest);
        }
        Ok(u.clone())
    }
}

pub fn phi<K: PhiScalar>(x: &UElement<K>) -> Result<UElement<K>> {
    K::phi(x)
}

pub fn phiprime<K: PhiScalar>(x: &UElement<K>) -> Result<UElement<K>> {
    Ok(phi(&x.psi())?.psi())
}

/// `i^a -> i^{a lambda(i)}`.
pub fn s_lambda<K: Semifield>(x: &UElement<K>, lambda: &[K]) -> UElement<K> {
    let coords: Vec<K> = x
        .word()
        .iter()
        .zip(x.coords())
        .map(|(&i, a)| a.mul(&lambda[i]))
        .collect();
    UElement::from_word(x.datum(), x.word(), &coords).expect("same word")
}

/// `i^a -> i^{a lambda(i)}`, `(-i)^a -> (-i)^{a / lambda(i)}`, torus fixed.
pub fn s_lambda_g<K: Semifield>(x: &GElement<K>, lambda: &[K]) -> GElement<K> {
    let inv: Vec<K> = lambda.iter().map(|l| l.inv()).collect();
    GElement::from_parts(
        s_lambda(x.uplus(), lambda),
        x.torus().to_vec(),
        s_lambda(x.uminus(), &inv),
    )
    .expect("same datum")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    AllPass,
    CounterexamplesFound,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::AllPass => "all-pass",
            Verdict::CounterexamplesFound => "counterexamples-found",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub coords: Vec<String>,
    pub lambda: Vec<i64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckCount {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub grid: String,
    pub checks: Vec<CheckCount>,
    pub counterexamples: Vec<Counterexample>,
    pub verdict: Verdict,
}

impl ScanReport {
    fn from_results(grid: String, names: &[&str], results: Vec<(usize, Option<Counterexample>)>) -> Self {
        let mut checks: Vec<CheckCount> = names
            .iter()
            .map(|n| CheckCount {
                name: n.to_string(),
                passed: 0,
                failed: 0,
            })
            .collect();
        let mut counterexamples = Vec::new();
        for (k, c) in results {
            match c {
                None => checks[k].passed += 1,
                Some(c) => {
                    checks[k].failed += 1;
                    counterexamples.push(c);
                }
            }
        }
        let verdict = if counterexamples.is_empty() {
            Verdict::AllPass
        } else {
            Verdict::CounterexamplesFound
        };
        ScanReport {
            grid,
            checks,
            counterexamples,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::AllPass
    }
}

fn strings<K: Semifield>(xs: &[K]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn compare<K: Semifield>(check: &str, x: &UElement<K>, lambda: &[i64], lhs: &UElement<K>, rhs: &UElement<K>) -> Option<Counterexample> {
    if lhs == rhs {
        None
    } else {
        Some(Counterexample {
            check: check.into(),
            coords: strings(x.coords()),
            lambda: lambda.to_vec(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    }
}

pub const PHI_CHECKS: [&str; 6] = [
    "phi-squared",
    "phiprime-squared",
    "phi-psi-conjugate",
    "phi-t-scale",
    "s-lambda-phi-commute",
    "s-lambda-phi-squared",
];

fn phi_case<K: PhiScalar + Sample>(datum: &CartanDatum, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, Option<Counterexample>)>> {
    let w0 = datum.longest_element();
    let x = UElement::<K>::random(datum, &w0, rng);
    let lam: Vec<K> = (0..datum.rank()).map(|_| K::sample(rng)).collect();
    let lam_inv: Vec<K> = lam.iter().map(|l| l.inv()).collect();
    let i = rand::Rng::gen_range(rng, 0..datum.rank());
    let a = K::sample(rng);
    let p = phi(&x)?;
    let pp = phiprime(&x)?;
    let none: &[i64] = &[];
    let mut out = vec![
        (0, compare(PHI_CHECKS[0], &x, none, &phi(&p)?, &x)),
        (1, compare(PHI_CHECKS[1], &x, none, &phiprime(&pp)?, &x)),
        (2, compare(PHI_CHECKS[2], &x, none, &p, &phiprime(&x.psi())?.psi())),
    ];
    let lhs = phi(&x.t_scale(i, &a)?)?;
    let rhs = p.t_scale(datum.bang(i), &a.inv())?;
    out.push((3, compare(PHI_CHECKS[3], &x, &[i as i64 + 1], &lhs, &rhs)));
    out.push((4, compare(PHI_CHECKS[4], &x, none, &s_lambda(&p, &lam), &phi(&s_lambda(&x, &lam_inv))?)));
    let once = s_lambda(&p, &lam);
    out.push((5, compare(PHI_CHECKS[5], &x, none, &s_lambda(&phi(&once)?, &lam), &x)));
    Ok(out)
}

/// Randomized check of the involution identities over positive rationals and,
/// through the monomial lift, over the tropical integers.
pub fn check_phi_identities(datum: &CartanDatum, samples: usize, seed: u64) -> Result<ScanReport> {
    if !datum.is_type_a() {
        return Err(Error::TypeNotSupported);
    }
    let results: Vec<Vec<(usize, Option<Counterexample>)>> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            let mut v = phi_case::<PosRat>(datum, &mut rng)?;
            v.extend(phi_case::<TropInt>(datum, &mut rng)?);
            Ok(v)
        })
        .collect::<Result<_>>()?;
    Ok(ScanReport::from_results(
        format!("{} x {samples} samples (posrat, tropint), seed {seed}", datum.name()),
        &PHI_CHECKS,
        results.into_iter().flatten().collect(),
    ))
}

/// `z_i(x) <= lambda(i)` for every `i`.
pub fn in_u_lambda(x: &UElement<TropInt>, lambda: &[i64]) -> Result<bool> {
    if !x.is_nonneg() {
        return Err(Error::NotInN);
    }
    for (i, &l) in lambda.iter().enumerate() {
        if x.z_coord(i)?.to_i64() > l {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `S_lambda Phi(x)` has nonnegative coordinates.
pub fn in_u_lambda_tilde(x: &UElement<TropInt>, lambda: &[i64]) -> Result<bool> {
    if !x.is_nonneg() {
        return Err(Error::NotInN);
    }
    let lam: Vec<TropInt> = lambda.iter().map(|&l| TropInt::new(l)).collect();
    Ok(s_lambda(&phi(x)?, &lam).is_nonneg())
}

/// All points of `[lo, hi]^n`, in lexicographic order.
pub fn box_points(n: usize, lo: i64, hi: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (hi - lo + 1).max(0) as u64;
    let total = side.checked_pow(n as u32).unwrap_or(u64::MAX);
    (0..total).map(move |mut code| {
        let mut v = vec![lo; n];
        for slot in v.iter_mut().rev() {
            *slot = lo + (code % side) as i64;
            code /= side;
        }
        v
    })
}

/// Points scanned before a scan refuses to run.
pub const MAX_SCAN_POINTS: u128 = 5_000_000;

/// Compares the two descriptions of the lambda-bounded set on `[0, radius]^nu`
/// in the chart of the canonical longest word.
pub fn scan_u_lambda(datum: &CartanDatum, lambdas: &[Vec<i64>], radius: u32) -> Result<ScanReport> {
    if !datum.is_type_a() {
        return Err(Error::TypeNotSupported);
    }
    let nu = datum.nu();
    let points = (radius as u128 + 1).saturating_pow(nu as u32);
    if points.saturating_mul(lambdas.len().max(1) as u128) > MAX_SCAN_POINTS {
        return Err(Error::BoxTooLarge(points, MAX_SCAN_POINTS));
    }
    for l in lambdas {
        if l.len() != datum.rank() {
            return Err(Error::WrongLength {
                expected: datum.rank(),
                got: l.len(),
            });
        }
    }
    let word = datum.longest_word().to_vec();
    let pts: Vec<Vec<i64>> = box_points(nu, 0, radius as i64).collect();
    let results: Vec<Vec<(usize, Option<Counterexample>)>> = pts
        .par_iter()
        .map(|p| {
            let coords: Vec<TropInt> = p.iter().map(|&n| TropInt::new(n)).collect();
            let x = UElement::from_word(datum, &word, &coords)?;
            let zs: Vec<i64> = (0..datum.rank())
                .map(|i| x.z_coord(i).map(|z| z.to_i64()))
                .collect::<Result<_>>()?;
            let ph = phi(&x)?;
            Ok(lambdas
                .iter()
                .map(|l| {
                    let a = zs.iter().zip(l).all(|(z, b)| z <= b);
                    let lam: Vec<TropInt> = l.iter().map(|&v| TropInt::new(v)).collect();
                    let b = s_lambda(&ph, &lam).is_nonneg();
                    let c = (a != b).then(|| Counterexample {
                        check: "u-lambda".into(),
                        coords: p.iter().map(|v| v.to_string()).collect(),
                        lambda: l.clone(),
                        lhs: a.to_string(),
                        rhs: b.to_string(),
                    });
                    (0, c)
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let grid = format!(
        "{} box [0,{radius}]^{nu} in chart {}, lambda in {:?}",
        datum.name(),
        crate::rootdata::fmt_word(&word),
        lambdas
    );
    Ok(ScanReport::from_results(grid, &["u-lambda"], results.into_iter().flatten().collect()))
}

/// Compares `theta_lambda(Phi(x))` with `theta_{-lambda!}(x)` at random positive rationals.
pub fn scan_theta_phi(datum: &CartanDatum, lambdas: &[Vec<i64>], samples: usize, seed: u64) -> Result<ScanReport> {
    if !datum.is_type_a() {
        return Err(Error::TypeNotSupported);
    }
    let w0 = datum.longest_element();
    let results: Vec<Vec<(usize, Option<Counterexample>)>> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            let x = UElement::<PosRat>::random(datum, &w0, &mut rng);
            let p = phi(&x)?;
            Ok(lambdas
                .iter()
                .map(|l| {
                    let neg_bang: Vec<i64> = datum.bang_weight(l).iter().map(|v| -v).collect();
                    let lhs = p.theta(l);
                    let rhs = x.theta(&neg_bang);
                    let c = (lhs != rhs).then(|| Counterexample {
                        check: "theta-phi".into(),
                        coords: strings(x.coords()),
                        lambda: l.clone(),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                    (0, c)
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let grid = format!(
        "{} x {samples} samples, lambda in {:?}, seed {seed}",
        datum.name(),
        lambdas
    );
    Ok(ScanReport::from_results(grid, &["theta-phi"], results.into_iter().flatten().collect()))
}
