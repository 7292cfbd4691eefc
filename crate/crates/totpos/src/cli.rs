//! Command-line front end: literal parsing, subcommands and reports.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::braid::chart_transition;
use crate::charts::{fmt_chart, parse_chart, split_chart, Chart, Letter, MAX_CHART_STATES};
use crate::error::{parse_err, Error, Result};
use crate::flagcharts::FlagPoint;
use crate::gmonoid::{GElement, Generator};
use crate::involutions::{
    check_phi_identities, phi, phiprime, scan_theta_phi, scan_u_lambda, CheckCount, Counterexample, PhiScalar,
    ScanReport, Verdict,
};
use crate::matrixmodel::{eval_g, eval_u};
use crate::rootdata::{fmt_word, CartanDatum, Word};
use crate::semifield::{PosRat, PosRatFunc, Sample, Semifield, SemifieldTag, TropInt, Unit};
use crate::tropical::{sigma2_components_in, tropicalize_check, MAX_SIGMA2_WORK, PROCEDURES};
use crate::umonoid::UElement;

/// Seed used by every randomized subcommand unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 1729;

/// Upper bound for `--samples`.
pub const MAX_SAMPLES: usize = 1_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

// ---------------------------------------------------------------- literals

fn locate(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, expected } => Error::Parse {
            pos: pos + offset,
            expected,
        },
        other => other,
    }
}

/// Whitespace-separated pieces with their byte offsets.
fn pieces(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((b, &s[b..k]));
                start = None;
            }
            (false, None) => start = Some(k),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((b, &s[b..]));
    }
    out
}

/// One generator token `i^v`, `-i^v` or `~i^v`.
pub fn parse_generator<K: Semifield>(tok: &str) -> Result<Generator<K>> {
    let caret = tok
        .find('^')
        .ok_or_else(|| parse_err(tok.len(), "'^' after the letter"))?;
    let letter = Letter::parse(&tok[..caret]).map_err(|_| parse_err(0, "letter i, -i or ~i"))?;
    let value = K::parse(&tok[caret + 1..]).map_err(|e| locate(e, caret + 1))?;
    Ok(Generator::from_letter(letter, value))
}

/// Generator tokens separated by whitespace; positions refer to `s`.
pub fn parse_generators<K: Semifield>(datum: &CartanDatum, s: &str) -> Result<Vec<Generator<K>>> {
    let mut out = Vec::new();
    for (off, tok) in pieces(s) {
        let g: Generator<K> = parse_generator(tok).map_err(|e| locate(e, off))?;
        if g.letter().index() >= datum.rank() {
            return Err(parse_err(off, format!("index at most {}", datum.rank())));
        }
        out.push(g);
    }
    Ok(out)
}

/// Values separated by whitespace or commas.
pub fn parse_coords<K: Semifield>(s: &str) -> Result<Vec<K>> {
    let mut out = Vec::new();
    let mut off = 0;
    for part in s.split(|c: char| c == ',' || c.is_whitespace()) {
        if !part.is_empty() {
            out.push(K::parse(part).map_err(|e| locate(e, off))?);
        }
        off += part.len() + 1;
    }
    Ok(out)
}

pub fn parse_word(datum: &CartanDatum, s: &str) -> Result<Word> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    let mut out = Vec::new();
    for part in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.parse::<usize>() {
            Ok(i) if (1..=datum.rank()).contains(&i) => out.push(i - 1),
            _ => return Err(parse_err(0, format!("word of indices 1..{}", datum.rank()))),
        }
    }
    Ok(out)
}

fn parse_chart_literal(s: &str) -> Result<Chart> {
    parse_chart(s.trim().trim_start_matches('(').trim_end_matches(')'))
}

/// `(w): a b c` or generator tokens `i^a ...`.
pub fn parse_u_element<K: Semifield>(datum: &CartanDatum, s: &str) -> Result<UElement<K>> {
    if let Some((w, c)) = s.split_once(':') {
        let word = parse_word(datum, w)?;
        let coords = parse_coords(c).map_err(|e| locate(e, w.len() + 1))?;
        return UElement::from_word(datum, &word, &coords);
    }
    let gens: Vec<Generator<K>> = parse_generators(datum, s)?;
    let mut letters = Vec::new();
    for g in gens {
        match g {
            Generator::X(i, a) => letters.push((i, a)),
            _ => return Err(parse_err(0, "positive generators i^v")),
        }
    }
    Ok(UElement::from_letters(datum, &letters))
}

/// `+(w): ..; ~: ..; -(w'): ..` or generator tokens.
pub fn parse_g_element<K: Semifield>(datum: &CartanDatum, s: &str) -> Result<GElement<K>> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() == 3 {
        let plus = parts[0].trim().strip_prefix('+').ok_or_else(|| parse_err(0, "'+'"))?;
        let torus = parts[1].trim().strip_prefix("~:").ok_or_else(|| parse_err(parts[0].len() + 1, "'~:'"))?;
        let minus = parts[2].trim().strip_prefix('-').ok_or_else(|| parse_err(s.len() - parts[2].len(), "'-'"))?;
        return GElement::from_parts(
            parse_u_element(datum, plus)?,
            parse_coords(torus)?,
            parse_u_element(datum, minus)?,
        );
    }
    Ok(GElement::from_generators(datum, &parse_generators(datum, s)?))
}

/// `2,2` as a weight, given by its values on the simple coroots.
pub fn parse_lambda(datum: &CartanDatum, s: &str) -> Result<Vec<i64>> {
    let v: std::result::Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    match v {
        Ok(v) if v.len() == datum.rank() => Ok(v),
        _ => Err(parse_err(0, format!("{} comma-separated integers", datum.rank()))),
    }
}

// ---------------------------------------------------------------- reports

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

/// The JSON document printed by `--json`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub datum: Option<String>,
    pub semifield: Option<String>,
    pub inputs: Value,
    pub outputs: Value,
    pub verdict: Option<Verdict>,
    pub counterexamples: Vec<Counterexample>,
    pub timings: Timings,
}

pub fn report_schema() -> &'static str {
    r##"{
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "tpos report",
  "type": "object",
  "required": ["command", "datum", "semifield", "inputs", "outputs", "verdict", "counterexamples", "timings"],
  "properties": {
    "command": {"type": "string"},
    "datum": {"type": ["string", "null"]},
    "semifield": {"type": ["string", "null"]},
    "inputs": {"type": "object"},
    "outputs": {"type": "object"},
    "verdict": {"enum": ["all-pass", "counterexamples-found", null]},
    "counterexamples": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["check", "coords", "lambda", "lhs", "rhs"],
        "properties": {
          "check": {"type": "string"},
          "coords": {"type": "array", "items": {"type": "string"}},
          "lambda": {"type": "array", "items": {"type": "integer"}},
          "lhs": {"type": "string"},
          "rhs": {"type": "string"}
        }
      }
    },
    "timings": {
      "type": "object",
      "required": ["total_ms"],
      "properties": {"total_ms": {"type": "number", "minimum": 0}}
    }
  }
}"##
}

/// Result of one subcommand before rendering.
struct Outcome {
    text: Vec<String>,
    datum: Option<String>,
    semifield: Option<String>,
    inputs: Value,
    outputs: Value,
    verdict: Option<Verdict>,
    counterexamples: Vec<Counterexample>,
}

impl Outcome {
    fn new(text: Vec<String>, inputs: Value, outputs: Value) -> Self {
        Outcome {
            text,
            datum: None,
            semifield: None,
            inputs,
            outputs,
            verdict: None,
            counterexamples: Vec::new(),
        }
    }

    fn on(mut self, datum: &CartanDatum, tag: Option<SemifieldTag>) -> Self {
        self.datum = Some(datum.name().to_string());
        self.semifield = tag.map(|t| t.name().to_string());
        self
    }

    fn scan(mut self, r: &ScanReport) -> Self {
        self.verdict = Some(r.verdict.clone());
        self.counterexamples = r.counterexamples.clone();
        self
    }
}

fn scan_text(r: &ScanReport) -> Vec<String> {
    let mut out = vec![r.grid.clone()];
    for c in &r.checks {
        out.push(format!("{}: {} passed, {} failed", c.name, c.passed, c.failed));
    }
    for c in &r.counterexamples {
        out.push(format!(
            "counterexample {} at [{}] lambda {:?}: {} vs {}",
            c.check,
            c.coords.join(" "),
            c.lambda,
            c.lhs,
            c.rhs
        ));
    }
    out.push(r.verdict.to_string());
    out
}

// ---------------------------------------------------------------- arguments

#[derive(Parser, Debug)]
#[command(name = "tpos", version, about = "Exact total positivity toolkit")]
pub struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Datum {
    /// Cartan type such as A3, B2, G2, or a matrix "2,-1;-1,2".
    #[arg(long = "type", short = 't')]
    pub ty: String,
}

#[derive(Args, Debug, Clone)]
pub struct Field {
    /// posrat, posratfunc, tropint or unit.
    #[arg(long, short = 's', default_value = "posrat")]
    pub semifield: String,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Exit with status 2 when a counterexample is found.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiply generators and print the canonical form.
    Mul {
        #[command(flatten)]
        datum: Datum,
        #[command(flatten)]
        field: Field,
        /// Print coordinates in this chart instead of the canonical one.
        #[arg(long, allow_hyphen_values = true)]
        chart: Option<String>,
        /// Generator tokens i^v, -i^v, ~i^v.
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        tokens: Vec<String>,
    },
    /// Change coordinates between two charts of the same piece.
    Chart {
        #[command(flatten)]
        datum: Datum,
        #[command(flatten)]
        field: Field,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, allow_hyphen_values = true)]
        coords: String,
    },
    /// Apply the involution of the longest piece (type A).
    Phi {
        #[command(flatten)]
        datum: Datum,
        #[command(flatten)]
        field: Field,
        /// Reduced word of the longest element; defaults to the canonical one.
        #[arg(long)]
        chart: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        coords: String,
        /// Apply the primed involution instead.
        #[arg(long)]
        prime: bool,
    },
    /// Check that a procedure commutes with taking zones.
    Trop {
        #[arg(long)]
        check: String,
        #[command(flatten)]
        datum: Datum,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Points of the positive flag manifold in charts.
    Flag {
        #[command(subcommand)]
        action: FlagAction,
    },
    /// Count mod 2 classes of the tropical longest piece on a box.
    Arnold {
        #[command(flatten)]
        datum: Datum,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        /// Reference reduced word of the longest element.
        #[arg(long)]
        reference: Option<String>,
        /// Bound on points times charts visited.
        #[arg(long, default_value_t = MAX_SIGMA2_WORK)]
        max_states: u128,
    },
    /// Scan an open identity over a grid.
    Scan {
        which: ScanKind,
        #[command(flatten)]
        datum: Datum,
        /// A weight such as 2,2; repeatable.
        #[arg(long)]
        lambda: Vec<String>,
        /// Use every weight in {0..m}^rank.
        #[arg(long)]
        lambda_max: Option<i64>,
        #[arg(long, default_value_t = 4)]
        radius: u32,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Run randomized identity suites and print pass counts.
    Verify {
        #[command(flatten)]
        datum: Datum,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Print the Cartan datum, Weyl group order and longest word.
    Describe {
        #[command(flatten)]
        datum: Datum,
        /// Stop counting reduced words after this many.
        #[arg(long, default_value_t = MAX_CHART_STATES)]
        max_states: usize,
    },
    /// Print the JSON schema of reports.
    Schema,
}

#[derive(Subcommand, Debug)]
pub enum FlagAction {
    /// Re-express a point in another chart.
    Transport {
        #[command(flatten)]
        datum: Datum,
        #[command(flatten)]
        field: Field,
        #[arg(long, allow_hyphen_values = true)]
        chart: String,
        #[arg(long, allow_hyphen_values = true)]
        coords: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Act on a point by a product of generators.
    Act {
        #[command(flatten)]
        datum: Datum,
        #[command(flatten)]
        field: Field,
        #[arg(long, allow_hyphen_values = true)]
        chart: String,
        #[arg(long, allow_hyphen_values = true)]
        coords: String,
        #[arg(long, required = true, num_args = 1.., allow_hyphen_values = true)]
        by: Vec<String>,
    },
    /// Divide out the torus.
    Reduce {
        #[command(flatten)]
        datum: Datum,
        #[command(flatten)]
        field: Field,
        #[arg(long, allow_hyphen_values = true)]
        chart: String,
        #[arg(long, allow_hyphen_values = true)]
        coords: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanKind {
    /// Compare the cut by last coordinates with the cut through the involution.
    #[value(name = "u-lambda", alias = "8.2b")]
    ULambda,
    /// Compare the character after the involution with the twisted character.
    #[value(name = "theta-phi", alias = "4.2b")]
    ThetaPhi,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Braid,
    Monoid,
    Matrix,
    Theta,
    Phi,
    Trop,
}

// ---------------------------------------------------------------- execution

enum Failure {
    User(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EvaluationAtPole(_) | Error::NotFoldable(..) => Failure::Internal(e.to_string()),
            other => Failure::User(other.to_string()),
        }
    }
}

fn datum(d: &Datum) -> Result<CartanDatum> {
    CartanDatum::parse(&d.ty)
}

fn tag(f: &Field) -> Result<SemifieldTag> {
    SemifieldTag::parse(&f.semifield)
}

fn check_samples(s: &Sampling) -> Result<()> {
    if s.samples > MAX_SAMPLES {
        return Err(Error::BoxTooLarge(s.samples as u128, MAX_SAMPLES as u128));
    }
    Ok(())
}

macro_rules! by_tag {
    ($tag:expr, $f:ident ( $($arg:expr),* )) => {
        match $tag {
            SemifieldTag::PosRat => $f::<PosRat>($($arg),*),
            SemifieldTag::PosRatFunc => $f::<PosRatFunc>($($arg),*),
            SemifieldTag::TropInt => $f::<TropInt>($($arg),*),
            SemifieldTag::Unit => $f::<Unit>($($arg),*),
        }
    };
}

fn strings<K: Semifield>(xs: &[K]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn chart_line<K: Semifield>(h: &str, xs: &[K]) -> String {
    let mut s = format!("{h}:");
    for x in xs {
        s.push(' ');
        s.push_str(&x.to_string());
    }
    s
}

fn is_positive_chart(h: &[Letter]) -> bool {
    h.iter().all(|l| matches!(l, Letter::Pos(_)))
}

fn run_mul<K: Semifield>(d: &CartanDatum, tokens: &[String], chart: Option<&str>) -> Result<Outcome> {
    let gens: Vec<Generator<K>> = parse_generators(d, &tokens.join(" "))?;
    let inputs = json!({ "tokens": tokens, "chart": chart });
    let positive = gens.iter().all(|g| matches!(g, Generator::X(..)));
    let target = chart.map(parse_chart_literal).transpose()?;
    if positive && target.as_deref().map_or(true, is_positive_chart) {
        let letters: Vec<(usize, K)> = gens
            .into_iter()
            .map(|g| match g {
                Generator::X(i, a) => (i, a),
                _ => unreachable!(),
            })
            .collect();
        let x = UElement::from_letters(d, &letters);
        let (word, coords) = match &target {
            Some(h) => {
                let w: Word = h.iter().map(|l| l.index()).collect();
                let c = x.coords_in(&w)?;
                (w, c)
            }
            None => (x.word().to_vec(), x.coords().to_vec()),
        };
        let line = chart_line(&fmt_word(&word), &coords);
        let out = json!({
            "element": x.to_string(),
            "chart": fmt_word(&word),
            "coords": strings(&coords),
            "weyl": fmt_word(&x.weyl().canonical_word()),
        });
        return Ok(Outcome::new(vec![line], inputs, out));
    }
    let g = GElement::from_generators(d, &gens);
    let (line, out) = match &target {
        Some(h) => {
            let c = g.to_chart(h)?;
            let line = chart_line(&fmt_chart(h), &c);
            (line, json!({ "element": g.to_string(), "chart": fmt_chart(h), "coords": strings(&c) }))
        }
        None => {
            let (h, c) = g.canonical_chart();
            (
                g.to_string(),
                json!({ "element": g.to_string(), "chart": fmt_chart(&h), "coords": strings(&c) }),
            )
        }
    };
    Ok(Outcome::new(vec![line], inputs, out))
}

fn run_chart<K: Semifield>(d: &CartanDatum, from: &str, to: &str, coords: &str) -> Result<Outcome> {
    let (h1, h2) = (parse_chart_literal(from)?, parse_chart_literal(to)?);
    let x: Vec<K> = parse_coords(coords)?;
    let y = if is_positive_chart(&h1) && is_positive_chart(&h2) {
        let (w1, _, _) = split_chart(&h1);
        let (w2, _, _) = split_chart(&h2);
        if x.len() != w1.len() {
            return Err(Error::WrongLength {
                expected: w1.len(),
                got: x.len(),
            });
        }
        chart_transition(d, &w1, &w2, &x)?
    } else {
        GElement::from_chart(d, &h1, &x)?.to_chart(&h2)?
    };
    let line = chart_line(&fmt_chart(&h2), &y);
    Ok(Outcome::new(
        vec![line],
        json!({ "from": fmt_chart(&h1), "to": fmt_chart(&h2), "coords": strings(&x) }),
        json!({ "chart": fmt_chart(&h2), "coords": strings(&y) }),
    ))
}

fn run_phi<K: PhiScalar>(d: &CartanDatum, chart: Option<&str>, coords: &str, prime: bool) -> Result<Outcome> {
    let word = match chart {
        Some(c) => parse_word(d, c)?,
        None => d.longest_word().to_vec(),
    };
    let x: Vec<K> = parse_coords(coords)?;
    let u = UElement::from_word(d, &word, &x)?;
    let y = if prime { phiprime(&u)? } else { phi(&u)? };
    let c = y.coords_in(&word)?;
    let line = chart_line(&fmt_word(&word), &c);
    Ok(Outcome::new(
        vec![line],
        json!({ "chart": fmt_word(&word), "coords": strings(&x), "prime": prime }),
        json!({ "chart": fmt_word(&word), "coords": strings(&c), "canonical": y.to_string() }),
    ))
}

fn flag_point<K: Semifield>(d: &CartanDatum, chart: &str, coords: &str) -> Result<FlagPoint<K>> {
    FlagPoint::new(d, parse_chart_literal(chart)?, parse_coords(coords)?)
}

fn flag_outcome<K: Semifield>(p: &FlagPoint<K>, inputs: Value) -> Outcome {
    let line = p.to_string();
    let out = json!({ "chart": fmt_chart(p.chart()), "coords": strings(p.coords()) });
    Outcome::new(vec![line], inputs, out)
}

fn run_flag_transport<K: Semifield>(d: &CartanDatum, chart: &str, coords: &str, to: &str) -> Result<Outcome> {
    let p: FlagPoint<K> = flag_point(d, chart, coords)?;
    let q = p.change_chart(&parse_chart_literal(to)?)?;
    Ok(flag_outcome(&q, json!({ "chart": chart, "coords": coords, "to": to })))
}

fn run_flag_act<K: Semifield>(d: &CartanDatum, chart: &str, coords: &str, by: &[String]) -> Result<Outcome> {
    let p: FlagPoint<K> = flag_point(d, chart, coords)?;
    let g = GElement::from_generators(d, &parse_generators::<K>(d, &by.join(" "))?);
    let q = p.act(&g)?;
    Ok(flag_outcome(&q, json!({ "chart": chart, "coords": coords, "by": by })))
}

fn run_flag_reduce<K: Semifield>(d: &CartanDatum, chart: &str, coords: &str) -> Result<Outcome> {
    let p: FlagPoint<K> = flag_point(d, chart, coords)?;
    let r = p.reduce();
    let line = r.to_string();
    let out = json!({ "chart": fmt_chart(r.chart()), "coords": strings(r.coords()) });
    Ok(Outcome::new(vec![line], json!({ "chart": chart, "coords": coords }), out))
}

/// `|W|` from the exponents, read off the heights of the positive coroots.
pub fn weyl_order(d: &CartanDatum) -> u128 {
    let heights: Vec<i64> = d.positive_coroots().iter().map(|z| z.iter().sum()).collect();
    let top = heights.iter().copied().max().unwrap_or(0);
    let count = |k: i64| heights.iter().filter(|&&h| h == k).count();
    (0..d.rank())
        .map(|i| (1..=top).filter(|&k| count(k) > i).count() as u128 + 1)
        .product()
}

fn run_describe(d: &CartanDatum, max_states: usize) -> Outcome {
    let w0 = d.longest_element();
    let n = w0.reduced_words().take(max_states.saturating_add(1)).count();
    let words = if n > max_states {
        format!("more than {max_states}")
    } else {
        n.to_string()
    };
    let bang: Vec<String> = (0..d.rank()).map(|i| (d.bang(i) + 1).to_string()).collect();
    let rows: Vec<String> = d
        .matrix()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    let text = vec![
        format!("type: {}", d.name()),
        format!("rank: {}", d.rank()),
        format!("cartan: {}", rows.join("; ")),
        format!("weyl order: {}", weyl_order(d)),
        format!("positive roots: {}", d.nu()),
        format!("longest word: {}", fmt_word(d.longest_word())),
        format!("reduced words of longest: {words}"),
        format!("bang: {}", bang.join(" ")),
    ];
    let out = json!({
        "rank": d.rank(),
        "cartan": d.matrix(),
        "weyl_order": weyl_order(d).to_string(),
        "nu": d.nu(),
        "longest_word": fmt_word(d.longest_word()),
        "reduced_words": words,
        "bang": bang,
    });
    Outcome::new(text, json!({ "max_states": max_states }), out)
}

// ---------------------------------------------------------------- verify suites

fn tally(name: &str, results: impl IntoIterator<Item = Option<Counterexample>>, bad: &mut Vec<Counterexample>) -> CheckCount {
    let mut c = CheckCount {
        name: name.into(),
        passed: 0,
        failed: 0,
    };
    for r in results {
        match r {
            None => c.passed += 1,
            Some(x) => {
                c.failed += 1;
                bad.push(x);
            }
        }
    }
    c
}

fn differ(check: &str, coords: Vec<String>, lhs: String, rhs: String) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample {
        check: check.into(),
        coords,
        lambda: vec![],
        lhs,
        rhs,
    })
}

fn suite_braid(d: &CartanDatum, samples: usize, rng: &mut ChaCha8Rng, bad: &mut Vec<Counterexample>) -> Result<Vec<CheckCount>> {
    let words: Vec<Word> = d.longest_element().reduced_words().take(4096).collect();
    let mut cocycle = Vec::new();
    let mut inverse = Vec::new();
    for _ in 0..samples {
        let pick = |rng: &mut ChaCha8Rng| words[rng.gen_range(0..words.len())].clone();
        let (a, b, c) = (pick(rng), pick(rng), pick(rng));
        let x: Vec<PosRat> = (0..a.len()).map(|_| PosRat::sample(rng)).collect();
        let direct = chart_transition(d, &a, &c, &x)?;
        let via = chart_transition(d, &b, &c, &chart_transition(d, &a, &b, &x)?)?;
        cocycle.push(differ("braid-cocycle", strings(&x), format!("{direct:?}"), format!("{via:?}")));
        let back = chart_transition(d, &b, &a, &chart_transition(d, &a, &b, &x)?)?;
        inverse.push(differ("braid-inverse", strings(&x), format!("{x:?}"), format!("{back:?}")));
    }
    Ok(vec![tally("braid-cocycle", cocycle, bad), tally("braid-inverse", inverse, bad)])
}

fn random_u(d: &CartanDatum, rng: &mut ChaCha8Rng) -> UElement<PosRat> {
    let all = d.elements();
    let w = all[rng.gen_range(0..all.len())].clone();
    UElement::random(d, &w, rng)
}

fn random_g(d: &CartanDatum, rng: &mut ChaCha8Rng) -> GElement<PosRat> {
    let all = d.elements();
    let w = all[rng.gen_range(0..all.len())].clone();
    let w2 = all[rng.gen_range(0..all.len())].clone();
    GElement::random(d, &w, &w2, rng)
}

fn suite_monoid(d: &CartanDatum, samples: usize, rng: &mut ChaCha8Rng, bad: &mut Vec<Counterexample>) -> Result<Vec<CheckCount>> {
    let mut assoc_u = Vec::new();
    let mut assoc_g = Vec::new();
    let mut triple = Vec::new();
    for _ in 0..samples {
        let (x, y, z) = (random_u(d, rng), random_u(d, rng), random_u(d, rng));
        assoc_u.push(differ(
            "u-associative",
            strings(x.coords()),
            x.mul(&y).mul(&z).to_string(),
            x.mul(&y.mul(&z)).to_string(),
        ));
        let (g, h, k) = (random_g(d, rng), random_g(d, rng), random_g(d, rng));
        assoc_g.push(differ(
            "g-associative",
            strings(&g.canonical_chart().1),
            g.mul(&h).mul(&k).to_string(),
            g.mul(&h.mul(&k)).to_string(),
        ));
        let (hc, c) = g.canonical_chart();
        let back = GElement::from_chart(d, &hc, &c)?;
        triple.push(differ("g-canonical-triple", strings(&c), g.to_string(), back.to_string()));
    }
    Ok(vec![
        tally("u-associative", assoc_u, bad),
        tally("g-associative", assoc_g, bad),
        tally("g-canonical-triple", triple, bad),
    ])
}

fn suite_matrix(d: &CartanDatum, samples: usize, rng: &mut ChaCha8Rng, bad: &mut Vec<Counterexample>) -> Result<Vec<CheckCount>> {
    if !d.is_type_a() {
        return Ok(vec![]);
    }
    let mut hu = Vec::new();
    let mut hg = Vec::new();
    for _ in 0..samples {
        let (x, y) = (random_u(d, rng), random_u(d, rng));
        hu.push(differ(
            "u-matrix-homomorphism",
            strings(x.coords()),
            eval_u(&x.mul(&y))?.to_string(),
            eval_u(&x)?.mul(&eval_u(&y)?).to_string(),
        ));
        let (g, h) = (random_g(d, rng), random_g(d, rng));
        hg.push(differ(
            "g-matrix-homomorphism",
            strings(&g.canonical_chart().1),
            eval_g(&g.mul(&h))?.to_string(),
            eval_g(&g)?.mul(&eval_g(&h)?).to_string(),
        ));
    }
    Ok(vec![
        tally("u-matrix-homomorphism", hu, bad),
        tally("g-matrix-homomorphism", hg, bad),
    ])
}

fn suite_theta(d: &CartanDatum, samples: usize, rng: &mut ChaCha8Rng, bad: &mut Vec<Counterexample>) -> Result<Vec<CheckCount>> {
    let words: Vec<Word> = d.longest_element().reduced_words().take(4096).collect();
    let mut indep = Vec::new();
    let mut mult = Vec::new();
    let lam = |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..d.rank()).map(|_| rng.gen_range(-3..=3)).collect() };
    for _ in 0..samples {
        let x = UElement::<PosRat>::random(d, &d.longest_element(), rng);
        let (l1, l2) = (lam(rng), lam(rng));
        let w = &words[rng.gen_range(0..words.len())];
        let in_chart = UElement::theta_in_chart(d, w, &x.coords_in(w)?, &l1);
        indep.push(differ("theta-chart-independent", strings(x.coords()), x.theta(&l1).to_string(), in_chart.to_string()));
        let sum: Vec<i64> = l1.iter().zip(&l2).map(|(a, b)| a + b).collect();
        mult.push(differ(
            "theta-multiplicative",
            strings(x.coords()),
            x.theta(&sum).to_string(),
            x.theta(&l1).mul(&x.theta(&l2)).to_string(),
        ));
    }
    Ok(vec![
        tally("theta-chart-independent", indep, bad),
        tally("theta-multiplicative", mult, bad),
    ])
}

fn merge(r: ScanReport, checks: &mut Vec<CheckCount>, bad: &mut Vec<Counterexample>) {
    checks.extend(r.checks);
    bad.extend(r.counterexamples);
}

/// Runs the selected suites; suites that need type A are skipped elsewhere.
pub fn verify(d: &CartanDatum, suite: Suite, samples: usize, seed: u64) -> Result<ScanReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut bad = Vec::new();
    let on = |s: Suite| suite == Suite::All || suite == s;
    if on(Suite::Braid) {
        checks.extend(suite_braid(d, samples, &mut rng, &mut bad)?);
    }
    if on(Suite::Monoid) {
        checks.extend(suite_monoid(d, samples, &mut rng, &mut bad)?);
    }
    if on(Suite::Matrix) {
        checks.extend(suite_matrix(d, samples, &mut rng, &mut bad)?);
    }
    if on(Suite::Theta) {
        checks.extend(suite_theta(d, samples, &mut rng, &mut bad)?);
    }
    if on(Suite::Phi) && d.is_type_a() {
        merge(check_phi_identities(d, samples, seed)?, &mut checks, &mut bad);
    }
    if on(Suite::Trop) {
        for p in PROCEDURES {
            if p == "phi" && !d.is_type_a() {
                continue;
            }
            merge(tropicalize_check(p, d, samples, seed)?, &mut checks, &mut bad);
        }
    }
    if checks.is_empty() {
        return Err(Error::TypeNotSupported);
    }
    Ok(ScanReport {
        grid: format!("{} suite {:?}, {samples} samples, seed {seed}", d.name(), suite).to_lowercase(),
        checks,
        verdict: if bad.is_empty() {
            Verdict::AllPass
        } else {
            Verdict::CounterexamplesFound
        },
        counterexamples: bad,
    })
}

fn lambda_grid(d: &CartanDatum, lambda: &[String], lambda_max: Option<i64>) -> Result<Vec<Vec<i64>>> {
    let mut out: Vec<Vec<i64>> = lambda.iter().map(|s| parse_lambda(d, s)).collect::<Result<_>>()?;
    if let Some(m) = lambda_max {
        if m < 0 {
            return Err(parse_err(0, "nonnegative --lambda-max"));
        }
        out.extend(crate::involutions::box_points(d.rank(), 0, m));
    }
    if out.is_empty() {
        return Err(parse_err(0, "--lambda or --lambda-max"));
    }
    Ok(out)
}

fn execute(cmd: &Command) -> std::result::Result<Outcome, Failure> {
    Ok(match cmd {
        Command::Mul { datum: dd, field, chart, tokens } => {
            let (d, t) = (datum(dd)?, tag(field)?);
            by_tag!(t, run_mul(&d, tokens, chart.as_deref()))?.on(&d, Some(t))
        }
        Command::Chart { datum: dd, field, from, to, coords } => {
            let (d, t) = (datum(dd)?, tag(field)?);
            by_tag!(t, run_chart(&d, from, to, coords))?.on(&d, Some(t))
        }
        Command::Phi { datum: dd, field, chart, coords, prime } => {
            let (d, t) = (datum(dd)?, tag(field)?);
            by_tag!(t, run_phi(&d, chart.as_deref(), coords, *prime))?.on(&d, Some(t))
        }
        Command::Trop { check, datum: dd, sampling } => {
            let d = datum(dd)?;
            check_samples(sampling)?;
            let r = tropicalize_check(check, &d, sampling.samples, sampling.seed)?;
            let inputs = json!({ "check": check, "samples": sampling.samples, "seed": sampling.seed });
            let text = if r.passed() { vec![r.verdict.to_string()] } else { scan_text(&r) };
            Outcome::new(text, inputs, json!({ "checks": r.checks }))
                .on(&d, Some(SemifieldTag::PosRatFunc))
                .scan(&r)
        }
        Command::Flag { action } => match action {
            FlagAction::Transport { datum: dd, field, chart, coords, to } => {
                let (d, t) = (datum(dd)?, tag(field)?);
                by_tag!(t, run_flag_transport(&d, chart, coords, to))?.on(&d, Some(t))
            }
            FlagAction::Act { datum: dd, field, chart, coords, by } => {
                let (d, t) = (datum(dd)?, tag(field)?);
                by_tag!(t, run_flag_act(&d, chart, coords, by))?.on(&d, Some(t))
            }
            FlagAction::Reduce { datum: dd, field, chart, coords } => {
                let (d, t) = (datum(dd)?, tag(field)?);
                by_tag!(t, run_flag_reduce(&d, chart, coords))?.on(&d, Some(t))
            }
        },
        Command::Arnold { datum: dd, radius, reference, max_states } => {
            let d = datum(dd)?;
            let reference = match reference {
                Some(r) => parse_word(&d, r)?,
                None => d.longest_word().to_vec(),
            };
            let r = sigma2_components_in(&d, *radius, &reference, *max_states)?;
            let inputs = json!({ "radius": radius, "reference": fmt_word(&reference), "max_states": max_states.to_string() });
            Outcome::new(vec![r.to_string()], inputs, serde_json::to_value(&r).expect("serializable"))
                .on(&d, Some(SemifieldTag::TropInt))
        }
        Command::Scan { which, datum: dd, lambda, lambda_max, radius, sampling } => {
            let d = datum(dd)?;
            check_samples(sampling)?;
            let grid = lambda_grid(&d, lambda, *lambda_max)?;
            let (r, tag) = match which {
                ScanKind::ULambda => (scan_u_lambda(&d, &grid, *radius)?, SemifieldTag::TropInt),
                ScanKind::ThetaPhi => (scan_theta_phi(&d, &grid, sampling.samples, sampling.seed)?, SemifieldTag::PosRat),
            };
            let inputs = json!({
                "scan": which.to_possible_value().expect("named").get_name(),
                "lambdas": grid,
                "radius": radius,
                "samples": sampling.samples,
                "seed": sampling.seed,
            });
            Outcome::new(scan_text(&r), inputs, json!({ "grid": r.grid, "checks": r.checks }))
                .on(&d, Some(tag))
                .scan(&r)
        }
        Command::Verify { datum: dd, suite, sampling } => {
            let d = datum(dd)?;
            check_samples(sampling)?;
            let r = verify(&d, *suite, sampling.samples, sampling.seed)?;
            let inputs = json!({ "suite": format!("{suite:?}").to_lowercase(), "samples": sampling.samples, "seed": sampling.seed });
            Outcome::new(scan_text(&r), inputs, json!({ "checks": r.checks }))
                .on(&d, Some(SemifieldTag::PosRat))
                .scan(&r)
        }
        Command::Describe { datum: dd, max_states } => {
            let d = datum(dd)?;
            run_describe(&d, *max_states).on(&d, None)
        }
        Command::Schema => {
            let schema: Value = serde_json::from_str(report_schema()).expect("valid schema");
            Outcome::new(vec![report_schema().to_string()], json!({}), json!({ "schema": schema }))
        }
    })
}

fn strict(cmd: &Command) -> bool {
    match cmd {
        Command::Trop { sampling, .. } | Command::Scan { sampling, .. } | Command::Verify { sampling, .. } => sampling.strict,
        _ => false,
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Mul { .. } => "mul",
        Command::Chart { .. } => "chart",
        Command::Phi { .. } => "phi",
        Command::Trop { .. } => "trop",
        Command::Flag { action } => match action {
            FlagAction::Transport { .. } => "flag transport",
            FlagAction::Act { .. } => "flag act",
            FlagAction::Reduce { .. } => "flag reduce",
        },
        Command::Arnold { .. } => "arnold",
        Command::Scan { .. } => "scan",
        Command::Verify { .. } => "verify",
        Command::Describe { .. } => "describe",
        Command::Schema => "schema",
    }
}

fn workers() -> std::result::Result<Option<usize>, String> {
    match std::env::var("TP_NUM_WORKERS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("TP_NUM_WORKERS must be a positive integer, got {v:?}")),
        },
    }
}

/// Parses `args` (program name first), runs the command, writes the report to
/// `out` and diagnostics to `err`; returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USER,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let pool = match workers() {
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USER;
        }
        Ok(n) => {
            let mut b = rayon::ThreadPoolBuilder::new();
            if let Some(n) = n {
                b = b.num_threads(n);
            }
            match b.build() {
                Ok(p) => p,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_INTERNAL;
                }
            }
        }
    };
    let start = Instant::now();
    let result = pool.install(|| {
        std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| execute(&cli.command)))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Err(Failure::Internal(msg))
            })
    });
    let outcome = match result {
        Ok(o) => o,
        Err(Failure::User(m)) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USER;
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            return EXIT_INTERNAL;
        }
    };
    let found = outcome.verdict == Some(Verdict::CounterexamplesFound);
    if cli.json {
        let report = Report {
            command: command_name(&cli.command).into(),
            datum: outcome.datum,
            semifield: outcome.semifield,
            inputs: outcome.inputs,
            outputs: outcome.outputs,
            verdict: outcome.verdict,
            counterexamples: outcome.counterexamples,
            timings: Timings {
                total_ms: start.elapsed().as_secs_f64() * 1e3,
            },
        };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        for line in outcome.text {
            let _ = writeln!(out, "{line}");
        }
    }
    if found && strict(&cli.command) {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    }
}
