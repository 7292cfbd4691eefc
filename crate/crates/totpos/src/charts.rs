//! Mixed charts over `I`, `-I` and the torus letters, with the moves between them.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::braid::rank2_move;
use crate::error::{parse_err, Error, Result};
use crate::rootdata::{CartanDatum, WeylElement, Word};
use crate::semifield::Semifield;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Pos(usize),
    Neg(usize),
    Torus(usize),
}

impl Letter {
    pub fn index(self) -> usize {
        match self {
            Letter::Pos(i) | Letter::Neg(i) | Letter::Torus(i) => i,
        }
    }

    /// `+1` for `i`, `-1` for `-i`, `0` for the torus.
    pub fn sign(self) -> i64 {
        match self {
            Letter::Pos(_) => 1,
            Letter::Neg(_) => -1,
            Letter::Torus(_) => 0,
        }
    }

    fn with_index(self, j: usize) -> Letter {
        match self {
            Letter::Pos(_) => Letter::Pos(j),
            Letter::Neg(_) => Letter::Neg(j),
            Letter::Torus(_) => Letter::Torus(j),
        }
    }

    /// Parses `i`, `-i` or `~i` (1-based).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let (ctor, rest): (fn(usize) -> Letter, &str) = if let Some(r) = t.strip_prefix('-') {
            (Letter::Neg, r)
        } else if let Some(r) = t.strip_prefix('~') {
            (Letter::Torus, r)
        } else {
            (Letter::Pos, t)
        };
        let i: usize = rest
            .parse()
            .map_err(|_| parse_err(0, "a letter `i`, `-i` or `~i`"))?;
        if i == 0 {
            return Err(parse_err(0, "1-based index"));
        }
        Ok(ctor(i - 1))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Pos(i) => write!(f, "{}", i + 1),
            Letter::Neg(i) => write!(f, "-{}", i + 1),
            Letter::Torus(i) => write!(f, "~{}", i + 1),
        }
    }
}

pub type Chart = Vec<Letter>;

pub fn parse_chart(s: &str) -> Result<Chart> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(Letter::parse)
        .collect()
}

pub fn fmt_chart(h: &[Letter]) -> String {
    let parts: Vec<String> = h.iter().map(|l| l.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Positive, negative and torus subsequences.
pub fn split_chart(h: &[Letter]) -> (Word, Word, Vec<usize>) {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut tor = Vec::new();
    for l in h {
        match *l {
            Letter::Pos(i) => pos.push(i),
            Letter::Neg(i) => neg.push(i),
            Letter::Torus(i) => tor.push(i),
        }
    }
    (pos, neg, tor)
}

/// Checks that `h` lies in some piece and returns it as `(w, w')`.
pub fn chart_piece(datum: &CartanDatum, h: &[Letter]) -> Result<(WeylElement, WeylElement)> {
    let (pos, neg, mut tor) = split_chart(h);
    if h.iter().any(|l| l.index() >= datum.rank()) {
        return Err(Error::InvalidChart("index out of range".into()));
    }
    tor.sort();
    if tor != (0..datum.rank()).collect::<Vec<_>>() {
        return Err(Error::InvalidChart(
            "every torus letter must occur exactly once".into(),
        ));
    }
    if !datum.is_reduced(&pos) || !datum.is_reduced(&neg) {
        return Err(Error::InvalidChart("a signed subsequence is not reduced".into()));
    }
    Ok((datum.element(&pos), datum.element(&neg)))
}

/// An edge of the chart graph, located at `pos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    /// Same-sign alternating segment `(i,j,i,...)` to `(j,i,j,...)`.
    Braid { pos: usize, i: usize, j: usize, m: usize },
    /// `(~i, ~j)` to `(~j, ~i)`.
    TorusSwap { pos: usize },
    /// `(~j, ei)` to `(ei, ~j)`; `forward = false` is the opposite direction.
    TorusCross { pos: usize, forward: bool },
    /// `(i, ~i, -i)` to `(-i, ~i, i)`, or back.
    Exchange { pos: usize, forward: bool },
    /// `(ei, -ej)` to `(-ej, ei)` for `i != j`.
    Commute { pos: usize },
    /// Flips the sign of the next-to-last letter `(.., i, ~i)` to `(.., -i, ~i)`, or back.
    External { forward: bool },
}

pub fn neighbors(datum: &CartanDatum, h: &[Letter], external: bool) -> Vec<(Edge, Chart)> {
    let n = h.len();
    let mut out = Vec::new();
    let mut push = |e: Edge| {
        let mut g = h.to_vec();
        apply_letters(&mut g, e);
        out.push((e, g));
    };
    for pos in 0..n {
        let l = h[pos];
        if l.sign() != 0 {
            let i = l.index();
            for j in 0..datum.rank() {
                if j == i {
                    continue;
                }
                let m = datum.bond_order(i, j);
                if pos + m <= n
                    && (0..m).all(|k| h[pos + k] == l.with_index(if k % 2 == 0 { i } else { j }))
                {
                    push(Edge::Braid { pos, i, j, m });
                }
            }
        }
        if pos + 1 < n {
            let r = h[pos + 1];
            match (l, r) {
                (Letter::Torus(i), Letter::Torus(j)) if i != j => push(Edge::TorusSwap { pos }),
                (Letter::Torus(_), x) if x.sign() != 0 => {
                    push(Edge::TorusCross { pos, forward: true })
                }
                (x, Letter::Torus(_)) if x.sign() != 0 => {
                    push(Edge::TorusCross { pos, forward: false })
                }
                (x, y) if x.sign() * y.sign() == -1 && x.index() != y.index() => {
                    push(Edge::Commute { pos })
                }
                _ => {}
            }
        }
        if pos + 2 < n {
            match (l, h[pos + 1], h[pos + 2]) {
                (Letter::Pos(i), Letter::Torus(j), Letter::Neg(k)) if i == j && j == k => {
                    push(Edge::Exchange { pos, forward: true })
                }
                (Letter::Neg(i), Letter::Torus(j), Letter::Pos(k)) if i == j && j == k => {
                    push(Edge::Exchange { pos, forward: false })
                }
                _ => {}
            }
        }
    }
    if external && n >= 2 {
        match (h[n - 2], h[n - 1]) {
            (Letter::Pos(i), Letter::Torus(j)) if i == j => push(Edge::External { forward: true }),
            (Letter::Neg(i), Letter::Torus(j)) if i == j => push(Edge::External { forward: false }),
            _ => {}
        }
    }
    out
}

fn apply_letters(h: &mut [Letter], e: Edge) {
    match e {
        Edge::Braid { pos, i, j, m } => {
            for k in 0..m {
                h[pos + k] = h[pos + k].with_index(if k % 2 == 0 { j } else { i });
            }
        }
        Edge::TorusSwap { pos } | Edge::TorusCross { pos, .. } | Edge::Commute { pos } => {
            h.swap(pos, pos + 1)
        }
        Edge::Exchange { pos, .. } => h.swap(pos, pos + 2),
        Edge::External { .. } => {
            let n = h.len();
            h[n - 2] = match h[n - 2] {
                Letter::Pos(i) => Letter::Neg(i),
                Letter::Neg(i) => Letter::Pos(i),
                t => t,
            };
        }
    }
}

/// Applies an edge to a chart and its coordinates.
pub fn apply_edge<K: Semifield>(datum: &CartanDatum, h: &mut [Letter], x: &mut [K], e: Edge) {
    match e {
        Edge::Braid { pos, i, j, m } => {
            let seg = rank2_move(datum, i, j, &x[pos..pos + m]).expect("valid braid segment");
            x[pos..pos + m].clone_from_slice(&seg);
        }
        Edge::TorusSwap { pos } | Edge::Commute { pos } => x.swap(pos, pos + 1),
        Edge::TorusCross { pos, forward } => {
            let (a, b) = (x[pos].clone(), x[pos + 1].clone());
            if forward {
                // (~j, ei) -> (ei, ~j)
                let (j, l) = (h[pos].index(), h[pos + 1]);
                let c = l.sign() * datum.pairing(j, l.index());
                x[pos] = a.pow(c).mul(&b);
                x[pos + 1] = a;
            } else {
                // (ei, ~j) -> (~j, ei)
                let (l, j) = (h[pos], h[pos + 1].index());
                let c = l.sign() * datum.pairing(j, l.index());
                x[pos] = b.clone();
                x[pos + 1] = b.pow(-c).mul(&a);
            }
        }
        Edge::Exchange { pos, forward } => {
            let (a, b, c) = (x[pos].clone(), x[pos + 1].clone(), x[pos + 2].clone());
            if forward {
                let s = a.mul(&c).add(&b.mul(&b));
                x[pos] = c.div(&s);
                x[pos + 1] = s.div(&b);
                x[pos + 2] = a.div(&s);
            } else {
                // (p, q, r) on (-i, ~i, i)
                let q2 = b.mul(&b);
                let d = a.mul(&c).mul(&q2).add(&K::one());
                x[pos] = c.mul(&q2).div(&d);
                x[pos + 1] = b.div(&d);
                x[pos + 2] = a.mul(&q2).div(&d);
            }
        }
        Edge::External { forward } => {
            let n = x.len();
            let (a, b) = (x[n - 2].clone(), x[n - 1].clone());
            if forward {
                x[n - 2] = a.inv();
                x[n - 1] = a.div(&b);
            } else {
                x[n - 2] = a.inv();
                x[n - 1] = a.mul(&b).inv();
            }
        }
    }
    apply_letters(h, e);
}

type PathKey = (Vec<Vec<i64>>, bool, Chart, Chart);

fn path_cache() -> &'static Mutex<HashMap<PathKey, Arc<Vec<Edge>>>> {
    static CACHE: OnceLock<Mutex<HashMap<PathKey, Arc<Vec<Edge>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Upper bound on charts visited by one search.
pub const MAX_CHART_STATES: usize = 2_000_000;

/// Shortest edge path from `from` to the first chart satisfying `goal`.
pub fn search(
    datum: &CartanDatum,
    from: &[Letter],
    external: bool,
    goal: impl Fn(&[Letter]) -> bool,
) -> Result<(Chart, Vec<Edge>)> {
    let mut prev: HashMap<Chart, (Chart, Edge)> = HashMap::new();
    let mut seen: HashSet<Chart> = HashSet::from([from.to_vec()]);
    let mut queue = VecDeque::from([from.to_vec()]);
    while let Some(h) = queue.pop_front() {
        if goal(&h) {
            let mut path = Vec::new();
            let mut cur = h.clone();
            while let Some((p, e)) = prev.get(&cur) {
                path.push(*e);
                cur = p.clone();
            }
            path.reverse();
            return Ok((h, path));
        }
        for (e, g) in neighbors(datum, &h, external) {
            if seen.insert(g.clone()) {
                if seen.len() > MAX_CHART_STATES {
                    return Err(Error::InvalidChart("chart search limit exceeded".into()));
                }
                prev.insert(g.clone(), (h.clone(), e));
                queue.push_back(g);
            }
        }
    }
    Err(Error::InvalidChart(format!(
        "no chart reachable from {}",
        fmt_chart(from)
    )))
}

/// Cached edge path between two charts.
pub fn path(datum: &CartanDatum, from: &[Letter], to: &[Letter], external: bool) -> Result<Arc<Vec<Edge>>> {
    let key = (datum.matrix().to_vec(), external, from.to_vec(), to.to_vec());
    if let Some(p) = path_cache().lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let (_, p) = search(datum, from, external, |h| h == to)?;
    let p = Arc::new(p);
    path_cache().lock().unwrap().insert(key, p.clone());
    Ok(p)
}

/// Coordinates in chart `to` of the point with coordinates `x` in chart `from`.
pub fn transport<K: Semifield>(
    datum: &CartanDatum,
    from: &[Letter],
    to: &[Letter],
    x: &[K],
    external: bool,
) -> Result<Vec<K>> {
    if x.len() != from.len() {
        return Err(Error::WrongLength {
            expected: from.len(),
            got: x.len(),
        });
    }
    let p = path(datum, from, to, external)?;
    let mut h = from.to_vec();
    let mut coords = x.to_vec();
    for e in p.iter() {
        apply_edge(datum, &mut h, &mut coords, *e);
    }
    debug_assert_eq!(h, to);
    Ok(coords)
}

/// All charts reachable from `start`.
pub fn component(datum: &CartanDatum, start: &[Letter], external: bool) -> HashSet<Chart> {
    let mut seen = HashSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(h) = queue.pop_front() {
        for (_, g) in neighbors(datum, &h, external) {
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    seen
}
