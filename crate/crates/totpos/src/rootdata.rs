//! Cartan data of finite type, Weyl groups and reduced words.
//!
//! Indices are 0-based internally and 1-based in every printed or parsed form.
//! Coweights are stored in the simple-coroot basis, weights by their values
//! `<i, lambda>` on the simple coroots.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{parse_err, Error, Result};

pub type Word = Vec<usize>;
/// Values `<i, lambda>` for `i` in `I`.
pub type Weight = Vec<i64>;
/// Coordinates in the simple-coroot basis.
pub type Coweight = Vec<i64>;

/// Converts a 1-based word to the internal form.
pub fn word1(xs: &[usize]) -> Word {
    xs.iter().map(|&x| x - 1).collect()
}

pub fn fmt_word(w: &[usize]) -> String {
    let parts: Vec<String> = w.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidMove {
    /// Position of the first replaced letter.
    pub pos: usize,
    /// The segment reads `i, j, i, ...` before the move.
    pub i: usize,
    pub j: usize,
    pub m: usize,
}

impl BraidMove {
    pub fn apply(&self, word: &mut [usize]) {
        for k in 0..self.m {
            word[self.pos + k] = if k % 2 == 0 { self.j } else { self.i };
        }
    }
}

struct DatumInner {
    name: String,
    a: Vec<Vec<i64>>,
    positive_coroots: Vec<Coweight>,
    bang: Vec<usize>,
    longest: Word,
    braid_paths: Mutex<HashMap<(Word, Word), Arc<Vec<BraidMove>>>>,
}

/// A Cartan matrix `a[i][j] = <i, j*>` of finite type.
#[derive(Clone)]
pub struct CartanDatum(Arc<DatumInner>);

impl PartialEq for CartanDatum {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.a == other.0.a
    }
}

impl Eq for CartanDatum {}

impl Hash for CartanDatum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.a.hash(state);
    }
}

impl fmt::Debug for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CartanDatum({})", self.0.name)
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

fn cartan_a(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

fn cartan_b(n: usize) -> Vec<Vec<i64>> {
    let mut a = cartan_a(n);
    a[n - 1][n - 2] = -2;
    a
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

fn cartan_d(n: usize) -> Vec<Vec<i64>> {
    let mut a = cartan_a(n);
    a[n - 2][n - 1] = 0;
    a[n - 1][n - 2] = 0;
    a[n - 3][n - 1] = -1;
    a[n - 1][n - 3] = -1;
    a
}

fn cartan_e(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; n]; n];
    let mut link = |i: usize, j: usize| {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
    };
    link(1, 3);
    link(2, 4);
    for k in 3..n {
        link(k, k + 1);
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    a
}

fn cartan_f4() -> Vec<Vec<i64>> {
    let mut a = cartan_a(4);
    a[2][1] = -2;
    a
}

impl CartanDatum {
    /// Builds a datum from `a[i][j] = <i, j*>`, rejecting non-finite types.
    pub fn new(name: impl Into<String>, a: Vec<Vec<i64>>) -> Result<Self> {
        let r = a.len();
        if r == 0 || a.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidCartan("matrix must be square and nonempty".into()));
        }
        for i in 0..r {
            if a[i][i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {} is not 2", i + 1)));
            }
            for j in 0..r {
                if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({},{}) and ({},{}) are incompatible",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                if i != j && a[i][j] * a[j][i] > 3 {
                    return Err(Error::InvalidCartan("bond is not of finite type".into()));
                }
            }
        }
        if !symmetrized_positive_definite(&a)? {
            return Err(Error::InvalidCartan("not of finite type".into()));
        }
        let positive_coroots = positive_coroots(&a);
        let tmp = CartanDatum(Arc::new(DatumInner {
            name: name.into(),
            a,
            positive_coroots,
            bang: Vec::new(),
            longest: Vec::new(),
            braid_paths: Mutex::new(HashMap::new()),
        }));
        let (longest, bang) = {
            let w0 = tmp.longest_by_search();
            let bang = (0..r)
                .map(|i| {
                    let mut e = vec![0; r];
                    e[i] = 1;
                    let img = w0.act_y(&e);
                    img.iter().position(|&x| x == -1).expect("-w0 permutes simple coroots")
                })
                .collect();
            (w0.canonical_word(), bang)
        };
        let mut inner = Arc::try_unwrap(tmp.0).ok().expect("no outstanding references");
        inner.longest = longest;
        inner.bang = bang;
        Ok(CartanDatum(Arc::new(inner)))
    }

    /// Parses `A3`, `B2`, `G2`, ... or explicit rows such as `2,-1;-1,2`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.contains(';') || t.contains(',') {
            let rows: Result<Vec<Vec<i64>>> = t
                .split(';')
                .map(|row| {
                    row.split([',', ' '])
                        .filter(|x| !x.is_empty())
                        .map(|x| {
                            x.trim()
                                .parse::<i64>()
                                .map_err(|_| parse_err(0, "integer matrix entries"))
                        })
                        .collect()
                })
                .collect();
            return Self::new(t.to_string(), rows?);
        }
        let upper = t.to_ascii_uppercase();
        let (letter, rest) = upper.split_at(1.min(upper.len()));
        let n: usize = rest
            .parse()
            .map_err(|_| parse_err(1, "a rank after the type letter"))?;
        let a = match (letter, n) {
            ("A", n) if n >= 1 => cartan_a(n),
            ("B", n) if n >= 2 => cartan_b(n),
            ("C", n) if n >= 2 => transpose(&cartan_b(n)),
            ("D", n) if n >= 4 => cartan_d(n),
            ("E", 6 | 7 | 8) => cartan_e(n),
            ("F", 4) => cartan_f4(),
            ("G", 2) => vec![vec![2, -3], vec![-1, 2]],
            _ => return Err(parse_err(0, "A<n>, B<n>, C<n>, D<n>, E6-8, F4, G2 or matrix rows")),
        };
        Self::new(upper, a)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn rank(&self) -> usize {
        self.0.a.len()
    }

    /// `<i, j*>`
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.0.a[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.0.a
    }

    /// Order of `s_i s_j`.
    pub fn bond_order(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.0.a[i][j] * self.0.a[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => unreachable!("checked at construction"),
        }
    }

    pub fn positive_coroots(&self) -> &[Coweight] {
        &self.0.positive_coroots
    }

    /// Number of positive coroots, the length of the longest element.
    pub fn nu(&self) -> usize {
        self.0.positive_coroots.len()
    }

    pub fn is_simply_laced(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.bond_order(i, j) <= 3))
    }

    /// Type A with the standard chain numbering.
    pub fn is_type_a(&self) -> bool {
        self.0.a == cartan_a(self.rank())
    }

    pub fn identity(&self) -> WeylElement {
        let r = self.rank();
        let mut m = vec![0; r * r];
        for i in 0..r {
            m[i * r + i] = 1;
        }
        WeylElement {
            datum: self.clone(),
            m: m.clone(),
            minv: m,
        }
    }

    pub fn reflection(&self, i: usize) -> WeylElement {
        let r = self.rank();
        let mut m = self.identity().m;
        for k in 0..r {
            m[i * r + k] -= self.0.a[k][i];
        }
        WeylElement {
            datum: self.clone(),
            m: m.clone(),
            minv: m,
        }
    }

    pub fn element(&self, word: &[usize]) -> WeylElement {
        word.iter()
            .fold(self.identity(), |w, &i| w.mul(&self.reflection(i)))
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        let mut w = self.identity();
        for &i in word {
            if i >= self.rank() || w.has_right_descent(i) {
                return false;
            }
            w = w.mul(&self.reflection(i));
        }
        true
    }

    fn longest_by_search(&self) -> WeylElement {
        let mut w = self.identity();
        'grow: loop {
            for i in 0..self.rank() {
                if !w.has_right_descent(i) {
                    w = w.mul(&self.reflection(i));
                    continue 'grow;
                }
            }
            return w;
        }
    }

    pub fn longest_element(&self) -> WeylElement {
        self.element(&self.0.longest)
    }

    /// Lexicographically smallest reduced word of the longest element.
    pub fn longest_word(&self) -> &[usize] {
        &self.0.longest
    }

    /// `i -> i^!` with `w_I s_i w_I = s_{i^!}`.
    pub fn bang(&self, i: usize) -> usize {
        self.0.bang[i]
    }

    /// `<i, lambda^!> = <i^!, lambda>`
    pub fn bang_weight(&self, lambda: &[i64]) -> Weight {
        (0..self.rank()).map(|i| lambda[self.bang(i)]).collect()
    }

    /// All elements of `W`, breadth first from the identity.
    pub fn elements(&self) -> Vec<WeylElement> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity().m);
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                let v = w.mul(&self.reflection(i));
                if seen.insert(v.m.clone()) {
                    queue.push_back(v);
                }
            }
            out.push(w);
        }
        out
    }

    /// Braid moves turning `from` into `to`; both must be reduced words of one element.
    pub fn braid_path(&self, from: &[usize], to: &[usize]) -> Result<Arc<Vec<BraidMove>>> {
        let key = (from.to_vec(), to.to_vec());
        if let Some(p) = self.0.braid_paths.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        if !self.is_reduced(from) || !self.is_reduced(to) || self.element(from) != self.element(to)
        {
            return Err(Error::InvalidWordPair(from.to_vec(), to.to_vec()));
        }
        let path = Arc::new(self.bfs_braid(from, to));
        self.0
            .braid_paths
            .lock()
            .unwrap()
            .insert(key, path.clone());
        Ok(path)
    }

    /// Braid moves available on a word.
    pub fn braid_moves(&self, word: &[usize]) -> Vec<BraidMove> {
        let mut out = Vec::new();
        for pos in 0..word.len() {
            let i = word[pos];
            for j in 0..self.rank() {
                if j == i {
                    continue;
                }
                let m = self.bond_order(i, j);
                if pos + m > word.len() {
                    continue;
                }
                let fits = (0..m).all(|k| word[pos + k] == if k % 2 == 0 { i } else { j });
                if fits {
                    out.push(BraidMove { pos, i, j, m });
                }
            }
        }
        out
    }

    fn bfs_braid(&self, from: &[usize], to: &[usize]) -> Vec<BraidMove> {
        let mut prev: HashMap<Word, (Word, BraidMove)> = HashMap::new();
        let mut queue = VecDeque::from([from.to_vec()]);
        let mut seen = HashSet::from([from.to_vec()]);
        while let Some(w) = queue.pop_front() {
            if w == to {
                let mut path = Vec::new();
                let mut cur = w;
                while let Some((p, mv)) = prev.get(&cur) {
                    path.push(*mv);
                    cur = p.clone();
                }
                path.reverse();
                return path;
            }
            for mv in self.braid_moves(&w) {
                let mut next = w.clone();
                mv.apply(&mut next);
                if seen.insert(next.clone()) {
                    prev.insert(next.clone(), (w.clone(), mv));
                    queue.push_back(next);
                }
            }
        }
        unreachable!("reduced words of one element are braid connected")
    }
}

fn symmetrized_positive_definite(a: &[Vec<i64>]) -> Result<bool> {
    let r = a.len();
    let mut d: Vec<Option<BigRational>> = vec![None; r];
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(BigRational::from_integer(1.into()));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..r {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji
                let dj = d[i].clone().unwrap() * BigInt::from(a[i][j]) / BigInt::from(a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(x) if *x != dj => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()))
                    }
                    _ => {}
                }
            }
        }
    }
    let mut b: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| d[i].clone().unwrap() * BigInt::from(a[i][j]))
                .collect()
        })
        .collect();
    for k in 0..r {
        if !b[k][k].is_positive() {
            return Ok(false);
        }
        for i in k + 1..r {
            let f = &b[i][k] / &b[k][k];
            if f.is_zero() {
                continue;
            }
            for j in k..r {
                let t = &f * &b[k][j];
                b[i][j] -= t;
            }
        }
    }
    Ok(true)
}

fn positive_coroots(a: &[Vec<i64>]) -> Vec<Coweight> {
    let r = a.len();
    let mut seen: HashSet<Coweight> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(z) = queue.pop_front() {
        for i in 0..r {
            let p: i64 = (0..r).map(|k| z[k] * a[k][i]).sum();
            let mut y = z.clone();
            y[i] -= p;
            if y.iter().all(|&c| c >= 0) && seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Coweight> = seen.into_iter().collect();
    out.sort_by_key(|z| (z.iter().sum::<i64>(), z.clone()));
    out
}

/// An element of `W`, stored as its matrix on the coroot lattice together with the inverse.
#[derive(Clone)]
pub struct WeylElement {
    datum: CartanDatum,
    m: Vec<i64>,
    minv: Vec<i64>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.m.hash(state);
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}", fmt_word(&self.canonical_word()))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.canonical_word();
        if w.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = w.iter().map(|i| format!("s{}", i + 1)).collect();
        f.write_str(&parts.join(""))
    }
}

fn matmul(r: usize, x: &[i64], y: &[i64]) -> Vec<i64> {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let a = x[i * r + k];
            if a == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] += a * y[k * r + j];
            }
        }
    }
    out
}

fn matvec(r: usize, x: &[i64], v: &[i64]) -> Vec<i64> {
    (0..r)
        .map(|i| (0..r).map(|k| x[i * r + k] * v[k]).sum())
        .collect()
}

fn is_negative_root(v: &[i64]) -> bool {
    v.iter().all(|&c| c <= 0)
}

impl WeylElement {
    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let r = self.datum.rank();
        WeylElement {
            datum: self.datum.clone(),
            m: matmul(r, &self.m, &rhs.m),
            minv: matmul(r, &rhs.minv, &self.minv),
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.datum != rhs.datum {
            return Err(Error::DatumMismatch);
        }
        Ok(self.mul(rhs))
    }

    pub fn inverse(&self) -> Self {
        WeylElement {
            datum: self.datum.clone(),
            m: self.minv.clone(),
            minv: self.m.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.m == self.datum.identity().m
    }

    pub fn length(&self) -> usize {
        let r = self.datum.rank();
        self.datum
            .positive_coroots()
            .iter()
            .filter(|z| is_negative_root(&matvec(r, &self.m, z)))
            .count()
    }

    /// `|w s_i| < |w|`
    pub fn has_right_descent(&self, i: usize) -> bool {
        let r = self.datum.rank();
        (0..r).all(|k| self.m[k * r + i] <= 0)
    }

    /// `|s_i w| < |w|`
    pub fn has_left_descent(&self, i: usize) -> bool {
        let r = self.datum.rank();
        (0..r).all(|k| self.minv[k * r + i] <= 0)
    }

    pub fn descents(&self, side: Side) -> Vec<usize> {
        (0..self.datum.rank())
            .filter(|&i| match side {
                Side::Left => self.has_left_descent(i),
                Side::Right => self.has_right_descent(i),
            })
            .collect()
    }

    /// Lexicographically smallest reduced word.
    pub fn canonical_word(&self) -> Word {
        let mut word = Vec::new();
        let mut w = self.clone();
        while let Some(i) = (0..self.datum.rank()).find(|&i| w.has_left_descent(i)) {
            word.push(i);
            w = self.datum.reflection(i).mul(&w);
        }
        word
    }

    /// Reduced words in lexicographic order.
    pub fn reduced_words(&self) -> ReducedWords {
        ReducedWords {
            stack: vec![(self.clone(), Vec::new())],
        }
    }

    pub fn act_y(&self, z: &[i64]) -> Coweight {
        matvec(self.datum.rank(), &self.m, z)
    }

    pub fn act_x(&self, lambda: &[i64]) -> Weight {
        let mut out = lambda.to_vec();
        for &i in self.canonical_word().iter().rev() {
            out = reflect_weight(&self.datum, i, &out);
        }
        out
    }

    /// Product in the monoid where `s_i s_i = s_i`.
    pub fn demazure_mul(&self, rhs: &Self) -> Self {
        rhs.canonical_word().iter().fold(self.clone(), |w, &i| {
            if w.has_right_descent(i) {
                w
            } else {
                w.mul(&self.datum.reflection(i))
            }
        })
    }

    /// Bruhat order `self <= w`.
    pub fn bruhat_le(&self, w: &Self) -> bool {
        match (0..self.datum.rank()).find(|&i| w.has_left_descent(i)) {
            None => self.is_identity(),
            Some(i) => {
                let sw = self.datum.reflection(i).mul(w);
                if self.has_left_descent(i) {
                    self.datum.reflection(i).mul(self).bruhat_le(&sw)
                } else {
                    self.bruhat_le(&sw)
                }
            }
        }
    }
}

/// `s_i(lambda) = lambda - <i, lambda> i*`
pub fn reflect_weight(datum: &CartanDatum, i: usize, lambda: &[i64]) -> Weight {
    (0..datum.rank())
        .map(|j| lambda[j] - lambda[i] * datum.pairing(j, i))
        .collect()
}

/// `<zeta, lambda>` for a coweight in the coroot basis.
pub fn pair(zeta: &[i64], lambda: &[i64]) -> i64 {
    zeta.iter().zip(lambda).map(|(a, b)| a * b).sum()
}

pub struct ReducedWords {
    stack: Vec<(WeylElement, Word)>,
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        while let Some((w, prefix)) = self.stack.pop() {
            let desc = w.descents(Side::Left);
            if desc.is_empty() {
                return Some(prefix);
            }
            for &i in desc.iter().rev() {
                let mut p = prefix.clone();
                p.push(i);
                self.stack.push((w.datum.reflection(i).mul(&w), p));
            }
        }
        None
    }
}
