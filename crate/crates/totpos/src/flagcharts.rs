//! Points of the positive flag varieties in chart coordinates.
//!
//! A chart `h` of piece `(w, w_I w)` with coordinates `a` stands for
//! `h_1(a_1) ... h_M(a_M) (w^{-1} w_I)^. U^-`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::charts::{self, apply_edge, chart_piece, fmt_chart, Chart, Edge, Letter};
use crate::error::{Error, Result};
use crate::gmonoid::{GElement, Generator};
use crate::matrixmodel::{self, ExactMatrix, MatrixScalar};
use crate::rootdata::{CartanDatum, WeylElement, Word};
use crate::semifield::Semifield;

/// Checks that `h` is a flag chart and returns its `w`.
pub fn flag_piece(datum: &CartanDatum, h: &[Letter]) -> Result<WeylElement> {
    let (w, w2) = chart_piece(datum, h)?;
    if w2 != datum.longest_element().mul(&w) {
        return Err(Error::InvalidChart(format!(
            "{} is not a flag chart",
            fmt_chart(h)
        )));
    }
    Ok(w)
}

/// `(i_1, .., i_nu, ~1, .., ~r)`
pub fn xi_chart(datum: &CartanDatum, word: &[usize]) -> Chart {
    word.iter()
        .map(|&i| Letter::Pos(i))
        .chain((0..datum.rank()).map(Letter::Torus))
        .collect()
}

/// `(-i_1, .., -i_nu, ~1, .., ~r)`
pub fn xi_prime_chart(datum: &CartanDatum, word: &[usize]) -> Chart {
    word.iter()
        .map(|&i| Letter::Neg(i))
        .chain((0..datum.rank()).map(Letter::Torus))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlagPoint<K> {
    datum: CartanDatum,
    chart: Chart,
    coords: Vec<K>,
}

impl<K: Semifield> fmt::Display for FlagPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", fmt_chart(&self.chart))?;
        for c in &self.coords {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

type FirstKey = (Vec<Vec<i64>>, Chart, Letter);

fn first_letter_cache() -> &'static Mutex<HashMap<FirstKey, Arc<(Chart, Vec<Edge>)>>> {
    static CACHE: OnceLock<Mutex<HashMap<FirstKey, Arc<(Chart, Vec<Edge>)>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn chart_starting_with(datum: &CartanDatum, from: &[Letter], l: Letter) -> Result<Arc<(Chart, Vec<Edge>)>> {
    let key = (datum.matrix().to_vec(), from.to_vec(), l);
    if let Some(p) = first_letter_cache().lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let found = Arc::new(charts::search(datum, from, true, |h| h.first() == Some(&l))?);
    first_letter_cache().lock().unwrap().insert(key, found.clone());
    Ok(found)
}

/// `t''_l = prod_k t_k^{m[l][k]}` where `m` is the matrix of `w` on the coroots.
fn weyl_act_torus<K: Semifield>(w: &WeylElement, t: &[K]) -> Vec<K> {
    let r = t.len();
    let mut out = vec![K::one(); r];
    for (k, tk) in t.iter().enumerate() {
        let mut e = vec![0; r];
        e[k] = 1;
        for (l, c) in w.act_y(&e).into_iter().enumerate() {
            out[l] = out[l].mul(&tk.pow(c));
        }
    }
    out
}

impl<K: Semifield> FlagPoint<K> {
    pub fn new(datum: &CartanDatum, chart: Chart, coords: Vec<K>) -> Result<Self> {
        flag_piece(datum, &chart)?;
        if coords.len() != chart.len() {
            return Err(Error::WrongLength {
                expected: chart.len(),
                got: coords.len(),
            });
        }
        Ok(FlagPoint {
            datum: datum.clone(),
            chart,
            coords,
        })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn chart(&self) -> &[Letter] {
        &self.chart
    }

    pub fn coords(&self) -> &[K] {
        &self.coords
    }

    pub fn piece(&self) -> WeylElement {
        flag_piece(&self.datum, &self.chart).expect("validated on construction")
    }

    /// The same point in chart `to`.
    pub fn change_chart(&self, to: &[Letter]) -> Result<Self> {
        flag_piece(&self.datum, to)?;
        let coords = charts::transport(&self.datum, &self.chart, to, &self.coords, true)?;
        Ok(FlagPoint {
            datum: self.datum.clone(),
            chart: to.to_vec(),
            coords,
        })
    }

    fn act_generator(&self, g: &Generator<K>) -> Result<Self> {
        let found = chart_starting_with(&self.datum, &self.chart, g.letter())?;
        let mut h = self.chart.clone();
        let mut x = self.coords.clone();
        for e in found.1.iter() {
            apply_edge(&self.datum, &mut h, &mut x, *e);
        }
        x[0] = match g {
            Generator::H(_, a) => x[0].mul(a),
            Generator::X(_, a) | Generator::Y(_, a) => x[0].add(a),
        };
        let coords = charts::transport(&self.datum, &h, &self.chart, &x, true)?;
        Ok(FlagPoint {
            datum: self.datum.clone(),
            chart: self.chart.clone(),
            coords,
        })
    }

    /// `g . p`, expressed in the chart of `p`.
    pub fn act(&self, g: &GElement<K>) -> Result<Self> {
        if g.datum() != &self.datum {
            return Err(Error::DatumMismatch);
        }
        g.generators()
            .iter()
            .rev()
            .try_fold(self.clone(), |p, gen| p.act_generator(gen))
    }

    /// Pushes the torus element `tt` (already moved past the Weyl factor) leftward.
    fn push_torus(&self, tt: &[K]) -> Vec<K> {
        let mut absorbed: Vec<(usize, &K)> = Vec::new();
        self.chart
            .iter()
            .zip(&self.coords)
            .map(|(&l, a)| match l {
                Letter::Torus(i) => {
                    absorbed.push((i, &tt[i]));
                    a.mul(&tt[i])
                }
                _ => {
                    let j = l.index();
                    absorbed.iter().fold(a.clone(), |acc, &(i, ti)| {
                        acc.mul(&ti.pow(-l.sign() * self.datum.pairing(i, j)))
                    })
                }
            })
            .collect()
    }

    /// The right translation `g U^- -> g t U^-`.
    pub fn torus_act(&self, t: &[K]) -> Result<Self> {
        if t.len() != self.datum.rank() {
            return Err(Error::WrongLength {
                expected: self.datum.rank(),
                got: t.len(),
            });
        }
        let w2 = self.piece().inverse().mul(&self.datum.longest_element());
        let tt = weyl_act_torus(&w2, t);
        Ok(FlagPoint {
            datum: self.datum.clone(),
            chart: self.chart.clone(),
            coords: self.push_torus(&tt),
        })
    }

    /// The point of the torus orbit with unit torus coordinates, as a point of the Borel variety.
    pub fn reduce(&self) -> ReducedPoint<K> {
        let mut tt = vec![K::one(); self.datum.rank()];
        for (l, a) in self.chart.iter().zip(&self.coords) {
            if let Letter::Torus(i) = l {
                tt[*i] = a.inv();
            }
        }
        let coords = self
            .chart
            .iter()
            .zip(self.push_torus(&tt))
            .filter(|(l, _)| !matches!(l, Letter::Torus(_)))
            .map(|(_, a)| a)
            .collect();
        ReducedPoint {
            datum: self.datum.clone(),
            chart: self.chart.clone(),
            coords,
        }
    }

    pub fn map<L: Semifield>(&self, f: impl Fn(&K) -> L) -> FlagPoint<L> {
        FlagPoint {
            datum: self.datum.clone(),
            chart: self.chart.clone(),
            coords: self.coords.iter().map(f).collect(),
        }
    }
}

impl<K: MatrixScalar> FlagPoint<K> {
    /// A representative `g` of the coset `g U^-`.
    pub fn matrix(&self) -> Result<ExactMatrix<K::F>> {
        let w2 = self.piece().inverse().mul(&self.datum.longest_element());
        Ok(matrixmodel::eval_chart(&self.datum, &self.chart, &self.coords)?.mul(&matrixmodel::weyl_dot(&w2)?))
    }
}

/// A point of the positive Borel variety: a flag chart and its signed coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedPoint<K> {
    datum: CartanDatum,
    chart: Chart,
    coords: Vec<K>,
}

impl<K: Semifield> fmt::Display for ReducedPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", fmt_chart(&self.chart))?;
        for c in &self.coords {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

impl<K: Semifield> ReducedPoint<K> {
    pub fn new(datum: &CartanDatum, chart: Chart, coords: Vec<K>) -> Result<Self> {
        flag_piece(datum, &chart)?;
        if coords.len() != datum.nu() {
            return Err(Error::WrongLength {
                expected: datum.nu(),
                got: coords.len(),
            });
        }
        Ok(ReducedPoint {
            datum: datum.clone(),
            chart,
            coords,
        })
    }

    /// The point `x_{i_1}(a_1) .. x_{i_nu}(a_nu) B^-`.
    pub fn xi(datum: &CartanDatum, word: &[usize], coords: Vec<K>) -> Result<Self> {
        Self::new(datum, xi_chart(datum, word), coords)
    }

    /// The point `y_{i_1}(a_1) .. y_{i_nu}(a_nu) B^+`.
    pub fn xi_prime(datum: &CartanDatum, word: &[usize], coords: Vec<K>) -> Result<Self> {
        Self::new(datum, xi_prime_chart(datum, word), coords)
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn chart(&self) -> &[Letter] {
        &self.chart
    }

    pub fn coords(&self) -> &[K] {
        &self.coords
    }

    /// Unit torus coordinates inserted.
    pub fn lift(&self) -> FlagPoint<K> {
        let mut it = self.coords.iter();
        let coords = self
            .chart
            .iter()
            .map(|l| match l {
                Letter::Torus(_) => K::one(),
                _ => it.next().expect("length checked").clone(),
            })
            .collect();
        FlagPoint {
            datum: self.datum.clone(),
            chart: self.chart.clone(),
            coords,
        }
    }

    pub fn change_chart(&self, to: &[Letter]) -> Result<Self> {
        Ok(self.lift().change_chart(to)?.reduce())
    }

    pub fn act(&self, g: &GElement<K>) -> Result<Self> {
        Ok(self.lift().act(g)?.reduce())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialSide {
    /// `u P_J^- u^{-1}` with `u = x_{i_1}(a_1) .. x_{i_m}(a_m)`.
    X,
    /// `u' P_{J!}^+ u'^{-1}` with `u' = y_{i_m}(a_m) .. y_{i_1}(a_1)`.
    Y,
}

/// A point of the positive part of the partial flag variety of type `J`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialPoint<K> {
    datum: CartanDatum,
    j: Vec<usize>,
    side: PartialSide,
    word: Word,
    coords: Vec<K>,
}

fn parabolic_longest(datum: &CartanDatum, j: &[usize]) -> WeylElement {
    // the longest element of W_J is reached by greedily extending on the right
    let mut w = datum.identity();
    loop {
        let Some(&i) = j.iter().find(|&&i| !w.has_right_descent(i)) else {
            return w;
        };
        w = w.mul(&datum.reflection(i));
    }
}

impl<K: Semifield> PartialPoint<K> {
    pub fn new(datum: &CartanDatum, j: &[usize], side: PartialSide, word: &[usize], coords: Vec<K>) -> Result<Self> {
        let mut j = j.to_vec();
        j.sort();
        j.dedup();
        if j.iter().any(|&i| i >= datum.rank()) {
            return Err(Error::InvalidChart("J out of range".into()));
        }
        let wj = parabolic_longest(datum, &j);
        let target = datum.longest_element().mul(&wj);
        if !datum.is_reduced(word) || datum.element(word) != target {
            return Err(Error::NotReduced(word.to_vec()));
        }
        if coords.len() != word.len() {
            return Err(Error::WrongLength {
                expected: word.len(),
                got: coords.len(),
            });
        }
        Ok(PartialPoint {
            datum: datum.clone(),
            j,
            side,
            word: word.to_vec(),
            coords,
        })
    }

    pub fn coords(&self) -> &[K] {
        &self.coords
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn side(&self) -> PartialSide {
        self.side
    }

    /// The Borel chart used to lift points with the given side and word.
    fn lifted_chart(&self, side: PartialSide, word: &[usize]) -> Chart {
        let wj = parabolic_longest(&self.datum, &self.j).canonical_word();
        match side {
            PartialSide::X => {
                let full: Word = word.iter().chain(&wj).cloned().collect();
                xi_chart(&self.datum, &full)
            }
            PartialSide::Y => {
                let full: Word = word
                    .iter()
                    .rev()
                    .cloned()
                    .chain(wj.iter().map(|&i| self.datum.bang(i)))
                    .collect();
                xi_prime_chart(&self.datum, &full)
            }
        }
    }

    /// A Borel point above this one.
    pub fn lift(&self) -> ReducedPoint<K> {
        let s = self.datum.nu() - self.word.len();
        let mut coords: Vec<K> = match self.side {
            PartialSide::X => self.coords.clone(),
            PartialSide::Y => self.coords.iter().rev().cloned().collect(),
        };
        coords.extend(std::iter::repeat(K::one()).take(s));
        ReducedPoint {
            datum: self.datum.clone(),
            chart: self.lifted_chart(self.side, &self.word),
            coords,
        }
    }

    fn project(&self, q: &ReducedPoint<K>, side: PartialSide, word: &[usize]) -> Self {
        let m = word.len();
        let coords = match side {
            PartialSide::X => q.coords[..m].to_vec(),
            PartialSide::Y => q.coords[..m].iter().rev().cloned().collect(),
        };
        PartialPoint {
            datum: self.datum.clone(),
            j: self.j.clone(),
            side,
            word: word.to_vec(),
            coords,
        }
    }

    /// The same point in the chart of another side and word.
    pub fn change_chart(&self, side: PartialSide, word: &[usize]) -> Result<Self> {
        let probe = PartialPoint::new(&self.datum, &self.j, side, word, self.coords.clone())?;
        let q = self.lift().change_chart(&probe.lifted_chart(side, word))?;
        Ok(self.project(&q, side, word))
    }

    pub fn act(&self, g: &GElement<K>) -> Result<Self> {
        let q = self.lift().act(g)?;
        Ok(self.project(&q, self.side, &self.word))
    }
}
