//! The monoid generated by `i^a`, stored as a Weyl element plus coordinates
//! in the lexicographically smallest reduced word.

use std::fmt;

use rand::Rng;

use crate::braid::chart_transition;
use crate::error::{Error, Result};
use crate::rootdata::{fmt_word, pair, CartanDatum, WeylElement, Word};
use crate::semifield::{PosRatFunc, Sample, Semifield, TropInt};

#[derive(Clone, Debug)]
pub struct UElement<K> {
    datum: CartanDatum,
    w: WeylElement,
    word: Word,
    coords: Vec<K>,
}

impl<K: Semifield> PartialEq for UElement<K> {
    fn eq(&self, other: &Self) -> bool {
        self.datum == other.datum && self.w == other.w && self.coords == other.coords
    }
}

impl<K: Semifield> fmt::Display for UElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_chart(f, &self.word, &self.coords)
    }
}

pub(crate) fn write_chart<K: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    word: &[usize],
    coords: &[K],
) -> fmt::Result {
    write!(f, "{}:", fmt_word(word))?;
    for c in coords {
        write!(f, " {c}")?;
    }
    Ok(())
}

impl<K: Semifield> UElement<K> {
    pub fn identity(datum: &CartanDatum) -> Self {
        UElement {
            datum: datum.clone(),
            w: datum.identity(),
            word: Vec::new(),
            coords: Vec::new(),
        }
    }

    pub fn generator(datum: &CartanDatum, i: usize, a: K) -> Self {
        UElement {
            datum: datum.clone(),
            w: datum.reflection(i),
            word: vec![i],
            coords: vec![a],
        }
    }

    /// `i_1^{a_1} ... i_m^{a_m}` for a reduced word.
    pub fn from_word(datum: &CartanDatum, word: &[usize], coords: &[K]) -> Result<Self> {
        if word.len() != coords.len() {
            return Err(Error::WrongLength {
                expected: word.len(),
                got: coords.len(),
            });
        }
        if !datum.is_reduced(word) {
            return Err(Error::NotReduced(word.to_vec()));
        }
        let w = datum.element(word);
        let canon = w.canonical_word();
        let coords = chart_transition(datum, word, &canon, coords)?;
        Ok(UElement {
            datum: datum.clone(),
            w,
            word: canon,
            coords,
        })
    }

    /// Product of arbitrary generators, reduced or not.
    pub fn from_letters(datum: &CartanDatum, letters: &[(usize, K)]) -> Self {
        letters
            .iter()
            .fold(Self::identity(datum), |x, (i, a)| x.mul_gen_right(*i, a))
    }

    pub fn random<R: Rng + ?Sized>(datum: &CartanDatum, w: &WeylElement, rng: &mut R) -> Self
    where
        K: Sample,
    {
        let word = w.canonical_word();
        let coords = (0..word.len()).map(|_| K::sample(rng)).collect();
        UElement {
            datum: datum.clone(),
            w: w.clone(),
            word,
            coords,
        }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn weyl(&self) -> &WeylElement {
        &self.w
    }

    /// The canonical reduced word.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn coords(&self) -> &[K] {
        &self.coords
    }

    /// Canonical letters `(i_k, a_k)`.
    pub fn letters(&self) -> Vec<(usize, K)> {
        self.word.iter().cloned().zip(self.coords.iter().cloned()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Coordinates in the chart of another reduced word of the same element.
    pub fn coords_in(&self, word: &[usize]) -> Result<Vec<K>> {
        chart_transition(&self.datum, &self.word, word, &self.coords)
    }

    fn canonical_from(datum: &CartanDatum, w: WeylElement, word: &[usize], coords: &[K]) -> Self {
        let canon = w.canonical_word();
        let coords = chart_transition(datum, word, &canon, coords).expect("reduced word of w");
        UElement {
            datum: datum.clone(),
            w,
            word: canon,
            coords,
        }
    }

    /// `i^a * self`
    pub fn mul_gen_left(&self, i: usize, a: &K) -> Self {
        let s = self.datum.reflection(i);
        if !self.w.has_left_descent(i) {
            let mut word = vec![i];
            word.extend_from_slice(&self.word);
            let mut coords = vec![a.clone()];
            coords.extend_from_slice(&self.coords);
            return Self::canonical_from(&self.datum, s.mul(&self.w), &word, &coords);
        }
        let mut chart = vec![i];
        chart.extend(s.mul(&self.w).canonical_word());
        let mut coords = self.coords_in(&chart).expect("chart of w");
        coords[0] = coords[0].add(a);
        Self::canonical_from(&self.datum, self.w.clone(), &chart, &coords)
    }

    /// `self * i^a`
    pub fn mul_gen_right(&self, i: usize, a: &K) -> Self {
        let s = self.datum.reflection(i);
        if !self.w.has_right_descent(i) {
            let mut word = self.word.clone();
            word.push(i);
            let mut coords = self.coords.clone();
            coords.push(a.clone());
            return Self::canonical_from(&self.datum, self.w.mul(&s), &word, &coords);
        }
        let mut chart = self.w.mul(&s).canonical_word();
        chart.push(i);
        let mut coords = self.coords_in(&chart).expect("chart of w");
        let last = coords.len() - 1;
        coords[last] = coords[last].add(a);
        Self::canonical_from(&self.datum, self.w.clone(), &chart, &coords)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        rhs.word
            .iter()
            .zip(&rhs.coords)
            .fold(self.clone(), |x, (&i, a)| x.mul_gen_right(i, a))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.datum != rhs.datum {
            return Err(Error::DatumMismatch);
        }
        Ok(self.mul(rhs))
    }

    /// The antiautomorphism fixing each generator.
    pub fn psi(&self) -> Self {
        let word: Word = self.word.iter().rev().cloned().collect();
        let coords: Vec<K> = self.coords.iter().rev().cloned().collect();
        Self::canonical_from(&self.datum, self.w.inverse(), &word, &coords)
    }

    /// Multiplies the first coordinate by `a` in a chart starting with `i`.
    pub fn t_scale(&self, i: usize, a: &K) -> Result<Self> {
        if !self.w.has_left_descent(i) {
            return Err(Error::NotADescent(i));
        }
        let mut chart = vec![i];
        chart.extend(self.datum.reflection(i).mul(&self.w).canonical_word());
        let mut coords = self.coords_in(&chart)?;
        coords[0] = coords[0].mul(a);
        Ok(Self::canonical_from(&self.datum, self.w.clone(), &chart, &coords))
    }

    /// Exponents `c_k = <s_{i_1} ... s_{i_{k-1}}(i_k), lambda>` for a word.
    pub fn theta_exponents(datum: &CartanDatum, word: &[usize], lambda: &[i64]) -> Vec<i64> {
        let r = datum.rank();
        let mut prefix = datum.identity();
        word.iter()
            .map(|&i| {
                let mut e = vec![0; r];
                e[i] = 1;
                let c = pair(&prefix.act_y(&e), lambda);
                prefix = prefix.mul(&datum.reflection(i));
                c
            })
            .collect()
    }

    /// The character `prod_k a_k^{c_k}`.
    pub fn theta(&self, lambda: &[i64]) -> K {
        Self::theta_in_chart(&self.datum, &self.word, &self.coords, lambda)
    }

    pub fn theta_in_chart(datum: &CartanDatum, word: &[usize], coords: &[K], lambda: &[i64]) -> K {
        Self::theta_exponents(datum, word, lambda)
            .iter()
            .zip(coords)
            .fold(K::one(), |acc, (&c, a)| acc.mul(&a.pow(c)))
    }

    /// Last coordinate in a chart of the longest element ending with `i`.
    pub fn z_coord(&self, i: usize) -> Result<K> {
        if self.w != self.datum.longest_element() {
            return Err(Error::NotLongest);
        }
        let mut chart = self.w.mul(&self.datum.reflection(i)).canonical_word();
        chart.push(i);
        let coords = self.coords_in(&chart)?;
        Ok(coords.last().unwrap().clone())
    }

    /// Applies a semifield homomorphism coordinatewise.
    pub fn map<L: Semifield>(&self, f: impl Fn(&K) -> L) -> UElement<L> {
        UElement {
            datum: self.datum.clone(),
            w: self.w.clone(),
            word: self.word.clone(),
            coords: self.coords.iter().map(f).collect(),
        }
    }
}

impl UElement<PosRatFunc> {
    pub fn zone(&self) -> UElement<TropInt> {
        self.map(crate::semifield::valuation)
    }
}

impl UElement<TropInt> {
    pub fn is_nonneg(&self) -> bool {
        self.coords.iter().all(|c| c.is_nonneg())
    }

    /// Demazure product of the letters whose coordinate is zero, in a given chart.
    pub fn chi_in_chart(&self, word: &[usize]) -> Result<WeylElement> {
        let coords = self.coords_in(word)?;
        if coords.iter().any(|c| !c.is_nonneg()) {
            return Err(Error::NotInN);
        }
        Ok(word
            .iter()
            .zip(&coords)
            .filter(|(_, c)| c.value().sign() == num_bigint::Sign::NoSign)
            .fold(self.datum.identity(), |acc, (&i, _)| {
                acc.demazure_mul(&self.datum.reflection(i))
            }))
    }

    pub fn chi(&self) -> Result<WeylElement> {
        self.chi_in_chart(&self.word)
    }
}
