//! The monoid generated by `i^a`, `(-i)^a` and the torus letters `~i^a`,
//! kept in the form `u+ . t . u-`.

use std::fmt;

use rand::Rng;

use crate::charts::{self, chart_piece, Chart, Letter};
use crate::error::{Error, Result};
use crate::rootdata::{CartanDatum, WeylElement};
use crate::semifield::{PosRatFunc, Sample, Semifield, TropInt};
use crate::umonoid::UElement;

/// `uplus` is a word in the `i`, `uminus` a word in the `-i` (stored by index).
#[derive(Clone, Debug)]
pub struct GElement<K> {
    uplus: UElement<K>,
    torus: Vec<K>,
    uminus: UElement<K>,
}

impl<K: Semifield> PartialEq for GElement<K> {
    fn eq(&self, other: &Self) -> bool {
        self.uplus == other.uplus && self.torus == other.torus && self.uminus == other.uminus
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generator<K> {
    X(usize, K),
    Y(usize, K),
    H(usize, K),
}

impl<K: Semifield> Generator<K> {
    pub fn letter(&self) -> Letter {
        match self {
            Generator::X(i, _) => Letter::Pos(*i),
            Generator::Y(i, _) => Letter::Neg(*i),
            Generator::H(i, _) => Letter::Torus(*i),
        }
    }

    pub fn value(&self) -> &K {
        match self {
            Generator::X(_, a) | Generator::Y(_, a) | Generator::H(_, a) => a,
        }
    }

    pub fn from_letter(l: Letter, a: K) -> Self {
        match l {
            Letter::Pos(i) => Generator::X(i, a),
            Letter::Neg(i) => Generator::Y(i, a),
            Letter::Torus(i) => Generator::H(i, a),
        }
    }

    /// The antiautomorphism swapping `i^a` and `(-i)^a`.
    pub fn psi(&self) -> Self {
        match self {
            Generator::X(i, a) => Generator::Y(*i, a.clone()),
            Generator::Y(i, a) => Generator::X(*i, a.clone()),
            Generator::H(i, a) => Generator::H(*i, a.clone()),
        }
    }
}

impl<K: Semifield> fmt::Display for Generator<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.letter(), self.value())
    }
}

impl<K: Semifield> fmt::Display for GElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "+{}; ~:", self.uplus)?;
        for t in &self.torus {
            write!(f, " {t}")?;
        }
        write!(f, "; -{}", self.uminus)
    }
}

/// `k*(T) = prod_l T_l^{<l,k*>}`
fn root_value<K: Semifield>(datum: &CartanDatum, k: usize, t: &[K]) -> K {
    t.iter()
        .enumerate()
        .fold(K::one(), |acc, (l, tl)| acc.mul(&tl.pow(datum.pairing(l, k))))
}

impl<K: Semifield> GElement<K> {
    pub fn identity(datum: &CartanDatum) -> Self {
        GElement {
            uplus: UElement::identity(datum),
            torus: vec![K::one(); datum.rank()],
            uminus: UElement::identity(datum),
        }
    }

    pub fn from_parts(uplus: UElement<K>, torus: Vec<K>, uminus: UElement<K>) -> Result<Self> {
        if uplus.datum() != uminus.datum() {
            return Err(Error::DatumMismatch);
        }
        if torus.len() != uplus.datum().rank() {
            return Err(Error::WrongLength {
                expected: uplus.datum().rank(),
                got: torus.len(),
            });
        }
        Ok(GElement {
            uplus,
            torus,
            uminus,
        })
    }

    pub fn generator(datum: &CartanDatum, g: &Generator<K>) -> Self {
        Self::identity(datum).mul_gen_right(g)
    }

    pub fn from_generators(datum: &CartanDatum, gens: &[Generator<K>]) -> Self {
        gens.iter()
            .fold(Self::identity(datum), |x, g| x.mul_gen_right(g))
    }

    pub fn random<R: Rng + ?Sized>(
        datum: &CartanDatum,
        w: &WeylElement,
        w2: &WeylElement,
        rng: &mut R,
    ) -> Self
    where
        K: Sample,
    {
        GElement {
            uplus: UElement::random(datum, w, rng),
            torus: (0..datum.rank()).map(|_| K::sample(rng)).collect(),
            uminus: UElement::random(datum, w2, rng),
        }
    }

    pub fn datum(&self) -> &CartanDatum {
        self.uplus.datum()
    }

    pub fn uplus(&self) -> &UElement<K> {
        &self.uplus
    }

    pub fn torus(&self) -> &[K] {
        &self.torus
    }

    pub fn uminus(&self) -> &UElement<K> {
        &self.uminus
    }

    /// `(w, w')` with the element in the piece of `w` and `-w'`.
    pub fn piece(&self) -> (WeylElement, WeylElement) {
        (self.uplus.weyl().clone(), self.uminus.weyl().clone())
    }

    /// Generators of the canonical form, left to right.
    pub fn generators(&self) -> Vec<Generator<K>> {
        let mut out: Vec<Generator<K>> = self
            .uplus
            .letters()
            .into_iter()
            .map(|(i, a)| Generator::X(i, a))
            .collect();
        out.extend(
            self.torus
                .iter()
                .enumerate()
                .map(|(i, a)| Generator::H(i, a.clone())),
        );
        out.extend(
            self.uminus
                .letters()
                .into_iter()
                .map(|(i, a)| Generator::Y(i, a)),
        );
        out
    }

    /// The chart `(u+ letters, ~1 .. ~r, u- letters)` and its coordinates.
    pub fn canonical_chart(&self) -> (Chart, Vec<K>) {
        let gens = self.generators();
        let h = gens.iter().map(|g| g.letter()).collect();
        let x = gens.iter().map(|g| g.value().clone()).collect();
        (h, x)
    }

    pub fn mul_gen_right(&self, g: &Generator<K>) -> Self {
        let datum = self.datum().clone();
        match g {
            Generator::Y(i, a) => GElement {
                uplus: self.uplus.clone(),
                torus: self.torus.clone(),
                uminus: self.uminus.mul_gen_right(*i, a),
            },
            Generator::H(i, a) => {
                let mut torus = self.torus.clone();
                torus[*i] = torus[*i].mul(a);
                let word = self.uminus.word().to_vec();
                let coords: Vec<K> = word
                    .iter()
                    .zip(self.uminus.coords())
                    .map(|(&k, c)| c.mul(&a.pow(datum.pairing(*i, k))))
                    .collect();
                GElement {
                    uplus: self.uplus.clone(),
                    torus,
                    uminus: UElement::from_word(&datum, &word, &coords).expect("same word"),
                }
            }
            Generator::X(i, a) => {
                let i = *i;
                let word = self.uminus.word().to_vec();
                let mut coords = self.uminus.coords().to_vec();
                let mut t_acc = vec![K::one(); datum.rank()];
                let mut a = a.clone();
                for pos in (0..word.len()).rev() {
                    let k = word[pos];
                    let c = coords[pos].clone();
                    let kt = root_value(&datum, k, &t_acc);
                    if k != i {
                        coords[pos] = c.mul(&kt);
                    } else {
                        let s = a.mul(&c).add(&K::one());
                        let tau = s.inv();
                        coords[pos] = c.mul(&tau).mul(&kt);
                        t_acc[i] = t_acc[i].mul(&tau);
                        a = a.mul(&tau);
                    }
                }
                let it = root_value(&datum, i, &self.torus);
                let torus = self
                    .torus
                    .iter()
                    .zip(&t_acc)
                    .map(|(x, y)| x.mul(y))
                    .collect();
                GElement {
                    uplus: self.uplus.mul_gen_right(i, &a.mul(&it)),
                    torus,
                    uminus: UElement::from_word(&datum, &word, &coords).expect("same word"),
                }
            }
        }
    }

    /// The antiautomorphism swapping the signed generators.
    pub fn psi(&self) -> Self {
        GElement {
            uplus: self.uminus.psi(),
            torus: self.torus.clone(),
            uminus: self.uplus.psi(),
        }
    }

    pub fn mul_gen_left(&self, g: &Generator<K>) -> Self {
        self.psi().mul_gen_right(&g.psi()).psi()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        rhs.generators()
            .iter()
            .fold(self.clone(), |x, g| x.mul_gen_right(g))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.datum() != rhs.datum() {
            return Err(Error::DatumMismatch);
        }
        Ok(self.mul(rhs))
    }

    /// `h_1^{a_1} ... h_M^{a_M}` for a chart of some piece.
    pub fn from_chart(datum: &CartanDatum, h: &[Letter], coords: &[K]) -> Result<Self> {
        if h.len() != coords.len() {
            return Err(Error::WrongLength {
                expected: h.len(),
                got: coords.len(),
            });
        }
        chart_piece(datum, h)?;
        let gens: Vec<Generator<K>> = h
            .iter()
            .zip(coords)
            .map(|(&l, a)| Generator::from_letter(l, a.clone()))
            .collect();
        Ok(Self::from_generators(datum, &gens))
    }

    /// Coordinates in a chart of the same piece.
    pub fn to_chart(&self, h: &[Letter]) -> Result<Vec<K>> {
        let (w, w2) = chart_piece(self.datum(), h)?;
        if (w, w2) != self.piece() {
            return Err(Error::PieceMismatch);
        }
        let (h0, x0) = self.canonical_chart();
        charts::transport(self.datum(), &h0, h, &x0, false)
    }

    pub fn map<L: Semifield>(&self, f: impl Fn(&K) -> L + Copy) -> GElement<L> {
        GElement {
            uplus: self.uplus.map(f),
            torus: self.torus.iter().map(f).collect(),
            uminus: self.uminus.map(f),
        }
    }
}

impl GElement<PosRatFunc> {
    pub fn zone(&self) -> GElement<TropInt> {
        self.map(crate::semifield::valuation)
    }
}

impl GElement<TropInt> {
    /// Nonnegative signed coordinates and a trivial torus part.
    pub fn is_nonneg(&self) -> bool {
        self.uplus.is_nonneg()
            && self.uminus.is_nonneg()
            && self.torus.iter().all(|t| t.is_one())
    }

    pub fn split_nonneg(&self) -> Result<(UElement<TropInt>, UElement<TropInt>)> {
        if !self.is_nonneg() {
            return Err(Error::NotInN);
        }
        Ok((self.uplus.clone(), self.uminus.clone()))
    }

    pub fn join_nonneg(u: &UElement<TropInt>, v: &UElement<TropInt>) -> Result<Self> {
        if !u.is_nonneg() || !v.is_nonneg() {
            return Err(Error::NotInN);
        }
        Self::from_parts(u.clone(), vec![TropInt::one(); u.datum().rank()], v.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::parse_chart;
    use crate::semifield::PosRat;
    use rand::SeedableRng;

    fn q(p: i64, r: i64) -> PosRat {
        PosRat::from_ints(p, r)
    }

    #[test]
    fn sl2_reordering() {
        let d = CartanDatum::parse("A1").unwrap();
        let x = GElement::from_generators(&d, &[Generator::Y(0, q(1, 1)), Generator::X(0, q(1, 1))]);
        assert_eq!(x.uplus().coords(), &[q(1, 2)]);
        assert_eq!(x.torus(), &[q(1, 2)]);
        assert_eq!(x.uminus().coords(), &[q(1, 2)]);
        let y = x.mul_gen_right(&Generator::H(0, PosRat::int(1)));
        assert_eq!(x, y);
    }

    #[test]
    fn exchange_relation() {
        let d = CartanDatum::parse("A1").unwrap();
        let h = parse_chart("1,~1,-1").unwrap();
        let x = GElement::from_chart(&d, &h, &[q(1, 1), q(1, 1), q(1, 1)]).unwrap();
        assert_eq!(x.uplus().coords(), &[q(1, 1)]);
        let other = x.to_chart(&parse_chart("-1,~1,1").unwrap()).unwrap();
        assert_eq!(other, vec![q(1, 2), q(2, 1), q(1, 2)]);
        let back = GElement::from_chart(&d, &parse_chart("-1,~1,1").unwrap(), &other).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn torus_commutation_relation() {
        let d = CartanDatum::parse("A2").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (a, b) = (PosRat::sample(&mut rng), PosRat::sample(&mut rng));
            for (j, i) in [(0, 0), (0, 1), (1, 0)] {
                for eps in [1i64, -1] {
                    let gen = |v: PosRat| {
                        if eps == 1 {
                            Generator::X(i, v)
                        } else {
                            Generator::Y(i, v)
                        }
                    };
                    let lhs = GElement::from_generators(&d, &[Generator::H(j, a.clone()), gen(b.clone())]);
                    let c = a.pow(eps * d.pairing(j, i)).mul(&b);
                    let rhs = GElement::from_generators(&d, &[gen(c), Generator::H(j, a.clone())]);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn piece_law_and_associativity() {
        let d = CartanDatum::parse("A1").unwrap();
        let s = d.reflection(0);
        let e = d.identity();
        let x = GElement::<PosRat>::random(&d, &s, &e, &mut rand_chacha::ChaCha8Rng::seed_from_u64(1));
        let y = GElement::<PosRat>::random(&d, &e, &s, &mut rand_chacha::ChaCha8Rng::seed_from_u64(2));
        assert_eq!(x.mul(&y).piece(), (s.clone(), s.clone()));
        assert_eq!(GElement::identity(&d).mul(&x), x);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for t in ["A2", "B2"] {
            let d = CartanDatum::parse(t).unwrap();
            let all = d.elements();
            for _ in 0..10 {
                let mut pick = || all[rng.gen_range(0..all.len())].clone();
                let (a, b, c, e, f, g) = (pick(), pick(), pick(), pick(), pick(), pick());
                let x = GElement::<PosRat>::random(&d, &a, &b, &mut rng);
                let y = GElement::<PosRat>::random(&d, &c, &e, &mut rng);
                let z = GElement::<PosRat>::random(&d, &f, &g, &mut rng);
                assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
                assert_eq!(x.mul(&y).piece(), (a.demazure_mul(&c), b.demazure_mul(&e)));
                assert_eq!(x.mul(&y).psi(), y.psi().mul(&x.psi()));
                let g0 = Generator::X(rng.gen_range(0..2), PosRat::sample(&mut rng));
                assert_eq!(x.mul_gen_left(&g0), GElement::generator(&d, &g0).mul(&x));
            }
        }
    }

    #[test]
    fn chart_round_trips() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let d = CartanDatum::parse("A2").unwrap();
        let start = parse_chart("1,2,~1,~2,-2,-1").unwrap();
        let all: Vec<Chart> = charts::component(&d, &start, false).into_iter().collect();
        for h in all.iter().take(60) {
            let x: Vec<PosRat> = (0..h.len()).map(|_| PosRat::sample(&mut rng)).collect();
            let g = GElement::from_chart(&d, h, &x).unwrap();
            assert_eq!(g.to_chart(h).unwrap(), x);
        }
    }

    #[test]
    fn nonneg_split() {
        let d = CartanDatum::parse("A2").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let all = d.elements();
        for _ in 0..30 {
            let mut pick = || all[rng.gen_range(0..all.len())].clone();
            let (a, b, c, e) = (pick(), pick(), pick(), pick());
            let nn = |u: UElement<TropInt>| u.map(|v| TropInt::new(v.to_i64().abs()));
            let u1 = nn(UElement::random(&d, &a, &mut rng));
            let v1 = nn(UElement::random(&d, &b, &mut rng));
            let u2 = nn(UElement::random(&d, &c, &mut rng));
            let v2 = nn(UElement::random(&d, &e, &mut rng));
            let x = GElement::join_nonneg(&u1, &v1).unwrap();
            let y = GElement::join_nonneg(&u2, &v2).unwrap();
            let p = x.mul(&y);
            assert!(p.is_nonneg());
            assert_eq!(p.split_nonneg().unwrap(), (u1.mul(&u2), v1.mul(&v2)));
        }
        let g = GElement::generator(&d, &Generator::X(0, TropInt::new(3)));
        assert_eq!(g.split_nonneg().unwrap().0, UElement::generator(&d, 0, TropInt::new(3)));
        let g = GElement::generator(&d, &Generator::H(0, TropInt::new(1)));
        assert!(!g.is_nonneg());
    }
}
