//! Type A matrix model: `SL_{n+1}` over an exact field.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::charts::Letter;
use crate::error::{Error, Result};
use crate::gmonoid::GElement;
use crate::rootdata::{CartanDatum, WeylElement, Word};
use crate::semifield::{PosRat, PosRatFunc, RatFunc, Semifield};
use crate::umonoid::UElement;

pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;

    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn from_i64(n: i64) -> Self {
        RatFunc::constant(BigRational::from_integer(BigInt::from(n)))
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFunc::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RatFunc::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::mul(self, rhs)
    }
    fn div(&self, rhs: &Self) -> Self {
        RatFunc::div(self, rhs)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

/// Semifields that embed in an exact field.
pub trait MatrixScalar: Semifield {
    type F: Field;
    fn to_field(&self) -> Self::F;
    /// `None` unless the value is positive.
    fn from_field(f: &Self::F) -> Option<Self>;
}

impl MatrixScalar for PosRat {
    type F = BigRational;
    fn to_field(&self) -> BigRational {
        self.value().clone()
    }
    fn from_field(f: &BigRational) -> Option<Self> {
        PosRat::new(f.clone())
    }
}

impl MatrixScalar for PosRatFunc {
    type F = RatFunc;
    fn to_field(&self) -> RatFunc {
        self.as_ratfunc().clone()
    }
    fn from_field(f: &RatFunc) -> Option<Self> {
        PosRatFunc::from_ratfunc(f.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F> {
    e: Vec<Vec<F>>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn identity(size: usize) -> Self {
        let e = (0..size)
            .map(|r| {
                (0..size)
                    .map(|c| if r == c { F::one() } else { F::zero() })
                    .collect()
            })
            .collect();
        ExactMatrix { e }
    }

    pub fn from_rows(e: Vec<Vec<F>>) -> Self {
        assert!(e.iter().all(|row| row.len() == e.len()), "square matrix expected");
        ExactMatrix { e }
    }

    pub fn size(&self) -> usize {
        self.e.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.e[r][c]
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.e
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.size();
        let e = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        (0..n).fold(F::zero(), |acc, k| {
                            if self.e[r][k].is_zero() || rhs.e[k][c].is_zero() {
                                acc
                            } else {
                                acc.add(&self.e[r][k].mul(&rhs.e[k][c]))
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        ExactMatrix { e }
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        ExactMatrix {
            e: (0..n).map(|r| (0..n).map(|c| self.e[c][r].clone()).collect()).collect(),
        }
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.size();
        let mut a = self.e.clone();
        let mut inv = Self::identity(n).e;
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            inv.swap(col, p);
            let piv = a[col][col].clone();
            for c in 0..n {
                a[col][c] = a[col][c].div(&piv);
                inv[col][c] = inv[col][c].div(&piv);
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..n {
                        let (x, y) = (a[col][c].mul(&f), inv[col][c].mul(&f));
                        a[r][c] = a[r][c].sub(&x);
                        inv[r][c] = inv[r][c].sub(&y);
                    }
                }
            }
        }
        Some(ExactMatrix { e: inv })
    }

    pub fn det(&self) -> F {
        let n = self.size();
        let mut a = self.e.clone();
        let mut d = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return F::zero();
            };
            if p != col {
                a.swap(col, p);
                d = d.neg();
            }
            d = d.mul(&a[col][col]);
            for r in col + 1..n {
                if !a[r][col].is_zero() {
                    let f = a[r][col].div(&a[col][col]);
                    for c in col..n {
                        let x = a[col][c].mul(&f);
                        a[r][c] = a[r][c].sub(&x);
                    }
                }
            }
        }
        d
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> F {
        let sub = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.e[r][c].clone()).collect())
            .collect();
        ExactMatrix { e: sub }.det()
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        let n = self.size();
        (0..n).all(|r| {
            (0..n).all(|c| match c.cmp(&r) {
                std::cmp::Ordering::Greater => self.e[r][c].is_zero(),
                std::cmp::Ordering::Equal => self.e[r][c] == F::one(),
                std::cmp::Ordering::Less => true,
            })
        })
    }

    pub fn is_upper_triangular(&self) -> bool {
        let n = self.size();
        (0..n).all(|r| (0..r).all(|c| self.e[r][c].is_zero()))
    }
}

impl<F: Field> fmt::Display for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.e.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    X,
    Y,
    Cochar,
    SDot,
}

/// Generator matrix in `SL_{n+1}`, `i` 0-based. `SDot` ignores `value`.
pub fn gen_matrix<F: Field>(n: usize, kind: GenKind, i: usize, value: &F) -> Result<ExactMatrix<F>> {
    if i >= n {
        return Err(Error::InvalidCartan(format!("index {} out of range for rank {n}", i + 1)));
    }
    let mut m = ExactMatrix::identity(n + 1);
    match kind {
        GenKind::X => m.e[i][i + 1] = value.clone(),
        GenKind::Y => m.e[i + 1][i] = value.clone(),
        GenKind::Cochar => {
            if value.is_zero() {
                return Err(Error::EvaluationAtPole("zero torus entry".into()));
            }
            m.e[i][i] = value.clone();
            m.e[i + 1][i + 1] = F::one().div(value);
        }
        GenKind::SDot => {
            m.e[i][i] = F::zero();
            m.e[i + 1][i + 1] = F::zero();
            m.e[i][i + 1] = F::one();
            m.e[i + 1][i] = F::one().neg();
        }
    }
    Ok(m)
}

fn require_type_a(datum: &CartanDatum) -> Result<()> {
    if datum.is_type_a() {
        Ok(())
    } else {
        Err(Error::TypeNotSupported)
    }
}

/// Product of `x_i`, `y_i` and torus matrices along a chart.
pub fn eval_chart<K: MatrixScalar>(datum: &CartanDatum, h: &[Letter], coords: &[K]) -> Result<ExactMatrix<K::F>> {
    require_type_a(datum)?;
    let n = datum.rank();
    let mut m = ExactMatrix::identity(n + 1);
    for (l, a) in h.iter().zip(coords) {
        let kind = match l {
            Letter::Pos(_) => GenKind::X,
            Letter::Neg(_) => GenKind::Y,
            Letter::Torus(_) => GenKind::Cochar,
        };
        m = m.mul(&gen_matrix(n, kind, l.index(), &a.to_field())?);
    }
    Ok(m)
}

pub fn eval_u<K: MatrixScalar>(x: &UElement<K>) -> Result<ExactMatrix<K::F>> {
    let h: Vec<Letter> = x.word().iter().map(|&i| Letter::Pos(i)).collect();
    eval_chart(x.datum(), &h, x.coords())
}

/// `x` read through `i^a -> y_i(a)`.
pub fn eval_u_minus<K: MatrixScalar>(x: &UElement<K>) -> Result<ExactMatrix<K::F>> {
    let h: Vec<Letter> = x.word().iter().map(|&i| Letter::Neg(i)).collect();
    eval_chart(x.datum(), &h, x.coords())
}

pub fn eval_g<K: MatrixScalar>(x: &GElement<K>) -> Result<ExactMatrix<K::F>> {
    let (h, coords) = x.canonical_chart();
    eval_chart(x.datum(), &h, &coords)
}

/// Product of the `s_i` dot matrices along the canonical word of `w`.
pub fn weyl_dot<F: Field>(w: &WeylElement) -> Result<ExactMatrix<F>> {
    let datum = w.datum();
    require_type_a(datum)?;
    let n = datum.rank();
    let mut m = ExactMatrix::identity(n + 1);
    for i in w.canonical_word() {
        m = m.mul(&gen_matrix(n, GenKind::SDot, i, &F::one())?);
    }
    Ok(m)
}

/// Lower unitriangular `m` with `g m^{-1}` upper triangular.
fn ul_lower<F: Field>(g: &ExactMatrix<F>) -> Result<ExactMatrix<F>> {
    let n = g.size();
    let mut a = g.clone();
    let mut ops = ExactMatrix::<F>::identity(n);
    for k in (1..n).rev() {
        let piv = a.e[k][k].clone();
        if piv.is_zero() {
            return Err(Error::NotTotallyPositive);
        }
        for j in 0..k {
            if a.e[k][j].is_zero() {
                continue;
            }
            let c = a.e[k][j].div(&piv);
            for r in 0..n {
                let (x, y) = (a.e[r][k].mul(&c), ops.e[r][k].mul(&c));
                a.e[r][j] = a.e[r][j].sub(&x);
                ops.e[r][j] = ops.e[r][j].sub(&y);
            }
        }
    }
    ops.inverse().ok_or(Error::NotTotallyPositive)
}

/// Lower unitriangular `m` with `m^{-1} g` upper triangular.
fn lu_lower<F: Field>(g: &ExactMatrix<F>) -> Result<ExactMatrix<F>> {
    let n = g.size();
    let mut a = g.clone();
    let mut l = ExactMatrix::identity(n);
    for k in 0..n {
        let piv = a.e[k][k].clone();
        if piv.is_zero() {
            return Err(Error::NotTotallyPositive);
        }
        for r in k + 1..n {
            if a.e[r][k].is_zero() {
                continue;
            }
            let f = a.e[r][k].div(&piv);
            for c in k..n {
                let x = a.e[k][c].mul(&f);
                a.e[r][c] = a.e[r][c].sub(&x);
            }
            l.e[r][k] = f;
        }
    }
    Ok(l)
}

/// The word `(n, n-1, .., 1, n, .., 2, .., n)` (1-based) used for extraction.
pub fn neville_word(n: usize) -> Word {
    (0..n).flat_map(|c| (c..n).rev()).collect()
}

/// Coordinates of a lower unitriangular matrix along [`neville_word`].
pub fn neville_coords<F: Field>(m: &ExactMatrix<F>) -> Result<Vec<F>> {
    let size = m.size();
    let mut a = m.clone();
    let mut out = Vec::new();
    for c in 0..size.saturating_sub(1) {
        for r in (c + 1..size).rev() {
            let piv = a.e[r - 1][c].clone();
            if piv.is_zero() {
                return Err(Error::NotTotallyPositive);
            }
            let f = a.e[r][c].div(&piv);
            for k in 0..size {
                let x = a.e[r - 1][k].mul(&f);
                a.e[r][k] = a.e[r][k].sub(&x);
            }
            out.push(f);
        }
    }
    Ok(out)
}

fn lower_to_u<K: MatrixScalar>(datum: &CartanDatum, m: &ExactMatrix<K::F>) -> Result<UElement<K>> {
    let coords = neville_coords(m)?
        .iter()
        .map(K::from_field)
        .collect::<Option<Vec<K>>>()
        .ok_or(Error::NotTotallyPositive)?;
    UElement::from_word(datum, &neville_word(datum.rank()), &coords)
}

fn require_longest<K: Semifield>(u: &UElement<K>) -> Result<()> {
    require_type_a(u.datum())?;
    if *u.weyl() != u.datum().longest_element() {
        return Err(Error::NotLongest);
    }
    Ok(())
}

/// The lower unitriangular factor of `w_I u`, returned as the element whose
/// letters are read through `i^a -> y_i(a)`.
pub fn phi_matrix<K: MatrixScalar>(u: &UElement<K>) -> Result<UElement<K>> {
    require_longest(u)?;
    let g = weyl_dot::<K::F>(&u.datum().longest_element())?.mul(&eval_u(u)?);
    lower_to_u(u.datum(), &ul_lower(&g)?)
}

/// The lower unitriangular factor of `u w_I^{-1}`, read as in [`phi_matrix`].
pub fn phiprime_matrix<K: MatrixScalar>(u: &UElement<K>) -> Result<UElement<K>> {
    require_longest(u)?;
    let wi = weyl_dot::<K::F>(&u.datum().longest_element())?
        .inverse()
        .expect("permutation matrices are invertible");
    let g = eval_u(u)?.mul(&wi);
    lower_to_u(u.datum(), &lu_lower(&g)?)
}

/// Minor of `g` on the first `k` rows and last `k` columns.
pub fn theta_minor<F: Field>(g: &ExactMatrix<F>, k: usize) -> F {
    let n = g.size();
    let rows: Vec<usize> = (0..k).collect();
    let cols: Vec<usize> = (n - k..n).collect();
    g.minor(&rows, &cols)
}

/// `prod_k minor_k^{lambda(k)}`; `lambda` given by its values on the simple coroots.
pub fn theta_tilde<F: Field>(g: &ExactMatrix<F>, lambda: &[i64]) -> Result<F> {
    if lambda.len() + 1 != g.size() {
        return Err(Error::WrongLength {
            expected: g.size() - 1,
            got: lambda.len(),
        });
    }
    let mut out = F::one();
    for (k, &m) in lambda.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let d = theta_minor(g, k + 1);
        if d.is_zero() {
            if m < 0 {
                return Err(Error::EvaluationAtPole("vanishing minor".into()));
            }
            return Ok(F::zero());
        }
        let p = (0..m.unsigned_abs()).fold(F::one(), |acc, _| acc.mul(&d));
        out = if m > 0 { out.mul(&p) } else { out.div(&p) };
    }
    Ok(out)
}

/// `g1 U^- = g2 U^-`.
pub fn same_coset_u_minus<F: Field>(g1: &ExactMatrix<F>, g2: &ExactMatrix<F>) -> bool {
    match g1.inverse() {
        Some(inv) => inv.mul(g2).is_lower_unitriangular(),
        None => false,
    }
}

/// `g1 B^- g1^{-1} = g2 B^- g2^{-1}`, i.e. `g1^{-1} g2` lower triangular.
pub fn same_borel_minus<F: Field>(g1: &ExactMatrix<F>, g2: &ExactMatrix<F>) -> bool {
    match g1.inverse() {
        Some(inv) => inv.mul(g2).transpose().is_upper_triangular(),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::parse_chart;
    use crate::gmonoid::Generator;
    use crate::rootdata::word1;
    use crate::semifield::Sample;
    use rand::{Rng, SeedableRng};

    fn q(p: i64, r: i64) -> PosRat {
        PosRat::from_ints(p, r)
    }

    fn rat(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    fn m(rows: &[&[i64]]) -> ExactMatrix<BigRational> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect())
    }

    #[test]
    fn sl2_generators() {
        let x = gen_matrix(1, GenKind::X, 0, &rat(3, 1)).unwrap();
        assert_eq!(x, m(&[&[1, 3], &[0, 1]]));
        assert_eq!(gen_matrix(1, GenKind::SDot, 0, &rat(1, 1)).unwrap(), m(&[&[0, 1], &[-1, 0]]));
        let d = CartanDatum::parse("A1").unwrap();
        assert_eq!(weyl_dot::<BigRational>(&d.longest_element()).unwrap(), m(&[&[0, 1], &[-1, 0]]));
        assert!(gen_matrix(1, GenKind::X, 1, &rat(1, 1)).is_err());
    }

    #[test]
    fn sl2_identity_in_matrices() {
        // x(a) h(b) = y(1/a) h(a/b) s y(b^2/a)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for n in 1..=3usize {
            for _ in 0..10 {
                let i = rng.gen_range(0..n);
                let (a, b) = (PosRat::sample(&mut rng).to_field(), PosRat::sample(&mut rng).to_field());
                let lhs = gen_matrix(n, GenKind::X, i, &a)
                    .unwrap()
                    .mul(&gen_matrix(n, GenKind::Cochar, i, &b).unwrap());
                let rhs = gen_matrix(n, GenKind::Y, i, &(rat(1, 1) / &a))
                    .unwrap()
                    .mul(&gen_matrix(n, GenKind::Cochar, i, &(&a / &b)).unwrap())
                    .mul(&gen_matrix(n, GenKind::SDot, i, &a).unwrap())
                    .mul(&gen_matrix(n, GenKind::Y, i, &(&b * &b / &a)).unwrap());
                assert_eq!(lhs, rhs);
                assert_eq!(lhs.det(), rat(1, 1));
            }
        }
    }

    #[test]
    fn zeta_respects_braid_moves() {
        let d = CartanDatum::parse("A2").unwrap();
        let x = [q(1, 1), q(2, 1), q(3, 1)];
        let h1: Vec<Letter> = word1(&[1, 2, 1]).into_iter().map(Letter::Pos).collect();
        let h2: Vec<Letter> = word1(&[2, 1, 2]).into_iter().map(Letter::Pos).collect();
        let y = crate::braid::chart_transition(&d, &word1(&[1, 2, 1]), &word1(&[2, 1, 2]), &x).unwrap();
        assert_eq!(eval_chart(&d, &h1, &x).unwrap(), eval_chart(&d, &h2, &y).unwrap());
    }

    #[test]
    fn beta_on_charts() {
        let d = CartanDatum::parse("A1").unwrap();
        let h = parse_chart("-1,~1,1").unwrap();
        let ones = [q(1, 1), q(1, 1), q(1, 1)];
        let g = GElement::from_chart(&d, &h, &ones).unwrap();
        assert_eq!(eval_g(&g).unwrap(), eval_chart(&d, &h, &ones).unwrap());
        let g = GElement::from_generators(&d, &[Generator::Y(0, q(1, 1)), Generator::X(0, q(1, 1))]);
        assert_eq!(eval_g(&g).unwrap(), m(&[&[1, 1], &[1, 2]]));
    }

    #[test]
    fn neville_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for t in ["A1", "A2", "A3"] {
            let d = CartanDatum::parse(t).unwrap();
            let w = neville_word(d.rank());
            assert!(d.is_reduced(&w) && w.len() == d.nu());
            let x: Vec<PosRat> = (0..w.len()).map(|_| PosRat::sample(&mut rng)).collect();
            let h: Vec<Letter> = w.iter().map(|&i| Letter::Neg(i)).collect();
            let mat = eval_chart(&d, &h, &x).unwrap();
            let back: Vec<PosRat> = neville_coords(&mat)
                .unwrap()
                .iter()
                .map(|f| PosRat::from_field(f).unwrap())
                .collect();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn phi_a2_at_ones() {
        let d = CartanDatum::parse("A2").unwrap();
        let u = UElement::from_word(&d, &word1(&[2, 1, 2]), &[q(1, 1), q(1, 1), q(1, 1)]).unwrap();
        let p = phi_matrix(&u).unwrap();
        assert_eq!(p.coords_in(&word1(&[2, 1, 2])).unwrap(), vec![q(1, 2), q(2, 1), q(1, 2)]);
        assert_eq!(phi_matrix(&p).unwrap(), u);
    }

    #[test]
    fn phi_factorization_shape() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for t in ["A1", "A2", "A3"] {
            let d = CartanDatum::parse(t).unwrap();
            let w0 = d.longest_element();
            for _ in 0..5 {
                let u = UElement::<PosRat>::random(&d, &w0, &mut rng);
                let p = phi_matrix(&u).unwrap();
                let g = weyl_dot::<BigRational>(&w0).unwrap().mul(&eval_u(&u).unwrap());
                let b = g.mul(&eval_u_minus(&p).unwrap().inverse().unwrap());
                assert!(b.is_upper_triangular());
                let p2 = phiprime_matrix(&u).unwrap();
                let wi = weyl_dot::<BigRational>(&w0).unwrap();
                let b2 = eval_u_minus(&p2).unwrap().mul(&wi).inverse().unwrap().mul(&eval_u(&u).unwrap());
                assert!(b2.transpose().is_upper_triangular());
            }
        }
    }

    #[test]
    fn phiprime_sl2() {
        let d = CartanDatum::parse("A1").unwrap();
        let u = UElement::generator(&d, 0, q(3, 2));
        assert_eq!(phiprime_matrix(&u).unwrap().coords(), &[q(2, 3)]);
        assert_eq!(phi_matrix(&u).unwrap().coords(), &[q(2, 3)]);
    }

    #[test]
    fn theta_tilde_matches_theta() {
        let d1 = CartanDatum::parse("A1").unwrap();
        let u = UElement::generator(&d1, 0, q(5, 3));
        assert_eq!(theta_tilde(&eval_u(&u).unwrap(), &[1]).unwrap(), rat(5, 3));
        assert_eq!(theta_tilde(&ExactMatrix::<BigRational>::identity(2), &[1]).unwrap(), rat(0, 1));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let d2 = CartanDatum::parse("A2").unwrap();
        let w0 = d2.longest_element();
        for _ in 0..20 {
            let u = UElement::<PosRat>::random(&d2, &w0, &mut rng);
            let lam = [rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
            let g = eval_u(&u).unwrap();
            assert_eq!(theta_tilde(&g, &lam).unwrap(), u.theta(&lam).to_field());
        }
    }

    #[test]
    fn not_type_a() {
        let b2 = CartanDatum::parse("B2").unwrap();
        let u = UElement::generator(&b2, 0, q(1, 1));
        assert!(matches!(eval_u(&u), Err(Error::TypeNotSupported)));
    }
}
