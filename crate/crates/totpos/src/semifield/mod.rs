//! Semifields: a commutative `+` without subtraction, a group under `*`,
//! and distributivity. Four concrete ones ship here.

mod parse;
pub mod poly;
pub mod ratfunc;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use poly::QPoly;
pub use ratfunc::{PosRatFunc, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SemifieldTag {
    PosRat,
    PosRatFunc,
    TropInt,
    Unit,
}

impl SemifieldTag {
    pub fn name(self) -> &'static str {
        match self {
            SemifieldTag::PosRat => "posrat",
            SemifieldTag::PosRatFunc => "posratfunc",
            SemifieldTag::TropInt => "tropint",
            SemifieldTag::Unit => "unit",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "posrat" | "q" => Ok(SemifieldTag::PosRat),
            "posratfunc" | "qt" => Ok(SemifieldTag::PosRatFunc),
            "tropint" | "trop" | "z" => Ok(SemifieldTag::TropInt),
            "unit" | "one" => Ok(SemifieldTag::Unit),
            _ => Err(crate::error::parse_err(
                0,
                "one of posrat, posratfunc, tropint, unit",
            )),
        }
    }
}

impl fmt::Display for SemifieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub trait Semifield:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const TAG: SemifieldTag;

    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    fn pow(&self, c: i64) -> Self {
        let mut base = if c < 0 { self.inv() } else { self.clone() };
        let mut e = c.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `1 + 1 + ... + 1` (`n` terms), `n >= 1`.
    fn from_count(n: u64) -> Self {
        assert!(n >= 1);
        let one = Self::one();
        let mut acc = one.clone();
        for _ in 1..n {
            acc = acc.add(&one);
        }
        acc
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn parse(s: &str) -> Result<Self>;

    fn into_value(self) -> SemifieldValue;
    fn from_value(v: &SemifieldValue) -> Result<Self>;
}

/// Sum of a nonempty slice.
pub fn sum<K: Semifield>(xs: &[K]) -> K {
    let mut it = xs.iter();
    let first = it.next().expect("empty sum").clone();
    it.fold(first, |acc, x| acc.add(x))
}

pub fn product<K: Semifield>(xs: &[K]) -> K {
    xs.iter().fold(K::one(), |acc, x| acc.mul(x))
}

/// Positive rationals under ordinary arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosRat(BigRational);

impl PosRat {
    pub fn new(q: BigRational) -> Option<Self> {
        q.is_positive().then_some(PosRat(q))
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        Self::new(BigRational::new(BigInt::from(p), BigInt::from(q))).expect("positive ratio")
    }

    pub fn int(p: i64) -> Self {
        Self::from_ints(p, 1)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for PosRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        poly::fmt_rational(&self.0, f)
    }
}

impl Semifield for PosRat {
    const TAG: SemifieldTag = SemifieldTag::PosRat;

    fn one() -> Self {
        PosRat(BigRational::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        PosRat(&self.0 + &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        PosRat(&self.0 * &rhs.0)
    }
    fn inv(&self) -> Self {
        PosRat(self.0.recip())
    }
    fn div(&self, rhs: &Self) -> Self {
        PosRat(&self.0 / &rhs.0)
    }
    fn from_count(n: u64) -> Self {
        PosRat(BigRational::from_integer(BigInt::from(n)))
    }
    fn parse(s: &str) -> Result<Self> {
        let (q, end) = parse::rational(s, 0)?;
        if end != s.len() {
            return Err(crate::error::parse_err(end, "end of positive rational"));
        }
        PosRat::new(q).ok_or_else(|| crate::error::parse_err(0, "a positive rational"))
    }
    fn into_value(self) -> SemifieldValue {
        SemifieldValue::PosRat(self)
    }
    fn from_value(v: &SemifieldValue) -> Result<Self> {
        match v {
            SemifieldValue::PosRat(x) => Ok(x.clone()),
            other => Err(Error::WrongTag {
                expected: Self::TAG,
                got: other.tag(),
            }),
        }
    }
}

impl Semifield for PosRatFunc {
    const TAG: SemifieldTag = SemifieldTag::PosRatFunc;

    fn one() -> Self {
        PosRatFunc::constant(BigRational::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_raw(rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_raw(rhs)
    }
    fn inv(&self) -> Self {
        self.inv_raw()
    }
    fn from_count(n: u64) -> Self {
        PosRatFunc::constant(BigRational::from_integer(BigInt::from(n)))
    }
    fn parse(s: &str) -> Result<Self> {
        parse::posratfunc(s)
    }
    fn into_value(self) -> SemifieldValue {
        SemifieldValue::PosRatFunc(self)
    }
    fn from_value(v: &SemifieldValue) -> Result<Self> {
        match v {
            SemifieldValue::PosRatFunc(x) => Ok(x.clone()),
            other => Err(Error::WrongTag {
                expected: Self::TAG,
                got: other.tag(),
            }),
        }
    }
}

/// Integers with `min` as sum and `+` as product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropInt(BigInt);

impl TropInt {
    pub fn new(n: i64) -> Self {
        TropInt(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        TropInt(n)
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn to_i64(&self) -> i64 {
        self.0.to_i64().expect("tropical value exceeds i64")
    }

    pub fn is_nonneg(&self) -> bool {
        !self.0.is_negative()
    }
}

impl fmt::Display for TropInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Semifield for TropInt {
    const TAG: SemifieldTag = SemifieldTag::TropInt;

    fn one() -> Self {
        TropInt(BigInt::zero())
    }
    fn add(&self, rhs: &Self) -> Self {
        TropInt(self.0.clone().min(rhs.0.clone()))
    }
    fn mul(&self, rhs: &Self) -> Self {
        TropInt(&self.0 + &rhs.0)
    }
    fn inv(&self) -> Self {
        TropInt(-&self.0)
    }
    fn div(&self, rhs: &Self) -> Self {
        TropInt(&self.0 - &rhs.0)
    }
    fn pow(&self, c: i64) -> Self {
        TropInt(&self.0 * c)
    }
    fn from_count(_: u64) -> Self {
        Self::one()
    }
    fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        t.parse::<BigInt>()
            .map(TropInt)
            .map_err(|_| crate::error::parse_err(0, "a signed integer"))
    }
    fn into_value(self) -> SemifieldValue {
        SemifieldValue::TropInt(self)
    }
    fn from_value(v: &SemifieldValue) -> Result<Self> {
        match v {
            SemifieldValue::TropInt(x) => Ok(x.clone()),
            other => Err(Error::WrongTag {
                expected: Self::TAG,
                got: other.tag(),
            }),
        }
    }
}

/// The one-point semifield.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Unit;

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("1")
    }
}

impl Semifield for Unit {
    const TAG: SemifieldTag = SemifieldTag::Unit;

    fn one() -> Self {
        Unit
    }
    fn add(&self, _: &Self) -> Self {
        Unit
    }
    fn mul(&self, _: &Self) -> Self {
        Unit
    }
    fn inv(&self) -> Self {
        Unit
    }
    fn pow(&self, _: i64) -> Self {
        Unit
    }
    fn parse(s: &str) -> Result<Self> {
        if s.trim() == "1" {
            Ok(Unit)
        } else {
            Err(crate::error::parse_err(0, "`1`"))
        }
    }
    fn into_value(self) -> SemifieldValue {
        SemifieldValue::Unit
    }
    fn from_value(v: &SemifieldValue) -> Result<Self> {
        match v {
            SemifieldValue::Unit => Ok(Unit),
            other => Err(Error::WrongTag {
                expected: Self::TAG,
                got: other.tag(),
            }),
        }
    }
}

/// The valuation `t^e f0/f1 -> e`.
pub fn valuation(x: &PosRatFunc) -> TropInt {
    TropInt::new(x.valuation_i64())
}

pub fn valuations(xs: &[PosRatFunc]) -> Vec<TropInt> {
    xs.iter().map(valuation).collect()
}

pub fn collapse<K: Semifield>(_: &K) -> Unit {
    Unit
}

pub fn evaluate(x: &PosRatFunc, point: &BigRational) -> Result<BigRational> {
    x.eval(point)
        .ok_or_else(|| Error::EvaluationAtPole(point.to_string()))
}

/// A value of any shipped semifield, for dynamically typed callers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SemifieldValue {
    PosRat(PosRat),
    PosRatFunc(PosRatFunc),
    TropInt(TropInt),
    Unit,
}

impl SemifieldValue {
    pub fn tag(&self) -> SemifieldTag {
        match self {
            SemifieldValue::PosRat(_) => SemifieldTag::PosRat,
            SemifieldValue::PosRatFunc(_) => SemifieldTag::PosRatFunc,
            SemifieldValue::TropInt(_) => SemifieldTag::TropInt,
            SemifieldValue::Unit => SemifieldTag::Unit,
        }
    }

    pub fn one(tag: SemifieldTag) -> Self {
        match tag {
            SemifieldTag::PosRat => PosRat::one().into_value(),
            SemifieldTag::PosRatFunc => PosRatFunc::one().into_value(),
            SemifieldTag::TropInt => TropInt::one().into_value(),
            SemifieldTag::Unit => SemifieldValue::Unit,
        }
    }

    pub fn parse(tag: SemifieldTag, s: &str) -> Result<Self> {
        Ok(match tag {
            SemifieldTag::PosRat => PosRat::parse(s)?.into_value(),
            SemifieldTag::PosRatFunc => PosRatFunc::parse(s)?.into_value(),
            SemifieldTag::TropInt => TropInt::parse(s)?.into_value(),
            SemifieldTag::Unit => Unit::parse(s)?.into_value(),
        })
    }

    fn binary(
        &self,
        rhs: &Self,
        f: fn(&SemifieldValue, &SemifieldValue) -> Option<SemifieldValue>,
    ) -> Result<Self> {
        f(self, rhs).ok_or(Error::TagMismatch(self.tag(), rhs.tag()))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        use SemifieldValue::*;
        self.binary(rhs, |a, b| match (a, b) {
            (PosRat(x), PosRat(y)) => Some(PosRat(x.add(y))),
            (PosRatFunc(x), PosRatFunc(y)) => Some(PosRatFunc(x.add(y))),
            (TropInt(x), TropInt(y)) => Some(TropInt(x.add(y))),
            (Unit, Unit) => Some(Unit),
            _ => None,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        use SemifieldValue::*;
        self.binary(rhs, |a, b| match (a, b) {
            (PosRat(x), PosRat(y)) => Some(PosRat(x.mul(y))),
            (PosRatFunc(x), PosRatFunc(y)) => Some(PosRatFunc(x.mul(y))),
            (TropInt(x), TropInt(y)) => Some(TropInt(x.mul(y))),
            (Unit, Unit) => Some(Unit),
            _ => None,
        })
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn pow(&self, c: i64) -> Self {
        match self {
            SemifieldValue::PosRat(x) => SemifieldValue::PosRat(x.pow(c)),
            SemifieldValue::PosRatFunc(x) => SemifieldValue::PosRatFunc(x.pow(c)),
            SemifieldValue::TropInt(x) => SemifieldValue::TropInt(x.pow(c)),
            SemifieldValue::Unit => SemifieldValue::Unit,
        }
    }

    pub fn valuation(&self) -> Result<Self> {
        match self {
            SemifieldValue::PosRatFunc(x) => Ok(SemifieldValue::TropInt(valuation(x))),
            other => Err(Error::WrongTag {
                expected: SemifieldTag::PosRatFunc,
                got: other.tag(),
            }),
        }
    }

    pub fn collapse(&self) -> Self {
        SemifieldValue::Unit
    }

    pub fn evaluate(&self, point: &BigRational) -> Result<BigRational> {
        match self {
            SemifieldValue::PosRatFunc(x) => evaluate(x, point),
            other => Err(Error::WrongTag {
                expected: SemifieldTag::PosRatFunc,
                got: other.tag(),
            }),
        }
    }
}

impl fmt::Display for SemifieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemifieldValue::PosRat(x) => x.fmt(f),
            SemifieldValue::PosRatFunc(x) => x.fmt(f),
            SemifieldValue::TropInt(x) => x.fmt(f),
            SemifieldValue::Unit => f.write_str("1"),
        }
    }
}

/// Random values for property suites and scans.
pub trait Sample: Semifield {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Sample for PosRat {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        PosRat::from_ints(rng.gen_range(1..=12), rng.gen_range(1..=12))
    }
}

impl Sample for TropInt {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        TropInt::new(rng.gen_range(-6..=6))
    }
}

impl Sample for PosRatFunc {
    /// `t^e * (c0 + c1 t) / (d0 + d1 t)` with small positive coefficients.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut coef = |lo: i64| {
            ratfunc::int(rng.gen_range(lo..=4)) / ratfunc::int(rng.gen_range(1..=3))
        };
        let num = QPoly::from_coeffs(vec![coef(1), coef(0)]);
        let den = QPoly::from_coeffs(vec![coef(1), coef(0)]);
        let e = rng.gen_range(-3..=3);
        PosRatFunc::from_parts(e, num, den).expect("positive constant terms")
    }
}

impl Sample for Unit {
    fn sample<R: Rng + ?Sized>(_: &mut R) -> Self {
        Unit
    }
}

/// Lift an integer vector to `t`-monomials with random positive rational coefficients.
pub fn monomial_lift<R: Rng + ?Sized>(rng: &mut R, ns: &[TropInt]) -> Vec<PosRatFunc> {
    ns.iter()
        .map(|n| PosRatFunc::monomial(PosRat::sample(rng).0, n.to_i64()))
        .collect()
}
