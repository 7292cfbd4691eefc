//! Rational functions in one variable `t` over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::QPoly;

/// `t^shift * num / den` in lowest terms, with `num(0) != 0`, `den(0) = 1`.
/// Zero is `num = 0, shift = 0, den = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    shift: i64,
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            shift: 0,
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(0, QPoly::constant(c), QPoly::one())
    }

    /// `c * t^n`
    pub fn monomial(c: BigRational, n: i64) -> Self {
        Self::new(n, QPoly::constant(c), QPoly::one())
    }

    /// Normalizes `t^shift * num / den`. Panics if `den` is zero.
    pub fn new(shift: i64, num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (on, od) = (num.ord().unwrap(), den.ord().unwrap());
        let mut num = num.shift_down(on);
        let mut den = den.shift_down(od);
        let shift = shift + on as i64 - od as i64;
        let g = num.gcd(&den);
        if g.degree() != Some(0) {
            num = num.divrem(&g).0;
            den = den.divrem(&g).0;
        }
        let c = den.constant_term().recip();
        RatFunc {
            shift,
            num: num.scale(&c),
            den: den.scale(&c),
        }
    }

    /// Like `new` for `num`, `den` already without common factors other than `t`.
    fn new_coprime(shift: i64, num: QPoly, den: QPoly) -> Self {
        let (on, od) = (num.ord().unwrap(), den.ord().unwrap());
        let num = num.shift_down(on);
        let den = den.shift_down(od);
        let c = den.constant_term().recip();
        RatFunc {
            shift: shift + on as i64 - od as i64,
            num: num.scale(&c),
            den: den.scale(&c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    /// Order of vanishing at `t = 0`; `None` for zero.
    pub fn ord(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    /// Coefficient of the lowest power of `t` in the Laurent expansion.
    pub fn leading_coeff(&self) -> BigRational {
        self.num.constant_term()
    }

    fn split(&self) -> (QPoly, QPoly, i64) {
        (self.num.clone(), self.den.clone(), self.shift)
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        if self.is_zero() {
            return if negate { rhs.neg() } else { rhs.clone() };
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (n1, d1, e) = self.split();
        let (mut n2, d2, f) = rhs.split();
        if negate {
            n2 = n2.neg();
        }
        let m = e.min(f);
        // Over the lcm of the denominators, only factors of their gcd can cancel.
        let g = d1.gcd(&d2);
        let (c1, c2) = if g.degree() == Some(0) {
            (d1.clone(), d2.clone())
        } else {
            (d1.divrem(&g).0, d2.divrem(&g).0)
        };
        let a = n1.mul(&c2).shift_up((e - m) as usize);
        let b = n2.mul(&c1).shift_up((f - m) as usize);
        let num = a.add(&b);
        if num.is_zero() {
            return Self::zero();
        }
        let den = d1.mul(&c2);
        if g.degree() == Some(0) {
            return Self::new_coprime(m, num, den);
        }
        Self::new(m, num, den)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, true)
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            shift: self.shift,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cancel = |p: &QPoly, g: &QPoly| {
            if g.degree() == Some(0) {
                p.clone()
            } else {
                p.divrem(g).0
            }
        };
        Self::new(
            self.shift + rhs.shift,
            cancel(&self.num, &g1).mul(&cancel(&rhs.num, &g2)),
            cancel(&self.den, &g2).mul(&cancel(&rhs.den, &g1)),
        )
    }

    /// Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(-self.shift, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() || (x.is_zero() && self.shift < 0) {
            return None;
        }
        let base = self.num.eval(x) / d;
        let tp = if self.shift >= 0 {
            pow_q(x, self.shift as u64)
        } else {
            pow_q(x, self.shift.unsigned_abs()).recip()
        };
        Some(base * tp)
    }
}

fn pow_q(x: &BigRational, e: u64) -> BigRational {
    num_traits::pow::pow(x.clone(), e as usize)
}

impl fmt::Display for RatFunc {
    /// `t^e*(num)/(den)`, matching the literal grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "t^{}*({})/({})", self.shift, self.num, self.den)
    }
}

/// Elements of `Q(t)` whose lowest Laurent coefficient is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PosRatFunc(RatFunc);

impl PosRatFunc {
    /// Wraps a rational function; `None` unless its lowest coefficient is positive.
    pub fn from_ratfunc(r: RatFunc) -> Option<Self> {
        (!r.is_zero() && r.leading_coeff().is_positive()).then_some(PosRatFunc(r))
    }

    pub fn monomial(c: BigRational, n: i64) -> Self {
        assert!(c.is_positive());
        PosRatFunc(RatFunc::monomial(c, n))
    }

    pub fn t_pow(n: i64) -> Self {
        Self::monomial(BigRational::one(), n)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `t^shift * num / den`; `None` unless both constant terms are positive.
    pub fn from_parts(shift: i64, num: QPoly, den: QPoly) -> Option<Self> {
        if !num.constant_term().is_positive() || !den.constant_term().is_positive() {
            return None;
        }
        Some(PosRatFunc(RatFunc::new(shift, num, den)))
    }

    pub fn as_ratfunc(&self) -> &RatFunc {
        &self.0
    }

    pub fn into_ratfunc(self) -> RatFunc {
        self.0
    }

    pub fn valuation_i64(&self) -> i64 {
        self.0.shift()
    }

    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        self.0.eval(x)
    }

    pub(crate) fn add_raw(&self, rhs: &Self) -> Self {
        PosRatFunc(self.0.add(&rhs.0))
    }

    pub(crate) fn mul_raw(&self, rhs: &Self) -> Self {
        PosRatFunc(self.0.mul(&rhs.0))
    }

    pub(crate) fn inv_raw(&self) -> Self {
        PosRatFunc(self.0.inv())
    }
}

impl fmt::Display for PosRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
