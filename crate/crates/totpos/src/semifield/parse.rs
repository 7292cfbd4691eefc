//! Literal grammar for semifield values.
//!
//! ```text
//! rational   := int ['/' int]
//! posratfunc := [tpow ['*' body]] | body
//! tpow       := 't' ['^' int]
//! body       := '(' poly ')' ['/' '(' poly ')'] | rational
//! poly       := ['-'] term (('+' | '-') term)*
//! term       := rational ['*' tvar] | tvar
//! tvar       := 't' ['^' uint]
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::QPoly;
use super::ratfunc::PosRatFunc;
use crate::error::{parse_err, Result};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(parse_err(self.pos, format!("`{}`", c as char)))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(parse_err(self.pos, "a digit"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn rational(&mut self) -> Result<BigRational> {
        let p = self.int()?;
        // `/` followed by `(` belongs to a quotient of polynomials
        if self.peek() == Some(b'/') && self.s.get(self.pos + 1) != Some(&b'(') {
            self.pos += 1;
            let at = self.pos;
            let q = self.int()?;
            if q.is_zero() {
                return Err(parse_err(at, "a nonzero denominator"));
            }
            return Ok(BigRational::new(p, q));
        }
        Ok(BigRational::from_integer(p))
    }

    fn tvar(&mut self) -> Result<usize> {
        self.expect(b't')?;
        if self.eat(b'^') {
            let at = self.pos;
            let k = self.int()?;
            return usize::try_from(k).map_err(|_| parse_err(at, "a nonnegative exponent"));
        }
        Ok(1)
    }

    fn term(&mut self) -> Result<QPoly> {
        if self.peek() == Some(b't') {
            return Ok(QPoly::monomial(self.tvar()?));
        }
        let c = self.rational()?;
        if self.eat(b'*') {
            let k = self.tvar()?;
            return Ok(QPoly::monomial(k).scale(&c));
        }
        Ok(QPoly::constant(c))
    }

    fn poly(&mut self) -> Result<QPoly> {
        let neg = self.eat(b'-');
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn group(&mut self) -> Result<QPoly> {
        self.expect(b'(')?;
        let p = self.poly()?;
        self.expect(b')')?;
        Ok(p)
    }

    fn body(&mut self) -> Result<(QPoly, QPoly)> {
        if self.peek() == Some(b'(') {
            let num = self.group()?;
            let den = if self.eat(b'/') {
                self.group()?
            } else {
                QPoly::one()
            };
            Ok((num, den))
        } else {
            Ok((QPoly::constant(self.rational()?), QPoly::one()))
        }
    }
}

fn compact(s: &str) -> Vec<u8> {
    s.bytes().filter(|c| !c.is_ascii_whitespace()).collect()
}

/// Parses a rational starting at byte `pos`; returns the value and end offset.
pub(crate) fn rational(s: &str, pos: usize) -> Result<(BigRational, usize)> {
    let bytes = compact(s);
    let mut c = Cursor { s: &bytes, pos };
    let q = c.rational()?;
    Ok((q, c.pos))
}

pub(crate) fn posratfunc(s: &str) -> Result<PosRatFunc> {
    let bytes = compact(s);
    let mut c = Cursor { s: &bytes, pos: 0 };
    let mut shift = 0i64;
    let (num, den) = if c.peek() == Some(b't') {
        c.pos += 1;
        if c.eat(b'^') {
            let at = c.pos;
            shift = i64::try_from(c.int()?).map_err(|_| parse_err(at, "an i64 exponent"))?;
        } else {
            shift = 1;
        }
        if c.eat(b'*') {
            c.body()?
        } else {
            (QPoly::one(), QPoly::one())
        }
    } else {
        c.body()?
    };
    if c.pos != bytes.len() {
        return Err(parse_err(c.pos, "end of rational function"));
    }
    if den.is_zero() {
        return Err(parse_err(0, "a nonzero denominator"));
    }
    // allow factors of t inside the brackets
    let (on, od) = (num.ord().unwrap_or(0), den.ord().unwrap_or(0));
    let (num, den) = (num.shift_down(on), den.shift_down(od));
    shift += on as i64 - od as i64;
    PosRatFunc::from_parts(shift, num, den).ok_or_else(|| {
        parse_err(
            0,
            "a positive lowest coefficient in numerator and denominator",
        )
    })
}

#[cfg(test)]
mod tests {
    use super::super::{Semifield, TropInt};
    use super::*;
    use crate::error::Error;

    #[test]
    fn ratfunc_literals() {
        let x = posratfunc("t^2*(1+t)/(2+t)").unwrap();
        assert_eq!(x.valuation_i64(), 2);
        assert_eq!(posratfunc("t").unwrap(), PosRatFunc::t_pow(1));
        assert_eq!(posratfunc("t^-3").unwrap(), PosRatFunc::t_pow(-3));
        assert_eq!(posratfunc("(t^2)").unwrap(), PosRatFunc::t_pow(2));
        assert_eq!(
            posratfunc("3/2").unwrap(),
            PosRatFunc::constant(BigRational::new(3.into(), 2.into()))
        );
        assert_eq!(posratfunc(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(posratfunc("(-1+t)").is_err());
        match posratfunc("t^2*(1+t") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tropint_literal() {
        assert_eq!(TropInt::parse("-17").unwrap(), TropInt::new(-17));
        assert!(TropInt::parse("1/2").is_err());
    }
}
