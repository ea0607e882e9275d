//! Laurent polynomials in `T` with rational coefficients, written as expressions.
//!
//! Grammar: integer and rational literals (`3`, `2/7`), `T` (or `t`), `+`, `-`, `*`,
//! parentheses and `^` with an integer exponent. Negative exponents are accepted only
//! on `T` itself.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exponent to nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly(pub BTreeMap<i64, BigRational>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

impl LaurentPoly {
    fn constant(c: BigRational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(0, c);
        }
        LaurentPoly(m)
    }

    fn monomial(k: i64) -> Self {
        LaurentPoly(BTreeMap::from([(k, BigRational::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Lowest exponent; `None` for zero.
    pub fn low(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    fn add(&self, other: &LaurentPoly, sign: i32) -> LaurentPoly {
        let mut m = self.0.clone();
        for (k, c) in &other.0 {
            let e = m.entry(*k).or_insert_with(BigRational::zero);
            if sign < 0 {
                *e -= c;
            } else {
                *e += c;
            }
        }
        m.retain(|_, c| !c.is_zero());
        LaurentPoly(m)
    }

    fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut m: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (i, a) in &self.0 {
            for (j, b) in &other.0 {
                *m.entry(i + j).or_insert_with(BigRational::zero) += a * b;
            }
        }
        m.retain(|_, c| !c.is_zero());
        LaurentPoly(m)
    }

    fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::constant(BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

/// Parse an expression into a Laurent polynomial.
pub fn parse(text: &str) -> Result<LaurentPoly, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
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

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?, 1);
            } else if self.eat(b'-') {
                acc = acc.add(&self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LaurentPoly, ParseError> {
        if self.eat(b'-') {
            return Ok(LaurentPoly::constant(BigRational::zero()).add(&self.unary()?, -1));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly, ParseError> {
        let (base, is_t) = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let start = self.pos;
        let negative = self.eat(b'-');
        let e = self.natural()?;
        let e = i64::try_from(e).map_err(|_| ParseError { pos: start, msg: "exponent too large".into() })?;
        if is_t {
            return Ok(LaurentPoly::monomial(if negative { -e } else { e }));
        }
        if negative {
            return Err(ParseError { pos: start, msg: "negative exponents are allowed on T only".into() });
        }
        let e = u32::try_from(e).map_err(|_| ParseError { pos: start, msg: "exponent too large".into() })?;
        Ok(base.pow(e))
    }

    fn natural(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("ascii digits"))
    }

    /// The atom and whether it is a bare `T`.
    fn atom(&mut self) -> Result<(LaurentPoly, bool), ParseError> {
        match self.peek() {
            Some(b'T' | b't') => {
                self.pos += 1;
                Ok((LaurentPoly::monomial(1), true))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok((v, false))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.natural()?;
                let value = if self.eat(b'/') {
                    let den = self.natural()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    BigRational::new(num, den)
                } else {
                    BigRational::from_integer(num)
                };
                Ok((LaurentPoly::constant(value), false))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
