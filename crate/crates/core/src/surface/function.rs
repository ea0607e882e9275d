//! Rational functions in factored form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::split_p_part;
use crate::coeff_ring::{GrElem, Ring};
use crate::error::{Error, Result};
use crate::weierstrass::DistinguishedPrime;
use crate::{GrPoly, IntPoly, Poly, RatPoly};

#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    /// A nonzero rational number.
    Constant(BigRational),
    /// The variable `T`.
    Monomial,
    Distinguished(DistinguishedPrime),
    /// Integer polynomial whose constant term is prime to `p`.
    UnitPoly(IntPoly),
    /// Any other nonzero polynomial with rational coefficients.
    Poly(RatPoly),
}

impl Atom {
    pub fn constant(c: BigRational) -> Result<Atom> {
        if c.is_zero() {
            return Err(Error::InvalidInput("zero constant atom".into()));
        }
        Ok(Atom::Constant(c))
    }

    pub fn unit_poly(f: IntPoly, p: u64) -> Result<Atom> {
        if f.is_zero() || split_p_part(&f.coeff(0), p).0 > 0 || f.coeff(0).is_zero() {
            return Err(Error::InvalidInput(format!("{f} does not have a constant term prime to {p}")));
        }
        Ok(Atom::UnitPoly(f))
    }

    pub fn poly(f: RatPoly) -> Result<Atom> {
        if f.is_zero() {
            return Err(Error::InvalidInput("zero polynomial atom".into()));
        }
        Ok(Atom::Poly(f))
    }

    /// The atom as a rational polynomial.
    pub fn to_poly(&self) -> RatPoly {
        match self {
            Atom::Constant(c) => Poly::from_coeffs(vec![c.clone()]),
            Atom::Monomial => Poly::from_coeffs(vec![BigRational::zero(), BigRational::one()]),
            Atom::Distinguished(d) => int_to_rat(d.poly()),
            Atom::UnitPoly(f) => int_to_rat(f),
            Atom::Poly(f) => f.clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Atom::Constant(_) => "const",
            Atom::Monomial => "monomial",
            Atom::Distinguished(_) => "distinguished",
            Atom::UnitPoly(_) => "unit",
            Atom::Poly(_) => "poly",
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Constant(c) => write!(f, "{c}"),
            Atom::Monomial => f.write_str("T"),
            Atom::Distinguished(d) => write!(f, "{}", d.poly()),
            Atom::UnitPoly(g) => write!(f, "{g}"),
            Atom::Poly(g) => write!(f, "{g}"),
        }
    }
}

/// `∏ atom^exp`. The representation is not unique; every audit is invariant under refactoring.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FactoredFunction {
    pub atoms: Vec<(Atom, i64)>,
}

impl FactoredFunction {
    pub fn new(atoms: Vec<(Atom, i64)>) -> Self {
        FactoredFunction { atoms }
    }

    pub fn one() -> Self {
        FactoredFunction::default()
    }

    pub fn constant(c: BigRational) -> Result<Self> {
        Ok(FactoredFunction::new(vec![(Atom::constant(c)?, 1)]))
    }

    pub fn t_power(k: i64) -> Self {
        FactoredFunction::new(vec![(Atom::Monomial, k)])
    }

    pub fn from_poly(f: RatPoly) -> Result<Self> {
        Ok(FactoredFunction::new(vec![(Atom::poly(f)?, 1)]))
    }

    pub fn mul(&self, other: &FactoredFunction) -> FactoredFunction {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        FactoredFunction { atoms }
    }

    pub fn pow(&self, e: i64) -> FactoredFunction {
        FactoredFunction { atoms: self.atoms.iter().map(|(a, k)| (a.clone(), k * e)).collect() }
    }

    pub fn inv(&self) -> FactoredFunction {
        self.pow(-1)
    }

    /// Atoms as `(polynomial, exponent)`, dropping zero exponents.
    pub fn polys(&self) -> Vec<(RatPoly, i64)> {
        self.atoms.iter().filter(|(_, e)| *e != 0).map(|(a, e)| (a.to_poly(), *e)).collect()
    }

    /// Numerator and denominator of the represented rational function.
    pub fn to_fraction(&self) -> (RatPoly, RatPoly) {
        let one = Poly::from_coeffs(vec![BigRational::one()]);
        let (mut num, mut den) = (one.clone(), one);
        for (f, e) in self.polys() {
            if e > 0 {
                num = &num * &f.pow(e as u64);
            } else {
                den = &den * &f.pow(e.unsigned_abs());
            }
        }
        (num, den)
    }

    /// Evaluate at a rational point where no atom vanishes.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::one();
        for (f, e) in self.polys() {
            let v = f.eval(x);
            if v.is_zero() {
                return None;
            }
            acc *= pow_rat(&v, e);
        }
        Some(acc)
    }

    /// Substitute `T ↦ T + c`. Atom kinds are not preserved.
    pub fn translate(&self, c: &BigRational) -> FactoredFunction {
        let atoms = self
            .atoms
            .iter()
            .map(|(a, e)| {
                let moved = match a {
                    Atom::Constant(_) => a.clone(),
                    _ => Atom::Poly(a.to_poly().taylor_shift(c)),
                };
                (moved, *e)
            })
            .collect();
        FactoredFunction { atoms }
    }

    /// Checks the per-atom invariants that depend on `p`.
    pub fn validate(&self, p: u64) -> Result<()> {
        for (a, _) in &self.atoms {
            match a {
                Atom::Constant(c) if c.is_zero() => return Err(Error::InvalidInput("zero constant atom".into())),
                Atom::Distinguished(d) if d.p() != p => {
                    return Err(Error::InvalidInput(format!("distinguished atom {d} was declared for p = {}", d.p())))
                }
                Atom::UnitPoly(f) => {
                    Atom::unit_poly(f.clone(), p)?;
                }
                Atom::Poly(f) if f.is_zero() => return Err(Error::InvalidInput("zero polynomial atom".into())),
                _ => {}
            }
        }
        Ok(())
    }
}

impl fmt::Display for FactoredFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("1");
        }
        for (i, (a, e)) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" · ")?;
            }
            match (a, *e) {
                (Atom::Monomial | Atom::Constant(_), 1) => write!(f, "{a}")?,
                (Atom::Monomial, e) => write!(f, "T^{e}")?,
                (_, 1) => write!(f, "({a})")?,
                (_, e) => write!(f, "({a})^{e}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    let r = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

pub(crate) fn int_to_rat(f: &IntPoly) -> RatPoly {
    Poly::from_coeffs(f.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

/// `f = content · primitive` with `primitive` an integer polynomial of positive leading coefficient.
pub(crate) fn primitive_part(f: &RatPoly) -> (BigRational, IntPoly) {
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> =
        f.coeffs().iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if ints.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    if g.is_zero() {
        return (BigRational::zero(), Poly::from_coeffs(Vec::new()));
    }
    let prim = ints.iter().map(|c| c / &g).collect();
    (BigRational::new(g, den), Poly::from_coeffs(prim))
}

/// `(v, u)` with `x = p^v · u` and `u` a `p`-adic unit.
pub(crate) fn split_rational(x: &BigRational, p: u64) -> (i64, BigRational) {
    let (vn, n) = split_p_part(x.numer(), p);
    let (vd, d) = split_p_part(x.denom(), p);
    (vn as i64 - vd as i64, BigRational::new(n, d))
}

/// A `p`-integral rational polynomial reduced into the ring.
pub(crate) fn rat_poly_to_gr(ring: &Ring, f: &RatPoly) -> Result<GrPoly> {
    let coeffs = f.coeffs().iter().map(|c| GrElem::from_rational(ring, c)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs, GrElem::zero(ring)))
}
