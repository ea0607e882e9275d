//! Weierstrass preparation over `Z/p^N`, distinguished primes and resultants.

pub(crate) mod tame;

pub use tame::{residue_via_primes, tame_at_prime};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::split_p_part;
use crate::coeff_ring::{hensel_lift, int_poly_to_gr, GrElem, Ring};
use crate::error::{Error, Result};
use crate::poly::{resultant_monic, sylvester_resultant};
use crate::scalar::Scalar;
use crate::{GrPoly, IntPoly, Poly};

/// `f = p^{f0.0} · f0.1 · (a / b) · u` with `a`, `b` distinguished and `u(0) = 1`.
///
/// Polynomial inputs never need a denominator, so `b = 1` and `u` is a polynomial.
#[derive(Clone, Debug)]
pub struct PreparedForm {
    pub f0: (i64, GrElem),
    pub a: GrPoly,
    pub b: GrPoly,
    pub u: GrPoly,
}

impl PreparedForm {
    pub fn ring(&self) -> &Ring {
        self.f0.1.ring()
    }

    /// Degree of the distinguished part, i.e. the winding number of the source.
    pub fn winding(&self) -> usize {
        self.a.deg() as usize
    }

    /// `f0.1 · a · u`, the source divided by `p^{f0.0}`.
    pub fn recompose(&self) -> GrPoly {
        (&self.a * &self.u).scale(&self.f0.1)
    }
}

/// Split a polynomial with some unit coefficient into unit, distinguished and unit-series parts.
///
/// The distinguished factor is the Hensel lift of `T^l` from the factorisation
/// `f ≡ T^l · ū (mod p)`.
pub fn prepare(f: &GrPoly) -> Result<PreparedForm> {
    let ring = f.zero_elem().ring().clone();
    let l = f.coeffs().iter().position(|c| c.is_unit()).ok_or(Error::AllCoeffsNonUnit)?;
    let one = GrElem::one(&ring);
    let (a, h) = if l == 0 {
        (Poly::constant(one), f.clone())
    } else {
        let res = ring.residue_field();
        let bar = f.map(|c| c.change_ring(&res), GrElem::zero(&res));
        let tl = Poly::monomial(GrElem::one(&res), l);
        let ubar = Poly::new(bar.coeffs()[l..].to_vec(), GrElem::zero(&res));
        hensel_lift(f, &tl, &ubar)?
    };
    let h0 = h.coeff(0);
    let u = h.scale(&h0.inv()?);
    let b = Poly::constant(GrElem::one(&ring));
    Ok(PreparedForm { f0: (0, h0), a, b, u })
}

/// [`prepare`] for an exact integer polynomial; the `p`-content is removed first and kept in `f0`.
pub fn prepare_integer(f: &IntPoly, ring: &Ring) -> Result<PreparedForm> {
    if f.is_zero() {
        return Err(Error::AllCoeffsNonUnit);
    }
    let p = ring.p();
    let k = f.coeffs().iter().filter(|c| !c.is_zero()).map(|c| split_p_part(c, p).0).min().unwrap_or(0);
    let pk = BigInt::from(p).pow(k);
    let stripped: Vec<BigInt> = f.coeffs().iter().map(|c| c / &pk).collect();
    let mut pf = prepare(&int_poly_to_gr(ring, &stripped))?;
    pf.f0.0 = k as i64;
    Ok(pf)
}

/// `Res(A, B) = ∏_{A(α)=0} B(α)` for monic `A`, over any commutative coefficient ring.
pub fn resultant<S: Scalar>(a: &Poly<S>, b: &Poly<S>) -> S {
    resultant_monic(a, b)
}

/// How the irreducibility of a distinguished prime over `Q_p` was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Irreducibility {
    Checked,
    /// Degree at least four; taken on trust from the caller.
    Asserted,
}

impl fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Irreducibility::Checked => "checked",
            Irreducibility::Asserted => "asserted",
        })
    }
}

/// Generator of a height-one prime of `Z_p[[T]]`: a monic integer polynomial whose
/// non-leading coefficients are divisible by `p`, irreducible over `Q_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedPrime {
    pi: IntPoly,
    p: u64,
    irreducibility: Irreducibility,
}

impl DistinguishedPrime {
    pub fn new(pi: IntPoly, p: u64) -> Result<Self> {
        let deg = pi.deg();
        if deg < 1 || !pi.is_monic() {
            return Err(Error::NotDistinguished(format!("{pi} is not monic of positive degree")));
        }
        let pb = BigInt::from(p);
        if pi.coeffs()[..deg as usize].iter().any(|c| !c.is_multiple_of(&pb)) {
            return Err(Error::NotDistinguished(format!("{pi} has a non-leading coefficient prime to {p}")));
        }
        let irreducibility = if deg <= 3 {
            if deg > 1 && has_zp_root(&pi, p) {
                return Err(Error::Reducible(format!("{pi} has a root in Z_{p}")));
            }
            Irreducibility::Checked
        } else {
            Irreducibility::Asserted
        };
        Ok(DistinguishedPrime { pi, p, irreducibility })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.pi
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.pi.deg() as usize
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    /// The generator reduced into `Z/p^N`.
    pub fn reduce(&self, ring: &Ring) -> GrPoly {
        int_poly_to_gr(ring, self.pi.coeffs())
    }
}

impl fmt::Display for DistinguishedPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.pi)
    }
}

fn p_valuation(x: &BigInt, p: u64) -> Option<u32> {
    (!x.is_zero()).then(|| split_p_part(x, p).0)
}

/// Whether `f` has a root in `Z_p`, decided by a Hensel search over residues.
///
/// A genuine root `α` has `v(f'(α)) ≤ v(disc f)`, so once a residue class mod `p^k`
/// with `k > 2·v(disc f)` fails the Hensel test it contains no root.
/// A repeated factor counts as a root: such `f` is reducible.
pub(crate) fn has_zp_root(f: &IntPoly, p: u64) -> bool {
    let df = f.derivative();
    let disc = sylvester_resultant(f, &df);
    let Some(e) = p_valuation(&disc, p) else {
        return true;
    };
    let limit = 2 * e + 1;
    let pb = BigInt::from(p);
    let mut stack: Vec<(BigInt, u32)> =
        (0..p).map(BigInt::from).filter(|r| f.eval(r).is_multiple_of(&pb)).map(|r| (r, 1)).collect();
    while let Some((x, k)) = stack.pop() {
        let Some(vf) = p_valuation(&f.eval(&x), p) else {
            return true;
        };
        if let Some(vd) = p_valuation(&df.eval(&x), p) {
            if vf > 2 * vd {
                return true;
            }
        }
        if k >= limit {
            continue;
        }
        let pk = pb.pow(k);
        let pk1 = &pk * &pb;
        for t in 0..p {
            let y = &x + BigInt::from(t) * &pk;
            if f.eval(&y).is_multiple_of(&pk1) {
                stack.push((y, k + 1));
            }
        }
    }
    false
}

/// Whether an integer polynomial reduces to `T^deg` modulo `p` with unit leading coefficient.
pub(crate) fn is_distinguished_shape(f: &IntPoly, p: u64) -> bool {
    let pb = BigInt::from(p);
    match f.degree() {
        None | Some(0) => false,
        Some(d) => !f.coeffs()[d].is_multiple_of(&pb) && f.coeffs()[..d].iter().all(|c| c.is_multiple_of(&pb)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RingDesc;

    fn ip(c: &[i64]) -> IntPoly {
        Poly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn gp(ring: &Ring, c: &[i64]) -> GrPoly {
        Poly::new(c.iter().map(|&x| GrElem::from_int(ring, x)).collect(), GrElem::zero(ring))
    }

    #[test]
    fn prepares_split_quadratic() {
        let r = RingDesc::prime(5, 3).unwrap();
        let pf = prepare(&gp(&r, &[-5, -4, 1])).unwrap();
        assert!(pf.f0.1.is_one());
        assert_eq!(pf.a, gp(&r, &[-5, 1]));
        assert_eq!(pf.u, gp(&r, &[1, 1]));
        assert_eq!(pf.recompose(), gp(&r, &[-5, -4, 1]));
    }

    #[test]
    fn prepares_unit_and_content() {
        let r = RingDesc::prime(5, 3).unwrap();
        let pf = prepare(&gp(&r, &[7, 1])).unwrap();
        assert_eq!(pf.f0.1, GrElem::from_int(&r, 7));
        assert!(pf.a.is_one());
        assert_eq!(&pf.u.coeff(1) * &GrElem::from_int(&r, 7), GrElem::one(&r));
        let pf = prepare_integer(&ip(&[0, 5]), &r).unwrap();
        assert_eq!(pf.f0.0, 1);
        assert!(pf.f0.1.is_one());
        assert_eq!(pf.a, gp(&r, &[0, 1]));
        assert!(pf.u.is_one());
        assert!(matches!(prepare(&gp(&r, &[5, 10])), Err(Error::AllCoeffsNonUnit)));
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&ip(&[-5, 0, 1]), &ip(&[0, 1])), BigInt::from(-5));
        assert_eq!(resultant(&ip(&[1, 0, 1]), &ip(&[-3, 1])), BigInt::from(10));
        assert_eq!(resultant(&ip(&[-4, 1]), &ip(&[1, 2, 3])), BigInt::from(57));
    }

    #[test]
    fn distinguished_validation() {
        assert!(DistinguishedPrime::new(ip(&[-5, 1]), 5).is_ok());
        assert!(DistinguishedPrime::new(ip(&[-5, 0, 1]), 5).is_ok());
        assert!(matches!(DistinguishedPrime::new(ip(&[-1, 1]), 5), Err(Error::NotDistinguished(_))));
        assert!(matches!(DistinguishedPrime::new(ip(&[0, -5, 1]), 5), Err(Error::Reducible(_))));
        // 50 = 25·2 and 2 is not a square mod 5; 150 = 25·6 and 6 is
        assert!(DistinguishedPrime::new(ip(&[-50, 0, 1]), 5).is_ok());
        assert!(matches!(DistinguishedPrime::new(ip(&[-150, 0, 1]), 5), Err(Error::Reducible(_))));
        // T^2 - 25·4 has roots ±10
        assert!(matches!(DistinguishedPrime::new(ip(&[-100, 0, 1]), 5), Err(Error::Reducible(_))));
        // T^3 is a cube
        let pi = ip(&[0, 0, 0, 1]);
        assert!(matches!(DistinguishedPrime::new(pi, 3), Err(Error::Reducible(_))));
        let q = DistinguishedPrime::new(ip(&[2, 0, 0, 0, 2, 1]), 2).unwrap();
        assert_eq!(q.irreducibility(), Irreducibility::Asserted);
    }

    #[test]
    fn zp_root_search() {
        // x^2 - 17 has a root in Z_2 (17 ≡ 1 mod 8) but x^2 - 5 does not
        assert!(has_zp_root(&ip(&[-17, 0, 1]), 2));
        assert!(!has_zp_root(&ip(&[-5, 0, 1]), 2));
        // x^2 + 1 splits over Z_5 and not over Z_3
        assert!(has_zp_root(&ip(&[1, 0, 1]), 5));
        assert!(!has_zp_root(&ip(&[1, 0, 1]), 3));
        // x^3 - 2 has a root in Z_5 (cubing is bijective mod 5)
        assert!(has_zp_root(&ip(&[-2, 0, 0, 1]), 5));
    }
}
