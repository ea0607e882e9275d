//! Closed points of the desk-scale models.

use std::fmt;

use num_bigint::BigInt;

use crate::coeff_ring::finite_field::is_irreducible;
use crate::coeff_ring::{GrElem, Ring, RingDesc};
use crate::error::{Error, Result};
use crate::poly::format_signed;
use crate::weierstrass::{DistinguishedPrime, Irreducibility};
use crate::{GrPoly, Poly, RatPoly};

#[derive(Clone, Debug, PartialEq)]
pub enum ClosedPoint {
    /// A point of the special fibre `P¹_{F_p}` given by a monic irreducible `h` over `F_p`.
    FiberPoint(GrPoly),
    /// The point at infinity of the special fibre.
    Infinity,
    /// The closed point where the horizontal curve `(π)` meets the special fibre.
    DistinguishedCurvePoint(DistinguishedPrime),
    /// A closed point of the generic fibre `P¹_Q`.
    GenericFiberPoint(RatPoly, Irreducibility),
}

impl ClosedPoint {
    /// The fibre point given by the monic irreducible `h` (coefficients ascending, reduced mod `p`).
    pub fn fiber(p: u64, coeffs: &[u64]) -> Result<ClosedPoint> {
        let res = RingDesc::prime(p, 1)?;
        let h = Poly::new(coeffs.iter().map(|&c| GrElem::from_u64(&res, c)).collect(), GrElem::zero(&res));
        if !h.is_monic() || h.deg() < 1 || !is_irreducible(&h) {
            return Err(Error::InvalidInput(format!("{coeffs:?} is not monic irreducible over F_{p}")));
        }
        Ok(ClosedPoint::FiberPoint(h))
    }

    /// The rational fibre point `T = a`.
    pub fn rational(p: u64, a: u64) -> Result<ClosedPoint> {
        ClosedPoint::fiber(p, &[(p - a % p) % p, 1])
    }

    /// Residue degree over `F_p`.
    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::FiberPoint(h) => h.deg() as usize,
            ClosedPoint::Infinity => 1,
            ClosedPoint::DistinguishedCurvePoint(_) => 1,
            ClosedPoint::GenericFiberPoint(m, _) => m.deg() as usize,
        }
    }

    /// Coefficient ring `GR(p^N, d)` of the local field at a point of the special fibre.
    ///
    /// For degree `d > 1` the defining polynomial is the lift of `h` with digits in
    /// `[0, p)`, so the generator of the ring is a lift `θ̂` of the residue root with
    /// `h(θ̂) = 0` exactly.
    pub fn local_ring(&self, p: u64, n: u32) -> Result<Ring> {
        match self {
            ClosedPoint::FiberPoint(h) if h.deg() > 1 => {
                let lifted: Vec<BigInt> = h.coeffs().iter().map(|c| BigInt::from(c.coords()[0])).collect();
                RingDesc::new(p, n, &lifted)
            }
            ClosedPoint::FiberPoint(_) | ClosedPoint::Infinity | ClosedPoint::DistinguishedCurvePoint(_) => {
                RingDesc::prime(p, n)
            }
            ClosedPoint::GenericFiberPoint(..) => {
                Err(Error::InvalidInput("generic fibre points have no p-adic local ring".into()))
            }
        }
    }

    /// The lifted root `θ̂` of `h` in the local ring; `None` at infinity.
    ///
    /// A rational point `T = a` lifts to the digit `a ∈ [0, p)`.
    pub fn lifted_root(&self, ring: &Ring) -> Option<GrElem> {
        match self {
            ClosedPoint::FiberPoint(h) if h.deg() == 1 => {
                let p = ring.p();
                Some(GrElem::from_u64(ring, (p - h.coeffs()[0].coords()[0]) % p))
            }
            ClosedPoint::FiberPoint(_) => Some(GrElem::x(ring)),
            ClosedPoint::DistinguishedCurvePoint(_) => Some(GrElem::zero(ring)),
            _ => None,
        }
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::FiberPoint(h) if h.deg() == 1 => {
                let c = h.coeffs()[0].coords()[0];
                let p = h.coeffs()[0].ring().p();
                write!(f, "T = {}", (p - c) % p)
            }
            ClosedPoint::FiberPoint(h) => {
                let ints: Poly<BigInt> =
                    Poly::from_coeffs(h.coeffs().iter().map(|c| BigInt::from(c.coords()[0])).collect());
                write!(f, "({})", format_signed(&ints, "T"))
            }
            ClosedPoint::Infinity => f.write_str("T = ∞"),
            ClosedPoint::DistinguishedCurvePoint(d) => write!(f, "{d} ∩ (p)"),
            ClosedPoint::GenericFiberPoint(m, _) => write!(f, "({m})"),
        }
    }
}
