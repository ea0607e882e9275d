//! Two-dimensional local symbols at incident (point, curve) pairs.

use super::point::ClosedPoint;
use super::FactoredFunction;
use crate::error::{Error, Result};
use crate::laurent::expand_poly_at;
use crate::symbols::{kato_of_products, SymbolValue};
use crate::weierstrass::{tame_at_prime, DistinguishedPrime};

/// A curve through a closed point of the special fibre.
#[derive(Clone, Debug, PartialEq)]
pub enum Curve {
    /// The special fibre `(p)`.
    Vertical,
    /// The horizontal curve cut out by a distinguished prime.
    Horizontal(DistinguishedPrime),
}

/// `{f, g}_{x, y}` valued in `Q_p^×`, certified modulo `p^N`.
pub fn local_symbol(
    f: &FactoredFunction,
    g: &FactoredFunction,
    x: &ClosedPoint,
    y: &Curve,
    p: u64,
    n: u32,
) -> Result<SymbolValue> {
    match (y, x) {
        (Curve::Vertical, ClosedPoint::FiberPoint(_) | ClosedPoint::Infinity) => vertical_symbol(f, g, x, p, n),
        (Curve::Vertical, ClosedPoint::DistinguishedCurvePoint(_)) => {
            vertical_symbol(f, g, &ClosedPoint::rational(p, 0)?, p, n)
        }
        (Curve::Horizontal(pi), ClosedPoint::DistinguishedCurvePoint(q)) if pi == q => tame_at_prime(f, g, pi, n),
        (Curve::Horizontal(pi), ClosedPoint::FiberPoint(h)) if h.deg() == 1 && h.coeffs()[0].is_zero() => {
            // every distinguished prime passes through (p, T)
            tame_at_prime(f, g, pi, n)
        }
        _ => Err(Error::NotIncident),
    }
}

/// Kato's symbol over `GR(p^N, deg x)` of the expansions at `x`, normed to `Z/p^N`.
fn vertical_symbol(f: &FactoredFunction, g: &FactoredFunction, x: &ClosedPoint, p: u64, n: u32) -> Result<SymbolValue> {
    let ring = x.local_ring(p, n)?;
    let mut units = Vec::new();
    let (mut fa, mut ga) = (Vec::new(), Vec::new());
    for (poly, e) in f.polys() {
        units.push(expand_poly_at(&poly, x, &ring)?);
        fa.push(e);
        ga.push(0);
    }
    for (poly, e) in g.polys() {
        units.push(expand_poly_at(&poly, x, &ring)?);
        fa.push(0);
        ga.push(e);
    }
    if units.is_empty() {
        return Ok(SymbolValue::one(&ring.prime_subring()));
    }
    Ok(kato_of_products(&units, &fa, &ga)?.norm())
}

/// Whether every atom reduces to a nonzero polynomial mod `p` with no `p`-power content.
pub(crate) fn unit_content_atoms(f: &FactoredFunction, p: u64) -> Result<()> {
    use super::function::{primitive_part, split_rational};
    for (poly, _) in f.polys() {
        let (content, _) = primitive_part(&poly);
        let (v, _) = split_rational(&content, p);
        if v != 0 {
            return Err(Error::BadReduction(format!("{poly} has content p^{v}")));
        }
    }
    Ok(())
}
