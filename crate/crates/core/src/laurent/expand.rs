//! Expansion of factored rational functions at closed points of the special fibre.
//!
//! At a finite point with lifted root `θ̂` the local parameter is `u = T - θ̂`; at
//! infinity it is `u = 1/T`. Polynomial atoms expand to exact Laurent polynomials, and
//! only negative exponents introduce a window.

use super::LaurentUnit;
use crate::coeff_ring::{GrElem, Ring};
use crate::error::{Error, Result};
use crate::surface::function::{primitive_part, rat_poly_to_gr, split_rational};
use crate::surface::{ClosedPoint, FactoredFunction};
use crate::RatPoly;

/// Exact expansion of a nonzero rational polynomial; its `p`-content goes into the prefactor.
pub fn expand_poly_at(f: &RatPoly, point: &ClosedPoint, ring: &Ring) -> Result<LaurentUnit> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot expand the zero polynomial".into()));
    }
    let (content, prim) = primitive_part(f);
    let (v, unit) = split_rational(&content, ring.p());
    let unit = GrElem::from_rational(ring, &unit)?;
    let g = rat_poly_to_gr(ring, &crate::surface::function::int_to_rat(&prim))?.scale(&unit);
    let terms: Vec<(i64, GrElem)> = match point {
        ClosedPoint::Infinity => g.coeffs().iter().enumerate().map(|(k, c)| (-(k as i64), c.clone())).collect(),
        ClosedPoint::GenericFiberPoint(..) => {
            return Err(Error::InvalidInput("expansion needs a point of the special fibre".into()))
        }
        _ => {
            if point.degree() != ring.d() {
                return Err(Error::InvalidInput(format!(
                    "{point} needs a coefficient ring of degree {}",
                    point.degree()
                )));
            }
            let theta = point.lifted_root(ring).expect("finite point");
            g.taylor_shift(&theta).coeffs().iter().enumerate().map(|(k, c)| (k as i64, c.clone())).collect()
        }
    };
    LaurentUnit::make(ring, v, &terms, None)
}

/// Expansion of `F` in the local parameter at `point`, windowed at `hi` when `F` has poles.
pub fn expand_at_point(f: &FactoredFunction, point: &ClosedPoint, ring: &Ring, hi: i64) -> Result<LaurentUnit> {
    let mut acc = LaurentUnit::one(ring);
    for (poly, e) in f.polys() {
        let x = expand_poly_at(&poly, point, ring)?;
        let x = if e < 0 { x.inv_to(hi)?.pow_i(-e)? } else { x.pow_i(e)? };
        acc = acc.mul(&x)?;
    }
    if acc.is_exact() {
        Ok(acc)
    } else {
        acc.truncate(hi)
    }
}

/// Image of `F` in `Q_p{{T}}`, the field of the prime `(p)` of `Z_p[[T]]`.
pub fn expand_at(f: &FactoredFunction, ring: &Ring, hi: i64) -> Result<LaurentUnit> {
    expand_at_point(f, &ClosedPoint::rational(ring.p(), 0)?, ring, hi)
}
