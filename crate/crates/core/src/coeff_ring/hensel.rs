use super::{GrElem, Ring};
use crate::error::{Error, Result};
use crate::poly::Poly;

type GPoly = Poly<GrElem>;

fn lift_poly(f: &GPoly, ring: &Ring) -> GPoly {
    f.map(|c| c.change_ring(ring), GrElem::zero(ring))
}

fn reduce_poly(f: &GPoly) -> GPoly {
    let res = f.zero_elem().ring().residue_field();
    f.map(|c| c.change_ring(&res), GrElem::zero(&res))
}

/// Lift a coprime factorisation `target ≡ g0·h0 (mod p)` to `target = g·h` over `GR(p^N, d)`.
///
/// `g0` must be monic; `g` is monic of the same degree and the lift is unique.
/// The target need not be monic: any excess degree is carried by `h`.
pub fn hensel_lift(target: &GPoly, g0: &GPoly, h0: &GPoly) -> Result<(GPoly, GPoly)> {
    let ring = target.zero_elem().ring().clone();
    let res = ring.residue_field();
    if !g0.is_monic() {
        return Err(Error::BadReduction("g0 must be monic".into()));
    }
    if **g0.zero_elem().ring() != *res || **h0.zero_elem().ring() != *res {
        return Err(Error::MixedRings);
    }
    let (gcd, s, t) = g0.ext_gcd(h0);
    if !gcd.is_one() {
        return Err(Error::NotCoprime);
    }
    if reduce_poly(target) != g0 * h0 {
        return Err(Error::BadReduction("target mod p differs from g0·h0".into()));
    }
    let mut g = lift_poly(g0, &ring);
    let mut h = lift_poly(h0, &ring);
    let p = ring.p();
    let mut pk: u64 = 1;
    for k in 1..ring.n() {
        pk *= p;
        let err = target - &(&g * &h);
        if err.is_zero() {
            break;
        }
        debug_assert!(err.coeffs().iter().all(|c| c.valuation() >= k));
        let e = reduce_poly(&err.map(|c| c.div_p_pow(k), GrElem::zero(&ring)));
        // δg·h0 + δh·g0 = e with deg δg < deg g0
        let (q, dg) = (&t * &e).divrem(g0).expect("g0 is monic");
        let dh = &(&s * &e) + &(&q * h0);
        let scale = GrElem::from_u64(&ring, pk);
        g = &g + &lift_poly(&dg, &ring).scale(&scale);
        h = &h + &lift_poly(&dh, &ring).scale(&scale);
    }
    debug_assert_eq!(&g * &h, *target);
    Ok((g, h))
}

/// Newton lift of a simple root `r0` (in the residue field) of `f` to `GR(p^N, d)`.
pub fn hensel_root(f: &GPoly, r0: &GrElem) -> Result<GrElem> {
    let ring = f.zero_elem().ring().clone();
    let df = f.derivative();
    let mut r = r0.change_ring(&ring);
    if !f.eval(&r).reduce().is_zero() {
        return Err(Error::BadReduction("r0 is not a root mod p".into()));
    }
    let slope = df.eval(&r);
    if !slope.is_unit() {
        return Err(Error::BadReduction("root is not simple mod p".into()));
    }
    let mut digits = 1;
    loop {
        let v = f.eval(&r);
        if v.is_zero() {
            return Ok(r);
        }
        r = &r - &(&v / &df.eval(&r));
        digits *= 2;
        if digits > 2 * ring.n() + 2 {
            debug_assert!(f.eval(&r).is_zero());
            return Ok(r);
        }
    }
}
