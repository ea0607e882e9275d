//! Tame symbols at distinguished primes of `Z_p[[T]]`, normed to `Q_p` by resultants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{has_zp_root, is_distinguished_shape, prepare, resultant, DistinguishedPrime};
use crate::coeff_ring::{int_poly_to_gr, GrElem, Ring, RingDesc};
use crate::error::{Error, Result};
use crate::laurent::{expand_poly_at, LaurentUnit};
use crate::surface::basis::{coprime_basis, express};
use crate::surface::function::{int_to_rat, pow_rat, primitive_part, split_rational};
use crate::surface::{ClosedPoint, FactoredFunction};
use crate::symbols::{kato_of_products, SymbolValue};
use crate::{GrPoly, IntPoly, RatPoly};

/// `f` and `g` over a common gcd-free basis of primitive integer polynomials.
#[derive(Clone, Debug)]
pub(crate) struct PointModel {
    pub p: u64,
    pub basis: Vec<IntPoly>,
    pub cf: BigRational,
    pub ef: Vec<i64>,
    pub cg: BigRational,
    pub eg: Vec<i64>,
}

/// How a basis element meets the maximal ideal of `Z_p[[T]]`.
#[derive(Clone, Debug)]
pub(crate) struct PlaceInfo {
    pub index: usize,
    pub label: String,
    pub degree: usize,
    /// Monic generator over `Q` when it is known exactly.
    pub exact: Option<RatPoly>,
    pub note: Option<String>,
}

impl PointModel {
    pub fn new(f: &FactoredFunction, g: &FactoredFunction, p: u64, extra: &[RatPoly]) -> Self {
        let mut polys: Vec<RatPoly> = f.polys().into_iter().chain(g.polys()).map(|(q, _)| q).collect();
        polys.extend(extra.iter().cloned());
        let monic = coprime_basis(&polys);
        let ex_f = express(f, &monic);
        let ex_g = express(g, &monic);
        let mut cf = ex_f.constant;
        let mut cg = ex_g.constant;
        let mut basis = Vec::with_capacity(monic.len());
        for (k, b) in monic.iter().enumerate() {
            // b = content · prim
            let (content, prim) = primitive_part(b);
            cf *= pow_rat(&content, ex_f.exps[k]);
            cg *= pow_rat(&content, ex_g.exps[k]);
            basis.push(prim);
        }
        PointModel { p, basis, cf, ef: ex_f.exps, cg, eg: ex_g.exps }
    }

    pub fn index_of(&self, poly: &IntPoly) -> Option<usize> {
        self.basis.iter().position(|b| b == poly)
    }

    /// Basis elements that are not units of `Z_p[[T]]` and occur in `f` or `g`.
    pub fn places(&self) -> Vec<PlaceInfo> {
        let pb = BigInt::from(self.p);
        (0..self.basis.len())
            .filter(|&k| (self.ef[k] != 0 || self.eg[k] != 0) && (&self.basis[k].coeff(0) % &pb).is_zero())
            .map(|k| self.place_info(k))
            .collect()
    }

    pub fn place_info(&self, k: usize) -> PlaceInfo {
        let b = &self.basis[k];
        if is_distinguished_shape(b, self.p) {
            let lc = BigRational::from_integer(b.lc().expect("nonzero").clone());
            let pi = int_to_rat(b).scale(&lc.recip());
            let deg = b.deg() as usize;
            let note = if deg >= 4 {
                Some("irreducibility over Q_p asserted".to_string())
            } else if deg > 1 && has_zp_root(b, self.p) {
                Some("reducible over Q_p; its factors are merged into one place".to_string())
            } else {
                None
            };
            PlaceInfo { index: k, label: format!("({pi})"), degree: deg, exact: Some(pi), note }
        } else {
            let pb = BigInt::from(self.p);
            let l = b.coeffs().iter().position(|c| !(c % &pb).is_zero()).expect("primitive");
            PlaceInfo {
                index: k,
                label: format!("dist({b})"),
                degree: l,
                exact: None,
                note: Some("distinguished part lifted by Hensel's lemma".to_string()),
            }
        }
    }

    /// `N_{κ(π)/Q_p} ∂_π{f, g}` at the place of basis element `place.index`.
    pub fn tame(&self, place: &PlaceInfo, n: u32) -> Result<SymbolValue> {
        let target = RingDesc::prime(self.p, n)?;
        let k = place.index;
        let (a, b) = (self.ef[k], self.eg[k]);
        if a == 0 && b == 0 {
            return Ok(SymbolValue::one(&target));
        }
        match &place.exact {
            Some(pi) => self.tame_exact(k, pi, a, b, &target),
            None => self.tame_lifted(k, a, b, &target),
        }
    }

    fn tame_exact(&self, k: usize, pi: &RatPoly, a: i64, b: i64, target: &Ring) -> Result<SymbolValue> {
        let deg = pi.deg();
        let lc = BigRational::from_integer(self.basis[k].lc().expect("nonzero").clone());
        let norm_side = |c: &BigRational, e: &[i64], own: i64| -> BigRational {
            let mut acc = pow_rat(c, deg) * pow_rat(&lc, own * deg);
            for (j, bj) in self.basis.iter().enumerate() {
                if j != k && e[j] != 0 {
                    acc *= pow_rat(&resultant(pi, &int_to_rat(bj)), e[j]);
                }
            }
            acc
        };
        let nf = norm_side(&self.cf, &self.ef, a);
        let ng = norm_side(&self.cg, &self.eg, b);
        let mut r = pow_rat(&nf, b) / pow_rat(&ng, a);
        if (a * b * deg) % 2 != 0 {
            r = -r;
        }
        let (v, u) = split_rational(&r, self.p);
        Ok(SymbolValue::new(v, GrElem::from_rational(target, &u)?, target.n()))
    }

    /// Same formula with the distinguished part known only modulo `p^{N_w}`; the working
    /// precision grows until every resultant certifies `N` digits or the ring limit is hit.
    fn tame_lifted(&self, k: usize, a: i64, b: i64, target: &Ring) -> Result<SymbolValue> {
        let n = target.n();
        let max_w = max_precision(self.p);
        let mut work = (n + 4).min(max_w);
        loop {
            let value = self.tame_at_work(k, a, b, target, work)?;
            if value.as_ref().is_some_and(|v| v.prec >= n) || work >= max_w {
                return match value {
                    Some(v) if v.prec >= 1 => Ok(v),
                    _ => Err(Error::PrecisionExhausted(format!(
                        "norm at dist({}) needs more than p^{work}",
                        self.basis[k]
                    ))),
                };
            }
            work = (work + 8).min(max_w);
        }
    }

    fn tame_at_work(&self, k: usize, a: i64, b: i64, target: &Ring, work: u32) -> Result<Option<SymbolValue>> {
        let ring = RingDesc::prime(self.p, work)?;
        let pf = prepare(&int_poly_to_gr(&ring, self.basis[k].coeffs()))?;
        let pi = pf.a.clone();
        let h = pf.u.scale(&pf.f0.1);
        let deg = pi.deg();
        let res = |q: &GrPoly| approx_value(&resultant(&pi, q), target, work);
        let Some(own) = res(&h) else {
            return Ok(None);
        };
        let side = |c: &BigRational, e: &[i64], own_e: i64| -> Result<Option<SymbolValue>> {
            let (v, u) = split_rational(c, self.p);
            let cu = GrElem::from_rational(target, &u)?;
            let mut acc = SymbolValue::new(v * deg, cu.pow_i(deg)?, target.n()).mul(&own.pow(own_e))?;
            for (j, bj) in self.basis.iter().enumerate() {
                if j != k && e[j] != 0 {
                    let Some(r) = res(&int_poly_to_gr(&ring, bj.coeffs())) else {
                        return Ok(None);
                    };
                    acc = acc.mul(&r.pow(e[j]))?;
                }
            }
            Ok(Some(acc))
        };
        let (Some(nf), Some(ng)) = (side(&self.cf, &self.ef, a)?, side(&self.cg, &self.eg, b)?) else {
            return Ok(None);
        };
        let mut r = nf.pow(b).mul(&ng.pow(-a))?;
        if (a * b * deg) % 2 != 0 {
            r.unit = -r.unit;
        }
        Ok(Some(r))
    }

    /// Kato's symbol of the expansions at the prime `(p)`, evaluated atom by atom.
    pub fn kato_at_p(&self, n: u32) -> Result<SymbolValue> {
        let ring = RingDesc::prime(self.p, n)?;
        let origin = ClosedPoint::rational(self.p, 0)?;
        let constant = |c: &BigRational| -> Result<LaurentUnit> {
            let (v, u) = split_rational(c, self.p);
            LaurentUnit::constant(v, GrElem::from_rational(&ring, &u)?)
        };
        let mut units = vec![constant(&self.cf)?, constant(&self.cg)?];
        let mut fa = vec![1, 0];
        let mut ga = vec![0, 1];
        for (k, b) in self.basis.iter().enumerate() {
            if self.ef[k] != 0 || self.eg[k] != 0 {
                units.push(expand_poly_at(&int_to_rat(b), &origin, &ring)?);
                fa.push(self.ef[k]);
                ga.push(self.eg[k]);
            }
        }
        kato_of_products(&units, &fa, &ga)
    }
}

/// Largest `N` with `p^N < 2^62`.
pub(crate) fn max_precision(p: u64) -> u32 {
    let mut n = 0;
    let mut acc: u64 = 1;
    while let Some(next) = acc.checked_mul(p).filter(|&x| x < 1 << 62) {
        acc = next;
        n += 1;
    }
    n
}

/// A value known modulo `p^work`, as a symbol value in `target`; `None` if it vanishes there.
fn approx_value(x: &GrElem, target: &Ring, work: u32) -> Option<SymbolValue> {
    if x.is_zero() {
        return None;
    }
    let v = x.valuation();
    let unit = x.div_p_pow(v).change_ring(target);
    Some(SymbolValue::new(v as i64, unit, work - v))
}

/// `N_{κ(π)/Q_p} ∂_π{f, g}` for a distinguished prime `π`.
pub fn tame_at_prime(
    f: &FactoredFunction,
    g: &FactoredFunction,
    prime: &DistinguishedPrime,
    n: u32,
) -> Result<SymbolValue> {
    let p = prime.p();
    f.validate(p)?;
    g.validate(p)?;
    let pi = int_to_rat(prime.poly());
    let model = PointModel::new(f, g, p, std::slice::from_ref(&pi));
    let k = model
        .index_of(prime.poly())
        .ok_or_else(|| Error::Reducible(format!("{} shares only part of its roots with the atoms", prime.poly())))?;
    model.tame(&model.place_info(k), n)
}

/// Product of [`tame_at_prime`] over every distinguished prime in the supports of `f` and `g`.
///
/// Kato's symbol at `(p)` times this product is `1`.
pub fn residue_via_primes(f: &FactoredFunction, g: &FactoredFunction, p: u64, n: u32) -> Result<SymbolValue> {
    f.validate(p)?;
    g.validate(p)?;
    let model = PointModel::new(f, g, p, &[]);
    let mut acc = SymbolValue::one(&RingDesc::prime(p, n)?);
    for place in model.places() {
        acc = acc.mul(&model.tame(&place, n)?)?;
    }
    Ok(acc)
}
