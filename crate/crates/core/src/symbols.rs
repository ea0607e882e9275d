//! The Contou-Carrère symbol, Kato's residue symbol, the tame symbol and specialisation.
//!
//! Both two-dimensional symbols are evaluated from Witt data by their own product
//! formula. Neither is defined through the other, so their product being `1` is a
//! genuine check.

use std::fmt;

use num_integer::Integer;

use crate::coeff_ring::{GrElem, Ring};
use crate::error::{Error, Result};
use crate::laurent::{witt_decompose_to, LaurentUnit, WittData};

/// `p^{p_val} · unit`, certified modulo `p^prec`.
#[derive(Clone, Debug)]
pub struct SymbolValue {
    pub p_val: i64,
    pub unit: GrElem,
    pub prec: u32,
}

impl SymbolValue {
    pub fn new(p_val: i64, unit: GrElem, prec: u32) -> Self {
        debug_assert!(unit.is_unit());
        let prec = prec.min(unit.ring().n());
        SymbolValue { p_val, unit, prec }
    }

    pub fn one(ring: &Ring) -> Self {
        SymbolValue { p_val: 0, unit: GrElem::one(ring), prec: ring.n() }
    }

    pub fn ring(&self) -> &Ring {
        self.unit.ring()
    }

    pub fn mul(&self, other: &SymbolValue) -> Result<SymbolValue> {
        Ok(SymbolValue {
            p_val: self.p_val + other.p_val,
            unit: self.unit.try_mul(&other.unit)?,
            prec: self.prec.min(other.prec),
        })
    }

    pub fn inv(&self) -> SymbolValue {
        SymbolValue { p_val: -self.p_val, unit: self.unit.inv().expect("symbol units are units"), prec: self.prec }
    }

    pub fn pow(&self, e: i64) -> SymbolValue {
        SymbolValue { p_val: self.p_val * e, unit: self.unit.pow_i(e).expect("unit"), prec: self.prec }
    }

    /// `p_val = 0` and `unit ≡ 1 (mod p^prec)`.
    pub fn is_one(&self) -> bool {
        self.p_val == 0 && self.unit.eq_mod(&GrElem::one(self.ring()), self.prec)
    }

    /// Equal valuations and units agreeing to the smaller certified precision.
    pub fn agrees_with(&self, other: &SymbolValue) -> bool {
        self.p_val == other.p_val && self.unit.eq_mod(&other.unit, self.prec.min(other.prec))
    }

    /// Lower the certified precision.
    pub fn with_prec(&self, prec: u32) -> SymbolValue {
        SymbolValue { prec: self.prec.min(prec), ..self.clone() }
    }

    /// Norm of the value down to `Z/p^N`.
    pub fn norm(&self) -> SymbolValue {
        let d = self.ring().d() as i64;
        SymbolValue { p_val: self.p_val * d, unit: self.unit.norm_to_prime(), prec: self.prec }
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p_val {
            0 => write!(f, "{}", self.unit)?,
            1 => write!(f, "p·{}", self.unit)?,
            v => write!(f, "p^{v}·{}", self.unit)?,
        }
        write!(f, " (mod p^{})", self.prec)
    }
}

fn sign(ring: &Ring, a: i64, b: i64) -> GrElem {
    if (a * b).rem_euclid(2) == 1 {
        GrElem::neg_one(ring)
    } else {
        GrElem::one(ring)
    }
}

/// `∏ (1 - n^{j/d} q^{i/d})^d` over negative parameters `(i, n)` of `neg_side` and
/// positive parameters `(j, q)` of `pos_side`, with `d = gcd(i, j)`.
///
/// Terms whose nilpotent power vanishes are skipped; the returned precision accounts
/// for positive parameters of `pos_side` beyond its determined range.
fn cross(neg_side: &WittData, pos_side: &WittData) -> (GrElem, u32) {
    let ring = neg_side.ring();
    let n = ring.n() as i64;
    let mut acc = GrElem::one(ring);
    let mut cert = n;
    for (i, a) in &neg_side.neg {
        let v = a.valuation() as i64;
        for (j, b) in &pos_side.pos {
            let d = i.gcd(j);
            let e_neg = j / d;
            if v * e_neg >= n {
                continue;
            }
            let x = &a.pow(e_neg as u64) * &b.pow((i / d) as u64);
            let term = &GrElem::one(ring) - &x;
            acc = &acc * &term.pow(d as u64);
        }
        if pos_side.pos_known != i64::MAX {
            // an unknown q_j with j > pos_known moves the term by at least v·j/gcd(i, j) ≥ v·⌈(pos_known+1)/i⌉
            let first = (pos_side.pos_known + 1).max(1);
            let bound = v * ((first + i - 1) / i);
            cert = cert.min(bound);
        }
    }
    (acc, cert.max(0) as u32)
}

/// Witt data of both arguments with enough positive parameters for every pairing term.
fn paired_data(f: &LaurentUnit, g: &LaurentUnit) -> Result<(WittData, WittData)> {
    if !(std::sync::Arc::ptr_eq(f.ring(), g.ring()) || **f.ring() == **g.ring()) {
        return Err(Error::MixedRings);
    }
    let n = f.ring().n() as i64;
    let first = 4 * n;
    let wf = witt_decompose_to(f, first)?;
    let wg = witt_decompose_to(g, first)?;
    let need_f = wg.max_neg_index() * n;
    let need_g = wf.max_neg_index() * n;
    let wf = if f.is_exact() && wf.pos_known < need_f { witt_decompose_to(f, need_f)? } else { wf };
    let wg = if g.is_exact() && wg.pos_known < need_g { witt_decompose_to(g, need_g)? } else { wg };
    Ok((wf, wg))
}

/// Kato's residue symbol `{f, g}` evaluated from Witt data.
pub fn kato_from_witt(f: &WittData, g: &WittData) -> SymbolValue {
    let ring = f.ring();
    let lead = &g.f0.pow_i(f.w).expect("unit") * &f.f0.pow_i(-g.w).expect("unit");
    let (num, c1) = cross(f, g);
    let (den, c2) = cross(g, f);
    let unit = &(&sign(ring, f.w, g.w) * &lead) * &(&num / &den);
    SymbolValue::new(g.p_exp * f.w - f.p_exp * g.w, unit, c1.min(c2))
}

/// The Contou-Carrère symbol `⟨f, g⟩` evaluated from Witt data.
pub fn contou_carrere_from_witt(f: &WittData, g: &WittData) -> Result<SymbolValue> {
    if f.p_exp != 0 || g.p_exp != 0 {
        return Err(Error::NonzeroPrefactor);
    }
    let ring = f.ring();
    let lead = &f.f0.pow_i(g.w)? * &g.f0.pow_i(-f.w)?;
    let (num, c1) = cross(g, f);
    let (den, c2) = cross(f, g);
    let unit = &(&sign(ring, f.w, g.w) * &lead) * &(&num / &den);
    Ok(SymbolValue::new(0, unit, c1.min(c2)))
}

/// `{f, g}` for units of `k_L{{T}}`; the `p`-prefactors enter through the leading terms.
pub fn kato_symbol(f: &LaurentUnit, g: &LaurentUnit) -> Result<SymbolValue> {
    let (wf, wg) = paired_data(f, g)?;
    Ok(kato_from_witt(&wf, &wg))
}

/// `⟨f, g⟩` for units of `R((T))` (no `p`-prefactor).
pub fn contou_carrere(f: &LaurentUnit, g: &LaurentUnit) -> Result<SymbolValue> {
    if f.p_exp() != 0 || g.p_exp() != 0 {
        return Err(Error::NonzeroPrefactor);
    }
    let (wf, wg) = paired_data(f, g)?;
    contou_carrere_from_witt(&wf, &wg)
}

/// Witt data for a family of units, each exact member determined far enough to pair
/// with every other member.
pub fn witt_family(units: &[LaurentUnit]) -> Result<Vec<WittData>> {
    let Some(first) = units.first() else {
        return Ok(Vec::new());
    };
    let n = first.ring().n() as i64;
    let mut wds = units.iter().map(|u| witt_decompose_to(u, 4 * n)).collect::<Result<Vec<_>>>()?;
    let need = wds.iter().map(WittData::max_neg_index).max().unwrap_or(0) * n;
    for (wd, u) in wds.iter_mut().zip(units) {
        if u.is_exact() && wd.pos_known < need {
            *wd = witt_decompose_to(u, need)?;
        }
    }
    Ok(wds)
}

/// `{∏ u_i^{a_i}, ∏ u_j^{b_j}}` by bimultiplicativity, decomposing each `u_i` once.
pub fn kato_of_products(units: &[LaurentUnit], a: &[i64], b: &[i64]) -> Result<SymbolValue> {
    let Some(first) = units.first() else {
        return Err(Error::InvalidInput("empty family".into()));
    };
    let wds = witt_family(units)?;
    let mut acc = SymbolValue::one(first.ring());
    for (i, wi) in wds.iter().enumerate() {
        for (j, wj) in wds.iter().enumerate() {
            let e = a[i] * b[j];
            if e != 0 {
                acc = acc.mul(&kato_from_witt(wi, wj).pow(e))?;
            }
        }
    }
    Ok(acc)
}

fn leading_residue(f: &LaurentUnit) -> Result<(i64, GrElem)> {
    if f.p_exp() != 0 {
        return Err(Error::NonzeroPrefactor);
    }
    let w = f.winding_number();
    Ok((w, f.series().coeff(w).reduce()))
}

/// The tame symbol `(-1)^{ν(f)ν(g)} f^{ν(g)} / g^{ν(f)}` of the reductions, in the residue field.
pub fn tame_boundary(f: &LaurentUnit, g: &LaurentUnit) -> Result<GrElem> {
    if !(std::sync::Arc::ptr_eq(f.ring(), g.ring()) || **f.ring() == **g.ring()) {
        return Err(Error::MixedRings);
    }
    let (vf, uf) = leading_residue(f)?;
    let (vg, ug) = leading_residue(g)?;
    let res = uf.ring().clone();
    Ok(&(&sign(&res, vf, vg) * &uf.pow_i(vg)?) * &ug.pow_i(-vf)?)
}

/// Specialisation at `T`: the residue classes of the leading units of `f` and `g`.
pub fn specialize(f: &LaurentUnit, g: &LaurentUnit) -> Result<(GrElem, GrElem)> {
    Ok((leading_residue(f)?.1, leading_residue(g)?.1))
}
