//! Canonical factorisation `f = f0 · p^{p_exp} · T^w · ∏ (1 - f_{-i} T^{-i}) (1 - f_i T^i)`.

use super::series::Series;
use super::{LaurentUnit, DEFAULT_WINDOW};
use crate::coeff_ring::{GrElem, Ring};
use crate::error::{Error, Result};

/// Witt parameters of a unit. Only nonzero parameters are listed, in ascending index order.
#[derive(Clone, Debug)]
pub struct WittData {
    pub w: i64,
    pub f0: GrElem,
    pub p_exp: i64,
    /// `(i, f_{-i})`, every `f_{-i}` in the maximal ideal.
    pub neg: Vec<(i64, GrElem)>,
    /// `(i, f_i)` for `i <= pos_known`.
    pub pos: Vec<(i64, GrElem)>,
    /// Every `f_i` with `i <= pos_known` is determined; `i64::MAX` when all are.
    pub pos_known: i64,
}

impl WittData {
    pub fn ring(&self) -> &Ring {
        self.f0.ring()
    }

    pub fn neg_param(&self, i: i64) -> GrElem {
        lookup(&self.neg, i).unwrap_or_else(|| GrElem::zero(self.ring()))
    }

    /// `f_i`, or `None` beyond the determined range.
    pub fn pos_param(&self, i: i64) -> Option<GrElem> {
        if i > self.pos_known {
            return None;
        }
        Some(lookup(&self.pos, i).unwrap_or_else(|| GrElem::zero(self.ring())))
    }

    pub fn max_neg_index(&self) -> i64 {
        self.neg.last().map_or(0, |t| t.0)
    }

    /// Same data wherever both determine it.
    pub fn agrees_with(&self, other: &WittData) -> bool {
        let known = self.pos_known.min(other.pos_known);
        let trim = |v: &[(i64, GrElem)]| v.iter().filter(|t| t.0 <= known).cloned().collect::<Vec<_>>();
        self.w == other.w
            && self.p_exp == other.p_exp
            && self.f0 == other.f0
            && self.neg == other.neg
            && trim(&self.pos) == trim(&other.pos)
    }
}

fn lookup(v: &[(i64, GrElem)], i: i64) -> Option<GrElem> {
    v.binary_search_by_key(&i, |t| t.0).ok().map(|k| v[k].1.clone())
}

/// Decomposition at the input's own window (or the default window for exact inputs).
pub fn witt_decompose(f: &LaurentUnit) -> Result<WittData> {
    if f.is_exact() {
        witt_decompose_to(f, DEFAULT_WINDOW)
    } else {
        decompose_core(f.series(), f.p_exp(), f.working_hi())
    }
}

/// Decomposition with positive parameters determined up to at least `target` for exact inputs.
///
/// Windowed inputs determine as many positive parameters as their window allows.
pub fn witt_decompose_to(f: &LaurentUnit, target: i64) -> Result<WittData> {
    if !f.is_exact() {
        return decompose_core(f.series(), f.p_exp(), f.working_hi());
    }
    let n = f.ring().n() as i64;
    let spread = -f.series().val().unwrap_or(0).min(0) + f.winding_number().max(0);
    let mut work = target + n * spread + 2;
    for _ in 0..12 {
        let wd = decompose_core(f.series(), f.p_exp(), work)?;
        if wd.pos_known >= target {
            return Ok(wd);
        }
        work += target - wd.pos_known + 1;
    }
    Err(Error::PrecisionExhausted("positive Witt parameters did not reach the requested window".into()))
}

const PEEL_CAP: i64 = 1 << 16;

fn decompose_core(s: &Series, p_exp: i64, work: i64) -> Result<WittData> {
    let ring = s.ring().clone();
    let one = Series::one(&ring);
    let w = s.winding().ok_or(Error::NotAUnit)?;
    let c0 = s.coeff(w);
    let h = s.shift(-w).scale(&c0.inv()?);
    let (_, _, hpos) = h.split();
    let mut pp = one.add(&hpos);
    let mut r = h.mul(&pp.inv(work)?);
    let mut nn = one.clone();
    let mut c = GrElem::one(&ring);
    // Wiener-Hopf iteration; the error r - 1 lies in m^{2^k} after k rounds.
    let mut converged = false;
    for _ in 0..64 {
        if r.prec().is_some_and(|p| p <= 0) {
            return Err(Error::WindowUnderflow);
        }
        let rho = r.sub(&one);
        if rho.is_zero() {
            converged = true;
            break;
        }
        let (rn, r0, rp) = rho.split();
        let u0 = &GrElem::one(&ring) + &r0;
        let un = one.add(&rn);
        let up = one.add(&rp);
        c = &c * &u0;
        nn = nn.mul(&un);
        pp = pp.mul(&up);
        r = r.mul(&un.inv(work)?).mul(&up.inv(work)?).scale(&u0.inv()?);
    }
    if !converged {
        return Err(Error::PrecisionExhausted("Witt iteration did not converge".into()));
    }
    debug_assert!(nn.is_exact());

    let mut neg = Vec::new();
    let mut rem = nn;
    let mut i = 1;
    while !rem.is_exact_one() {
        if i > PEEL_CAP {
            return Err(Error::PrecisionExhausted("negative Witt parameters did not terminate".into()));
        }
        let a = -rem.coeff(-i);
        if !a.is_zero() {
            let factor = one.sub(&Series::monomial(a.clone(), -i));
            rem = rem.mul(&factor.inv(0)?);
            neg.push((i, a));
        }
        i += 1;
    }

    let mut pos = Vec::new();
    let pos_known = if pp.is_exact_one() {
        i64::MAX
    } else {
        let pp = if pp.is_exact() { pp.truncate(work + 1) } else { pp };
        let prec = pp.prec().unwrap();
        let mut rem = pp;
        for i in 1..prec {
            let b = -rem.coeff(i);
            if !b.is_zero() {
                rem = rem.div_binomial_pos(&b, i);
                pos.push((i, b));
            }
        }
        prec - 1
    };
    Ok(WittData { w, f0: &c0 * &c, p_exp, neg, pos, pos_known })
}

/// Rebuild the unit from its Witt data, known up to the determined positive range.
pub fn recompose(wd: &WittData) -> Result<LaurentUnit> {
    let ring = wd.ring().clone();
    let one = Series::one(&ring);
    let mut neg = one.clone();
    for (i, a) in &wd.neg {
        neg = neg.mul(&one.sub(&Series::monomial(a.clone(), -i)));
    }
    let mut pos = one.clone();
    for (i, b) in &wd.pos {
        pos = pos.mul(&one.sub(&Series::monomial(b.clone(), *i)));
    }
    if wd.pos_known != i64::MAX {
        pos = pos.truncate(wd.pos_known + 1);
    }
    let s = neg.mul(&pos).scale(&wd.f0).shift(wd.w);
    LaurentUnit::new(wd.p_exp, s)
}
