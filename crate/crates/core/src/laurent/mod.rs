//! Units of `R((T))` with an explicit `p`-power prefactor.

pub mod expand;
pub mod series;
pub mod witt;

pub use expand::{expand_at, expand_at_point, expand_poly_at};
pub use series::Series;
pub use witt::{recompose, witt_decompose, witt_decompose_to, WittData};

use crate::coeff_ring::{GrElem, Ring};
use crate::error::{Error, Result};

/// Window used when an operation on exact inputs produces an infinite series.
pub const DEFAULT_WINDOW: i64 = 32;

/// `p^{p_exp} · s` with `s` a unit of `R((T))`.
#[derive(Clone, Debug)]
pub struct LaurentUnit {
    p_exp: i64,
    s: Series,
}

impl LaurentUnit {
    /// Validates that the known part of `s` has a unit coefficient.
    pub fn new(p_exp: i64, s: Series) -> Result<Self> {
        if s.winding().is_none() {
            return Err(Error::NotAUnit);
        }
        Ok(LaurentUnit { p_exp, s })
    }

    /// Build from `(exponent, coefficient)` pairs.
    ///
    /// With `window = Some((lo, hi))` the series is known on `[lo, hi]` (and zero
    /// below `lo`); with `None` it is the exact Laurent polynomial given.
    pub fn make(ring: &Ring, p_exp: i64, coeffs: &[(i64, GrElem)], window: Option<(i64, i64)>) -> Result<Self> {
        if let Some((lo, hi)) = window {
            if lo > hi {
                return Err(Error::InvalidInput(format!("empty window {lo}:{hi}")));
            }
            if coeffs.iter().any(|(k, _)| *k < lo || *k > hi) {
                return Err(Error::InvalidInput("coefficient outside the declared window".into()));
            }
        }
        if coeffs.iter().any(|(_, c)| !std::sync::Arc::ptr_eq(c.ring(), ring) && **c.ring() != **ring) {
            return Err(Error::MixedRings);
        }
        let s = Series::from_terms(ring, coeffs.iter().cloned(), window.map(|w| w.1 + 1));
        Self::new(p_exp, s)
    }

    /// Exact Laurent polynomial from integer coefficients.
    pub fn from_ints(ring: &Ring, p_exp: i64, coeffs: &[(i64, i64)]) -> Result<Self> {
        let terms: Vec<(i64, GrElem)> = coeffs.iter().map(|&(k, v)| (k, GrElem::from_int(ring, v))).collect();
        Self::make(ring, p_exp, &terms, None)
    }

    pub fn one(ring: &Ring) -> Self {
        LaurentUnit { p_exp: 0, s: Series::one(ring) }
    }

    /// The parameter `T`.
    pub fn t(ring: &Ring) -> Self {
        LaurentUnit { p_exp: 0, s: Series::monomial(GrElem::one(ring), 1) }
    }

    /// A constant `p^{p_exp} · c` with `c` a unit.
    pub fn constant(p_exp: i64, c: GrElem) -> Result<Self> {
        Self::new(p_exp, Series::monomial(c, 0))
    }

    pub fn ring(&self) -> &Ring {
        self.s.ring()
    }

    pub fn p_exp(&self) -> i64 {
        self.p_exp
    }

    pub fn series(&self) -> &Series {
        &self.s
    }

    pub fn is_exact(&self) -> bool {
        self.s.is_exact()
    }

    /// `(lowest stored exponent, highest known exponent)`.
    pub fn window(&self) -> (i64, i64) {
        let lo = self.s.val().unwrap_or(0);
        let hi = match self.s.prec() {
            Some(p) => p - 1,
            None => self.s.top().unwrap_or(0),
        };
        (lo, hi)
    }

    /// Upper window bound used for operations whose exact result is infinite.
    pub fn working_hi(&self) -> i64 {
        match self.s.prec() {
            Some(p) => p - 1,
            None => DEFAULT_WINDOW,
        }
    }

    /// Least exponent whose coefficient is a unit.
    pub fn winding_number(&self) -> i64 {
        self.s.winding().expect("validated at construction")
    }

    fn check_ring(&self, other: &LaurentUnit) -> Result<()> {
        if std::sync::Arc::ptr_eq(self.ring(), other.ring()) || **self.ring() == **other.ring() {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    fn wrap(p_exp: i64, s: Series) -> Result<Self> {
        if s.winding().is_none() {
            return Err(Error::WindowUnderflow);
        }
        Ok(LaurentUnit { p_exp, s })
    }

    pub fn mul(&self, other: &LaurentUnit) -> Result<Self> {
        self.check_ring(other)?;
        Self::wrap(self.p_exp + other.p_exp, self.s.mul(&other.s))
    }

    /// Inverse, windowed at `hi` when the exact inverse is infinite.
    pub fn inv_to(&self, hi: i64) -> Result<Self> {
        Self::wrap(-self.p_exp, self.s.inv(hi)?)
    }

    pub fn inv(&self) -> Result<Self> {
        self.inv_to(self.working_hi())
    }

    pub fn div(&self, other: &LaurentUnit) -> Result<Self> {
        self.check_ring(other)?;
        let hi = self.working_hi().max(other.working_hi());
        self.mul(&other.inv_to(hi)?)
    }

    pub fn pow_i(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Self::wrap(self.p_exp * e, base.s.pow(e.unsigned_abs()))
    }

    /// `1 - self`, which must again be a unit times a power of `p`.
    ///
    /// Only prefactor-free inputs are supported, matching the Steinberg relation's domain.
    pub fn one_minus(&self) -> Result<Self> {
        if self.p_exp != 0 {
            return Err(Error::NonzeroPrefactor);
        }
        Self::new(0, Series::one(self.ring()).sub(&self.s))
    }

    /// Multiply by a unit constant of the ring.
    pub fn scale(&self, c: &GrElem) -> Result<Self> {
        if !c.is_unit() {
            return Err(Error::NotAUnit);
        }
        Ok(LaurentUnit { p_exp: self.p_exp, s: self.s.scale(c) })
    }

    /// Restrict the known window to exponents `<= hi`.
    pub fn truncate(&self, hi: i64) -> Result<Self> {
        Self::wrap(self.p_exp, self.s.truncate(hi + 1))
    }

    /// Same coefficients and prefactor, interpreted in another ring with the same residue field.
    pub fn change_ring(&self, ring: &Ring) -> Result<Self> {
        Self::new(self.p_exp, self.s.change_ring(ring))
    }

    /// Equal prefactors and coefficients agreeing wherever both are known.
    pub fn agrees_with(&self, other: &LaurentUnit) -> bool {
        self.p_exp == other.p_exp && self.s.agrees_with(&other.s)
    }

    /// Substitution `T ↦ t` with `w(t) = 1`, windowed at the input's working bound.
    pub fn reparametrize(&self, t: &LaurentUnit) -> Result<Self> {
        self.reparametrize_to(t, self.working_hi().max(t.working_hi()))
    }

    pub fn reparametrize_to(&self, t: &LaurentUnit, hi: i64) -> Result<Self> {
        self.check_ring(t)?;
        if t.p_exp != 0 {
            return Err(Error::BadParameter(t.winding_number()));
        }
        let wt = t.winding_number();
        if wt != 1 {
            return Err(Error::BadParameter(wt));
        }
        let ring = self.ring();
        let n = ring.n() as i64;
        // t = c·T·(1 + τ); negative powers of T in τ carry nilpotent coefficients
        let tau = t.s.shift(-1).scale(&t.s.coeff(1).inv()?);
        let (tau_neg, _, _) = tau.split();
        let a_max = if tau_neg.is_zero() {
            0
        } else {
            let v = tau_neg.coeff_valuation().max(1) as i64;
            (n + v - 1) / v - 1
        };
        let neg_reach = a_max * tau_neg.val().unwrap_or(0).min(0);
        let (lo_f, top_f) = match (self.s.val(), self.s.top()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NotAUnit),
        };
        let mut acc = Series::zero(ring, None);
        if top_f >= 0 {
            let mut pw = Series::one(ring);
            for k in 0..=top_f {
                if k > 0 {
                    pw = pw.mul(&t.s);
                }
                let a = self.s.coeff(k);
                if k >= lo_f && !a.is_zero() {
                    acc = acc.add(&pw.scale(&a));
                }
            }
        }
        if lo_f < 0 {
            let depth = -lo_f;
            let inv_hi = hi + depth * (1 - neg_reach) + 1;
            let tinv = t.s.inv(inv_hi)?;
            let mut pw = Series::one(ring);
            for k in 1..=depth {
                pw = pw.mul(&tinv);
                let a = self.s.coeff(-k);
                if !a.is_zero() {
                    acc = acc.add(&pw.scale(&a));
                }
            }
        }
        if let Some(p) = self.s.prec() {
            acc = acc.truncate(p + neg_reach);
        }
        if !acc.is_exact() {
            acc = acc.truncate(hi + 1);
        }
        Self::wrap(self.p_exp, acc)
    }
}
