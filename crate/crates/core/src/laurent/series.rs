//! Laurent series over a Galois ring with certified precision.
//!
//! A [`Series`] stores coefficients densely from its lowest exponent. `prec` is
//! an exclusive exponent bound: coefficients at exponents `>= prec` are unknown.
//! `prec = None` marks an exact (finitely supported) series. Coefficients below
//! the stored range are exactly zero.

use crate::coeff_ring::{GrElem, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Series {
    ring: Ring,
    lo: i64,
    c: Vec<GrElem>,
    prec: Option<i64>,
}

pub(crate) fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Series {
    pub fn zero(ring: &Ring, prec: Option<i64>) -> Self {
        Series { ring: ring.clone(), lo: 0, c: Vec::new(), prec }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::monomial(GrElem::one(ring), 0)
    }

    pub fn monomial(c: GrElem, k: i64) -> Self {
        let ring = c.ring().clone();
        let mut s = Series { ring, lo: k, c: vec![c], prec: None };
        s.normalize();
        s
    }

    /// Series from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (i64, GrElem)>, prec: Option<i64>) -> Self {
        let terms: Vec<(i64, GrElem)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero(ring, prec);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![GrElem::zero(ring); (hi - lo + 1) as usize];
        for (k, v) in terms {
            let slot = &mut c[(k - lo) as usize];
            *slot = &*slot + &v;
        }
        let mut s = Series { ring: ring.clone(), lo, c, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            let keep = (p - self.lo).clamp(0, self.c.len() as i64) as usize;
            self.c.truncate(keep);
        }
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead == self.c.len() {
            self.c.clear();
            self.lo = 0;
        } else if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Whether the coefficient at `k` is determined.
    pub fn is_known(&self, k: i64) -> bool {
        self.prec.is_none_or(|p| k < p)
    }

    /// Coefficient at `k`; zero outside the stored range (callers check [`Series::is_known`]).
    pub fn coeff(&self, k: i64) -> GrElem {
        let idx = k - self.lo;
        if idx < 0 || idx >= self.c.len() as i64 {
            GrElem::zero(&self.ring)
        } else {
            self.c[idx as usize].clone()
        }
    }

    /// Nonzero known terms in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GrElem)> + '_ {
        self.c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(i, v)| (self.lo + i as i64, v))
    }

    /// All known coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn val(&self) -> Option<i64> {
        (!self.c.is_empty()).then_some(self.lo)
    }

    /// Lower bound for the valuation of the true series.
    fn val_bound(&self) -> i64 {
        match (self.val(), self.prec) {
            (Some(v), _) => v,
            (None, Some(p)) => p,
            (None, None) => i64::MAX / 4,
        }
    }

    /// Highest stored exponent.
    pub fn top(&self) -> Option<i64> {
        (!self.c.is_empty()).then(|| self.lo + self.c.len() as i64 - 1)
    }

    /// Exact series equal to `1`.
    pub fn is_exact_one(&self) -> bool {
        self.prec.is_none() && self.c.len() == 1 && self.lo == 0 && self.c[0].is_one()
    }

    /// All known coefficients agree with those of `1`.
    pub fn is_one_within(&self) -> bool {
        if self.prec.is_some_and(|p| p <= 0) {
            return false;
        }
        self.c.len() == 1 && self.lo == 0 && self.c[0].is_one()
    }

    /// Restrict to exponents `< prec` (never raises precision).
    pub fn truncate(&self, prec: i64) -> Series {
        let mut s = self.clone();
        s.prec = min_prec(s.prec, Some(prec));
        s.normalize();
        s
    }

    /// Forget the exactness flag: same coefficients, now only known below `prec`.
    pub fn with_prec(&self, prec: Option<i64>) -> Series {
        let mut s = self.clone();
        s.prec = prec;
        s.normalize();
        s
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: i64) -> Series {
        let mut s = self.clone();
        if !s.c.is_empty() {
            s.lo += k;
        }
        s.prec = s.prec.map(|p| p + k);
        s
    }

    pub fn scale(&self, a: &GrElem) -> Series {
        let mut s = self.clone();
        for x in &mut s.c {
            *x = &*x * a;
        }
        s.normalize();
        s
    }

    fn combine(&self, other: &Series, f: impl Fn(&GrElem, &GrElem) -> GrElem) -> Series {
        let prec = min_prec(self.prec, other.prec);
        let lo = match (self.val(), other.val()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return Series::zero(&self.ring, prec),
        };
        let hi = self.top().unwrap_or(lo).max(other.top().unwrap_or(lo));
        let c = (lo..=hi).map(|k| f(&self.coeff(k), &other.coeff(k))).collect();
        let mut s = Series { ring: self.ring.clone(), lo, c, prec };
        s.normalize();
        s
    }

    pub fn add(&self, other: &Series) -> Series {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.combine(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Series {
        let mut s = self.clone();
        for x in &mut s.c {
            *x = -&*x;
        }
        s
    }

    pub fn mul(&self, other: &Series) -> Series {
        let prec = min_prec(
            self.prec.map(|p| p.saturating_add(other.val_bound())),
            other.prec.map(|p| p.saturating_add(self.val_bound())),
        );
        if self.c.is_empty() || other.c.is_empty() {
            return Series::zero(&self.ring, prec);
        }
        let lo = self.lo + other.lo;
        let mut len = self.c.len() + other.c.len() - 1;
        if let Some(p) = prec {
            len = len.min((p - lo).max(0) as usize);
        }
        let mut c = vec![GrElem::zero(&self.ring); len];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.c.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        let mut s = Series { ring: self.ring.clone(), lo, c, prec };
        s.normalize();
        s
    }

    /// Splits into the parts with negative exponents, the constant term, and positive exponents.
    ///
    /// The unknown tail is attributed to the positive part; the negative part is exact
    /// when `prec > 0`.
    pub fn split(&self) -> (Series, GrElem, Series) {
        let neg = Series::from_terms(&self.ring, self.terms().filter(|t| t.0 < 0).map(|(k, v)| (k, v.clone())), None);
        let pos =
            Series::from_terms(&self.ring, self.terms().filter(|t| t.0 > 0).map(|(k, v)| (k, v.clone())), self.prec);
        (neg, self.coeff(0), pos)
    }

    /// Lowest exponent carrying a ring unit, among known coefficients.
    pub fn winding(&self) -> Option<i64> {
        self.terms().find(|(_, v)| v.is_unit()).map(|(k, _)| k)
    }

    /// Smallest valuation among the known coefficients (`N` for the zero series).
    pub fn coeff_valuation(&self) -> u32 {
        self.c.iter().map(|x| x.valuation()).min().unwrap_or(self.ring.n())
    }

    /// `(1 + s)^{-1}` for a power series `s` with `s(0) = 0`, to the precision of `s`
    /// or `work` when `s` is exact and nonzero.
    fn inv_one_plus_power(s: &Series, work: i64) -> Series {
        let ring = &s.ring;
        if s.is_zero() && s.prec.is_none() {
            return Series::one(ring);
        }
        let p = s.prec.unwrap_or(work).min(work).max(0);
        let d: Vec<GrElem> = (0..p).map(|k| s.coeff(k)).collect();
        let mut q = vec![GrElem::zero(ring); p as usize];
        if p > 0 {
            q[0] = GrElem::one(ring);
        }
        for n in 1..p as usize {
            let mut acc = GrElem::zero(ring);
            for k in 1..=n {
                if !d[k].is_zero() {
                    acc = &acc + &(&d[k] * &q[n - k]);
                }
            }
            q[n] = -&acc;
        }
        let mut out = Series { ring: ring.clone(), lo: 0, c: q, prec: Some(p) };
        out.normalize();
        out
    }

    /// Inverse of a unit of `R((T))`.
    ///
    /// `hi` bounds the result window when the inverse of an exact series is infinite;
    /// windowed inputs carry their own bound and the result is additionally truncated at `hi + 1`.
    pub fn inv(&self, hi: i64) -> Result<Series> {
        let w = self.winding().ok_or(Error::NotAUnit)?;
        let c = self.coeff(w);
        let cinv = c.inv()?;
        let h = self.shift(-w).scale(&cinv);
        let (neg, _, pos) = h.split();
        let n = self.ring.n() as i64;
        let vmin = neg.coeff_valuation().max(1) as i64;
        let k_terms = (n + vmin - 1) / vmin;
        // working precision for the power-series inverse so the final product reaches hi + 1
        let spread = if neg.is_zero() { 0 } else { (k_terms - 1).max(0) * (-neg.val().unwrap()) };
        let work = (hi + 1 + w).saturating_add(spread).max(1);
        let q = Self::inv_one_plus_power(&pos, work);
        let out = if neg.is_zero() {
            q
        } else {
            let eps = neg.mul(&q).neg();
            let mut sum = Series::one(&self.ring);
            let mut pw = Series::one(&self.ring);
            for _ in 1..k_terms {
                pw = pw.mul(&eps);
                sum = sum.add(&pw);
            }
            q.mul(&sum)
        };
        let out = out.scale(&cinv).shift(-w);
        Ok(if out.is_exact() { out } else { out.truncate(hi + 1) })
    }

    pub fn pow(&self, mut e: u64) -> Series {
        let mut acc = Series::one(&self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divide by `1 - b·T^i` (`i >= 1`) as a power series, in place of a full inverse.
    pub(crate) fn div_binomial_pos(&self, b: &GrElem, i: i64) -> Series {
        debug_assert!(i >= 1);
        let p = self.prec.expect("positive binomial division needs a window");
        let lo = self.lo.min(0);
        let len = (p - lo).max(0) as usize;
        let mut c: Vec<GrElem> = (0..len as i64).map(|k| self.coeff(lo + k)).collect();
        let step = i as usize;
        for n in step..len {
            let add = b * &c[n - step];
            c[n] = &c[n] + &add;
        }
        let mut s = Series { ring: self.ring.clone(), lo, c, prec: self.prec };
        s.normalize();
        s
    }

    /// Coefficients agree wherever both are known.
    pub fn agrees_with(&self, other: &Series) -> bool {
        let prec = min_prec(self.prec, other.prec);
        let lo = self.val().unwrap_or(0).min(other.val().unwrap_or(0));
        let hi = match prec {
            Some(p) => p - 1,
            None => self.top().unwrap_or(0).max(other.top().unwrap_or(0)),
        };
        (lo..=hi).all(|k| self.coeff(k) == other.coeff(k))
    }

    pub fn change_ring(&self, ring: &Ring) -> Series {
        let mut s = Series {
            ring: ring.clone(),
            lo: self.lo,
            c: self.c.iter().map(|x| x.change_ring(ring)).collect(),
            prec: self.prec,
        };
        s.normalize();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_ring::RingDesc;

    fn s(r: &Ring, terms: &[(i64, i64)], prec: Option<i64>) -> Series {
        Series::from_terms(r, terms.iter().map(|&(k, v)| (k, GrElem::from_int(r, v))), prec)
    }

    #[test]
    fn nilpotent_inverse_truncates() {
        let r = RingDesc::prime(5, 2).unwrap();
        let f = s(&r, &[(0, 1), (-1, -5)], None);
        let g = f.inv(10).unwrap();
        assert!(g.is_exact());
        assert!(g.agrees_with(&s(&r, &[(0, 1), (-1, 5)], None)));
        assert!(f.mul(&g).is_exact_one());
    }

    #[test]
    fn power_series_inverse_is_windowed() {
        let r = RingDesc::prime(5, 3).unwrap();
        let f = s(&r, &[(0, 1), (1, 1)], None);
        let g = f.inv(7).unwrap();
        assert_eq!(g.prec(), Some(8));
        for k in 0..8 {
            assert_eq!(g.coeff(k), GrElem::from_int(&r, if k % 2 == 0 { 1 } else { -1 }));
        }
        assert!(f.mul(&g).is_one_within());
    }

    #[test]
    fn mixed_inverse() {
        let r = RingDesc::prime(3, 3).unwrap();
        let f = s(&r, &[(-2, 3), (-1, 9), (1, 2), (0, 1), (3, 4)], None).shift(2);
        let g = f.inv(12).unwrap();
        let one = f.mul(&g);
        assert!(one.is_one_within());
        assert!(one.prec().unwrap() >= 10);
    }

    #[test]
    fn precision_rule_for_products() {
        let r = RingDesc::prime(5, 2).unwrap();
        let a = s(&r, &[(0, 1), (1, 2)], Some(4));
        let b = s(&r, &[(-2, 1)], None);
        assert_eq!(a.mul(&b).prec(), Some(2));
        let z = Series::zero(&r, Some(3));
        assert_eq!(a.mul(&z).prec(), Some(3));
    }

    #[test]
    fn binomial_division_matches_inverse() {
        let r = RingDesc::prime(5, 2).unwrap();
        let a = s(&r, &[(0, 1), (2, 3), (3, 7)], Some(12));
        let b = GrElem::from_int(&r, 4);
        let direct = a.mul(&s(&r, &[(0, 1), (2, -4)], None).inv(11).unwrap());
        assert!(a.div_binomial_pos(&b, 2).agrees_with(&direct));
    }
}
