//! Dense univariate polynomials over any [`Scalar`].
//!
//! Coefficients are stored in ascending degree with trailing zeros trimmed.
//! Each polynomial keeps a copy of its ring's zero so that runtime-modulus
//! scalars survive operations that produce the zero polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::scalar::{ExactDiv, FieldScalar, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
    zero: S,
}

impl<S: Scalar + Eq> Eq for Poly<S> {}

impl<S: Scalar> Poly<S> {
    pub fn new(coeffs: Vec<S>, zero: S) -> Self {
        let mut p = Poly { coeffs, zero };
        p.trim();
        p
    }

    pub fn zero(zero: S) -> Self {
        Poly { coeffs: Vec::new(), zero }
    }

    pub fn constant(c: S) -> Self {
        let zero = c.zero_like();
        Poly::new(vec![c], zero)
    }

    /// The polynomial `x` over the ring of `like`.
    pub fn x(like: &S) -> Self {
        Poly::monomial(like.one_like(), 1)
    }

    pub fn monomial(c: S, k: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); k];
        coeffs.push(c);
        Poly::new(coeffs, zero)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.vanishes()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn zero_elem(&self) -> &S {
        &self.zero
    }

    pub fn one_elem(&self) -> S {
        self.zero.one_like()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.zero.one_like()
    }

    pub fn lc(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| *c == self.zero.one_like())
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &S) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), self.zero.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.int_like(i as i64) * c.clone()).collect();
        Poly::new(coeffs, self.zero.clone())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.zero.clone(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(coeffs, self.zero.clone())
    }

    /// Substitution `p(x + c)` by Horner's scheme.
    pub fn taylor_shift(&self, c: &S) -> Self {
        let lin = Poly::new(vec![c.clone(), self.zero.one_like()], self.zero.clone());
        self.compose(&lin)
    }

    pub fn compose(&self, q: &Poly<S>) -> Self {
        let mut acc = Poly::zero(self.zero.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `x^deg · p(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::new(coeffs, self.zero.clone())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Poly::constant(self.zero.one_like());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T, zero: T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect(), zero)
    }

    /// Division with remainder by a monic divisor; valid over any commutative ring.
    pub fn divrem_monic(&self, m: &Poly<S>) -> (Self, Self) {
        assert!(m.is_monic(), "divisor must be monic");
        let dm = m.coeffs.len() - 1;
        if self.coeffs.len() <= dm {
            return (Poly::zero(self.zero.clone()), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.zero.clone(); rem.len() - dm];
        for k in (dm..rem.len()).rev() {
            let c = rem[k].clone();
            if c.vanishes() {
                continue;
            }
            quot[k - dm] = c.clone();
            for (i, mc) in m.coeffs.iter().enumerate() {
                let idx = k - dm + i;
                rem[idx] = rem[idx].clone() - c.clone() * mc.clone();
            }
        }
        rem.truncate(dm);
        (Poly::new(quot, self.zero.clone()), Poly::new(rem, self.zero.clone()))
    }

    pub fn rem_monic(&self, m: &Poly<S>) -> Self {
        self.divrem_monic(m).1
    }
}

impl<S: Scalar + Zero> Poly<S> {
    /// Build from context-free coefficients (ascending degree).
    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        Poly::new(coeffs, S::zero())
    }
}

impl<S: FieldScalar> Poly<S> {
    /// Euclidean division; `None` if the divisor is zero or its leading coefficient is not invertible.
    pub fn divrem(&self, d: &Poly<S>) -> Option<(Self, Self)> {
        let inv = d.lc()?.try_inv()?;
        let monic = d.scale(&inv);
        let (q, r) = self.divrem_monic(&monic);
        Some((q.scale(&inv), r))
    }

    pub fn monic(&self) -> Self {
        match self.lc().and_then(|c| c.try_inv()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Monic gcd. Panics if a remainder acquires a non-invertible leading coefficient.
    pub fn gcd(&self, other: &Poly<S>) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("gcd requires invertible leading coefficients").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Poly<S>) -> (Self, Self, Self) {
        let zero = self.zero.clone();
        let one = Poly::constant(zero.one_like());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero(zero.clone()));
        let (mut t0, mut t1) = (Poly::zero(zero.clone()), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("ext_gcd requires invertible leading coefficients");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lc().and_then(|c| c.try_inv()) {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    pub fn exact_div(&self, d: &Poly<S>) -> Option<Self> {
        let (q, r) = self.divrem(d)?;
        r.is_zero().then_some(q)
    }

    pub fn mul_mod(&self, other: &Poly<S>, m: &Poly<S>) -> Self {
        (self * other).divrem(m).expect("modulus must have invertible leading coefficient").1
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly<S>) -> Self {
        let mut acc = Poly::constant(self.zero.one_like()).divrem(m).expect("bad modulus").1;
        let base = self.divrem(m).expect("bad modulus").1;
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }
}

/// Resultant by the Euclidean remainder sequence.
///
/// Uses the convention `Res(a, b) = lc(a)^deg b · ∏_{a(α)=0} b(α)`. Returns `None`
/// only if some remainder has a non-invertible leading coefficient (never over a field).
pub fn resultant<S: FieldScalar>(a: &Poly<S>, b: &Poly<S>) -> Option<S> {
    let zero = a.zero_elem().clone();
    if a.is_zero() || b.is_zero() {
        return Some(zero);
    }
    let (da, db) = (a.deg() as u64, b.deg() as u64);
    if da == 0 {
        return Some(a.coeff(0).pow_u(db));
    }
    if db == 0 {
        return Some(b.coeff(0).pow_u(da));
    }
    let r = a.divrem(b)?.1;
    if r.is_zero() {
        return Some(zero);
    }
    let dr = r.deg() as u64;
    let mut out = b.lc()?.pow_u(da - dr) * resultant(b, &r)?;
    if (da * db) % 2 == 1 {
        out = -out;
    }
    Some(out)
}

/// Sylvester matrix with coefficients listed from the leading term down.
pub fn sylvester_matrix<S: Scalar>(a: &Poly<S>, b: &Poly<S>) -> Vec<Vec<S>> {
    let (m, n) = (a.deg().max(0) as usize, b.deg().max(0) as usize);
    let size = m + n;
    let zero = a.zero_elem().clone();
    let mut rows = vec![vec![zero; size]; size];
    for i in 0..n {
        for k in 0..=m {
            rows[i][i + k] = a.coeff(m - k);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            rows[n + i][i + k] = b.coeff(n - k);
        }
    }
    rows
}

/// Fraction-free (Bareiss) determinant; every division is exact.
pub fn bareiss_det<S: ExactDiv>(mut m: Vec<Vec<S>>, one: S) -> S {
    let n = m.len();
    if n == 0 {
        return one;
    }
    let zero = one.zero_like();
    let mut negate = false;
    let mut prev = one;
    for k in 0..n - 1 {
        if m[k][k].vanishes() {
            match (k + 1..n).find(|&i| !m[i][k].vanishes()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant as the determinant of the Sylvester matrix, same convention as [`resultant`].
pub fn sylvester_resultant<S: ExactDiv>(a: &Poly<S>, b: &Poly<S>) -> S {
    let one = a.one_elem();
    if a.is_zero() || b.is_zero() {
        return one.zero_like();
    }
    let (da, db) = (a.deg() as u64, b.deg() as u64);
    if da == 0 {
        return a.coeff(0).pow_u(db);
    }
    if db == 0 {
        return b.coeff(0).pow_u(da);
    }
    bareiss_det(sylvester_matrix(a, b), one)
}

/// Division-free determinant (Berkowitz); valid over any commutative ring.
pub fn berkowitz_det<S: Scalar>(a: &[Vec<S>], one: &S) -> S {
    let n = a.len();
    if n == 0 {
        return one.clone();
    }
    let zero = one.zero_like();
    // v holds the characteristic polynomial of the leading r×r block, highest degree first
    let mut v = vec![one.clone(), -a[0][0].clone()];
    for r in 1..n {
        let mut t = vec![zero.clone(); r + 2];
        t[0] = one.clone();
        t[1] = -a[r][r].clone();
        let mut x: Vec<S> = (0..r).map(|i| a[i][r].clone()).collect();
        for k in 0..r {
            let mut dot = zero.clone();
            for (j, xj) in x.iter().enumerate() {
                dot = dot + a[r][j].clone() * xj.clone();
            }
            t[k + 2] = -dot;
            if k + 1 < r {
                x = (0..r)
                    .map(|i| {
                        let mut acc = zero.clone();
                        for (j, xj) in x.iter().enumerate() {
                            acc = acc + a[i][j].clone() * xj.clone();
                        }
                        acc
                    })
                    .collect();
            }
        }
        let mut next = vec![zero.clone(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for j in 0..=i.min(r) {
                *slot = slot.clone() + t[i - j].clone() * v[j].clone();
            }
        }
        v = next;
    }
    if n.is_multiple_of(2) {
        v[n].clone()
    } else {
        -v[n].clone()
    }
}

/// `∏_{A(α)=0} B(α)` for monic `A`, as the determinant of multiplication by `B` modulo `A`.
///
/// Works over any commutative ring, including `Z/p^N` where Euclid's algorithm fails.
pub fn resultant_monic<S: Scalar>(a: &Poly<S>, b: &Poly<S>) -> S {
    assert!(a.is_monic(), "first argument must be monic");
    let n = a.deg() as usize;
    let one = a.one_elem();
    if n == 0 {
        return one;
    }
    let mut cols = Vec::with_capacity(n);
    let mut cur = b.rem_monic(a);
    let x = Poly::x(&one);
    for _ in 0..n {
        cols.push(cur.clone());
        cur = (&cur * &x).rem_monic(a);
    }
    let m: Vec<Vec<S>> = (0..n).map(|i| (0..n).map(|j| cols[j].coeff(i)).collect()).collect();
    berkowitz_det(&m, &one)
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(coeffs, self.zero.clone())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(coeffs, self.zero.clone())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.zero.clone());
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out, self.zero.clone())
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect(), self.zero.clone())
    }
}

impl<S: Scalar> Add for Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: Poly<S>) -> Poly<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: Poly<S>) -> Poly<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: Poly<S>) -> Poly<S> {
        &self * &rhs
    }
}

/// Human-readable rendering with signs, e.g. `T^2 - 5*T + 1`.
pub fn format_signed<S>(p: &Poly<S>, var: &str) -> String
where
    S: Scalar + Signed + fmt::Display,
{
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.vanishes() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = mag == c.one_like();
        match k {
            0 => out.push_str(&mag.to_string()),
            1 if unit => out.push_str(var),
            1 => out.push_str(&format!("{mag}*{var}")),
            _ if unit => out.push_str(&format!("{var}^{k}")),
            _ => out.push_str(&format!("{mag}*{var}^{k}")),
        }
    }
    out
}

impl fmt::Display for Poly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_signed(self, "T"))
    }
}

impl fmt::Display for Poly<num_rational::BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_signed(self, "T"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn ip(c: &[i64]) -> Poly<BigInt> {
        Poly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn rp(c: &[i64]) -> Poly<BigRational> {
        Poly::from_coeffs(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn resultant_of_linear_is_evaluation() {
        // Res(T - 4, B) = B(4)
        let b = ip(&[3, -2, 1]);
        let r = sylvester_resultant(&ip(&[-4, 1]), &b);
        assert_eq!(r, BigInt::from(16 - 8 + 3));
    }

    #[test]
    fn resultant_product_of_square_roots() {
        // Res(T^2 - 5, T) = (√5)(-√5) = -5
        assert_eq!(sylvester_resultant(&ip(&[-5, 0, 1]), &ip(&[0, 1])), BigInt::from(-5));
        assert_eq!(resultant(&rp(&[-5, 0, 1]), &rp(&[0, 1])), Some(BigRational::from_integer((-5).into())));
    }

    #[test]
    fn resultant_conjugate_product() {
        // (i - 3)(-i - 3) = 10
        assert_eq!(sylvester_resultant(&ip(&[1, 0, 1]), &ip(&[-3, 1])), BigInt::from(10));
        assert_eq!(resultant(&rp(&[1, 0, 1]), &rp(&[-3, 1])), Some(BigRational::from_integer(10.into())));
    }

    #[test]
    fn common_root_gives_zero() {
        let a = ip(&[-2, 1]) * ip(&[1, 1]);
        let b = ip(&[-2, 1]) * ip(&[7, 0, 1]);
        assert!(sylvester_resultant(&a, &b).is_zero());
    }

    #[test]
    fn division_free_resultant_agrees() {
        let a = ip(&[-5, 0, 1]);
        assert_eq!(resultant_monic(&a, &ip(&[0, 1])), BigInt::from(-5));
        let a = ip(&[7, -3, 2, 1]);
        let b = ip(&[4, 0, -1, 5, 2]);
        assert_eq!(resultant_monic(&a, &b), sylvester_resultant(&a, &b));
        let m = vec![
            vec![BigInt::from(2), BigInt::from(-1), BigInt::from(0)],
            vec![BigInt::from(3), BigInt::from(5), BigInt::from(7)],
            vec![BigInt::from(1), BigInt::from(4), BigInt::from(-2)],
        ];
        assert_eq!(berkowitz_det(&m, &BigInt::from(1)), bareiss_det(m, BigInt::from(1)));
    }

    #[test]
    fn divrem_and_gcd() {
        let a = rp(&[-1, 0, 1]);
        let b = rp(&[1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q, rp(&[-1, 1]));
        assert!(r.is_zero());
        let g = (rp(&[-1, 1]) * rp(&[2, 1])).gcd(&(rp(&[-1, 1]) * rp(&[5, 1])));
        assert_eq!(g, rp(&[-1, 1]));
        let (g, s, t) = rp(&[1, 0, 1]).ext_gcd(&rp(&[0, 1]));
        assert!(g.is_one());
        assert_eq!(&(&s * &rp(&[1, 0, 1])) + &(&t * &rp(&[0, 1])), g);
    }

    #[test]
    fn taylor_shift_and_reverse() {
        // (x+1)^2 = x^2 + 2x + 1
        let p = ip(&[0, 0, 1]).taylor_shift(&BigInt::from(1));
        assert_eq!(p, ip(&[1, 2, 1]));
        assert_eq!(ip(&[1, 2, 3]).reverse(), ip(&[3, 2, 1]));
        assert_eq!(ip(&[1, 2, 3]).derivative(), ip(&[2, 6]));
    }

    #[test]
    fn display_is_signed() {
        assert_eq!(ip(&[-5, 0, 1]).to_string(), "T^2 - 5");
        assert_eq!(ip(&[1, -1]).to_string(), "-T + 1");
    }
}
