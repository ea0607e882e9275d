//! Galois rings `GR(p^N, d) = (Z/p^N)[x]/(H)`.
//!
//! Elements are coordinate vectors in the power basis of `H`, each coordinate the
//! least nonnegative residue mod `p^N`. The maximal ideal is `(p)` and `p^N = 0`.

pub mod finite_field;
mod frobenius;
pub mod hensel;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use smallvec::SmallVec;

use crate::arith::{addmod, invmod, is_prime_u64, mulmod, submod};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{FieldScalar, Scalar};

pub use frobenius::in_prime_ring;
pub use hensel::{hensel_lift, hensel_root};

pub(crate) type Coords = SmallVec<[u64; 4]>;

/// Shared handle to a ring descriptor.
pub type Ring = Arc<RingDesc>;

/// Largest admissible `p^N`; keeps every product below `2^127` and every sum below `2^64`.
const MAX_MODULUS: u64 = 1 << 62;

pub struct RingDesc {
    p: u64,
    n: u32,
    modulus: u64,
    /// Monic modulus, ascending, `d + 1` entries.
    h: Vec<u64>,
    residue: OnceLock<Ring>,
    /// `σ(x)^k` for `k < d`, where `σ` is the Frobenius automorphism.
    frob_powers: OnceLock<Vec<Coords>>,
}

impl PartialEq for RingDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.h == other.h
    }
}

impl Eq for RingDesc {}

impl fmt::Debug for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({}^{}, {}; H={:?})", self.p, self.n, self.d(), self.h)
    }
}

impl RingDesc {
    /// `Z/p^N`.
    pub fn prime(p: u64, n: u32) -> Result<Ring> {
        Self::check_pn(p, n)?;
        Ok(Arc::new(Self::raw(p, n, vec![0, 1])))
    }

    /// `GR(p^N, d)` with modulus `H` given by ascending integer coefficients.
    ///
    /// `H` must be monic and irreducible mod `p`; for `d = 1` it must be `x`.
    pub fn new(p: u64, n: u32, h: &[BigInt]) -> Result<Ring> {
        let modulus = Self::check_pn(p, n)?;
        let m = BigInt::from(modulus);
        let h: Vec<u64> = h.iter().map(|c| c.mod_floor(&m).to_u64().unwrap()).collect();
        if h.len() < 2 || *h.last().unwrap() != 1 {
            return Err(Error::InvalidRing("modulus must be monic of degree at least 1".into()));
        }
        if h.len() == 2 {
            if h[0] != 0 {
                return Err(Error::InvalidRing("degree one requires H = x".into()));
            }
            return Ok(Arc::new(Self::raw(p, n, h)));
        }
        let fp = RingDesc::prime(p, 1)?;
        let hbar = Poly::new(h.iter().map(|&c| GrElem::from_u64(&fp, c % p)).collect(), GrElem::zero(&fp));
        if !finite_field::is_irreducible(&hbar) {
            return Err(Error::InvalidRing("H is reducible mod p".into()));
        }
        Ok(Arc::new(Self::raw(p, n, h)))
    }

    /// `GR(p^N, d)` with `H` the lexicographically first monic irreducible of degree `d` over `F_p`.
    pub fn unramified(p: u64, n: u32, d: usize) -> Result<Ring> {
        Self::check_pn(p, n)?;
        if d == 0 {
            return Err(Error::InvalidRing("d must be at least 1".into()));
        }
        if d == 1 {
            return Self::prime(p, n);
        }
        let fp = RingDesc::prime(p, 1)?;
        let hbar = finite_field::first_irreducible(&fp, d);
        let h: Vec<BigInt> = hbar.coeffs().iter().map(|c| BigInt::from(c.coords()[0])).collect();
        Self::new(p, n, &h)
    }

    fn check_pn(p: u64, n: u32) -> Result<u64> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidRing("N must be at least 1".into()));
        }
        let mut m: u64 = 1;
        for _ in 0..n {
            m = m
                .checked_mul(p)
                .filter(|&v| v <= MAX_MODULUS)
                .ok_or_else(|| Error::InvalidRing(format!("{p}^{n} exceeds the supported modulus")))?;
        }
        Ok(m)
    }

    fn raw(p: u64, n: u32, h: Vec<u64>) -> Self {
        RingDesc { p, n, modulus: p.pow(n), h, residue: OnceLock::new(), frob_powers: OnceLock::new() }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.h.len() - 1
    }

    /// `p^N`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Ascending coefficients of `H`.
    pub fn h(&self) -> &[u64] {
        &self.h
    }

    /// `F_{p^d}` presented by `H mod p`.
    pub fn residue_field(self: &Arc<Self>) -> Ring {
        if self.n == 1 {
            return self.clone();
        }
        self.residue.get_or_init(|| Arc::new(Self::raw(self.p, 1, self.h.iter().map(|c| c % self.p).collect()))).clone()
    }

    /// Same `p` and `H`, precision `n`.
    pub fn with_precision(self: &Arc<Self>, n: u32) -> Result<Ring> {
        if n == self.n {
            return Ok(self.clone());
        }
        let m = Self::check_pn(self.p, n)?;
        Ok(Arc::new(Self::raw(self.p, n, self.h.iter().map(|c| c % m).collect())))
    }

    /// The subring `Z/p^N`.
    pub fn prime_subring(&self) -> Ring {
        Arc::new(Self::raw(self.p, self.n, vec![0, 1]))
    }
}

/// An element of a Galois ring.
#[derive(Clone)]
pub struct GrElem {
    ring: Ring,
    c: Coords,
}

#[inline]
fn same(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for GrElem {
    fn eq(&self, other: &Self) -> bool {
        same(&self.ring, &other.ring) && self.c == other.c
    }
}

impl Eq for GrElem {}

impl fmt::Debug for GrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.len() == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut first = true;
        for (k, &c) in self.c.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c == 1 => f.write_str("x")?,
                1 => write!(f, "{c}*x")?,
                _ if c == 1 => write!(f, "x^{k}")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl GrElem {
    pub fn zero(ring: &Ring) -> Self {
        GrElem { ring: ring.clone(), c: SmallVec::from_elem(0, ring.d()) }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_u64(ring, 1)
    }

    pub fn from_u64(ring: &Ring, v: u64) -> Self {
        let mut e = Self::zero(ring);
        e.c[0] = v % ring.modulus;
        e
    }

    pub fn from_int(ring: &Ring, v: i64) -> Self {
        let m = ring.modulus as i128;
        Self::from_u64(ring, (v as i128).rem_euclid(m) as u64)
    }

    pub fn from_bigint(ring: &Ring, v: &BigInt) -> Self {
        let m = BigInt::from(ring.modulus);
        Self::from_u64(ring, v.mod_floor(&m).to_u64().unwrap())
    }

    /// Image of a rational whose denominator is prime to `p`.
    pub fn from_rational(ring: &Ring, v: &BigRational) -> Result<Self> {
        let den = Self::from_bigint(ring, v.denom());
        Self::from_bigint(ring, v.numer()).try_div(&den)
    }

    /// Element with the given power-basis coordinates (reduced mod `p^N`).
    pub fn from_coords(ring: &Ring, coords: &[BigInt]) -> Result<Self> {
        if coords.len() != ring.d() {
            return Err(Error::InvalidInput(format!("expected {} coordinates", ring.d())));
        }
        let m = BigInt::from(ring.modulus);
        Ok(GrElem { ring: ring.clone(), c: coords.iter().map(|v| v.mod_floor(&m).to_u64().unwrap()).collect() })
    }

    pub(crate) fn from_raw(ring: &Ring, c: Coords) -> Self {
        debug_assert_eq!(c.len(), ring.d());
        GrElem { ring: ring.clone(), c }
    }

    /// The generator `x` of the power basis.
    pub fn x(ring: &Ring) -> Self {
        if ring.d() == 1 {
            return Self::zero(ring);
        }
        let mut e = Self::zero(ring);
        e.c[1] = 1;
        e
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coords(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 % self.ring.modulus && self.c[1..].iter().all(|&v| v == 0)
    }

    /// Largest `v ≤ N` with `self ∈ p^v·GR`; zero has valuation `N`.
    pub fn valuation(&self) -> u32 {
        let p = self.ring.p;
        let mut v = self.ring.n;
        for &c in &self.c {
            if c == 0 {
                continue;
            }
            let mut k = 0;
            let mut c = c;
            while c % p == 0 {
                c /= p;
                k += 1;
            }
            v = v.min(k);
        }
        v
    }

    pub fn is_unit(&self) -> bool {
        self.c.iter().any(|&c| c % self.ring.p != 0)
    }

    /// `self ≡ other mod p^n`.
    pub fn eq_mod(&self, other: &GrElem, n: u32) -> bool {
        (self.clone() - other.clone()).valuation() >= n.min(self.ring.n)
    }

    /// Reinterpret the coordinates in `target`, which must share `p` and `H mod p`.
    ///
    /// Reducing to lower precision is a ring map; raising precision picks the
    /// least nonnegative lift of each coordinate.
    pub fn change_ring(&self, target: &Ring) -> GrElem {
        debug_assert_eq!(self.ring.p, target.p);
        debug_assert_eq!(self.ring.d(), target.d());
        GrElem { ring: target.clone(), c: self.c.iter().map(|&v| v % target.modulus).collect() }
    }

    /// Image in the residue field.
    pub fn reduce(&self) -> GrElem {
        self.change_ring(&self.ring.residue_field())
    }

    /// Coordinates of `self / p^k`, valid modulo `p^{N-k}`. Requires `valuation ≥ k`.
    pub fn div_p_pow(&self, k: u32) -> GrElem {
        debug_assert!(self.valuation() >= k);
        let pk = self.ring.p.pow(k);
        GrElem { ring: self.ring.clone(), c: self.c.iter().map(|&v| v / pk).collect() }
    }

    pub fn neg_one(ring: &Ring) -> Self {
        Self::from_int(ring, -1)
    }

    pub fn pow(&self, mut e: u64) -> GrElem {
        let mut acc = GrElem::one(&self.ring);
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

    /// Integer power; negative exponents require a unit.
    pub fn pow_i(&self, e: i64) -> Result<GrElem> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn inv(&self) -> Result<GrElem> {
        if !self.is_unit() {
            return Err(Error::NonUnitDivisor);
        }
        let r = &self.ring;
        if r.d() == 1 {
            let v = invmod(self.c[0], r.modulus).ok_or(Error::NonUnitDivisor)?;
            return Ok(GrElem::from_u64(r, v));
        }
        // ā^{p^d - 2} inverts the residue; Newton doubles the correct digits.
        let q = r.p.checked_pow(r.d() as u32).expect("residue field too large");
        let mut y = self.pow(q - 2);
        let two = GrElem::from_u64(r, 2);
        let mut digits = 1;
        while digits < r.n {
            y = &y * &(&two - &(self * &y));
            digits *= 2;
        }
        debug_assert!((self * &y).is_one());
        Ok(y)
    }

    fn check(&self, other: &GrElem) -> Result<()> {
        if same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn try_add(&self, other: &GrElem) -> Result<GrElem> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &GrElem) -> Result<GrElem> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &GrElem) -> Result<GrElem> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn try_div(&self, other: &GrElem) -> Result<GrElem> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }

    /// Multiply by the integer `k`.
    pub fn scale_int(&self, k: i64) -> GrElem {
        self * &GrElem::from_int(&self.ring, k)
    }

    /// Centered representative of a prime-subring element, in `(-p^N/2, p^N/2]`.
    pub fn signed_repr(&self) -> Option<i128> {
        if self.c[1..].iter().any(|&v| v != 0) {
            return None;
        }
        let m = self.ring.modulus as i128;
        let v = self.c[0] as i128;
        Some(if v > m / 2 { v - m } else { v })
    }
}

fn assert_same(a: &GrElem, b: &GrElem) {
    assert!(same(&a.ring, &b.ring), "operands belong to different coefficient rings");
}

impl Add for &GrElem {
    type Output = GrElem;
    fn add(self, rhs: &GrElem) -> GrElem {
        assert_same(self, rhs);
        let m = self.ring.modulus;
        GrElem { ring: self.ring.clone(), c: self.c.iter().zip(&rhs.c).map(|(&a, &b)| addmod(a, b, m)).collect() }
    }
}

impl Sub for &GrElem {
    type Output = GrElem;
    fn sub(self, rhs: &GrElem) -> GrElem {
        assert_same(self, rhs);
        let m = self.ring.modulus;
        GrElem { ring: self.ring.clone(), c: self.c.iter().zip(&rhs.c).map(|(&a, &b)| submod(a, b, m)).collect() }
    }
}

impl Neg for &GrElem {
    type Output = GrElem;
    fn neg(self) -> GrElem {
        let m = self.ring.modulus;
        GrElem { ring: self.ring.clone(), c: self.c.iter().map(|&a| submod(0, a, m)).collect() }
    }
}

pub(crate) fn mul_coords(r: &RingDesc, a: &[u64], b: &[u64]) -> Coords {
    let m = r.modulus;
    let d = r.d();
    if d == 1 {
        return smallvec::smallvec![mulmod(a[0], b[0], m)];
    }
    let mut t: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * d - 1);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            t[i + j] = addmod(t[i + j], mulmod(x, y, m), m);
        }
    }
    // x^d = -(h_0 + ... + h_{d-1} x^{d-1})
    for k in (d..2 * d - 1).rev() {
        let c = t[k];
        if c == 0 {
            continue;
        }
        for i in 0..d {
            t[k - d + i] = submod(t[k - d + i], mulmod(c, r.h[i], m), m);
        }
    }
    t.truncate(d);
    t.into_iter().collect()
}

impl Mul for &GrElem {
    type Output = GrElem;
    fn mul(self, rhs: &GrElem) -> GrElem {
        assert_same(self, rhs);
        GrElem { ring: self.ring.clone(), c: mul_coords(&self.ring, &self.c, &rhs.c) }
    }
}

impl Div for &GrElem {
    type Output = GrElem;
    fn div(self, rhs: &GrElem) -> GrElem {
        self.try_div(rhs).expect("division by a non-unit")
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr for GrElem {
            type Output = GrElem;
            fn $f(self, rhs: GrElem) -> GrElem {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&GrElem> for GrElem {
            type Output = GrElem;
            fn $f(self, rhs: &GrElem) -> GrElem {
                (&self).$f(rhs)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl Neg for GrElem {
    type Output = GrElem;
    fn neg(self) -> GrElem {
        -&self
    }
}

impl Scalar for GrElem {
    fn zero_like(&self) -> Self {
        GrElem::zero(&self.ring)
    }

    fn one_like(&self) -> Self {
        GrElem::one(&self.ring)
    }

    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn int_like(&self, n: i64) -> Self {
        GrElem::from_int(&self.ring, n)
    }
}

impl FieldScalar for GrElem {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Polynomial over `Z/p^N` from exact integer coefficients.
pub fn int_poly_to_gr(ring: &Ring, coeffs: &[BigInt]) -> Poly<GrElem> {
    Poly::new(coeffs.iter().map(|c| GrElem::from_bigint(ring, c)).collect(), GrElem::zero(ring))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, n: u32) -> Ring {
        RingDesc::prime(p, n).unwrap()
    }

    #[test]
    fn modular_inverse_mod_25() {
        let r = z(5, 2);
        let seven = GrElem::from_u64(&r, 7);
        assert_eq!(GrElem::one(&r).try_div(&seven).unwrap(), GrElem::from_u64(&r, 18));
        assert_eq!((&seven * &GrElem::from_u64(&r, 18)), GrElem::one(&r));
    }

    #[test]
    fn maximal_ideal_is_nilpotent() {
        let r = z(5, 2);
        let five = GrElem::from_u64(&r, 5);
        assert!((&five * &five).is_zero());
        assert_eq!(GrElem::one(&r).try_div(&five), Err(Error::NonUnitDivisor));
    }

    #[test]
    fn reduction_by_modulus() {
        let r = RingDesc::new(2, 3, &[1.into(), 1.into(), 1.into()]).unwrap();
        let x = GrElem::x(&r);
        assert_eq!((&x * &x).coords(), &[7, 7]);
    }

    #[test]
    fn valuations() {
        let r = z(5, 3);
        assert_eq!(GrElem::from_u64(&r, 50).valuation(), 2);
        assert_eq!(GrElem::zero(&r).valuation(), 3);
        assert_eq!(GrElem::from_u64(&r, 7).valuation(), 0);
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = GrElem::one(&z(5, 2));
        let b = GrElem::one(&z(5, 3));
        assert_eq!(a.try_add(&b), Err(Error::MixedRings));
        // structurally equal descriptors are the same ring
        assert!(a.try_mul(&GrElem::one(&z(5, 2))).is_ok());
    }

    #[test]
    fn descriptor_validation() {
        assert!(RingDesc::prime(4, 2).is_err());
        assert!(RingDesc::prime(5, 0).is_err());
        assert!(RingDesc::new(5, 2, &[1.into(), 1.into()]).is_err());
        assert!(RingDesc::new(5, 2, &[(-1).into(), 0.into(), 1.into()]).is_err());
        assert!(RingDesc::new(5, 2, &[2.into(), 0.into(), 1.into()]).is_ok());
        assert!(RingDesc::prime(2, 70).is_err());
    }

    #[test]
    fn inverse_in_extension() {
        let r = RingDesc::unramified(3, 4, 3).unwrap();
        let a = &(&GrElem::x(&r) * &GrElem::x(&r)) + &GrElem::from_u64(&r, 5);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }
}
