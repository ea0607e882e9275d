#![allow(dead_code)]

use katores_core::laurent::LaurentUnit;
use katores_core::surface::{Atom, FactoredFunction};
use katores_core::{GrElem, IntPoly, Poly, RatPoly, Ring, RingDesc};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

pub const LEVELS: [(u64, u32); 9] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3)];

pub fn ring(p: u64, n: u32) -> Ring {
    RingDesc::prime(p, n).unwrap()
}

/// Random exact unit of `R((T))` with exponents in `[-span, span]`.
///
/// Coefficients below the chosen winding number are multiples of `p`, so negative
/// Witt parameters occur.
pub fn random_unit<R: Rng>(rng: &mut R, ring: &Ring, span: i64) -> LaurentUnit {
    let p = ring.p();
    let m = ring.modulus();
    let w = rng.gen_range(-span + 1..=span - 1);
    let mut terms = Vec::new();
    for k in -span..=span {
        let raw = rng.gen_range(0..m);
        let v = if k < w {
            (raw * p) % m
        } else if k == w {
            let mut u = raw;
            while u % p == 0 {
                u = rng.gen_range(0..m);
            }
            u
        } else if rng.gen_bool(0.5) {
            raw
        } else {
            0
        };
        terms.push((k, GrElem::from_u64(ring, v)));
    }
    LaurentUnit::make(ring, 0, &terms, None).unwrap()
}

/// Random unit `f` such that `1 - f` is also a unit.
pub fn random_steinberg_unit<R: Rng>(rng: &mut R, ring: &Ring, span: i64) -> LaurentUnit {
    loop {
        let f = random_unit(rng, ring, span);
        if f.one_minus().is_ok() {
            return f;
        }
    }
}

/// Random unit with a `p`-power prefactor.
pub fn random_prefactored<R: Rng>(rng: &mut R, ring: &Ring, span: i64) -> LaurentUnit {
    let f = random_unit(rng, ring, span);
    LaurentUnit::new(rng.gen_range(-2..=2), f.series().clone()).unwrap()
}

/// Random parameter `t` with winding number one.
pub fn random_parameter<R: Rng>(rng: &mut R, ring: &Ring) -> LaurentUnit {
    let p = ring.p();
    let m = ring.modulus();
    let mut unit = rng.gen_range(1..m);
    while unit % p == 0 {
        unit = rng.gen_range(1..m);
    }
    let terms = vec![
        (-1, GrElem::from_u64(ring, (rng.gen_range(0..m) * p) % m)),
        (0, GrElem::from_u64(ring, (rng.gen_range(0..m) * p) % m)),
        (1, GrElem::from_u64(ring, unit)),
        (2, GrElem::from_u64(ring, rng.gen_range(0..m))),
        (3, GrElem::from_u64(ring, rng.gen_range(0..m))),
    ];
    LaurentUnit::make(ring, 0, &terms, None).unwrap()
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn rpoly(c: &[i64]) -> RatPoly {
    Poly::from_coeffs(c.iter().map(|&x| rat(x)).collect())
}

pub fn ipoly(c: &[i64]) -> IntPoly {
    Poly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
}

/// Coefficients in `[-bound, bound]` with a nonzero leading one.
pub fn random_coeffs<R: Rng>(rng: &mut R, deg: usize, bound: i64) -> Vec<i64> {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    while c[deg] == 0 {
        c[deg] = rng.gen_range(-bound..=bound);
    }
    c
}

pub fn random_coeffs_in<R: Rng>(rng: &mut R, degs: std::ops::RangeInclusive<usize>, bound: i64) -> Vec<i64> {
    let deg = rng.gen_range(degs);
    random_coeffs(rng, deg, bound)
}

fn random_exp<R: Rng>(rng: &mut R) -> i64 {
    *[-2, -1, -1, 1, 1, 2].get(rng.gen_range(0..6)).unwrap()
}

/// Product of a few atoms of degree at most `max_deg`, with `T`-powers and constants mixed in.
pub fn random_function<R: Rng>(rng: &mut R, max_deg: usize, atoms: usize) -> FactoredFunction {
    let mut out = Vec::new();
    for _ in 0..atoms {
        let atom = match rng.gen_range(0..6) {
            0 => Atom::Monomial,
            1 => Atom::constant(BigRational::new(rng.gen_range(1..=30).into(), rng.gen_range(1..=6).into())).unwrap(),
            _ => {
                let deg = rng.gen_range(1..=max_deg);
                Atom::poly(rpoly(&random_coeffs(rng, deg, 12))).unwrap()
            }
        };
        out.push((atom, random_exp(rng)));
    }
    FactoredFunction::new(out)
}

/// Like [`random_function`], but every atom has content prime to `p` and a nonzero reduction.
pub fn random_unit_content_function<R: Rng>(rng: &mut R, p: u64, max_deg: usize, atoms: usize) -> FactoredFunction {
    let pi = p as i64;
    let mut out = Vec::new();
    for _ in 0..atoms {
        let atom = match rng.gen_range(0..6) {
            0 => Atom::Monomial,
            1 => {
                let mut c = rng.gen_range(1..=30);
                while c % pi == 0 {
                    c = rng.gen_range(1..=30);
                }
                Atom::constant(rat(c)).unwrap()
            }
            _ => loop {
                let deg = rng.gen_range(1..=max_deg);
                let c = random_coeffs(rng, deg, 12);
                if c.iter().any(|x| x % pi != 0) {
                    break Atom::poly(rpoly(&c)).unwrap();
                }
            },
        };
        out.push((atom, random_exp(rng)));
    }
    FactoredFunction::new(out)
}
