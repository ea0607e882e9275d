//! Polynomials over the finite field `F_q = GR(p, d)`: irreducibility and factorisation.
//!
//! All inputs must live over a ring with `N = 1`.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GrElem, Ring};
use crate::poly::Poly;

type FPoly = Poly<GrElem>;

fn field_order(ring: &Ring) -> BigUint {
    debug_assert_eq!(ring.n(), 1);
    BigUint::from(ring.p()).pow(ring.d() as u32)
}

fn x_poly(ring: &Ring) -> FPoly {
    Poly::x(&GrElem::one(ring))
}

fn ring_of(f: &FPoly) -> Ring {
    f.zero_elem().ring().clone()
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &FPoly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.monic();
    let ring = ring_of(&f);
    let q = field_order(&ring);
    let x = x_poly(&ring);
    // frob[k] = x^{q^k} mod f
    let mut frob = vec![x.divrem(&f).unwrap().1];
    for k in 1..=n {
        let next = frob[k - 1].pow_mod(&q, &f);
        frob.push(next);
    }
    if frob[n] != frob[0] {
        return false;
    }
    prime_divisors(n).into_iter().all(|r| (&frob[n / r] - &x).gcd(&f).is_one())
}

/// Lexicographically first monic irreducible of degree `d` (coefficients read as base-`q` digits, ascending).
pub fn first_irreducible(ring: &Ring, d: usize) -> FPoly {
    monic_polys(ring, d).find(is_irreducible).expect("irreducible polynomials exist in every degree")
}

/// All monic polynomials of degree `d`, in the order used by [`first_irreducible`].
pub fn monic_polys(ring: &Ring, d: usize) -> impl Iterator<Item = FPoly> + '_ {
    assert_eq!(ring.d(), 1, "enumeration is over prime fields");
    let p = ring.p();
    let total = p.checked_pow(d as u32).expect("enumeration too large");
    (0..total).map(move |mut k| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(GrElem::from_u64(ring, k % p));
            k /= p;
        }
        coeffs.push(GrElem::one(ring));
        Poly::new(coeffs, GrElem::zero(ring))
    })
}

/// Monic irreducibles of degree `d` over a prime field.
pub fn monic_irreducibles(ring: &Ring, d: usize) -> Vec<FPoly> {
    monic_polys(ring, d).filter(is_irreducible).collect()
}

fn pth_root_elem(a: &GrElem) -> GrElem {
    // a^{1/p} = a^{q/p} in F_q
    let ring = a.ring();
    a.pow(ring.p().pow(ring.d() as u32 - 1))
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, m_i)` with `f = ∏ g_i^{m_i}`.
pub fn squarefree_decomposition(f: &FPoly) -> Vec<(FPoly, u32)> {
    let ring = ring_of(f);
    let p = ring.p() as usize;
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let f = f.monic();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).unwrap();
        if !fac.is_constant() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w).unwrap();
        i += 1;
    }
    if !c.is_constant() {
        let root: Vec<GrElem> = c.coeffs().iter().step_by(p).map(pth_root_elem).collect();
        let root = Poly::new(root, GrElem::zero(&ring));
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorisation of a squarefree monic polynomial.
pub fn distinct_degree(f: &FPoly) -> Vec<(FPoly, usize)> {
    let ring = ring_of(f);
    let q = field_order(&ring);
    let x = x_poly(&ring);
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.deg() >= 2 * i as i64 {
        h = h.pow_mod(&q, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g).unwrap();
            h = h.divrem(&rest).unwrap().1;
            out.push((g, i));
        }
        i += 1;
    }
    if !rest.is_constant() {
        let d = rest.deg() as usize;
        out.push((rest, d));
    }
    out
}

fn random_poly(ring: &Ring, below: usize, rng: &mut ChaCha8Rng) -> FPoly {
    let p = ring.p();
    let coeffs = (0..below)
        .map(|_| {
            let c: Vec<num_bigint::BigInt> = (0..ring.d()).map(|_| rng.gen_range(0..p).into()).collect();
            GrElem::from_coords(ring, &c).unwrap()
        })
        .collect();
    Poly::new(coeffs, GrElem::zero(ring))
}

/// Cantor-Zassenhaus splitting of a product of distinct monic irreducibles of degree `d`.
pub fn equal_degree(f: &FPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FPoly> {
    let n = f.deg() as usize;
    if n == d {
        return vec![f.monic()];
    }
    let ring = ring_of(f);
    let q = field_order(&ring);
    let one = Poly::constant(GrElem::one(&ring));
    loop {
        let a = random_poly(&ring, n, rng);
        if a.is_constant() {
            continue;
        }
        let mut g = a.gcd(f);
        if g.is_one() {
            let b = if ring.p() == 2 {
                // absolute trace to F_2
                let e = ring.d() * d;
                let mut acc = a.divrem(f).unwrap().1;
                let mut t = acc.clone();
                for _ in 1..e {
                    t = t.mul_mod(&t, f);
                    acc = &acc + &t;
                }
                acc
            } else {
                let e = (q.pow(d as u32) - BigUint::one()) >> 1;
                &a.pow_mod(&e, f) - &one
            };
            g = b.gcd(f);
        }
        if !g.is_one() && g.deg() < f.deg() {
            let h = f.exact_div(&g).unwrap();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Full factorisation: leading coefficient and sorted monic irreducible factors with multiplicity.
///
/// Factors are ordered by degree, then by coefficient vectors from the top down.
pub fn factor(f: &FPoly) -> (GrElem, Vec<(FPoly, u32)>) {
    let lc = f.lc().cloned().expect("cannot factor the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| poly_order(&a.0, &b.0));
    (lc, out)
}

/// Canonical order on polynomials: degree first, then coefficients from the top down.
pub fn poly_order(a: &FPoly, b: &FPoly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        let ka = a.coeffs().iter().rev().map(|c| c.coords().to_vec());
        let kb = b.coeffs().iter().rev().map(|c| c.coords().to_vec());
        ka.cmp(kb)
    })
}

/// Roots of a polynomial in the field, sorted.
pub fn roots(f: &FPoly) -> Vec<GrElem> {
    let (_, fs) = factor(f);
    let mut out = fs.into_iter().filter(|(g, _)| g.deg() == 1).map(|(g, _)| -g.coeff(0)).collect::<Vec<_>>();
    out.sort_by(|a, b| a.coords().cmp(b.coords()));
    out
}
