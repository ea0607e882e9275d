//! Gcd-free bases over `Q`.
//!
//! Rewriting every atom over a squarefree, pairwise coprime basis makes valuations at
//! each basis element exact integers, which is all the tame-symbol formula needs.
//! A basis element that is reducible over the completion still gives the right
//! product: the cross terms between its factors cancel.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::One;

use super::function::{pow_rat, FactoredFunction};
use crate::RatPoly;

/// Monic, squarefree, pairwise coprime, nonconstant polynomials whose products give
/// every input up to a constant, in canonical order.
pub(crate) fn coprime_basis(polys: &[RatPoly]) -> Vec<RatPoly> {
    let mut work: Vec<RatPoly> = polys.iter().filter(|f| !f.is_constant()).map(|f| f.monic()).collect();
    let mut basis: Vec<RatPoly> = Vec::new();
    'next: while let Some(a) = work.pop() {
        if a.is_constant() {
            continue;
        }
        let sq = a.gcd(&a.derivative());
        if !sq.is_constant() {
            work.push(exact_quotient(&a, &sq));
            work.push(sq);
            continue;
        }
        for i in 0..basis.len() {
            let g = a.gcd(&basis[i]);
            if !g.is_constant() {
                let b = basis.swap_remove(i);
                work.push(exact_quotient(&a, &g));
                work.push(exact_quotient(&b, &g));
                work.push(g);
                continue 'next;
            }
        }
        basis.push(a);
    }
    basis.sort_by(poly_order);
    basis
}

fn exact_quotient(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (q, r) = a.divrem(b).expect("nonzero divisor");
    debug_assert!(r.is_zero());
    q.monic()
}

/// Degree first, then coefficients from the top down.
pub(crate) fn poly_order(a: &RatPoly, b: &RatPoly) -> Ordering {
    a.deg().cmp(&b.deg()).then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// `f = constant · ∏ basis[k]^{exps[k]}`.
#[derive(Clone, Debug)]
pub(crate) struct Expressed {
    pub constant: BigRational,
    pub exps: Vec<i64>,
}

pub(crate) fn express(f: &FactoredFunction, basis: &[RatPoly]) -> Expressed {
    let mut constant = BigRational::one();
    let mut exps = vec![0i64; basis.len()];
    for (poly, e) in f.polys() {
        let lc = poly.lc().expect("nonzero atom").clone();
        constant *= pow_rat(&lc, e);
        let mut m = poly.monic();
        for (k, b) in basis.iter().enumerate() {
            loop {
                if m.deg() < b.deg() {
                    break;
                }
                let (q, r) = m.divrem(b).expect("nonzero divisor");
                if !r.is_zero() {
                    break;
                }
                m = q;
                exps[k] += e;
            }
        }
        debug_assert!(m.is_one(), "basis does not cover {m}");
    }
    Expressed { constant, exps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;

    fn rp(c: &[i64]) -> RatPoly {
        Poly::from_coeffs(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn refines_shared_factors() {
        // (T-1)(T+2), (T-1)^2·T, T+2
        let a = &rp(&[-1, 1]) * &rp(&[2, 1]);
        let b = &(&rp(&[-1, 1]) * &rp(&[-1, 1])) * &rp(&[0, 1]);
        let basis = coprime_basis(&[a.clone(), b.clone(), rp(&[2, 1])]);
        assert_eq!(basis, vec![rp(&[-1, 1]), rp(&[0, 1]), rp(&[2, 1])]);
        let f = FactoredFunction::from_poly(b.scale(&BigRational::from_integer(3.into())))
            .unwrap()
            .mul(&FactoredFunction::from_poly(a).unwrap().inv());
        let ex = express(&f, &basis);
        assert_eq!(ex.constant, BigRational::from_integer(3.into()));
        assert_eq!(ex.exps, vec![1, 1, -1]);
    }
}
