//! Weil reciprocity on `P¹` over `Q` and over prime fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::basis::{coprime_basis, express};
use super::function::{int_to_rat, pow_rat, primitive_part, rat_poly_to_gr};
use super::report::{AuditKind, AuditReport, LocalValue, Place, PlaceEntry, PlaceKind};
use super::FactoredFunction;
use crate::arith::{factor_integer, is_prime_u64};
use crate::coeff_ring::finite_field::{factor, poly_order};
use crate::coeff_ring::{GrElem, RingDesc};
use crate::error::{Error, Result};
use crate::weierstrass::{resultant, Irreducibility};
use crate::{GrPoly, IntPoly, Poly, RatPoly};

/// Base field of the curve `P¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Rational,
    /// The prime field `F_q`.
    Prime(u64),
}

/// `∏_z N_{k(z)/base} {f, g}_z` over the support of `f` and `g` plus `∞`; exactly `1`.
pub fn verify_global_weil(f: &FactoredFunction, g: &FactoredFunction, base: Base) -> Result<AuditReport> {
    match base {
        Base::Rational => weil_over_q(f, g),
        Base::Prime(q) => weil_over_fq(f, g, q),
    }
}

fn sign_pow<T: std::ops::Neg<Output = T>>(x: T, odd: bool) -> T {
    if odd {
        -x
    } else {
        x
    }
}

fn finite_place(m: &[BigRational], label: String) -> Place {
    Place { kind: PlaceKind::Point, degree: m.len() - 1, key: m.iter().rev().cloned().collect(), label }
}

fn infinity_place() -> Place {
    Place { kind: PlaceKind::Infinity, degree: 1, key: Vec::new(), label: "∞".into() }
}

fn weil_over_q(f: &FactoredFunction, g: &FactoredFunction) -> Result<AuditReport> {
    let polys: Vec<RatPoly> = f.polys().into_iter().chain(g.polys()).map(|(q, _)| q).collect();
    let basis = split_rational_roots(&coprime_basis(&polys));
    let ef = express(f, &basis);
    let eg = express(g, &basis);
    let mut entries = Vec::new();
    for (k, m) in basis.iter().enumerate() {
        let (a, b) = (ef.exps[k], eg.exps[k]);
        if a == 0 && b == 0 {
            continue;
        }
        let deg = m.deg();
        let side = |c: &BigRational, e: &[i64]| -> BigRational {
            let mut acc = pow_rat(c, deg);
            for (j, bj) in basis.iter().enumerate() {
                if j != k && e[j] != 0 {
                    acc *= pow_rat(&resultant(m, bj), e[j]);
                }
            }
            acc
        };
        let r = pow_rat(&side(&ef.constant, &ef.exps), b) / pow_rat(&side(&eg.constant, &eg.exps), a);
        let r = sign_pow(r, (a * b * deg) % 2 != 0);
        let note = (deg >= 4).then(|| format!("irreducibility over Q {}", Irreducibility::Asserted));
        entries.push(PlaceEntry {
            place: finite_place(m.coeffs(), format!("({m})")),
            value: LocalValue::Rational(r),
            note,
        });
    }
    let degree = |e: &[i64]| -> i64 { basis.iter().zip(e).map(|(m, k)| m.deg() * k).sum() };
    let (a, b) = (-degree(&ef.exps), -degree(&eg.exps));
    let r = pow_rat(&ef.constant, b) / pow_rat(&eg.constant, a);
    entries.push(PlaceEntry {
        place: infinity_place(),
        value: LocalValue::Rational(sign_pow(r, (a * b) % 2 != 0)),
        note: None,
    });
    AuditReport::assemble(AuditKind::Global, None, entries, LocalValue::Rational(BigRational::one()), None)
}

/// Split every linear factor over `Q` off the basis elements; what remains of degree
/// two or three is then irreducible.
fn split_rational_roots(basis: &[RatPoly]) -> Vec<RatPoly> {
    let mut out = Vec::new();
    for b in basis {
        let mut rest = b.clone();
        let (_, prim) = primitive_part(b);
        for r in rational_roots(&prim) {
            let lin = Poly::from_coeffs(vec![-r, BigRational::one()]);
            rest = rest.divrem(&lin).expect("monic divisor").0;
            out.push(lin);
        }
        if !rest.is_constant() {
            out.push(rest);
        }
    }
    out.sort_by(super::basis::poly_order);
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut ds = vec![BigInt::one()];
    for (q, e) in factor_integer(n) {
        let q = BigInt::from(q);
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        for d in &ds {
            let mut x = d.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &q;
            }
        }
        ds = next;
    }
    ds
}

/// Distinct rational roots of a squarefree integer polynomial.
pub(crate) fn rational_roots(f: &IntPoly) -> Vec<BigRational> {
    let mut roots = Vec::new();
    let lo = f.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    if lo > 0 {
        roots.push(BigRational::zero());
    }
    let a0 = f.coeff(lo);
    let Some(lc) = f.lc() else {
        return roots;
    };
    if f.deg() as usize == lo {
        return roots;
    }
    let fq = int_to_rat(f);
    for num in divisors(&a0.abs()) {
        for den in divisors(&lc.abs()) {
            for s in [1, -1] {
                let r = BigRational::new(&num * s, den.clone());
                if fq.eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn weil_over_fq(f: &FactoredFunction, g: &FactoredFunction, q: u64) -> Result<AuditReport> {
    if !is_prime_u64(q) {
        return Err(Error::InvalidRing(format!("F_{q} is not a prime field")));
    }
    let field = RingDesc::prime(q, 1)?;
    let reduce = |h: &FactoredFunction| -> Result<Vec<(GrPoly, i64)>> {
        h.polys()
            .into_iter()
            .map(|(poly, e)| {
                let r = rat_poly_to_gr(&field, &poly)?;
                if r.is_zero() {
                    return Err(Error::BadReduction(format!("{poly} vanishes mod {q}")));
                }
                Ok((r, e))
            })
            .collect()
    };
    let fa = reduce(f)?;
    let ga = reduce(g)?;
    let mut places: Vec<GrPoly> =
        fa.iter().chain(&ga).flat_map(|(h, _)| factor(h).1.into_iter().map(|t| t.0)).collect();
    places.sort_by(poly_order);
    places.dedup();
    let one = GrElem::one(&field);
    let mut entries = Vec::new();
    for pi in &places {
        let deg = pi.deg();
        // v_π and N(h / π^v) for each atom
        let split = |atoms: &[(GrPoly, i64)]| -> (i64, GrElem) {
            let mut v = 0;
            let mut norm = one.clone();
            for (h, e) in atoms {
                let mut rest = h.clone();
                loop {
                    let (quo, rem) = rest.divrem(pi).expect("monic");
                    if !rem.is_zero() {
                        break;
                    }
                    rest = quo;
                    v += e;
                }
                norm = &norm * &resultant(pi, &rest).pow_i(*e).expect("coprime to π");
            }
            (v, norm)
        };
        let (a, nf) = split(&fa);
        let (b, ng) = split(&ga);
        let r = &nf.pow_i(b)? * &ng.pow_i(-a)?;
        let r = sign_pow(r, (a * b * deg) % 2 != 0);
        let key: Vec<BigRational> =
            pi.coeffs().iter().map(|c| BigRational::from_integer(c.coords()[0].into())).collect();
        let label =
            format!("({})", Poly::<BigInt>::from_coeffs(pi.coeffs().iter().map(|c| c.coords()[0].into()).collect()));
        entries.push(PlaceEntry { place: finite_place(&key, label), value: LocalValue::Residue(r), note: None });
    }
    let at_inf = |atoms: &[(GrPoly, i64)]| -> Result<(i64, GrElem)> {
        let mut deg = 0;
        let mut lc = one.clone();
        for (h, e) in atoms {
            deg += h.deg() * e;
            lc = &lc * &h.lc().expect("nonzero").pow_i(*e)?;
        }
        Ok((-deg, lc))
    };
    let (a, lf) = at_inf(&fa)?;
    let (b, lg) = at_inf(&ga)?;
    let r = sign_pow(&lf.pow_i(b)? * &lg.pow_i(-a)?, (a * b) % 2 != 0);
    entries.push(PlaceEntry { place: infinity_place(), value: LocalValue::Residue(r), note: None });
    AuditReport::assemble(AuditKind::Global, Some(q), entries, LocalValue::Residue(one), None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(c: &[i64]) -> RatPoly {
        Poly::from_coeffs(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    fn rat(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn fixture_over_q() {
        let f = FactoredFunction::t_power(1);
        let g = FactoredFunction::from_poly(rp(&[-1, 1])).unwrap();
        let rep = verify_global_weil(&f, &g, Base::Rational).unwrap();
        assert!(rep.pass, "{rep}");
        let vals: Vec<String> = rep.entries.iter().map(|e| format!("{}={}", e.place.label, e.value)).collect();
        assert_eq!(vals, vec!["(T)=-1", "(T - 1)=1", "∞=-1"]);
    }

    #[test]
    fn self_pairing_over_f5() {
        let f = FactoredFunction::t_power(1);
        let rep = verify_global_weil(&f, &f, Base::Prime(5)).unwrap();
        assert!(rep.pass, "{rep}");
        assert!(rep.entries.iter().all(|e| !e.value.is_one()));
    }

    #[test]
    fn constant_against_anything() {
        let f = FactoredFunction::constant(rat(6)).unwrap();
        let g = FactoredFunction::from_poly(rp(&[3, 0, 2, 1])).unwrap().mul(&FactoredFunction::t_power(-2));
        let rep = verify_global_weil(&f, &g, Base::Rational).unwrap();
        assert!(rep.pass, "{rep}");
        assert!(rep.abs_table.iter().any(|r| r.place == "2"));
        let rep = verify_global_weil(&f, &g, Base::Prime(7)).unwrap();
        assert!(rep.pass, "{rep}");
    }

    #[test]
    fn rational_root_splitting() {
        // 2T^3 - T^2 - 2T + 1 = (2T - 1)(T - 1)(T + 1)
        let f: IntPoly = Poly::from_coeffs(vec![1.into(), (-2).into(), (-1).into(), 2.into()]);
        let roots = rational_roots(&f);
        assert_eq!(roots, vec![rat(-1), BigRational::new(1.into(), 2.into()), rat(1)]);
    }
}
