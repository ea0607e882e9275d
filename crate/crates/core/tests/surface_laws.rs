mod common;

use common::*;
use katores_core::laurent::{expand_at, expand_at_point};
use katores_core::surface::{
    off_support_symbols, verify_global_weil, verify_point_reciprocity, verify_vertical_reciprocity, Atom, AuditReport,
    Base, ClosedPoint, FactoredFunction, LocalValue, PlaceKind,
};
use katores_core::symbols::{kato_symbol, SymbolValue};
use katores_core::weierstrass::{residue_via_primes, tame_at_prime, DistinguishedPrime};
use katores_core::{GrElem, RingDesc};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn padic(v: &LocalValue) -> &SymbolValue {
    match v {
        LocalValue::PAdic(s) => s,
        other => panic!("expected a p-adic value, got {other}"),
    }
}

/// A nonzero rational as an element of `Q_p^×` modulo `p^n`.
fn embed(r: &BigRational, p: u64, n: u32) -> SymbolValue {
    let ring = RingDesc::prime(p, n).unwrap();
    let pb = BigInt::from(p);
    let mut x = r.clone();
    let mut v = 0i64;
    while (x.numer() % &pb).is_zero() {
        x /= BigRational::from_integer(pb.clone());
        v += 1;
    }
    while (x.denom() % &pb).is_zero() {
        x *= BigRational::from_integer(pb.clone());
        v -= 1;
    }
    SymbolValue::new(v, GrElem::from_rational(&ring, &x).unwrap(), n)
}

#[test]
fn kato_at_p_times_residues_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c1e);
    for trial in 0..60 {
        let (p, n) = LEVELS[trial % LEVELS.len()];
        let f = random_function(&mut rng, 2, 3);
        let g = random_function(&mut rng, 2, 3);
        let ring = ring(p, n);
        let hi = 40 * n as i64;
        let k = kato_symbol(&expand_at(&f, &ring, hi).unwrap(), &expand_at(&g, &ring, hi).unwrap()).unwrap();
        let r = residue_via_primes(&f, &g, p, n).unwrap();
        let prod = k.mul(&r).unwrap();
        assert_eq!(prod.prec, n, "f = {f}, g = {g}, p = {p}");
        assert!(prod.is_one(), "f = {f}, g = {g}, p = {p}: {k} · {r}");
    }
}

#[test]
fn hand_fixture_places() {
    let f = FactoredFunction::t_power(1);
    let g = FactoredFunction::new(vec![(Atom::Distinguished(DistinguishedPrime::new(ipoly(&[-5, 1]), 5).unwrap()), 1)]);
    let rep = verify_point_reciprocity(&f, &g, 5, 3).unwrap();
    let r = ring(5, 3);
    let expect = [("(p)", 0, -1), ("(T)", -1, -1), ("(T - 5)", 1, 1)];
    for (label, v, u) in expect {
        let s = padic(&rep.entry(label).unwrap().value);
        assert_eq!((s.p_val, &s.unit), (v, &GrElem::from_int(&r, u)), "{label}");
    }
}

#[test]
fn horizontal_symbol_matches_global_tame_symbol() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc055);
    for trial in 0..60 {
        let (p, n) = LEVELS[trial % LEVELS.len()];
        let r0 = p as i64 * rng.gen_range(-3..=3);
        let line = rpoly(&[-r0, 1]);
        let f = random_function(&mut rng, 2, 2)
            .mul(&FactoredFunction::new(vec![(Atom::poly(line.clone()).unwrap(), rng.gen_range(-2..=2))]));
        let g = random_function(&mut rng, 2, 2)
            .mul(&FactoredFunction::new(vec![(Atom::poly(line).unwrap(), rng.gen_range(1..=2))]));
        let pi = DistinguishedPrime::new(ipoly(&[-r0, 1]), p).unwrap();
        let local = tame_at_prime(&f, &g, &pi, n).unwrap();
        let global = verify_global_weil(&f, &g, Base::Rational).unwrap();
        let key = vec![BigRational::one(), rat(-r0)];
        let entry = global.entries.iter().find(|e| e.place.kind == PlaceKind::Point && e.place.key == key);
        let expected = match entry {
            Some(e) => match &e.value {
                LocalValue::Rational(q) => embed(q, p, n),
                other => panic!("{other}"),
            },
            None => SymbolValue::one(&ring(p, n)),
        };
        assert!(local.agrees_with(&expected) && local.prec == n, "f = {f}, g = {g}, z = {r0}: {local} vs {expected}");
    }
}

/// Same places, and values that agree to the certified precision.
fn same_symbols(a: &AuditReport, b: &AuditReport) -> bool {
    if a.entries.len() != b.entries.len() {
        return false;
    }
    let mut used = vec![false; b.entries.len()];
    a.entries.iter().all(|ea| {
        let hit = b.entries.iter().enumerate().position(|(j, eb)| {
            !used[j]
                && ea.place.kind == eb.place.kind
                && ea.place.degree == eb.place.degree
                && padic(&ea.value).agrees_with(padic(&eb.value))
        });
        hit.map(|j| used[j] = true).is_some()
    })
}

#[test]
fn refactoring_does_not_change_symbols() {
    // (T - 5)(1 + T) as one polynomial, and as a distinguished prime times a unit
    let merged = FactoredFunction::from_poly(rpoly(&[-5, -4, 1])).unwrap();
    let split = FactoredFunction::new(vec![
        (Atom::Distinguished(DistinguishedPrime::new(ipoly(&[-5, 1]), 5).unwrap()), 1),
        (Atom::unit_poly(ipoly(&[1, 1]), 5).unwrap(), 1),
    ]);
    let g = FactoredFunction::t_power(1).mul(&FactoredFunction::from_poly(rpoly(&[2, 1])).unwrap());
    let a = verify_point_reciprocity(&merged, &g, 5, 3).unwrap();
    let b = verify_point_reciprocity(&split, &g, 5, 3).unwrap();
    assert!(a.pass && b.pass);
    assert!(padic(&a.entry("(p)").unwrap().value).agrees_with(padic(&b.entry("(p)").unwrap().value)));
    assert!(same_symbols(&a, &b), "{a}\n{b}");

    let mut rng = ChaCha8Rng::seed_from_u64(0x4efa);
    for trial in 0..30 {
        let (p, n) = LEVELS[trial % LEVELS.len()];
        let f = random_function(&mut rng, 2, 3);
        let g = random_function(&mut rng, 2, 3);
        // pull constants out of every polynomial atom, split exponents and add a cancelling pair
        let mut atoms = Vec::new();
        for (atom, e) in &f.atoms {
            match atom {
                Atom::Poly(q) => {
                    let c = q.coeffs().iter().rev().find(|c| !c.is_zero()).unwrap().clone();
                    atoms.push((Atom::constant(c.clone()).unwrap(), *e));
                    let monic = q.scale(&c.recip());
                    atoms.push((Atom::poly(monic.clone()).unwrap(), e - 1));
                    atoms.push((Atom::poly(monic).unwrap(), 1));
                }
                other => atoms.push((other.clone(), *e)),
            }
        }
        let extra = Atom::poly(rpoly(&[p as i64, 3, 1])).unwrap();
        atoms.push((extra.clone(), 1));
        atoms.push((extra, -1));
        let f2 = FactoredFunction::new(atoms);
        let a = verify_point_reciprocity(&f, &g, p, n).unwrap();
        let b = verify_point_reciprocity(&f2, &g, p, n).unwrap();
        let drop_trivial = |r: &AuditReport| {
            let mut r = r.clone();
            r.entries.retain(|e| !e.value.is_exactly_one());
            r
        };
        assert!(same_symbols(&drop_trivial(&a), &drop_trivial(&b)), "{a}\n{b}");
    }
}

#[test]
fn random_point_audits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9017);
    for trial in 0..50 {
        let (p, n) = LEVELS[trial % LEVELS.len()];
        let f = random_function(&mut rng, 2, 3);
        let g = random_function(&mut rng, 2, 3);
        let rep = verify_point_reciprocity(&f, &g, p, n).unwrap();
        assert!(rep.pass, "f = {f}, g = {g}\n{rep}");
        assert!(rep.certified_prec.unwrap() + 1 >= n);
    }
}

#[test]
fn random_vertical_audits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e27);
    for trial in 0..50 {
        let (p, n) = LEVELS[trial % LEVELS.len()];
        let f = random_unit_content_function(&mut rng, p, 2, 3);
        let g = random_unit_content_function(&mut rng, p, 2, 3);
        let rep = verify_vertical_reciprocity(&f, &g, p, n, n).unwrap();
        assert!(rep.pass, "f = {f}, g = {g}\n{rep}");
        assert_eq!(rep.certified_prec, Some(n));
        for (x, v) in off_support_symbols(&f, &g, p, n, 5).unwrap() {
            assert!(v.p_val == 0 && v.unit.is_one(), "{x}: {v}");
        }
    }
}

#[test]
fn random_global_audits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x610b);
    for trial in 0..50 {
        let f = random_function(&mut rng, 3, 3);
        let g = random_function(&mut rng, 3, 3);
        let rep = verify_global_weil(&f, &g, Base::Rational).unwrap();
        assert!(rep.pass, "f = {f}, g = {g}\n{rep}");
        assert!(rep.abs_table.iter().all(|r| r.product.is_one()));
        let q = [2u64, 3, 5, 7][trial % 4];
        let f = random_unit_content_function(&mut rng, q, 3, 3);
        let g = random_unit_content_function(&mut rng, q, 3, 3);
        let rep = verify_global_weil(&f, &g, Base::Prime(q)).unwrap();
        assert!(rep.pass, "f = {f}, g = {g}\n{rep}");
    }
}

#[test]
fn expansion_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe4a1);
    for trial in 0..40 {
        let (p, n) = LEVELS[trial % LEVELS.len()];
        let f = random_unit_content_function(&mut rng, p, 2, 3);
        let g = random_unit_content_function(&mut rng, p, 2, 3);
        let x = match rng.gen_range(0..3) {
            0 => ClosedPoint::Infinity,
            _ => ClosedPoint::rational(p, rng.gen_range(0..p)).unwrap(),
        };
        let r = x.local_ring(p, n).unwrap();
        let hi = 24;
        let fg = expand_at_point(&f.mul(&g), &x, &r, hi).unwrap();
        let prod = expand_at_point(&f, &x, &r, hi).unwrap().mul(&expand_at_point(&g, &x, &r, hi).unwrap()).unwrap();
        assert!(fg.agrees_with(&prod), "{f} and {g} at {x}");
    }
}

#[test]
fn global_symbols_multiply_to_one_at_each_prime() {
    let f = FactoredFunction::from_poly(rpoly(&[6, -5, 1])).unwrap().mul(&FactoredFunction::constant(rat(7)).unwrap());
    let g = FactoredFunction::from_poly(rpoly(&[-3, 0, 2])).unwrap().mul(&FactoredFunction::t_power(-3));
    let rep = verify_global_weil(&f, &g, Base::Rational).unwrap();
    assert!(rep.pass, "{rep}");
    let places: Vec<&str> = rep.abs_table.iter().map(|r| r.place.as_str()).collect();
    assert!(places.contains(&"2") && places.contains(&"3") && places.last() == Some(&"∞"), "{places:?}");
    let LocalValue::Rational(prod) = &rep.product else { unreachable!() };
    assert!(prod.is_one() && !prod.is_negative());
}
