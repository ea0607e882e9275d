mod common;

use common::*;
use katores_core::poly::sylvester_resultant;
use katores_core::weierstrass::{prepare, prepare_integer, resultant, DistinguishedPrime, Irreducibility};
use katores_core::{Error, GrElem, GrPoly, IntPoly, Poly, Ring};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn from_roots(roots: &[i64]) -> IntPoly {
    roots.iter().fold(ipoly(&[1]), |acc, &r| &acc * &ipoly(&[-r, 1]))
}

fn random_monic<R: Rng>(rng: &mut R, degs: std::ops::RangeInclusive<usize>) -> IntPoly {
    let deg = rng.gen_range(degs);
    let mut c = random_coeffs(rng, deg, 9);
    c[deg] = 1;
    ipoly(&c)
}

fn to_gr(ring: &Ring, f: &IntPoly) -> GrPoly {
    Poly::new(f.coeffs().iter().map(|c| GrElem::from_bigint(ring, c)).collect(), GrElem::zero(ring))
}

fn level() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(LEVELS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn resultant_is_product_over_roots(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let roots: Vec<i64> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(-6..=6)).collect();
        let a = from_roots(&roots);
        let b = ipoly(&random_coeffs_in(&mut rng, 0..=4, 9));
        let brute = roots.iter().fold(BigInt::one(), |acc, r| acc * b.eval(&BigInt::from(*r)));
        prop_assert_eq!(resultant(&a, &b), brute);
    }

    #[test]
    fn resultant_agrees_with_sylvester_determinant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_monic(&mut rng, 1..=5);
        let b = ipoly(&random_coeffs_in(&mut rng, 1..=5, 20));
        prop_assert_eq!(resultant(&a, &b), sylvester_resultant(&a, &b));
    }

    #[test]
    fn resultant_is_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_monic(&mut rng, 1..=3);
        let a2 = random_monic(&mut rng, 1..=3);
        let b = ipoly(&random_coeffs_in(&mut rng, 0..=3, 9));
        let c = ipoly(&random_coeffs_in(&mut rng, 0..=3, 9));
        prop_assert_eq!(resultant(&a, &(&b * &c)), resultant(&a, &b) * resultant(&a, &c));
        prop_assert_eq!(resultant(&(&a * &a2), &b), resultant(&a, &b) * resultant(&a2, &b));
    }

    #[test]
    fn resultant_swap_sign(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (da, db) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = random_monic(&mut rng, da..=da);
        let b = random_monic(&mut rng, db..=db);
        let sign = if (da * db) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        prop_assert_eq!(resultant(&a, &b), sign * resultant(&b, &a));
    }

    #[test]
    fn resultant_commutes_with_reduction((p, n) in level(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ring(p, n);
        let a = random_monic(&mut rng, 1..=4);
        let b = ipoly(&random_coeffs_in(&mut rng, 0..=4, 30));
        prop_assert_eq!(resultant(&to_gr(&r, &a), &to_gr(&r, &b)), GrElem::from_bigint(&r, &resultant(&a, &b)));
    }

    #[test]
    fn prepare_recomposes((p, n) in level(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ring(p, n);
        let m = r.modulus();
        let deg = rng.gen_range(1..=5);
        let l = rng.gen_range(0..=deg);
        // coefficients below l are divisible by p, the one at l is a unit
        let coeffs: Vec<GrElem> = (0..=deg)
            .map(|k| {
                let raw = rng.gen_range(0..m);
                let v = match k.cmp(&l) {
                    std::cmp::Ordering::Less => (raw * p) % m,
                    std::cmp::Ordering::Equal => if raw % p == 0 { raw + 1 } else { raw },
                    std::cmp::Ordering::Greater => raw,
                };
                GrElem::from_u64(&r, v % m)
            })
            .collect();
        let f = Poly::new(coeffs, GrElem::zero(&r));
        let pf = prepare(&f).unwrap();
        prop_assert_eq!(pf.recompose(), f);
        prop_assert_eq!(pf.winding(), l);
        prop_assert!(pf.a.is_monic());
        prop_assert!(pf.a.coeffs()[..l].iter().all(|c| !c.is_unit()));
        prop_assert!(pf.b.is_one());
        prop_assert!(pf.u.coeff(0).is_one());
        prop_assert!(pf.f0.1.is_unit());
    }

    #[test]
    fn prepare_integer_strips_content((p, n) in level(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ring(p, n);
        let g = ipoly(&random_coeffs_in(&mut rng, 1..=4, 20));
        prop_assume!(g.coeffs().iter().any(|c| (c % BigInt::from(p)) != BigInt::zero()));
        let k = rng.gen_range(0..=3u32);
        let f = g.scale(&BigInt::from(p).pow(k));
        let pf = prepare_integer(&f, &r).unwrap();
        prop_assert_eq!(pf.f0.0, k as i64);
        prop_assert_eq!(pf.recompose(), to_gr(&r, &g));
    }

    #[test]
    fn eisenstein_polynomials_are_distinguished_primes(p in prop::sample::select(vec![2u64, 3, 5, 7]), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(1..=5);
        let pi = p as i64;
        let mut c: Vec<i64> = (0..d).map(|_| pi * rng.gen_range(-3..=3)).collect();
        let mut unit = rng.gen_range(1..=9);
        while unit % pi == 0 {
            unit = rng.gen_range(1..=9);
        }
        c[0] = pi * unit;
        c.push(1);
        let dp = DistinguishedPrime::new(ipoly(&c), p).unwrap();
        let expected = if d <= 3 { Irreducibility::Checked } else { Irreducibility::Asserted };
        prop_assert_eq!(dp.irreducibility(), expected);
    }

    #[test]
    fn products_of_distinguished_lines_are_reducible(p in prop::sample::select(vec![2u64, 3, 5]), a in -4i64..=4, b in -4i64..=4) {
        let pi = p as i64;
        let f = from_roots(&[pi * a, pi * b]);
        prop_assert!(matches!(DistinguishedPrime::new(f, p), Err(Error::Reducible(_))));
    }
}

#[test]
fn prepare_examples() {
    let r = ring(5, 3);
    let pf = prepare_integer(&ipoly(&[0, 5]), &r).unwrap();
    assert_eq!(pf.f0.0, 1);
    assert_eq!(pf.a, to_gr(&r, &ipoly(&[0, 1])));
    assert!(pf.u.is_one());
    // T^2 - T - 5 = (T - α)(T - β) with α ≡ 0 and β ≡ 1 mod 5
    let f = to_gr(&r, &ipoly(&[-5, -1, 1]));
    let pf = prepare(&f).unwrap();
    assert_eq!(pf.winding(), 1);
    let alpha = -pf.a.coeff(0);
    assert!(f.eval(&alpha).is_zero());
    assert!(matches!(prepare(&to_gr(&r, &ipoly(&[5, 10]))), Err(Error::AllCoeffsNonUnit)));
}

#[test]
fn resultant_examples() {
    assert_eq!(resultant(&ipoly(&[-5, 1]), &ipoly(&[0, 1])), BigInt::from(5));
    assert_eq!(resultant(&ipoly(&[1, 0, 1]), &ipoly(&[-2, 1])), BigInt::from(5));
}
