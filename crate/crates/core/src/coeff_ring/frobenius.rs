use smallvec::SmallVec;

use super::{mul_coords, Coords, GrElem, RingDesc};
use crate::arith::{addmod, mulmod};

/// Powers `θ^k` (`k < d`) of the root `θ` of `H` with `θ ≡ x^p mod p`.
fn frob_powers(ring: &super::Ring) -> &Vec<Coords> {
    ring.frob_powers.get_or_init(|| {
        let d = ring.d();
        let x = GrElem::x(ring);
        let h = |t: &GrElem| {
            let mut acc = GrElem::zero(ring);
            for &c in ring.h.iter().rev() {
                acc = &(&acc * t) + &GrElem::from_u64(ring, c);
            }
            acc
        };
        let dh = |t: &GrElem| {
            let mut acc = GrElem::zero(ring);
            for (k, &c) in ring.h.iter().enumerate().skip(1).rev() {
                acc = &(&acc * t) + &GrElem::from_u64(ring, mulmod(c, k as u64, ring.modulus));
            }
            acc
        };
        // Newton from the residue-level Frobenius image; H is separable mod p.
        let mut theta = x.pow(ring.p);
        for _ in 0..64 {
            let v = h(&theta);
            if v.is_zero() {
                break;
            }
            theta = &theta - &(&v * &dh(&theta).inv().expect("H is separable mod p"));
        }
        debug_assert!(h(&theta).is_zero());
        let mut out = Vec::with_capacity(d);
        let mut acc = GrElem::one(ring);
        for _ in 0..d {
            out.push(acc.c.clone());
            acc = &acc * &theta;
        }
        out
    })
}

fn apply(ring: &RingDesc, powers: &[Coords], a: &[u64]) -> Coords {
    let m = ring.modulus;
    let mut out: Coords = SmallVec::from_elem(0, ring.d());
    for (k, &ak) in a.iter().enumerate() {
        if ak == 0 {
            continue;
        }
        for (o, &t) in out.iter_mut().zip(&powers[k]) {
            *o = addmod(*o, mulmod(ak, t, m), m);
        }
    }
    out
}

impl GrElem {
    /// The Frobenius automorphism, lifting `a ↦ a^p` on the residue field.
    pub fn frobenius(&self) -> GrElem {
        if self.ring.d() == 1 {
            return self.clone();
        }
        let powers = frob_powers(&self.ring);
        GrElem::from_raw(&self.ring, apply(&self.ring, powers, &self.c))
    }

    /// Product of the `d` Frobenius conjugates; lies in the prime subring.
    pub fn norm(&self) -> GrElem {
        let d = self.ring.d();
        if d == 1 {
            return self.clone();
        }
        let powers = frob_powers(&self.ring);
        let mut conj = self.c.clone();
        let mut acc = self.c.clone();
        for _ in 1..d {
            conj = apply(&self.ring, powers, &conj);
            acc = mul_coords(&self.ring, &acc, &conj);
        }
        GrElem::from_raw(&self.ring, acc)
    }

    /// Norm as an element of `Z/p^N`.
    pub fn norm_to_prime(&self) -> GrElem {
        let n = self.norm();
        debug_assert!(in_prime_ring(&n));
        GrElem::from_u64(&self.ring.prime_subring(), n.c[0])
    }

    /// Sum of the `d` Frobenius conjugates.
    pub fn trace(&self) -> GrElem {
        let mut conj = self.clone();
        let mut acc = self.clone();
        for _ in 1..self.ring.d() {
            conj = conj.frobenius();
            acc = &acc + &conj;
        }
        acc
    }
}

/// Whether `a` lies in `Z/p^N ⊂ GR(p^N, d)`.
pub fn in_prime_ring(a: &GrElem) -> bool {
    a.c[1..].iter().all(|&v| v == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_generator_in_f4() {
        let r = RingDesc::new(2, 1, &[1.into(), 1.into(), 1.into()]).unwrap();
        assert!(GrElem::x(&r).norm().is_one());
    }

    #[test]
    fn frobenius_has_order_d() {
        let r = RingDesc::unramified(3, 3, 4).unwrap();
        let a = &GrElem::x(&r) + &GrElem::from_u64(&r, 4);
        let mut b = a.clone();
        for _ in 0..4 {
            b = b.frobenius();
        }
        assert_eq!(a, b);
        assert_ne!(a.frobenius(), a);
        // σ reduces to a ↦ a^p
        assert_eq!(a.frobenius().reduce(), a.reduce().pow(3));
    }

    #[test]
    fn norm_of_prime_subring_element() {
        let r = RingDesc::unramified(5, 2, 3).unwrap();
        let c = GrElem::from_u64(&r, 7);
        assert_eq!(c.norm(), c.pow(3));
        assert!(in_prime_ring(&(&GrElem::x(&r) + &c).norm()));
    }
}
