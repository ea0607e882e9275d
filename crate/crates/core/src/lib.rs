//! Exact residue symbols on two-dimensional local fields of mixed characteristic.

pub mod arith;
pub mod coeff_ring;
pub mod error;
pub mod laurent;
pub mod poly;
pub mod scalar;
pub mod serial;
pub mod surface;
pub mod symbols;
pub mod weierstrass;

pub use coeff_ring::{GrElem, Ring, RingDesc};
pub use error::{Error, Result};
pub use poly::Poly;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact integer polynomials.
pub type IntPoly = Poly<BigInt>;
/// Exact rational polynomials.
pub type RatPoly = Poly<BigRational>;
/// Polynomials over a Galois ring.
pub type GrPoly = Poly<GrElem>;
