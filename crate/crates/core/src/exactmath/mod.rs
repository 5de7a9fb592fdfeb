//! Exact integer and rational arithmetic: cyclotomic products, 2-adic
//! valuations, Zsigmondy primes and integer lattices.

pub mod cycprod;
pub mod cyclotomic;
pub mod lattice;
pub mod primes;
pub mod valuation;

use thiserror::Error;

pub use cycprod::CycProduct;
pub use cyclotomic::{cyclotomic_poly, divisors, mobius, phi_value};
pub use lattice::{hermite_kernel, hnf_basis, lattice_contains, lattice_coordinates, IntegerMatrix};
pub use primes::{is_prime_u64, multiplicative_order, zsigmondy_prime};
pub use valuation::{d_and_e, two_odd_parts, v2, v2_phi, TwoAdicParts};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("2-adic valuation of zero")]
    ZeroValuation,
    #[error("q must be odd and at least 3, got {0}")]
    EvenOrSmallQ(i64),
    #[error("Zsigmondy prime requested outside its domain (q={q}, n={n})")]
    ZsigmondyDomain { q: u64, n: u32 },
    #[error("cofactor {0} is beyond the factorization range")]
    FactorizationOutOfRange(String),
    #[error("q^{n}-1 has no primitive prime divisor for q={q}")]
    NoPrimitivePrime { q: u64, n: u32 },
    #[error("not a degree-like product: {0}")]
    NotDegreeLike(String),
    #[error("evaluation point too small: {0}")]
    QTooSmall(String),
    #[error("{product} is not an integer at q={q} (value {value})")]
    NonIntegral {
        product: String,
        q: i64,
        value: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
}
