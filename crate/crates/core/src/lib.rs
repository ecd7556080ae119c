//! Exact enumeration of height balls in SL_d(Z), certification of splitting
//! fields of characteristic polynomials via Frobenius cycle types, and
//! explicit large-sieve bounds with power-saving exponents.

pub mod cycles;
pub mod error;
pub mod experiments;
pub mod galois;
pub mod lattice;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod primes;
pub mod report;
pub mod sieve;

pub use error::{Error, Result};
