//! Exact-arithmetic toolkit for deciding when a vector of coefficient
//! valuations can come from a degree-n univariate polynomial with two
//! double roots, producing cone certificates and explicit witness
//! polynomials over truncated Puiseux series, plus a general circuit and
//! minor based tropical membership test for kernels of matrices over
//! valuated fields.

pub mod error;
pub mod intpoly;
pub mod ring;
pub mod puiseux;
pub mod textio;
pub mod newton;
pub mod minors;
pub mod classifier;
pub mod witness;
pub mod trop_kernel;
pub mod oracle;
pub mod sampling;
pub mod precision;

pub use error::{Error, Result};

use num::bigint::BigInt;
use num::rational::BigRational;

/// Convenience constructor for exact rationals.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for integer rationals.
pub fn rat_int(num: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(num))
}
