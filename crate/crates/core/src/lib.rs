//! Exact arithmetic and verification machinery for non-archimedean
//! parametrizations and points of bounded height.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is exact: p-adic
//! norms are carried as valuations, rationals are arbitrary precision, and
//! every bound is checked with integer or rational comparisons.
//!
//! Layout:
//! - [`arith`]: p-adic numbers at finite precision, balls, truncated and
//!   sparse multivariate polynomials.
//! - [`combinatorics`]: monomial counts and the exponents of the
//!   determinant method.
//! - [`heights`]: heights of rationals and brute-force point enumeration.
//! - [`taylor`]: Taylor polynomials, C^r-norms and `T_r` certificates.
//! - [`detmethod`]: determinant estimates, p-adic rank, auxiliary
//!   polynomials and hypersurface covers.
//! - [`ffcount`]: point counts of `X_r` over prime fields.
//! - [`hilbert`]: Gröbner bases, Hilbert functions and the curve-case
//!   parameter selection.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod combinatorics;
pub mod detmethod;
pub mod error;
pub mod ffcount;
pub mod heights;
pub mod hilbert;
pub mod linalg;
pub mod taylor;

pub use error::{Error, Result};
