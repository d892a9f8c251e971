//! Residue matrices: decide whether a matrix of roots of unity is the
//! quadratic, cubic or quartic residue matrix of a set of primes, build
//! explicit prime witnesses, and enumerate the small cases.

pub mod cli;
pub mod cyclotomic;
pub mod enumerate;
pub mod error;
pub mod frequencies;
pub mod higher;
pub mod matrix;
pub mod qr;
pub mod rational;

pub use error::{Error, Result};
