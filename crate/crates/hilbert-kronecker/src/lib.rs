//! Exact arithmetic for Hilbert Eisenstein series, the Kronecker series built
//! from their Kuznetsov lifting, and the period-polynomial generating function
//! over ℚ and real quadratic fields of strict class number one.
//!
//! Everything is exact: rationals are `BigRational`, field elements are
//! `a + b√D` with rational `a`, `b`, and q-expansions are truncated by trace.

pub mod arithmetic;
pub mod error;
pub mod kronecker;
pub mod linalg;
pub mod par;
pub mod periods;
pub mod qseries;
pub mod quadfield;

pub use error::{Error, Result};

/// Discriminants accepted everywhere: ℚ itself (`1`) and real quadratic fields
/// of class number one whose fundamental unit has norm −1.
pub const SUPPORTED_DISCRIMINANTS: [i64; 8] = [1, 5, 8, 13, 17, 29, 37, 41];

/// Fails unless `disc` is in [`SUPPORTED_DISCRIMINANTS`].
pub fn check_disc(disc: i64) -> Result<()> {
    if SUPPORTED_DISCRIMINANTS.contains(&disc) {
        Ok(())
    } else {
        Err(Error::UnsupportedDiscriminant(disc))
    }
}

/// Degree of the field: 1 for ℚ, 2 otherwise.
pub fn degree(disc: i64) -> usize {
    if disc == 1 {
        1
    } else {
        2
    }
}
