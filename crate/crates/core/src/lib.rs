//! Exact computations around the cohomology of line bundles on the incidence
//! correspondence in arbitrary characteristic.
//!
//! The crate is organised by subject:
//!
//! - [`charring`]: integer (Laurent) polynomials used as torus characters, with
//!   the symmetric-function constructors the cohomology formulas consume.
//! - [`exactla`]: ranks over prime fields and over the integers, Lucas binomials.
//! - [`divided`]: cohomology of twisted divided powers of the universal subsheaf
//!   on projective space (recursive, characteristic-2 Nim, and brute-force routes).
//! - [`incidence`]: cohomology of `O_X(a,b)` on the incidence correspondence.
//! - [`splitting`]: equivariant splitting types of kernel bundles and of
//!   principal-parts bundles on the projective line.
//! - [`hanmonsky`]: products in the graded Han–Monsky representation ring.
//! - [`lefschetz`]: weak/strong Lefschetz tests.
//!
//! All arithmetic is exact; there is no floating point anywhere in the crate.

pub mod charring;
pub mod divided;
pub mod error;
pub mod exactla;
pub mod hanmonsky;
pub mod incidence;
pub mod lefschetz;
pub mod splitting;

pub use charring::CharacterPoly;
pub use error::{Error, Result};

/// Environment variable overriding the size limits of the brute-force oracles.
pub const SIZE_GUARD_ENV: &str = "FLAGCOH_SIZE_GUARD";

/// Reads [`SIZE_GUARD_ENV`], falling back to `default` when unset or unparsable.
pub fn size_guard_or(default: usize) -> usize {
    std::env::var(SIZE_GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}
