//! Exact Zassenhaus exponents and BCH terms over the free algebra on two letters.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: exact rationals, words over `{a, b}`, word series and
//!   left-normed commutator expansion.
//! - [`tau`]: multilinear polynomials in commuting variables `τ₁..τₙ`,
//!   upper-triangular matrices over them and the `U` map to words.
//! - [`engine`]: the recursive matrix-product extraction of the Zassenhaus
//!   exponents `cₙ` and the matrix-logarithm extraction of the BCH terms `zₙ`.
//! - [`commutator`]: translation of word series into left-normed commutators.
//! - [`oracle`]: independent checks in the truncated free algebra.

pub mod algebra;
pub mod budget;
pub mod commutator;
pub mod engine;
mod error;
pub mod oracle;
mod report;
pub mod tau;

pub use algebra::{
    coefficient_sum, expand_left_normed, series_add, series_mul, Alphabet, Letter, Rational, Word,
    WordSeries, MAX_WORD_LEN,
};
pub use error::{Error, Result};
pub use report::VerificationReport;
