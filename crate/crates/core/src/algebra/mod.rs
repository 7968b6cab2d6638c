//! Exact rationals, words, and elements of the free associative algebra on `{a, b}`.

mod rational;
mod series;
mod word;

pub use rational::{format_ratio, inverse_factorial, parse_rational, rat, Rational};
pub use series::{coefficient_sum, expand_left_normed, series_add, series_mul, WordSeries};
pub use word::{Alphabet, Letter, Word, MAX_WORD_LEN};
