//! Multilinear τ-polynomials, triangular matrices over them, and the `U` map.
//!
//! A word `t₁…tₘ` corresponds to the matrix product `A₁···Aₘ` with `Aᵢ = Q`
//! for `b` and `P` for `a`; the `(1, m+1)` corner of that product is the
//! τ-monomial whose support marks the positions of `b`.

mod builders;
mod matrix;
mod poly;
mod translate;

pub use builders::{build_h, build_k, build_l, build_p, build_q};
pub use matrix::{mat_mul, nilpotent_exp, nilpotent_log, row_mul, TriMatrix};
pub use poly::{MultilinearPoly, TauMonomial};
pub use translate::{series_to_matrix, u_translate, word_to_matrix};
