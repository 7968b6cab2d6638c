use super::{build_p, build_q, mat_mul, MultilinearPoly, TauMonomial, TriMatrix};
use crate::algebra::{Letter, Word, WordSeries};
use crate::error::{Error, Result};

/// The `U` map: each monomial becomes the word of length `p.nvars()` with `b`
/// exactly at the positions of its variables.
pub fn u_translate(p: &MultilinearPoly) -> WordSeries {
    p.iter()
        .map(|(m, c)| {
            let w =
                Word::new(m.mask(), p.nvars()).expect("monomial support within ambient variables");
            (w, c.clone())
        })
        .collect()
}

/// `A₁···Aₘ` with `Aᵢ = Q` where letter `i` is `b` and `P` where it is `a`.
pub fn word_to_matrix(w: Word, size: usize) -> Result<TriMatrix> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if size < w.len() + 1 {
        return Err(Error::SizeTooSmall {
            size,
            needed: w.len() + 1,
        });
    }
    let p = build_p(size - 1)?;
    let q = build_q(size - 1)?;
    let mut letters = w.letters();
    let pick = |l: Letter| if l == Letter::B { &q } else { &p };
    let mut acc = pick(letters.next().expect("nonempty")).clone();
    for l in letters {
        acc = mat_mul(&acc, pick(l))?;
    }
    Ok(acc)
}

/// `Σ c(W) · word_to_matrix(W, size)` for a series homogeneous of degree `m`.
///
/// The result lives on the `m`-th superdiagonal only; entry `(i, i + m)` is the
/// series' τ-polynomial with every variable shifted by `i`, so no matrix
/// products are formed.
pub fn series_to_matrix(s: &WordSeries, size: usize) -> Result<TriMatrix> {
    let Some(m) = s.degree()? else {
        return Ok(TriMatrix::zero(size));
    };
    if m == 0 {
        return Err(Error::EmptyWord);
    }
    if size < m + 1 {
        return Err(Error::SizeTooSmall {
            size,
            needed: m + 1,
        });
    }
    let nvars = size - 1;
    let base = MultilinearPoly::from_terms(
        nvars,
        s.iter()
            .map(|(w, c)| (TauMonomial::from_mask(w.bits()), c.clone())),
    );
    let mut out = TriMatrix::zero(size);
    for i in 0..size - m {
        *out.get_mut(i, i + m) = base.shifted(i, nvars);
    }
    debug_assert!(out.range_property_holds());
    Ok(out)
}
