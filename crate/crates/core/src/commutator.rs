//! Left-normed commutator forms of homogeneous word series.
//!
//! A skeleton `t₁…tₙ` stands for `[[…[[t₁,t₂],t₃],…],tₙ]`. Three translations
//! are provided: Dynkin's (`c(W)/n` on every word) and the two selective forms
//! that keep only words starting with `ba` (weight `c(W)/n_b(W)`) or with `ab`
//! (weight `c(W)/n_a(W)`).

use std::collections::hash_map::Entry;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::algebra::{expand_left_normed, Letter, Rational, Word, WordSeries};
use crate::error::{Error, Result};
use crate::report::VerificationReport;

/// Rational combination of left-normed commutators, ordered by skeleton.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommutatorSeries {
    terms: Vec<(Rational, Word)>,
}

impl CommutatorSeries {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a series from `(coefficient, skeleton)` pairs. Repeated skeletons
    /// are merged and zero coefficients dropped. All skeletons must have the
    /// same length.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Word)>,
    {
        let mut merged = std::collections::BTreeMap::<Word, Rational>::new();
        for (c, w) in terms {
            *merged.entry(w).or_insert_with(Rational::zero) += c;
        }
        let terms: Vec<(Rational, Word)> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (c, w))
            .collect();
        if terms.windows(2).any(|p| p[0].1.len() != p[1].1.len()) {
            return Err(Error::Inhomogeneous);
        }
        Ok(CommutatorSeries { terms })
    }

    pub fn terms(&self) -> &[(Rational, Word)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: &Rational) -> CommutatorSeries {
        CommutatorSeries {
            terms: if factor.is_zero() {
                Vec::new()
            } else {
                self.terms.iter().map(|(c, w)| (c * factor, *w)).collect()
            },
        }
    }
}

fn degree_at_least_two(s: &WordSeries) -> Result<Option<usize>> {
    match s.degree()? {
        Some(n) if n < 2 => Err(Error::OrderTooLow { order: n, min: 2 }),
        d => Ok(d),
    }
}

fn starts_with(w: Word, first: Letter, second: Letter) -> bool {
    w.letter(0) == first && w.letter(1) == second
}

/// `Σ c(W)/n · [W]`. Skeletons whose first two letters agree expand to zero and are dropped.
pub fn dynkin_translate(s: &WordSeries) -> Result<CommutatorSeries> {
    let Some(n) = degree_at_least_two(s)? else {
        return Ok(CommutatorSeries::new());
    };
    let inv_n = Rational::new(BigInt::one(), BigInt::from(n));
    CommutatorSeries::from_terms(
        s.iter()
            .filter(|(w, _)| w.letter(0) != w.letter(1))
            .map(|(w, c)| (c * &inv_n, *w)),
    )
}

fn selective_translate(
    s: &WordSeries,
    first: Letter,
    second: Letter,
    weight: impl Fn(Word) -> usize,
) -> Result<CommutatorSeries> {
    if degree_at_least_two(s)?.is_none() {
        return Ok(CommutatorSeries::new());
    }
    let mut terms = Vec::new();
    for (w, c) in s {
        if !starts_with(*w, first, second) {
            continue;
        }
        let k = weight(*w);
        if k == 0 {
            return Err(Error::Structure(format!("word {w} has zero weight")));
        }
        terms.push((c / Rational::from_integer(BigInt::from(k)), *w));
    }
    CommutatorSeries::from_terms(terms)
}

/// `Σ_{W = ba…} c(W)/n_b(W) · [W]`.
pub fn oteo_ba_translate(s: &WordSeries) -> Result<CommutatorSeries> {
    selective_translate(s, Letter::B, Letter::A, Word::count_b)
}

/// `Σ_{W = ab…} c(W)/n_a(W) · [W]`.
pub fn oteo_ab_translate(s: &WordSeries) -> Result<CommutatorSeries> {
    selective_translate(s, Letter::A, Letter::B, Word::count_a)
}

/// Visits every word in the expansion of the left-normed commutator on `w`
/// with its sign (`true` for `+1`).
///
/// Each letter after the first goes either right of everything so far (`+`)
/// or left of it (`−`), so the words are indexed by subsets of positions `2..n`.
fn for_each_expansion_word(w: Word, mut f: impl FnMut(Word, bool)) {
    let n = w.len();
    let bits = w.bits();
    for left in 0u64..1 << (n - 1) {
        // Position k ≥ 1 (0-based) goes left iff bit k − 1 of `left` is set.
        let mut left_part = 0u64;
        let mut left_len = 0usize;
        let mut right_part = 0u64;
        let mut right_len = 0usize;
        for k in (1..n).rev() {
            if left >> (k - 1) & 1 == 1 {
                left_part |= (bits >> k & 1) << left_len;
                left_len += 1;
            }
        }
        for k in 1..n {
            if left >> (k - 1) & 1 == 0 {
                right_part |= (bits >> k & 1) << right_len;
                right_len += 1;
            }
        }
        let word_bits = left_part | (bits & 1) << left_len | right_part << (left_len + 1);
        let word = Word::new(word_bits, n).expect("expansion keeps the length");
        f(word, left.count_ones() % 2 == 0);
    }
}

/// `Σ coef · expand_left_normed(skeleton)`.
///
/// Accumulates integer numerators over the common denominator of the input
/// coefficients; the result is identical to summing the rational expansions.
pub fn commutator_to_words(cs: &CommutatorSeries) -> WordSeries {
    if cs.is_empty() {
        return WordSeries::new();
    }
    let denom = cs
        .terms
        .iter()
        .fold(BigInt::one(), |acc, (c, _)| acc.lcm(c.denom()));
    let mut acc: FxHashMap<Word, BigInt> = FxHashMap::default();
    for (c, w) in &cs.terms {
        let scaled = c.numer() * (&denom / c.denom());
        for_each_expansion_word(*w, |word, positive| {
            let delta = if positive { scaled.clone() } else { -&scaled };
            match acc.entry(word) {
                Entry::Vacant(e) => {
                    e.insert(delta);
                }
                Entry::Occupied(mut e) => *e.get_mut() += delta,
            }
        });
    }
    acc.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(w, v)| (w, Rational::new(v, denom.clone())))
        .collect()
}

/// Reference expansion through the prefix recursion of [`expand_left_normed`].
pub fn commutator_to_words_recursive(cs: &CommutatorSeries) -> WordSeries {
    let mut out = WordSeries::new();
    for (c, w) in &cs.terms {
        let e = expand_left_normed(*w).expect("skeletons are nonempty");
        out.add_scaled(&e, c);
    }
    out
}

/// Checks `commutator_to_words(cs) = s` exactly; the report carries `s − words(cs)`.
pub fn verify_translation(s: &WordSeries, cs: &CommutatorSeries) -> VerificationReport {
    VerificationReport::compare(s, &commutator_to_words(cs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    fn series(terms: &[(&str, i64, i64)]) -> WordSeries {
        terms
            .iter()
            .map(|(w, n, d)| (w.parse().unwrap(), rat(*n, *d)))
            .collect()
    }

    fn comm(terms: &[(i64, i64, &str)]) -> CommutatorSeries {
        CommutatorSeries::from_terms(
            terms
                .iter()
                .map(|(n, d, w)| (rat(*n, *d), w.parse().unwrap())),
        )
        .unwrap()
    }

    fn c2() -> WordSeries {
        series(&[("ba", 1, 2), ("ab", -1, 2)])
    }

    fn c3() -> WordSeries {
        series(&[
            ("bab", 2, 3),
            ("aba", -1, 3),
            ("abb", -1, 3),
            ("bba", -1, 3),
            ("baa", 1, 6),
            ("aab", 1, 6),
        ])
    }

    #[test]
    fn dynkin_low_orders() {
        let d2 = dynkin_translate(&c2()).unwrap();
        assert_eq!(d2, comm(&[(1, 4, "ba"), (-1, 4, "ab")]));
        assert_eq!(commutator_to_words(&d2), c2());

        let d3 = dynkin_translate(&c3()).unwrap();
        // bba and aab start with a repeated letter and drop out.
        assert_eq!(d3.len(), 4);
        assert!(d3.terms().contains(&(rat(2, 9), "bab".parse().unwrap())));
        assert_eq!(commutator_to_words(&d3), c3());

        assert!(dynkin_translate(&series(&[("aaaa", 1, 1)]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn ba_translation() {
        assert_eq!(oteo_ba_translate(&c2()).unwrap(), comm(&[(1, 2, "ba")]));
        let t3 = oteo_ba_translate(&c3()).unwrap();
        assert_eq!(t3, comm(&[(1, 3, "bab"), (1, 6, "baa")]));
        assert!(verify_translation(&c3(), &t3).passed);
    }

    #[test]
    fn ab_translation() {
        assert_eq!(oteo_ab_translate(&c2()).unwrap(), comm(&[(-1, 2, "ab")]));
        let t3 = oteo_ab_translate(&c3()).unwrap();
        // n_a(aba) = 2, n_a(abb) = 1.
        assert_eq!(t3, comm(&[(-1, 6, "aba"), (-1, 3, "abb")]));
        assert!(verify_translation(&c3(), &t3).passed);
    }

    #[test]
    fn translation_rejects_bad_input() {
        let mixed = series(&[("ab", 1, 1), ("aba", 1, 1)]);
        assert_eq!(dynkin_translate(&mixed), Err(Error::Inhomogeneous));
        assert_eq!(oteo_ba_translate(&mixed), Err(Error::Inhomogeneous));
        assert_eq!(oteo_ab_translate(&mixed), Err(Error::Inhomogeneous));
        assert!(oteo_ba_translate(&series(&[("a", 1, 1)])).is_err());
        assert!(CommutatorSeries::from_terms([
            (rat(1, 1), "ab".parse().unwrap()),
            (rat(1, 1), "a".parse().unwrap())
        ])
        .is_err());
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(commutator_to_words(&comm(&[(1, 2, "ba")])), c2());
        assert!(commutator_to_words(&CommutatorSeries::new()).is_empty());
    }

    #[test]
    fn verification_reports() {
        assert!(verify_translation(&c2(), &comm(&[(1, 2, "ba")])).passed);
        let bad = verify_translation(&c2(), &comm(&[(1, 1, "ba")]));
        assert!(!bad.passed);
        assert_eq!(bad.failing_degree, Some(2));
        assert_eq!(bad.diff, series(&[("ba", -1, 2), ("ab", 1, 2)]));
    }

    fn arb_skeleton_series() -> impl Strategy<Value = CommutatorSeries> {
        (1usize..=9).prop_flat_map(|len| {
            prop::collection::vec((0..(1u64 << len), -4i64..=4, 1i64..=6), 0..5).prop_map(
                move |v| {
                    CommutatorSeries::from_terms(
                        v.into_iter()
                            .map(|(bits, n, d)| (rat(n, d), Word::new(bits, len).unwrap())),
                    )
                    .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn fast_expansion_matches_recursion(cs in arb_skeleton_series()) {
            prop_assert_eq!(commutator_to_words(&cs), commutator_to_words_recursive(&cs));
        }

        #[test]
        fn expansion_is_linear(a in arb_skeleton_series(), k in -3i64..=3) {
            let factor = rat(k, 2);
            prop_assert_eq!(
                commutator_to_words(&a.scaled(&factor)),
                commutator_to_words(&a).scaled(&factor)
            );
            let doubled = CommutatorSeries::from_terms(a.terms().iter().chain(a.terms()).cloned()).unwrap();
            prop_assert_eq!(commutator_to_words(&doubled), &commutator_to_words(&a) + &commutator_to_words(&a));
        }
    }
}
