use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use rustc_hash::FxHashMap;

use super::{Rational, Word};
use crate::error::{Error, Result};

/// A finite linear combination of words with exact rational coefficients.
///
/// Zero coefficients are never stored and iteration is in [`Word`] order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordSeries {
    terms: BTreeMap<Word, Rational>,
}

impl WordSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(word: Word, coeff: Rational) -> Self {
        let mut s = Self::new();
        s.add_term(word, coeff);
        s
    }

    /// Parses `(word, coefficient)` pairs; repeated words accumulate.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        let mut s = Self::new();
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    /// Adds `coeff · word`, dropping the term if it cancels.
    pub fn add_term(&mut self, word: Word, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// Overwrites the coefficient of `word` (removing it when zero).
    pub fn set_coefficient(&mut self, word: Word, coeff: Rational) {
        if coeff.is_zero() {
            self.terms.remove(&word);
        } else {
            self.terms.insert(word, coeff);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Word, Rational> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        self.terms.keys().copied()
    }

    /// The common length of all words, `None` for the empty series.
    ///
    /// Errors if words of different lengths are present.
    pub fn degree(&self) -> Result<Option<usize>> {
        let mut words = self.terms.keys();
        let Some(first) = words.next() else {
            return Ok(None);
        };
        // Shortlex order: the last key is the longest.
        let last = self.terms.keys().next_back().unwrap_or(first);
        if first.len() != last.len() {
            return Err(Error::Inhomogeneous);
        }
        Ok(Some(first.len()))
    }

    pub fn is_homogeneous_of(&self, degree: usize) -> bool {
        self.terms.keys().all(|w| w.len() == degree)
    }

    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|w| w.len())
    }

    pub fn min_len(&self) -> Option<usize> {
        self.terms.keys().next().map(|w| w.len())
    }

    /// Terms whose words have exactly `degree` letters.
    pub fn component(&self, degree: usize) -> WordSeries {
        WordSeries {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == degree)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    /// Drops every word longer than `cap`.
    pub fn truncated(&self, cap: usize) -> WordSeries {
        WordSeries {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= cap)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, factor: &Rational) -> WordSeries {
        if factor.is_zero() {
            return WordSeries::new();
        }
        WordSeries {
            terms: self.terms.iter().map(|(w, c)| (*w, c * factor)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &WordSeries, factor: &Rational) {
        for (w, c) in &other.terms {
            self.add_term(*w, c * factor);
        }
    }
}

impl<'a> IntoIterator for &'a WordSeries {
    type Item = (&'a Word, &'a Rational);
    type IntoIter = btree_map::Iter<'a, Word, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl FromIterator<(Word, Rational)> for WordSeries {
    fn from_iter<I: IntoIterator<Item = (Word, Rational)>>(iter: I) -> Self {
        WordSeries::from_terms(iter)
    }
}

impl Add for &WordSeries {
    type Output = WordSeries;

    fn add(self, rhs: &WordSeries) -> WordSeries {
        series_add(self, rhs)
    }
}

impl Sub for &WordSeries {
    type Output = WordSeries;

    fn sub(self, rhs: &WordSeries) -> WordSeries {
        let mut out = self.clone();
        for (w, c) in rhs {
            out.add_term(*w, -c);
        }
        out
    }
}

impl Neg for &WordSeries {
    type Output = WordSeries;

    fn neg(self) -> WordSeries {
        WordSeries {
            terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect(),
        }
    }
}

pub fn series_add(s1: &WordSeries, s2: &WordSeries) -> WordSeries {
    let mut out = s1.clone();
    for (w, c) in s2 {
        out.add_term(*w, c.clone());
    }
    out
}

/// Concatenation product, discarding every product word longer than `degree_cap`.
///
/// Overflow is discarded while multiplying, so the full product is never formed.
pub fn series_mul(s1: &WordSeries, s2: &WordSeries, degree_cap: usize) -> WordSeries {
    let mut acc: FxHashMap<Word, Rational> = FxHashMap::default();
    for (w1, c1) in s1 {
        if w1.len() > degree_cap {
            break;
        }
        let room = degree_cap - w1.len();
        for (w2, c2) in s2 {
            // Shortlex: every later word is at least as long.
            if w2.len() > room {
                break;
            }
            let w = w1.concat(*w2).expect("capped product fits in a word");
            let prod = c1 * c2;
            match acc.entry(w) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(prod);
                }
                std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
            }
        }
    }
    WordSeries {
        terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    }
}

/// Word expansion of the left-normed commutator `[[…[[t₁,t₂],t₃],…],tₙ]`.
///
/// Built by the recursion `[X, t] = X·t − t·X` over successive prefixes.
pub fn expand_left_normed(w: Word) -> Result<WordSeries> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut x = WordSeries::single(w.prefix(1), Rational::from_integer(1.into()));
    for i in 1..w.len() {
        let t = w.prefix(i + 1).bits() >> i;
        let t = Word::new(t, 1).expect("single letter");
        let mut next = WordSeries::new();
        for (u, c) in &x {
            next.add_term(u.concat(t).expect("length bounded by w"), c.clone());
            next.add_term(t.concat(*u).expect("length bounded by w"), -c);
        }
        x = next;
    }
    Ok(x)
}

pub fn coefficient_sum(s: &WordSeries) -> Rational {
    s.iter().map(|(_, c)| c).sum()
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

    fn c2() -> WordSeries {
        series(&[("ba", 1, 2), ("ab", -1, 2)])
    }

    #[test]
    fn add_cancels_inverse() {
        let s = series_add(&series(&[("ab", 1, 2)]), &series(&[("ab", -1, 2)]));
        assert!(s.is_empty());
    }

    #[test]
    fn add_disjoint_supports() {
        let s = series_add(&series(&[("ba", 1, 2)]), &series(&[("ab", -1, 2)]));
        assert_eq!(s, c2());
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn add_doubles_c2() {
        assert_eq!(&c2() + &c2(), series(&[("ba", 1, 1), ("ab", -1, 1)]));
    }

    #[test]
    fn mul_concatenates() {
        let a = series(&[("a", 1, 1)]);
        let b = series(&[("b", 1, 1)]);
        assert_eq!(series_mul(&a, &b, 4), series(&[("ab", 1, 1)]));
        assert!(series_mul(&a, &b, 1).is_empty());
        let sum = series(&[("a", 1, 1), ("b", 1, 1)]);
        assert_eq!(
            series_mul(&sum, &sum, 2),
            series(&[("aa", 1, 1), ("ab", 1, 1), ("ba", 1, 1), ("bb", 1, 1)])
        );
    }

    #[test]
    fn left_normed_examples() {
        assert_eq!(
            expand_left_normed("ba".parse().unwrap()).unwrap(),
            series(&[("ba", 1, 1), ("ab", -1, 1)])
        );
        assert_eq!(
            expand_left_normed("a".parse().unwrap()).unwrap(),
            series(&[("a", 1, 1)])
        );
        assert_eq!(
            expand_left_normed("bab".parse().unwrap()).unwrap(),
            series(&[("bab", 2, 1), ("abb", -1, 1), ("bba", -1, 1)])
        );
        assert_eq!(expand_left_normed(Word::EMPTY), Err(Error::EmptyWord));
    }

    #[test]
    fn coefficient_sums() {
        assert!(coefficient_sum(&c2()).is_zero());
        assert!(coefficient_sum(&WordSeries::new()).is_zero());
        let c3 = series(&[
            ("bab", 2, 3),
            ("aba", -1, 3),
            ("abb", -1, 3),
            ("bba", -1, 3),
            ("baa", 1, 6),
            ("aab", 1, 6),
        ]);
        assert!(coefficient_sum(&c3).is_zero());
    }

    #[test]
    fn degree_and_components() {
        assert_eq!(c2().degree(), Ok(Some(2)));
        assert_eq!(WordSeries::new().degree(), Ok(None));
        let mixed = series(&[("a", 1, 1), ("ab", 1, 1)]);
        assert_eq!(mixed.degree(), Err(Error::Inhomogeneous));
        assert_eq!(mixed.component(2), series(&[("ab", 1, 1)]));
        assert_eq!(mixed.truncated(1), series(&[("a", 1, 1)]));
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        (0..=max_len).prop_flat_map(|len| {
            (0..(1u64 << len)).prop_map(move |bits| Word::new(bits, len).unwrap())
        })
    }

    fn arb_series(max_len: usize) -> impl Strategy<Value = WordSeries> {
        prop::collection::vec((arb_word(max_len), -5i64..=5, 1i64..=4), 0..6)
            .prop_map(|v| v.into_iter().map(|(w, n, d)| (w, rat(n, d))).collect())
    }

    proptest! {
        #[test]
        fn mul_associative_under_cap(
            a in arb_series(3), b in arb_series(3), c in arb_series(3)
        ) {
            let cap = 9;
            let left = series_mul(&series_mul(&a, &b, cap), &c, cap);
            let right = series_mul(&a, &series_mul(&b, &c, cap), cap);
            prop_assert_eq!(left, right);
        }

        #[test]
        fn add_commutative_associative(
            a in arb_series(3), b in arb_series(3), c in arb_series(3)
        ) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a + &(-&a)).is_empty());
            prop_assert!(a.iter().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn commutators_are_homogeneous_with_zero_sum(w in arb_word(10)) {
            prop_assume!(w.len() >= 2);
            let e = expand_left_normed(w).unwrap();
            prop_assert!(e.is_homogeneous_of(w.len()));
            prop_assert!(coefficient_sum(&e).is_zero());
            prop_assert!(e.len() <= 1 << (w.len() - 1));
        }
    }
}
