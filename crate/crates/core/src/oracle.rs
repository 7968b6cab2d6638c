//! Brute-force identities in the free algebra truncated at a degree cap.
//!
//! Nothing here touches the matrix machinery: both sides of the Zassenhaus
//! product and of the BCH identity are expanded as word series and compared
//! coefficient by coefficient.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{inverse_factorial, series_mul, Rational, Word, WordSeries};
use crate::error::{Error, Result};
use crate::report::VerificationReport;

/// An element of the free algebra modulo words longer than `cap`.
///
/// The empty word carries the scalar part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSeries {
    cap: usize,
    terms: WordSeries,
}

impl GradedSeries {
    /// Wraps `terms`, discarding words longer than `cap`.
    pub fn new(terms: &WordSeries, cap: usize) -> Self {
        GradedSeries {
            cap,
            terms: terms.truncated(cap),
        }
    }

    pub fn one(cap: usize) -> Self {
        GradedSeries {
            cap,
            terms: WordSeries::single(Word::EMPTY, Rational::one()),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> &WordSeries {
        &self.terms
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.coefficient(&Word::EMPTY)
    }

    /// Product in the quotient; the cap of the result is the smaller cap.
    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        let cap = self.cap.min(other.cap);
        GradedSeries {
            cap,
            terms: series_mul(&self.terms, &other.terms, cap),
        }
    }
}

/// `Σ_{k=0}^{cap} sᵏ/k!` with every product truncated at `cap`.
pub fn truncated_exp(s: &GradedSeries, cap: usize) -> Result<GradedSeries> {
    if !s.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let s = GradedSeries::new(&s.terms, cap);
    let mut sum = GradedSeries::one(cap).terms;
    let mut power = GradedSeries::one(cap);
    for k in 1..=cap {
        power = power.mul(&s);
        if power.terms.is_empty() {
            break;
        }
        sum.add_scaled(&power.terms, &inverse_factorial(k));
    }
    Ok(GradedSeries { cap, terms: sum })
}

fn letter(bits: u64) -> WordSeries {
    WordSeries::single(Word::new(bits, 1).expect("single letter"), Rational::one())
}

fn collect_orders<'a, I>(series: I, cap: usize) -> Result<BTreeMap<usize, &'a WordSeries>>
where
    I: IntoIterator<Item = (usize, &'a WordSeries)>,
{
    let map: BTreeMap<usize, &WordSeries> = series.into_iter().collect();
    if let Some(missing) = (2..=cap).find(|n| !map.contains_key(n)) {
        return Err(Error::MissingOrder(missing));
    }
    Ok(map)
}

/// Checks `e^{a+b} = e^a · e^b · ∏_{n=2}^{N} e^{cₙ}` modulo words longer than `N`.
///
/// Orders above `N` in the input are ignored; every order `2..=N` must be present.
pub fn zassenhaus_product_check<'a, I>(exponents: I, cap: usize) -> Result<VerificationReport>
where
    I: IntoIterator<Item = (usize, &'a WordSeries)>,
{
    let exponents = collect_orders(exponents, cap)?;
    let (a, b) = (letter(0), letter(1));
    let lhs = truncated_exp(&GradedSeries::new(&(&a + &b), cap), cap)?;
    let mut rhs = truncated_exp(&GradedSeries::new(&a, cap), cap)?
        .mul(&truncated_exp(&GradedSeries::new(&b, cap), cap)?);
    for n in 2..=cap {
        rhs = rhs.mul(&truncated_exp(&GradedSeries::new(exponents[&n], cap), cap)?);
    }
    Ok(VerificationReport::compare(lhs.terms(), rhs.terms()))
}

/// Checks `e^x · e^y = e^{x + y + Σ_{n=2}^{N} zₙ}` modulo words longer than `N`.
pub fn bch_check<'a, I>(terms: I, cap: usize) -> Result<VerificationReport>
where
    I: IntoIterator<Item = (usize, &'a WordSeries)>,
{
    let terms = collect_orders(terms, cap)?;
    let (x, y) = (letter(0), letter(1));
    let lhs = truncated_exp(&GradedSeries::new(&x, cap), cap)?
        .mul(&truncated_exp(&GradedSeries::new(&y, cap), cap)?);
    let mut exponent = &x + &y;
    for n in 2..=cap {
        exponent = &exponent + terms[&n];
    }
    let rhs = truncated_exp(&GradedSeries::new(&exponent, cap), cap)?;
    Ok(VerificationReport::compare(lhs.terms(), rhs.terms()))
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

    fn known_exponents() -> BTreeMap<usize, WordSeries> {
        let c2 = series(&[("ba", 1, 2), ("ab", -1, 2)]);
        let c3 = series(&[
            ("bab", 2, 3),
            ("aba", -1, 3),
            ("abb", -1, 3),
            ("bba", -1, 3),
            ("baa", 1, 6),
            ("aab", 1, 6),
        ]);
        let c4 = series(&[
            ("aaab", -1, 24),
            ("aaba", 1, 8),
            ("aabb", 1, 8),
            ("abaa", -1, 8),
            ("abab", -1, 4),
            ("abbb", -1, 8),
            ("baaa", 1, 24),
            ("baba", 1, 4),
            ("babb", 3, 8),
            ("bbaa", -1, 8),
            ("bbab", -3, 8),
            ("bbba", 1, 8),
        ]);
        BTreeMap::from([(2, c2), (3, c3), (4, c4)])
    }

    fn iter(map: &BTreeMap<usize, WordSeries>) -> impl Iterator<Item = (usize, &WordSeries)> {
        map.iter().map(|(k, v)| (*k, v))
    }

    #[test]
    fn exp_examples() {
        let e = truncated_exp(&GradedSeries::new(&WordSeries::new(), 5), 5).unwrap();
        assert_eq!(e, GradedSeries::one(5));
        let e = truncated_exp(&GradedSeries::new(&series(&[("a", 1, 1)]), 3), 3).unwrap();
        assert_eq!(
            e.terms(),
            &series(&[("", 1, 1), ("a", 1, 1), ("aa", 1, 2), ("aaa", 1, 6)])
        );
        let e = truncated_exp(
            &GradedSeries::new(&series(&[("a", 1, 1), ("b", 1, 1)]), 2),
            2,
        )
        .unwrap();
        assert_eq!(
            e.terms(),
            &series(&[
                ("", 1, 1),
                ("a", 1, 1),
                ("b", 1, 1),
                ("aa", 1, 2),
                ("ab", 1, 2),
                ("ba", 1, 2),
                ("bb", 1, 2)
            ])
        );
    }

    #[test]
    fn exp_rejects_constant_term() {
        let s = GradedSeries::one(3);
        assert_eq!(truncated_exp(&s, 3), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn known_exponents_satisfy_product_formula() {
        let map = known_exponents();
        assert!(zassenhaus_product_check(iter(&map), 2).unwrap().passed);
        assert!(zassenhaus_product_check(iter(&map), 4).unwrap().passed);
    }

    #[test]
    fn sign_flip_detected_at_its_degree() {
        let mut map = known_exponents();
        let flipped = -&map[&3];
        map.insert(3, flipped);
        let report = zassenhaus_product_check(iter(&map), 3).unwrap();
        assert!(!report.passed);
        assert_eq!(report.failing_degree, Some(3));
        assert!(report.diff.is_homogeneous_of(3));
    }

    #[test]
    fn incomplete_input_rejected() {
        let mut map = known_exponents();
        map.remove(&3);
        assert_eq!(
            zassenhaus_product_check(iter(&map), 4),
            Err(Error::MissingOrder(3))
        );
        assert_eq!(bch_check(iter(&map), 3), Err(Error::MissingOrder(3)));
    }

    #[test]
    fn bch_low_orders() {
        let z2 = series(&[("ab", 1, 2), ("ba", -1, 2)]);
        let map = BTreeMap::from([(2, z2.clone())]);
        assert!(bch_check(iter(&map), 2).unwrap().passed);
        let map = BTreeMap::from([(2, z2), (3, WordSeries::new())]);
        let report = bch_check(iter(&map), 3).unwrap();
        assert!(!report.passed);
        assert_eq!(report.failing_degree, Some(3));
    }

    #[test]
    fn trivial_caps_pass() {
        let empty = BTreeMap::new();
        assert!(zassenhaus_product_check(iter(&empty), 1).unwrap().passed);
        assert!(bch_check(iter(&empty), 0).unwrap().passed);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn truncation_is_consistent(
            raw in prop::collection::vec((1usize..=3, any::<u64>(), -3i64..=3), 0..5),
            cap in 0usize..=6,
            lower in 0usize..=6,
        ) {
            let lower = lower.min(cap);
            let s: WordSeries = raw
                .into_iter()
                .map(|(len, bits, c)| (Word::new(bits & ((1 << len) - 1), len).unwrap(), rat(c, 2)))
                .collect();
            let full = truncated_exp(&GradedSeries::new(&s, cap), cap).unwrap();
            let low = truncated_exp(&GradedSeries::new(&s, lower), lower).unwrap();
            prop_assert_eq!(full.terms().truncated(lower), low.terms().clone());
        }
    }
}
