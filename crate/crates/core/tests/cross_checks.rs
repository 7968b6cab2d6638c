//! Engine output against the free-algebra oracle and the commutator translations.

use std::sync::OnceLock;

use proptest::prelude::*;
use zassenhaus_core::algebra::rat;
use zassenhaus_core::commutator::{
    dynkin_translate, oteo_ab_translate, oteo_ba_translate, verify_translation,
};
use zassenhaus_core::engine::{
    bch_term, exponent_invariants, zassenhaus_all, SeriesCache, SeriesKind,
};
use zassenhaus_core::oracle::{bch_check, zassenhaus_product_check};
use zassenhaus_core::{Word, WordSeries};

const N: usize = 8;

fn cache() -> &'static SeriesCache {
    static CACHE: OnceLock<SeriesCache> = OnceLock::new();
    CACHE.get_or_init(|| zassenhaus_all(10).unwrap())
}

fn bch_terms() -> &'static Vec<(usize, WordSeries)> {
    static TERMS: OnceLock<Vec<(usize, WordSeries)>> = OnceLock::new();
    TERMS.get_or_init(|| (2..=N).map(|n| (n, bch_term(n).unwrap())).collect())
}

#[test]
fn product_formula_holds_to_order_eight() {
    let report = zassenhaus_product_check(cache().iter(SeriesKind::Zassenhaus), N).unwrap();
    assert!(report.passed, "{report:?}");
}

#[test]
fn bch_identity_holds_to_order_eight() {
    let report = bch_check(bch_terms().iter().map(|(n, s)| (*n, s)), N).unwrap();
    assert!(report.passed, "{report:?}");
}

#[test]
fn translations_reproduce_exponents() {
    for n in 2..=10 {
        let c = cache().zassenhaus(n).unwrap();
        assert!(exponent_invariants(n, c).is_empty());
        let dynkin = dynkin_translate(c).unwrap();
        let ba = oteo_ba_translate(c).unwrap();
        let ab = oteo_ab_translate(c).unwrap();
        for (name, cs) in [("dynkin", &dynkin), ("ba", &ba), ("ab", &ab)] {
            let report = verify_translation(c, cs);
            assert!(report.passed, "{name} at order {n}: {:?}", report.diff);
        }
        if n >= 3 {
            assert!(ba.len() < dynkin.len(), "order {n}");
        }
    }
}

#[test]
fn dynkin_reproduces_bch_terms() {
    for (n, z) in bch_terms() {
        let report = verify_translation(z, &dynkin_translate(z).unwrap());
        assert!(report.passed, "order {n}");
    }
}

fn mutate(series: &WordSeries, pick: usize, bits: u64, delta: (i64, i64), n: usize) -> WordSeries {
    let mut out = series.clone();
    let word = if pick.is_multiple_of(2) && !series.is_empty() {
        series.words().nth(pick / 2 % series.len()).unwrap()
    } else {
        Word::new(bits & ((1 << n) - 1), n).unwrap()
    };
    let old = out.coefficient(&word);
    out.set_coefficient(word, old + rat(delta.0, delta.1));
    out
}

fn nonzero_delta() -> impl Strategy<Value = (i64, i64)> {
    (-7i64..=7, 1i64..=30).prop_filter("nonzero", |(p, _)| *p != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn oracle_detects_every_single_coefficient_mutation(
        n in 2usize..=N, pick in any::<usize>(), bits in any::<u64>(), delta in nonzero_delta()
    ) {
        let mut map: std::collections::BTreeMap<usize, WordSeries> =
            (2..=N).map(|m| (m, cache().zassenhaus(m).unwrap().clone())).collect();
        let mutated = mutate(&map[&n], pick, bits, delta, n);
        prop_assert!(!(&mutated - &map[&n]).is_empty());
        map.insert(n, mutated);
        let report = zassenhaus_product_check(map.iter().map(|(k, v)| (*k, v)), N).unwrap();
        prop_assert!(!report.passed);
        prop_assert_eq!(report.failing_degree, Some(n));
    }

    #[test]
    fn bch_oracle_detects_every_single_coefficient_mutation(
        n in 2usize..=N, pick in any::<usize>(), bits in any::<u64>(), delta in nonzero_delta()
    ) {
        let mut terms = bch_terms().clone();
        let mutated = mutate(&terms[n - 2].1, pick, bits, delta, n);
        prop_assert!(!(&mutated - &terms[n - 2].1).is_empty());
        terms[n - 2].1 = mutated;
        let report = bch_check(terms.iter().map(|(k, v)| (*k, v)), N).unwrap();
        prop_assert!(!report.passed);
        prop_assert_eq!(report.failing_degree, Some(n));
    }
}
