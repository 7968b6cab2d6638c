use crate::algebra::WordSeries;

/// Outcome of an exact equality check between two series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub passed: bool,
    /// Lowest degree at which the two sides differ.
    pub failing_degree: Option<usize>,
    /// `expected − actual`, restricted to `failing_degree`.
    pub diff: WordSeries,
}

impl VerificationReport {
    /// Compares `expected` with `actual`, keeping only the lowest-degree part of the difference.
    pub fn compare(expected: &WordSeries, actual: &WordSeries) -> Self {
        let diff = expected - actual;
        match diff.min_len() {
            None => VerificationReport {
                passed: true,
                failing_degree: None,
                diff,
            },
            Some(d) => VerificationReport {
                passed: false,
                failing_degree: Some(d),
                diff: diff.component(d),
            },
        }
    }
}
