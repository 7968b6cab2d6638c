//! Extraction of Zassenhaus exponents and BCH terms from triangular matrix products.
//!
//! For order `n` all matrices have size `n + 1`. The Zassenhaus exponent is
//!
//! ```text
//! cₙ = U( (e^{−C_{n−1}} ··· e^{−C₂} · L · K · H)_{1, n+1} )
//! ```
//!
//! where `C_m` is `c_m` with `a ↦ P`, `b ↦ Q`. Only the first row of the
//! product is ever needed, so it is carried as a row vector and multiplied
//! on the right by each factor in turn. Each `e^{−C_m}` is applied as a
//! Taylor series on the row, since `C_m` occupies a single superdiagonal.
//!
//! BCH terms come from the first row of `log(e^P · e^Q)` the same way.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{coefficient_sum, Letter, Rational, Word, WordSeries};
use crate::budget::{Budget, BudgetClock};
use crate::error::{Error, Result};
use crate::tau::{
    build_h, build_k, build_l, build_p, build_q, mat_mul, nilpotent_exp, nilpotent_log, row_mul,
    series_to_matrix, u_translate, MultilinearPoly, TauMonomial, TriMatrix,
};

pub const ENGINE_VERSION: &str = concat!("zassenhaus-core ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub engine_version: String,
    pub compute_time: Duration,
}

impl Provenance {
    pub fn now(compute_time: Duration) -> Self {
        Provenance {
            engine_version: ENGINE_VERSION.to_owned(),
            compute_time,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub series: WordSeries,
    pub provenance: Provenance,
}

/// Which of the two series families an entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesKind {
    Zassenhaus,
    Bch,
}

impl SeriesKind {
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Zassenhaus => "zassenhaus",
            SeriesKind::Bch => "bch",
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Append-only store of computed orders.
#[derive(Debug, Clone, Default)]
pub struct SeriesCache {
    zassenhaus: BTreeMap<usize, CacheEntry>,
    bch: BTreeMap<usize, CacheEntry>,
}

impl SeriesCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn map(&self, kind: SeriesKind) -> &BTreeMap<usize, CacheEntry> {
        match kind {
            SeriesKind::Zassenhaus => &self.zassenhaus,
            SeriesKind::Bch => &self.bch,
        }
    }

    pub fn get(&self, kind: SeriesKind, order: usize) -> Option<&CacheEntry> {
        self.map(kind).get(&order)
    }

    pub fn zassenhaus(&self, order: usize) -> Option<&WordSeries> {
        self.zassenhaus.get(&order).map(|e| &e.series)
    }

    pub fn bch(&self, order: usize) -> Option<&WordSeries> {
        self.bch.get(&order).map(|e| &e.series)
    }

    /// Stores an entry. Entries are never replaced, and the series must be
    /// homogeneous of the given order.
    pub fn insert(&mut self, kind: SeriesKind, order: usize, entry: CacheEntry) -> Result<()> {
        if order < 2 {
            return Err(Error::OrderTooLow { order, min: 2 });
        }
        if !entry.series.is_homogeneous_of(order) {
            return Err(Error::Inhomogeneous);
        }
        let map = match kind {
            SeriesKind::Zassenhaus => &mut self.zassenhaus,
            SeriesKind::Bch => &mut self.bch,
        };
        if map.contains_key(&order) {
            return Err(Error::AlreadyCached(order));
        }
        map.insert(order, entry);
        Ok(())
    }

    pub fn iter(&self, kind: SeriesKind) -> impl Iterator<Item = (usize, &WordSeries)> {
        self.map(kind).iter().map(|(k, e)| (*k, &e.series))
    }

    /// Highest `m` such that every order `2..=m` is present.
    pub fn contiguous_max(&self, kind: SeriesKind) -> Option<usize> {
        let map = self.map(kind);
        (2..).take_while(|m| map.contains_key(m)).last()
    }
}

/// A violated structural property of a computed exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantViolation {
    WrongLength(Word),
    NonzeroCoefficientSum(Rational),
    PureWord(Word),
}

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantViolation::WrongLength(w) => write!(f, "word {w} has the wrong length"),
            InvariantViolation::NonzeroCoefficientSum(s) => write!(f, "coefficient sum is {s}"),
            InvariantViolation::PureWord(w) => write!(f, "pure word {w} has nonzero coefficient"),
        }
    }
}

/// Homogeneity, zero coefficient sum, and vanishing pure words.
///
/// These hold for every `cₙ` and every `zₙ` with `n ≥ 2`.
pub fn exponent_invariants(order: usize, s: &WordSeries) -> Vec<InvariantViolation> {
    let mut out: Vec<InvariantViolation> = s
        .words()
        .filter(|w| w.len() != order)
        .map(InvariantViolation::WrongLength)
        .collect();
    let sum = coefficient_sum(s);
    if !sum.is_zero() {
        out.push(InvariantViolation::NonzeroCoefficientSum(sum));
    }
    for letter in [Letter::A, Letter::B] {
        if let Ok(w) = Word::repeated(letter, order) {
            if !s.coefficient(&w).is_zero() {
                out.push(InvariantViolation::PureWord(w));
            }
        }
    }
    out
}

fn unit_row(size: usize) -> Vec<MultilinearPoly> {
    let mut row = vec![MultilinearPoly::zero(size - 1); size];
    row[0] = MultilinearPoly::one(size - 1);
    row
}

fn range_ok(row: &[MultilinearPoly]) -> bool {
    row.iter().enumerate().all(|(j, p)| p.supported_in(0, j))
}

fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OrderTooLow { order: n, min: 2 });
    }
    if n > crate::algebra::MAX_WORD_LEN {
        return Err(Error::WordTooLong {
            len: n,
            max: crate::algebra::MAX_WORD_LEN,
        });
    }
    Ok(())
}

/// `row · exp(−C)` where `C` has the single band `m` with entry `(i, i+m)` equal
/// to `poly` shifted by `i`.
fn apply_exp_neg_band(row: &mut [MultilinearPoly], poly: &MultilinearPoly, m: usize) -> Result<()> {
    let size = row.len();
    let nvars = size - 1;
    if m >= size {
        return Ok(());
    }
    let band: Vec<MultilinearPoly> = (0..size - m).map(|i| poly.shifted(i, nvars)).collect();
    let mut term = row.to_vec();
    for k in 1.. {
        let mut next = vec![MultilinearPoly::zero(nvars); size];
        let mut any = false;
        for i in 0..size - m {
            if !term[i].is_zero() {
                next[i + m].add_product(&term[i], &band[i])?;
                any = true;
            }
        }
        if !any || next.iter().all(MultilinearPoly::is_zero) {
            break;
        }
        let factor = Rational::new(BigInt::from(-1), BigInt::from(k));
        for (r, t) in row.iter_mut().zip(&mut next) {
            *t = t.scaled(&factor);
            r.add_assign(t);
        }
        term = next;
    }
    Ok(())
}

/// `L · K · H` at size `n + 1`.
pub fn lkh_matrix(n: usize) -> Result<TriMatrix> {
    mat_mul(&mat_mul(&build_l(n)?, &build_k(n)?)?, &build_h(n)?)
}

fn lower_series<'a>(
    lower: &'a impl Fn(usize) -> Option<&'a WordSeries>,
    m: usize,
) -> Result<&'a WordSeries> {
    lower(m).ok_or(Error::MissingOrder(m))
}

fn final_row_with<'a>(
    n: usize,
    lower: &'a impl Fn(usize) -> Option<&'a WordSeries>,
    clock: Option<&BudgetClock>,
) -> Result<Vec<MultilinearPoly>> {
    check_order(n)?;
    let size = n + 1;
    let budget_check = |clock: Option<&BudgetClock>| -> Result<()> {
        if let Some(c) = clock {
            c.check().map_err(|breach| Error::BudgetExceeded {
                order: n,
                last_completed: None,
                breach,
            })?;
        }
        Ok(())
    };
    let mut row = unit_row(size);
    for m in (2..n).rev() {
        let s = lower_series(lower, m)?;
        let poly = MultilinearPoly::from_terms(
            n,
            s.iter()
                .map(|(w, c)| (TauMonomial::from_mask(w.bits()), c.clone())),
        );
        if !s.is_homogeneous_of(m) {
            return Err(Error::Inhomogeneous);
        }
        apply_exp_neg_band(&mut row, &poly, m)?;
        debug_assert!(range_ok(&row));
        budget_check(clock)?;
    }
    let row = row_mul(&row, &lkh_matrix(n)?)?;
    budget_check(clock)?;
    Ok(row)
}

/// First row of `e^{−C_{n−1}} ··· e^{−C₂} · L · K · H` at size `n + 1`.
///
/// Requires orders `2..n` in the cache.
pub fn zassenhaus_final_row(n: usize, cache: &SeriesCache) -> Result<Vec<MultilinearPoly>> {
    final_row_with(n, &|m| cache.zassenhaus(m), None)
}

/// The `(1, n+1)` entry of the same product computed with full matrices,
/// `nilpotent_exp` and `mat_mul`, for cross-checking the row evaluation.
pub fn zassenhaus_corner_dense(n: usize, cache: &SeriesCache) -> Result<MultilinearPoly> {
    check_order(n)?;
    let size = n + 1;
    let mut acc = TriMatrix::identity(size);
    for m in (2..n).rev() {
        let s = cache.zassenhaus(m).ok_or(Error::MissingOrder(m))?;
        let factor = nilpotent_exp(&series_to_matrix(s, size)?.negated())?;
        acc = mat_mul(&acc, &factor)?;
    }
    acc = mat_mul(&acc, &lkh_matrix(n)?)?;
    Ok(acc.get(0, n).clone())
}

fn exponent_from_row(n: usize, row: &[MultilinearPoly]) -> Result<WordSeries> {
    if !row[0].is_one() {
        return Err(Error::Structure(format!("order {n}: (1,1) entry is not 1")));
    }
    if let Some(j) = (1..n).find(|&j| !row[j].is_zero()) {
        return Err(Error::Structure(format!(
            "order {n}: entry (1,{}) is nonzero",
            j + 1
        )));
    }
    Ok(u_translate(&row[n]))
}

fn compute_zassenhaus(
    n: usize,
    cache: &SeriesCache,
    clock: Option<&BudgetClock>,
) -> Result<WordSeries> {
    let row = final_row_with(n, &|m| cache.zassenhaus(m), clock)?;
    let s = exponent_from_row(n, &row)?;
    debug_assert!(exponent_invariants(n, &s).is_empty());
    Ok(s)
}

/// Computes every missing Zassenhaus order up to `max_order`, in ascending order.
///
/// `on_complete` runs after each newly stored order; its error aborts the run. On a budget breach the
/// cache keeps every completed order and the error names the last one.
pub fn extend_zassenhaus<F, E>(
    cache: &mut SeriesCache,
    max_order: usize,
    budget: Budget,
    mut on_complete: F,
) -> Result<(), E>
where
    F: FnMut(usize, &CacheEntry) -> Result<(), E>,
    E: From<Error>,
{
    check_order(max_order)?;
    let clock = budget.start();
    let clock = (!budget.is_unlimited()).then_some(&clock);
    for n in 2..=max_order {
        if cache.zassenhaus(n).is_some() {
            continue;
        }
        let started = Instant::now();
        let series = compute_zassenhaus(n, cache, clock).map_err(|e| match e {
            Error::BudgetExceeded { order, breach, .. } => Error::BudgetExceeded {
                order,
                last_completed: cache.contiguous_max(SeriesKind::Zassenhaus),
                breach,
            },
            other => other,
        })?;
        let entry = CacheEntry {
            series,
            provenance: Provenance::now(started.elapsed()),
        };
        cache.insert(SeriesKind::Zassenhaus, n, entry)?;
        on_complete(
            n,
            cache.get(SeriesKind::Zassenhaus, n).expect("just inserted"),
        )?;
    }
    Ok(())
}

fn no_callback(_: usize, _: &CacheEntry) -> Result<()> {
    Ok(())
}

/// `cₙ`, computing and caching any missing lower orders first.
pub fn zassenhaus_exponent(n: usize, cache: &mut SeriesCache) -> Result<&WordSeries> {
    extend_zassenhaus(cache, n, Budget::unlimited(), no_callback)?;
    Ok(cache.zassenhaus(n).expect("order computed"))
}

/// A fresh cache holding `c₂..c_{max_order}`.
pub fn zassenhaus_all(max_order: usize) -> Result<SeriesCache> {
    let mut cache = SeriesCache::new();
    extend_zassenhaus(&mut cache, max_order, Budget::unlimited(), no_callback)?;
    Ok(cache)
}

fn exp_p_exp_q(n: usize) -> Result<TriMatrix> {
    mat_mul(&nilpotent_exp(&build_p(n)?)?, &nilpotent_exp(&build_q(n)?)?)
}

/// First row of `log(e^P · e^Q)` at size `n + 1`.
pub fn bch_log_row(n: usize) -> Result<Vec<MultilinearPoly>> {
    check_order(n)?;
    let size = n + 1;
    let f = exp_p_exp_q(n)?;
    let nil = f.sub(&TriMatrix::identity(size))?;
    let mut power = nil.row(0);
    let mut sum = power.clone();
    for k in 2..size {
        power = row_mul(&power, &nil)?;
        if power.iter().all(MultilinearPoly::is_zero) {
            break;
        }
        let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
        let factor = Rational::new(sign.into(), k.into());
        for (s, p) in sum.iter_mut().zip(&power) {
            s.add_scaled(p, &factor);
        }
    }
    Ok(sum)
}

/// `zₙ` of `log(e^x e^y) = x + y + Σ zₙ`; `a` reads as `x` and `b` as `y`.
pub fn bch_term(n: usize) -> Result<WordSeries> {
    let row = bch_log_row(n)?;
    Ok(u_translate(&row[n]))
}

/// `zₙ` via the full-matrix `nilpotent_log`.
pub fn bch_term_dense(n: usize) -> Result<WordSeries> {
    check_order(n)?;
    let g = nilpotent_log(&exp_p_exp_q(n)?)?;
    Ok(u_translate(g.get(0, n)))
}

/// Computes every missing BCH order up to `max_order`.
pub fn extend_bch<F, E>(
    cache: &mut SeriesCache,
    max_order: usize,
    budget: Budget,
    mut on_complete: F,
) -> Result<(), E>
where
    F: FnMut(usize, &CacheEntry) -> Result<(), E>,
    E: From<Error>,
{
    check_order(max_order)?;
    let clock = budget.start();
    for n in 2..=max_order {
        if cache.bch(n).is_some() {
            continue;
        }
        if !budget.is_unlimited() {
            clock.check().map_err(|breach| Error::BudgetExceeded {
                order: n,
                last_completed: cache.contiguous_max(SeriesKind::Bch),
                breach,
            })?;
        }
        let started = Instant::now();
        let series = bch_term(n)?;
        let entry = CacheEntry {
            series,
            provenance: Provenance::now(started.elapsed()),
        };
        cache.insert(SeriesKind::Bch, n, entry)?;
        on_complete(n, cache.get(SeriesKind::Bch, n).expect("just inserted"))?;
    }
    Ok(())
}
