//! The `compute`, `verify` and `bench` commands, writing to any sink.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use zassenhaus_core::budget::{peak_rss_bytes, Budget};
use zassenhaus_core::commutator::{
    dynkin_translate, oteo_ab_translate, oteo_ba_translate, verify_translation,
};
use zassenhaus_core::engine::{
    exponent_invariants, extend_bch, extend_zassenhaus, CacheEntry, SeriesCache, SeriesKind,
};
use zassenhaus_core::oracle::{bch_check, zassenhaus_product_check};
use zassenhaus_core::{Error, VerificationReport, WordSeries};

use crate::cache::DiskCache;
use crate::error::CliError;
use crate::format::{render, to_text, Format, Rendered, Representation};

#[derive(Debug, Clone)]
pub struct ComputeConfig {
    pub kind: SeriesKind,
    pub order: usize,
    pub representation: Representation,
    pub format: Format,
    pub cache: Option<PathBuf>,
    pub budget: Budget,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max_order: usize,
    pub cache: Option<PathBuf>,
    pub budget: Budget,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub kind: SeriesKind,
    pub max_order: usize,
    pub budget: Budget,
}

fn stdout_error(e: std::io::Error) -> CliError {
    CliError::io("<output>", e)
}

fn check_order(order: usize) -> Result<(), CliError> {
    if order < 2 {
        return Err(Error::OrderTooLow { order, min: 2 }.into());
    }
    Ok(())
}

/// The in-memory cache, optionally mirrored to a directory.
struct Session {
    disk: Option<DiskCache>,
    cache: SeriesCache,
}

impl Session {
    fn open(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            Some(p) => {
                let disk = DiskCache::open(p)?;
                let cache = disk.load()?;
                Ok(Session {
                    disk: Some(disk),
                    cache,
                })
            }
            None => Ok(Session {
                disk: None,
                cache: SeriesCache::new(),
            }),
        }
    }

    /// Computes missing orders up to `max_order`, persisting each one as it completes.
    fn extend(
        &mut self,
        kind: SeriesKind,
        max_order: usize,
        budget: Budget,
    ) -> Result<(), CliError> {
        let disk = self.disk.as_ref();
        let persist = |n: usize, entry: &CacheEntry| match disk {
            Some(d) => d.store(kind, n, entry),
            None => Ok(()),
        };
        match kind {
            SeriesKind::Zassenhaus => {
                extend_zassenhaus(&mut self.cache, max_order, budget, persist)
            }
            SeriesKind::Bch => extend_bch(&mut self.cache, max_order, budget, persist),
        }
    }
}

/// Applies the requested commutator translation.
pub fn translate(
    kind: SeriesKind,
    series: &WordSeries,
    rep: Representation,
) -> Result<Rendered, CliError> {
    let selective = matches!(
        rep,
        Representation::BaCommutators | Representation::AbCommutators
    );
    if kind == SeriesKind::Bch && selective {
        return Err(CliError::Usage(format!(
            "{} is defined for zassenhaus series only",
            rep.name()
        )));
    }
    Ok(match rep {
        Representation::Words => Rendered::Words(series.clone()),
        Representation::Dynkin => Rendered::Commutators(rep, dynkin_translate(series)?),
        Representation::BaCommutators => Rendered::Commutators(rep, oteo_ba_translate(series)?),
        Representation::AbCommutators => Rendered::Commutators(rep, oteo_ab_translate(series)?),
    })
}

pub fn cmd_compute(cfg: &ComputeConfig, out: &mut dyn Write) -> Result<(), CliError> {
    check_order(cfg.order)?;
    if cfg.kind == SeriesKind::Bch {
        // Reject an unsupported representation before doing any work.
        translate(cfg.kind, &WordSeries::new(), cfg.representation)?;
    }
    let mut session = Session::open(cfg.cache.as_deref())?;
    session.extend(cfg.kind, cfg.order, cfg.budget)?;
    let series = &session
        .cache
        .get(cfg.kind, cfg.order)
        .expect("order computed")
        .series;
    let rendered = translate(cfg.kind, series, cfg.representation)?;
    out.write_all(render(&rendered, cfg.kind, cfg.order, cfg.format).as_bytes())
        .map_err(stdout_error)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn of(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "-",
        }
    }
}

const CHECKS: [&str; 5] = [
    "invariants",
    "dynkin",
    "ba-commutators",
    "ab-commutators",
    "oracle",
];

/// What went wrong in the first failing check, for the report footer.
enum Failure {
    Invariants(Vec<String>),
    Diff(WordSeries),
}

/// Every failed check of the first failing order.
struct FirstFailure {
    kind: SeriesKind,
    order: usize,
    failures: Vec<(&'static str, Failure)>,
}

fn oracle_report(
    kind: SeriesKind,
    cache: &SeriesCache,
    cap: usize,
) -> Result<VerificationReport, CliError> {
    let series = cache.iter(kind).filter(|(n, _)| *n <= cap);
    Ok(match kind {
        SeriesKind::Zassenhaus => zassenhaus_product_check(series, cap)?,
        SeriesKind::Bch => bch_check(series, cap)?,
    })
}

pub fn cmd_verify(cfg: &VerifyConfig, out: &mut dyn Write) -> Result<(), CliError> {
    check_order(cfg.max_order)?;
    let mut session = Session::open(cfg.cache.as_deref())?;
    let kinds = [SeriesKind::Zassenhaus, SeriesKind::Bch];
    for kind in kinds {
        session.extend(kind, cfg.max_order, cfg.budget)?;
    }
    let cache = &session.cache;

    let mut table = format!("{:<10}  {:>5}  {:>6}", "kind", "order", "terms");
    for check in CHECKS {
        table.push_str(&format!("  {check:>14}"));
    }
    table.push('\n');
    let mut first: Option<FirstFailure> = None;
    let mut note = |kind, order, check, failure| {
        let f = first.get_or_insert(FirstFailure {
            kind,
            order,
            failures: Vec::new(),
        });
        if (f.kind, f.order) == (kind, order) {
            f.failures.push((check, failure));
        }
    };

    for kind in kinds {
        let oracle = oracle_report(kind, cache, cfg.max_order)?;
        for n in 2..=cfg.max_order {
            let series = &cache.get(kind, n).expect("order computed").series;
            let mut statuses = [Status::Skipped; 5];

            let violations = exponent_invariants(n, series);
            statuses[0] = Status::of(violations.is_empty());
            if !violations.is_empty() {
                note(
                    kind,
                    n,
                    CHECKS[0],
                    Failure::Invariants(violations.iter().map(|v| v.to_string()).collect()),
                );
            }

            let reps = [
                Representation::Dynkin,
                Representation::BaCommutators,
                Representation::AbCommutators,
            ];
            for (slot, rep) in reps.into_iter().enumerate() {
                let checked = match translate(kind, series, rep) {
                    Ok(Rendered::Commutators(_, cs)) => verify_translation(series, &cs),
                    Ok(Rendered::Words(_)) => unreachable!("commutator representation"),
                    Err(CliError::Usage(_)) => continue,
                    Err(CliError::Engine(Error::Inhomogeneous)) => VerificationReport {
                        passed: false,
                        failing_degree: None,
                        diff: WordSeries::new(),
                    },
                    Err(e) => return Err(e),
                };
                statuses[slot + 1] = Status::of(checked.passed);
                if !checked.passed {
                    note(kind, n, CHECKS[slot + 1], Failure::Diff(checked.diff));
                }
            }

            statuses[4] = match oracle.failing_degree {
                Some(d) if d == n => Status::Fail,
                Some(d) if d < n => Status::Skipped,
                _ => Status::Pass,
            };
            if statuses[4] == Status::Fail {
                note(kind, n, CHECKS[4], Failure::Diff(oracle.diff.clone()));
            }

            table.push_str(&format!("{:<10}  {n:>5}  {:>6}", kind.name(), series.len()));
            for s in statuses {
                table.push_str(&format!("  {:>14}", s.label()));
            }
            table.push('\n');
        }
    }

    match &first {
        None => table.push_str("all checks passed\n"),
        Some(f) => {
            table.push_str(&format!(
                "first failure: {} order {}\n",
                f.kind.name(),
                f.order
            ));
            for (check, failure) in &f.failures {
                table.push_str(&format!("  {check}:"));
                match failure {
                    Failure::Invariants(list) => table.push_str(&format!(" {}\n", list.join("; "))),
                    Failure::Diff(diff) => {
                        table.push_str(" expected minus actual = ");
                        table.push_str(&to_text(&Rendered::Words(diff.clone()), f.kind));
                    }
                }
            }
        }
    }
    out.write_all(table.as_bytes()).map_err(stdout_error)?;
    if first.is_some() {
        return Err(CliError::VerificationFailed);
    }
    Ok(())
}

/// Tab-separated columns of the bench table.
pub const BENCH_HEADER: &str = "order\tterms\tseconds\tcumulative_seconds\tpeak_rss_bytes";

pub fn cmd_bench(cfg: &BenchConfig, out: &mut dyn Write) -> Result<(), CliError> {
    check_order(cfg.max_order)?;
    writeln!(out, "{BENCH_HEADER}").map_err(stdout_error)?;
    let started = Instant::now();
    let mut cache = SeriesCache::new();
    let row = |n: usize, entry: &CacheEntry| -> Result<(), CliError> {
        writeln!(
            out,
            "{n}\t{}\t{:.6}\t{:.6}\t{}",
            entry.series.len(),
            entry.provenance.compute_time.as_secs_f64(),
            started.elapsed().as_secs_f64(),
            peak_rss_bytes().unwrap_or(0)
        )
        .and_then(|()| out.flush())
        .map_err(stdout_error)
    };
    match cfg.kind {
        SeriesKind::Zassenhaus => extend_zassenhaus(&mut cache, cfg.max_order, cfg.budget, row),
        SeriesKind::Bch => extend_bch(&mut cache, cfg.max_order, cfg.budget, row),
    }
}
