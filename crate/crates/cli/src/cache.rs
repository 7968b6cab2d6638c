//! One JSON document per computed order, under a directory guarded by a lock file.

use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use zassenhaus_core::algebra::parse_rational;
use zassenhaus_core::engine::{CacheEntry, Provenance, SeriesCache, SeriesKind};
use zassenhaus_core::{Word, WordSeries};

use crate::error::CliError;
use crate::format::{alphabet, ProvenanceDoc, Rendered, SeriesDocument};

const LOCK_FILE: &str = "cache.lock";

pub fn file_name(kind: SeriesKind, order: usize) -> String {
    format!("{}-{order:03}.json", kind.name())
}

fn parse_file_name(name: &str) -> Option<(SeriesKind, usize)> {
    let stem = name.strip_suffix(".json")?;
    let (kind, order) = stem.rsplit_once('-')?;
    let kind = [SeriesKind::Zassenhaus, SeriesKind::Bch]
        .into_iter()
        .find(|k| k.name() == kind)?;
    Some((kind, order.parse().ok()?))
}

/// An open cache directory. The lock is held until this value is dropped.
#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    _lock: File,
}

impl DiskCache {
    /// Creates `dir` if needed and waits for exclusive access to it.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CliError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        let lock_path = dir.join(LOCK_FILE);
        let lock = File::options()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&lock_path)
            .map_err(|e| CliError::io(&lock_path, e))?;
        lock.lock().map_err(|e| CliError::io(&lock_path, e))?;
        Ok(DiskCache { dir, _lock: lock })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, kind: SeriesKind, order: usize) -> PathBuf {
        self.dir.join(file_name(kind, order))
    }

    /// Reads every cache file in the directory, in ascending order.
    pub fn load(&self) -> Result<SeriesCache, CliError> {
        let mut found = Vec::new();
        let entries = fs::read_dir(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        for entry in entries {
            let entry = entry.map_err(|e| CliError::io(&self.dir, e))?;
            let name = entry.file_name();
            if let Some((kind, order)) = name.to_str().and_then(parse_file_name) {
                found.push((kind, order, entry.path()));
            }
        }
        found.sort();
        let mut cache = SeriesCache::new();
        for (kind, order, path) in found {
            let entry = read_entry(&path, kind, order)?;
            cache
                .insert(kind, order, entry)
                .map_err(|e| corrupt(&path, e.to_string()))?;
        }
        Ok(cache)
    }

    /// Writes one order atomically: a temporary file in the same directory is
    /// renamed over the target once fully written.
    pub fn store(
        &self,
        kind: SeriesKind,
        order: usize,
        entry: &CacheEntry,
    ) -> Result<(), CliError> {
        let mut doc = SeriesDocument::new(&Rendered::Words(entry.series.clone()), kind, order);
        doc.provenance = Some(ProvenanceDoc {
            engine_version: entry.provenance.engine_version.clone(),
            compute_seconds: entry.provenance.compute_time.as_secs_f64(),
        });
        let target = self.path_for(kind, order);
        let mut tmp =
            tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        tmp.write_all(doc.to_json().as_bytes())
            .and_then(|()| tmp.as_file().sync_all())
            .map_err(|e| CliError::io(tmp.path(), e))?;
        tmp.persist(&target)
            .map_err(|e| CliError::io(&target, e.error))?;
        Ok(())
    }
}

fn corrupt(path: &Path, message: impl Into<String>) -> CliError {
    CliError::CorruptCache {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn read_entry(path: &Path, kind: SeriesKind, order: usize) -> Result<CacheEntry, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let doc: SeriesDocument =
        serde_json::from_str(&text).map_err(|e| corrupt(path, e.to_string()))?;
    document_to_entry(&doc, kind, order).map_err(|m| corrupt(path, m))
}

/// Checks a cache document against the kind and order its file name promises.
pub fn document_to_entry(
    doc: &SeriesDocument,
    kind: SeriesKind,
    order: usize,
) -> Result<CacheEntry, String> {
    if doc.kind != kind.name() || doc.order != order {
        return Err(format!(
            "file holds {} order {}, expected {} order {order}",
            doc.kind,
            doc.order,
            kind.name()
        ));
    }
    if doc.representation != "words" {
        return Err(format!(
            "representation {:?} is not words",
            doc.representation
        ));
    }
    let mut series = WordSeries::new();
    let mut seen = BTreeSet::new();
    for term in &doc.terms {
        let word = Word::parse(&term.word, alphabet(kind))
            .map_err(|e| format!("word {:?}: {e}", term.word))?;
        let coeff = parse_rational(&term.coeff)
            .map_err(|e| format!("coefficient {:?}: {e}", term.coeff))?;
        if !seen.insert(word) {
            return Err(format!("word {:?} listed twice", term.word));
        }
        series.add_term(word, coeff);
    }
    if series.len() != doc.terms.len() {
        return Err("zero coefficient listed".to_string());
    }
    let provenance = match &doc.provenance {
        Some(p) => Provenance {
            engine_version: p.engine_version.clone(),
            compute_time: Duration::try_from_secs_f64(p.compute_seconds).unwrap_or_default(),
        },
        None => Provenance {
            engine_version: "unknown".to_string(),
            compute_time: Duration::ZERO,
        },
    };
    Ok(CacheEntry { series, provenance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use zassenhaus_core::engine::zassenhaus_all;

    #[test]
    fn file_names_round_trip() {
        assert_eq!(file_name(SeriesKind::Zassenhaus, 7), "zassenhaus-007.json");
        assert_eq!(parse_file_name("bch-012.json"), Some((SeriesKind::Bch, 12)));
        assert_eq!(parse_file_name("bch-012.json.tmp"), None);
        assert_eq!(parse_file_name("other-003.json"), None);
        assert_eq!(parse_file_name(".tmpA1b2"), None);
    }

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let computed = zassenhaus_all(6).unwrap();
        {
            let disk = DiskCache::open(dir.path()).unwrap();
            for n in 2..=6 {
                disk.store(
                    SeriesKind::Zassenhaus,
                    n,
                    computed.get(SeriesKind::Zassenhaus, n).unwrap(),
                )
                .unwrap();
            }
        }
        let disk = DiskCache::open(dir.path()).unwrap();
        let loaded = disk.load().unwrap();
        for n in 2..=6 {
            assert_eq!(loaded.zassenhaus(n), computed.zassenhaus(n));
        }
        assert_eq!(loaded.contiguous_max(SeriesKind::Bch), None);
    }

    #[test]
    fn mismatched_documents_rejected() {
        let computed = zassenhaus_all(3).unwrap();
        let doc = SeriesDocument::new(
            &Rendered::Words(computed.zassenhaus(3).unwrap().clone()),
            SeriesKind::Zassenhaus,
            3,
        );
        assert!(document_to_entry(&doc, SeriesKind::Zassenhaus, 3).is_ok());
        assert!(document_to_entry(&doc, SeriesKind::Zassenhaus, 4).is_err());
        assert!(document_to_entry(&doc, SeriesKind::Bch, 3).is_err());
        let mut dup = doc.clone();
        dup.terms.push(dup.terms[0].clone());
        assert!(document_to_entry(&dup, SeriesKind::Zassenhaus, 3).is_err());
        let mut zero = doc.clone();
        zero.terms[0].coeff = "0/1".into();
        assert!(document_to_entry(&zero, SeriesKind::Zassenhaus, 3).is_err());
        let mut bad = doc;
        bad.terms[0].word = "abc".into();
        assert!(document_to_entry(&bad, SeriesKind::Zassenhaus, 3).is_err());
    }

    proptest::proptest! {
        #[test]
        fn json_round_trip_is_exact(
            n in 2usize..=10,
            raw in proptest::collection::vec((proptest::num::u64::ANY, -1000i64..=1000, 1i64..=10_000), 0..40),
            bch in proptest::bool::ANY,
        ) {
            let kind = if bch { SeriesKind::Bch } else { SeriesKind::Zassenhaus };
            let series: WordSeries = raw
                .into_iter()
                .map(|(bits, p, q)| {
                    let w = Word::new(bits & ((1 << n) - 1), n).unwrap();
                    (w, zassenhaus_core::algebra::rat(p, q))
                })
                .collect();
            let text = SeriesDocument::new(&Rendered::Words(series.clone()), kind, n).to_json();
            let doc: SeriesDocument = serde_json::from_str(&text).unwrap();
            let entry = document_to_entry(&doc, kind, n).unwrap();
            proptest::prop_assert_eq!(entry.series, series);
        }
    }
}
