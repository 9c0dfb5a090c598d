//! Core domain types shared by the whole pipeline: citing records, cited
//! references, merged aggregates, year ranges, and whole corpora.
//!
//! All types are plain data and are treated as immutable once built; the
//! analysis stages only ever produce new values from them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Years outside this window are treated as unparseable rather than as
/// errors: OCR mutations routinely produce absurd digits, and range filters
/// scope everything downstream anyway.
pub const MIN_YEAR: i32 = 1500;
/// Upper bound of the plausible-year window. See [`MIN_YEAR`].
pub const MAX_YEAR: i32 = 2100;

/// Returns `Some(year)` only when the value lies in the plausible window
/// `[MIN_YEAR, MAX_YEAR]`.
pub fn sanitize_year(year: i32) -> Option<i32> {
    if (MIN_YEAR..=MAX_YEAR).contains(&year) {
        Some(year)
    } else {
        None
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid year range: lo {lo} > hi {hi}")]
    InvalidYearRange { lo: i32, hi: i32 },

    #[error("duplicate record id `{0}` in corpus")]
    DuplicateRecordId(String),
}

/// One parsed cited-reference occurrence.
///
/// `raw` always holds the exact source text of the reference line; the
/// structured fields are best-effort extractions and may be absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitedRef {
    /// Exact source text, preserved verbatim.
    pub raw: String,
    /// Normalized (uppercased, punctuation-free) first-author string.
    pub first_author: Option<String>,
    /// Reference publication year, when a plausible one could be parsed.
    pub rpy: Option<i32>,
    /// Normalized source (journal or book title).
    pub source: Option<String>,
    /// Volume digits, without the `V` marker.
    pub volume: Option<String>,
    /// Page token, without the `P` marker.
    pub page: Option<String>,
    /// Lowercased DOI without any `DOI ` prefix or surrounding whitespace.
    pub doi: Option<String>,
}

impl CitedRef {
    /// A reference carrying only its raw text, all structured fields absent.
    pub fn from_raw(raw: impl Into<String>) -> Self {
        CitedRef {
            raw: raw.into(),
            first_author: None,
            rpy: None,
            source: None,
            volume: None,
            page: None,
            doi: None,
        }
    }
}

/// One citing publication: identifier, publication year, and its cited
/// references in source order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    /// Opaque identifier, unique within a corpus.
    pub id: String,
    /// Publication year of the citing record, when known and plausible.
    pub py: Option<i32>,
    pub title: Option<String>,
    pub source: Option<String>,
    pub cited_refs: Vec<CitedRef>,
}

impl Record {
    pub fn new(id: impl Into<String>) -> Self {
        Record {
            id: id.into(),
            py: None,
            title: None,
            source: None,
            cited_refs: Vec::new(),
        }
    }
}

/// An inclusive year range plus the policy for entries that have no year.
///
/// `include_missing: false` means entries lacking a year are excluded by the
/// range filter; `true` keeps them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct YearRange {
    pub lo: i32,
    pub hi: i32,
    pub include_missing: bool,
}

impl YearRange {
    pub fn new(lo: i32, hi: i32, include_missing: bool) -> Result<Self, ModelError> {
        if lo > hi {
            return Err(ModelError::InvalidYearRange { lo, hi });
        }
        Ok(YearRange {
            lo,
            hi,
            include_missing,
        })
    }

    /// The widest plausible range, keeping entries without a year.
    pub fn all() -> Self {
        YearRange {
            lo: MIN_YEAR,
            hi: MAX_YEAR,
            include_missing: true,
        }
    }

    /// Whether an optional year passes this filter.
    pub fn contains(&self, year: Option<i32>) -> bool {
        match year {
            Some(y) => self.lo <= y && y <= self.hi,
            None => self.include_missing,
        }
    }
}

/// A deduplicated cited reference after clustering and merging.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregatedCR {
    /// The cluster representative: the most frequent member variant.
    pub canonical: CitedRef,
    /// Total number of occurrences over all member variants.
    pub ncr: u64,
    /// Member variants with their occurrence counts.
    pub variants: Vec<(CitedRef, u64)>,
    /// Opaque, deterministic cluster identifier.
    pub cluster_id: usize,
}

impl AggregatedCR {
    /// Reference publication year of the cluster representative.
    pub fn rpy(&self) -> Option<i32> {
        self.canonical.rpy
    }
}

/// A set of citing records plus a note on where they came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub records: Vec<Record>,
    /// Free-form source descriptor (file name, selection note, ...).
    pub provenance: String,
}

impl Corpus {
    /// Builds a corpus, rejecting duplicate record ids.
    pub fn new(records: Vec<Record>, provenance: impl Into<String>) -> Result<Self, ModelError> {
        let mut seen = std::collections::HashSet::new();
        for r in &records {
            if !seen.insert(r.id.as_str()) {
                return Err(ModelError::DuplicateRecordId(r.id.clone()));
            }
        }
        Ok(Corpus {
            records,
            provenance: provenance.into(),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Basic size and reference-year statistics.
    pub fn stats(&self) -> CorpusStats {
        let mut n_cr = 0usize;
        let mut rpy_min: Option<i32> = None;
        let mut rpy_max: Option<i32> = None;
        for rec in &self.records {
            n_cr += rec.cited_refs.len();
            for cr in &rec.cited_refs {
                if let Some(y) = cr.rpy {
                    rpy_min = Some(rpy_min.map_or(y, |m| m.min(y)));
                    rpy_max = Some(rpy_max.map_or(y, |m| m.max(y)));
                }
            }
        }
        CorpusStats {
            n_records: self.records.len(),
            n_cr_occurrences: n_cr,
            rpy_min,
            rpy_max,
        }
    }

    /// All cited-reference occurrences in record order, cloned out of the
    /// corpus for downstream clustering.
    pub fn all_cited_refs(&self) -> Vec<CitedRef> {
        self.records
            .iter()
            .flat_map(|r| r.cited_refs.iter().cloned())
            .collect()
    }
}

/// Summary counters returned by [`Corpus::stats`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub n_records: usize,
    pub n_cr_occurrences: usize,
    pub rpy_min: Option<i32>,
    pub rpy_max: Option<i32>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cr(raw: &str, rpy: Option<i32>) -> CitedRef {
        CitedRef {
            rpy,
            ..CitedRef::from_raw(raw)
        }
    }

    #[test]
    fn stats_empty_corpus() {
        let corpus = Corpus::new(Vec::new(), "empty").unwrap();
        let s = corpus.stats();
        assert_eq!(s.n_records, 0);
        assert_eq!(s.n_cr_occurrences, 0);
        assert_eq!(s.rpy_min, None);
        assert_eq!(s.rpy_max, None);
    }

    #[test]
    fn stats_single_record() {
        let mut rec = Record::new("r1");
        rec.cited_refs = vec![
            cr("A, 1965, J", Some(1965)),
            cr("B, 1950, J", Some(1950)),
            cr("C, 1988, J", Some(1988)),
        ];
        let corpus = Corpus::new(vec![rec], "one").unwrap();
        let s = corpus.stats();
        assert_eq!(s.n_records, 1);
        assert_eq!(s.n_cr_occurrences, 3);
        assert_eq!(s.rpy_min, Some(1950));
        assert_eq!(s.rpy_max, Some(1988));
    }

    #[test]
    fn duplicate_record_id_rejected() {
        let recs = vec![Record::new("x"), Record::new("x")];
        let err = Corpus::new(recs, "dup").unwrap_err();
        assert!(matches!(err, ModelError::DuplicateRecordId(id) if id == "x"));
    }

    #[test]
    fn year_range_validation() {
        assert!(YearRange::new(1990, 1950, false).is_err());
        let r = YearRange::new(1950, 1990, false).unwrap();
        assert!(r.contains(Some(1950)));
        assert!(r.contains(Some(1990)));
        assert!(!r.contains(Some(1949)));
        assert!(!r.contains(None));
        let r = YearRange::new(1950, 1990, true).unwrap();
        assert!(r.contains(None));
    }

    #[test]
    fn sanitize_year_bounds() {
        assert_eq!(sanitize_year(1500), Some(1500));
        assert_eq!(sanitize_year(2100), Some(2100));
        assert_eq!(sanitize_year(1499), None);
        assert_eq!(sanitize_year(2101), None);
        assert_eq!(sanitize_year(3098), None);
    }

    #[test]
    fn conservation_of_cr_counts() {
        // Sum over records of |cited_refs| must equal the stats counter.
        let mut records = Vec::new();
        for i in 0..20 {
            let mut r = Record::new(format!("r{i}"));
            for j in 0..(i % 5) {
                r.cited_refs.push(cr(&format!("X, 19{j}0, J"), None));
            }
            records.push(r);
        }
        let expected: usize = records.iter().map(|r| r.cited_refs.len()).sum();
        let corpus = Corpus::new(records, "synthetic").unwrap();
        assert_eq!(corpus.stats().n_cr_occurrences, expected);
    }
}
