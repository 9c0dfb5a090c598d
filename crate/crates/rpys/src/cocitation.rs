//! The co-citation layer: select the records citing one or more marker
//! papers, run the spectroscopy pipeline on that subset, and suggest better
//! markers when the starting one turns out to be poor.

use serde::Serialize;
use thiserror::Error;

use crate::cluster::{cluster, merge, remove_cr, ClusterConfig};
use crate::import::normalize_text;
use crate::record::{sanitize_year, AggregatedCR, CitedRef, Corpus, Record, YearRange};
use crate::spectroscopy::{table_order, top_crs, CrRow, SpectroError, Spectrogram};

/// Candidates whose count lies within this fraction of the citing-set size
/// are flagged as "comparable to the marker" -- the tell-tale of a marker
/// that represents only a narrow slice of its topic.
pub const COMPARABLE_TOLERANCE: f64 = 0.25;

#[derive(Debug, Error)]
pub enum MarkerError {
    #[error("invalid marker spec `{spec}`: {reason}")]
    InvalidSpec { spec: String, reason: String },
}

/// How strictly a marker is compared against cited references.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatchMode {
    /// Every field present on the marker must match.
    Strict,
    /// Only the DOI is compared.
    DoiOnly,
}

/// A bibliographic description of one marker paper.
///
/// A valid query carries at least first author plus year, or a DOI.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarkerQuery {
    first_author: Option<String>,
    rpy: Option<i32>,
    volume: Option<String>,
    page: Option<String>,
    doi: Option<String>,
    match_mode: MatchMode,
}

impl MarkerQuery {
    pub fn by_author_year(first_author: &str, rpy: i32) -> Self {
        MarkerQuery {
            first_author: Some(normalize_text(first_author)),
            rpy: Some(rpy),
            volume: None,
            page: None,
            doi: None,
            match_mode: MatchMode::Strict,
        }
    }

    pub fn by_doi(doi: &str) -> Self {
        MarkerQuery {
            first_author: None,
            rpy: None,
            volume: None,
            page: None,
            doi: Some(doi.trim().to_lowercase()),
            match_mode: MatchMode::DoiOnly,
        }
    }

    pub fn with_volume(mut self, volume: &str) -> Self {
        self.volume = Some(volume.to_string());
        self
    }

    pub fn with_page(mut self, page: &str) -> Self {
        self.page = Some(page.to_string());
        self
    }

    pub fn with_doi(mut self, doi: &str) -> Self {
        self.doi = Some(doi.trim().to_lowercase());
        self
    }

    /// Parses the compact CLI form `"Becke AD,1988,V38,P3098"`: author,
    /// 4-digit year, then optional `V...` / `P...` / `DOI ...` components.
    pub fn parse_spec(spec: &str) -> Result<Self, MarkerError> {
        let err = |reason: &str| MarkerError::InvalidSpec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
        if parts.len() < 2 {
            return Err(err("expected at least `author,year`"));
        }
        let author = parts[0];
        if author.is_empty() {
            return Err(err("empty author"));
        }
        let mut query: Option<MarkerQuery> = None;
        for part in &parts[1..] {
            if part.len() == 4 && part.bytes().all(|b| b.is_ascii_digit()) {
                let year = part
                    .parse()
                    .ok()
                    .and_then(sanitize_year)
                    .ok_or_else(|| err("implausible year"))?;
                if query.is_some() {
                    return Err(err("more than one year"));
                }
                query = Some(MarkerQuery::by_author_year(author, year));
                continue;
            }
            let q = query.as_mut().ok_or_else(|| err("year must come before volume/page/DOI"))?;
            if let Some(v) = part.strip_prefix('V') {
                q.volume = Some(v.to_string());
            } else if let Some(d) = part
                .get(..4)
                .filter(|p| p.eq_ignore_ascii_case("doi "))
                .map(|_| part[4..].trim())
            {
                q.doi = Some(d.to_lowercase());
            } else if let Some(p) = part.strip_prefix('P') {
                q.page = Some(p.to_string());
            } else {
                return Err(err(&format!("unrecognized component `{part}`")));
            }
        }
        query.ok_or_else(|| err("missing 4-digit year"))
    }

    /// Compact human-readable form for logs and manifests.
    pub fn display(&self) -> String {
        if self.match_mode == MatchMode::DoiOnly {
            return format!("doi:{}", self.doi.as_deref().unwrap_or_default());
        }
        let mut out = format!(
            "{},{}",
            self.first_author.as_deref().unwrap_or_default(),
            self.rpy.map(|y| y.to_string()).unwrap_or_default()
        );
        if let Some(v) = &self.volume {
            out.push_str(&format!(",V{v}"));
        }
        if let Some(p) = &self.page {
            out.push_str(&format!(",P{p}"));
        }
        if let Some(d) = &self.doi {
            out.push_str(&format!(",DOI {d}"));
        }
        out
    }

    /// Whether one cited reference satisfies this marker.
    pub fn matches_cr(&self, cr: &CitedRef) -> bool {
        match self.match_mode {
            MatchMode::DoiOnly => match (&self.doi, &cr.doi) {
                (Some(want), Some(have)) => want.eq_ignore_ascii_case(have),
                _ => false,
            },
            MatchMode::Strict => {
                if let Some(author) = &self.first_author {
                    let Some(cr_author) = &cr.first_author else {
                        return false;
                    };
                    if !normalize_text(cr_author).starts_with(author.as_str()) {
                        return false;
                    }
                }
                if let Some(rpy) = self.rpy {
                    if cr.rpy != Some(rpy) {
                        return false;
                    }
                }
                if let Some(volume) = &self.volume {
                    let Some(cr_vol) = &cr.volume else { return false };
                    if normalize_text(cr_vol) != normalize_text(volume) {
                        return false;
                    }
                }
                if let Some(page) = &self.page {
                    let Some(cr_page) = &cr.page else { return false };
                    if normalize_text(cr_page) != normalize_text(page) {
                        return false;
                    }
                }
                if let Some(doi) = &self.doi {
                    let Some(cr_doi) = &cr.doi else { return false };
                    if !doi.eq_ignore_ascii_case(cr_doi) {
                        return false;
                    }
                }
                true
            }
        }
    }
}

/// True when any cited reference of the record matches the marker.
pub fn match_marker(record: &Record, marker: &MarkerQuery) -> bool {
    record.cited_refs.iter().any(|cr| marker.matches_cr(cr))
}

/// The sub-corpus of records citing at least one of the markers, in the
/// original order. An empty result is not an error: a marker nobody cites
/// is a state the caller can diagnose.
pub fn select_citing(corpus: &Corpus, markers: &[MarkerQuery]) -> Corpus {
    assert!(!markers.is_empty(), "select_citing requires at least one marker");
    let records: Vec<Record> = corpus
        .records
        .iter()
        .filter(|r| markers.iter().any(|m| match_marker(r, m)))
        .cloned()
        .collect();
    let marker_list: Vec<String> = markers.iter().map(|m| m.display()).collect();
    Corpus {
        records,
        provenance: format!(
            "{} | co-cited with [{}]",
            corpus.provenance,
            marker_list.join("; ")
        ),
    }
}

/// Knobs for one spectroscopy run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisOptions {
    /// Reference-year axis of the spectrogram; occurrences outside it are
    /// dropped before clustering.
    pub rpy_range: YearRange,
    pub cluster: ClusterConfig,
    /// Inclusive count range to remove after merging, e.g. `(0, 99)` keeps
    /// only references cited at least 100 times. `None` keeps everything.
    pub remove_ncr: Option<(u64, u64)>,
    /// Median window for the deviation curve.
    pub window: usize,
    /// Size of the most-frequent table.
    pub top_n: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            rpy_range: YearRange::all(),
            cluster: ClusterConfig::default(),
            remove_ncr: None,
            window: 5,
            top_n: 10,
        }
    }
}

/// Everything one co-citation run produces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RpysCoResult {
    pub markers: Vec<MarkerQuery>,
    /// Number of records citing at least one marker.
    pub n_citing: usize,
    pub aggregates: Vec<AggregatedCR>,
    pub spectrogram: Spectrogram,
    /// References published in detected peak years, ranked.
    pub peak_table: Vec<CrRow>,
    /// The most frequent references overall, ranked.
    pub top_table: Vec<CrRow>,
}

/// Runs the full co-citation pipeline: select the citing records, collect
/// and scope their cited references, cluster and merge variants, prune by
/// count, and compute the spectrogram with its peak and frequency tables.
pub fn run_rpys_co(
    corpus: &Corpus,
    markers: &[MarkerQuery],
    options: &AnalysisOptions,
) -> Result<RpysCoResult, SpectroError> {
    let citing = select_citing(corpus, markers);
    let n_citing = citing.records.len();
    let occurrences: Vec<CitedRef> = citing
        .all_cited_refs()
        .into_iter()
        .filter(|cr| options.rpy_range.contains(cr.rpy))
        .collect();
    let mut aggregates = merge(&cluster(&occurrences, &options.cluster));
    if let Some((lo, hi)) = options.remove_ncr {
        aggregates = remove_cr(aggregates, lo, hi);
    }
    let spectrogram = Spectrogram::analyze(&aggregates, &options.rpy_range, options.window)?;

    let peak_aggs: Vec<AggregatedCR> = aggregates
        .iter()
        .filter(|a| a.rpy().is_some_and(|y| spectrogram.peaks.contains(&y)))
        .cloned()
        .collect();
    let peak_table = top_crs(&peak_aggs, usize::MAX, None);
    let top_table = top_crs(&aggregates, options.top_n, None);

    Ok(RpysCoResult {
        markers: markers.to_vec(),
        n_citing,
        aggregates,
        spectrogram,
        peak_table,
        top_table,
    })
}

/// One candidate row produced by [`suggest_markers`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarkerCandidate {
    pub rank: usize,
    pub rpy: Option<i32>,
    pub cr: String,
    pub ncr: u64,
    /// `ncr / n_citing` of the run the candidate came from.
    pub ratio: f64,
    /// Count within the comparable tolerance of the citing-set size: a hint
    /// that the current marker is no better cited than this candidate.
    pub comparable_to_marker: bool,
    /// The candidate is one of the run's own markers.
    pub is_marker: bool,
}

/// Ranks the `n` most frequent references of a run as candidate markers for
/// the next iteration, annotated with their count ratio against the citing
/// set and flags for the current marker itself.
pub fn suggest_markers(result: &RpysCoResult, n: usize, tolerance: f64) -> Vec<MarkerCandidate> {
    let mut sorted: Vec<&AggregatedCR> = result.aggregates.iter().collect();
    sorted.sort_by(|a, b| table_order(a, b));
    let n_citing = result.n_citing as f64;
    sorted
        .into_iter()
        .take(n)
        .enumerate()
        .map(|(i, agg)| {
            let ncr = agg.ncr as f64;
            let ratio = if result.n_citing > 0 { ncr / n_citing } else { 0.0 };
            let comparable = result.n_citing > 0
                && ncr >= n_citing * (1.0 - tolerance)
                && ncr <= n_citing * (1.0 + tolerance);
            MarkerCandidate {
                rank: i + 1,
                rpy: agg.rpy(),
                cr: agg.canonical.raw.clone(),
                ncr: agg.ncr,
                ratio,
                comparable_to_marker: comparable,
                is_marker: result.markers.iter().any(|m| m.matches_cr(&agg.canonical)),
            }
        })
        .collect()
}
