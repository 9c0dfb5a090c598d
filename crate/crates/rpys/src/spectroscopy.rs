//! Citation spectrograms: per-year reference counts, the five-year median
//! deviation curve that detrends them, peak detection, and ranked
//! cited-reference tables.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::import::normalize_cr;
use crate::record::{AggregatedCR, YearRange};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectroError {
    #[error("window {window} larger than series length {len}")]
    WindowTooLarge { window: usize, len: usize },

    #[error("window must be an odd integer >= 3, got {0}")]
    InvalidWindow(usize),
}

/// One year of the spectrogram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrogramPoint {
    pub rpy: i32,
    /// Total cited-reference occurrences attributed to this year.
    pub ncr: u64,
    /// Number of distinct aggregated references in this year.
    pub n_distinct_crs: u64,
    /// `ncr` minus the median over the surrounding window.
    pub median_dev: f64,
}

/// Contiguous per-year series over a reference-year range, one point per
/// year with no gaps, plus the detected peak years.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrogram {
    pub points: Vec<SpectrogramPoint>,
    pub peaks: Vec<i32>,
}

impl Spectrogram {
    /// A spectrogram with no points at all (degenerate, e.g. nothing to
    /// analyze and no explicit year range to span).
    pub fn empty() -> Self {
        Spectrogram {
            points: Vec::new(),
            peaks: Vec::new(),
        }
    }

    /// First and last covered year, when any.
    pub fn year_span(&self) -> Option<(i32, i32)> {
        match (self.points.first(), self.points.last()) {
            (Some(a), Some(b)) => Some((a.rpy, b.rpy)),
            _ => None,
        }
    }

    pub fn ncr_series(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.ncr as f64).collect()
    }

    pub fn total_ncr(&self) -> u64 {
        self.points.iter().map(|p| p.ncr).sum()
    }

    /// Full pipeline: place aggregates on the year axis, compute the median
    /// deviation curve, and detect peaks.
    pub fn analyze(
        aggregates: &[AggregatedCR],
        rpy_range: &YearRange,
        window: usize,
    ) -> Result<Self, SpectroError> {
        let mut spectro = compute_spectrogram(aggregates, rpy_range);
        let devs = median_deviation(&spectro.ncr_series(), window)?;
        for (p, d) in spectro.points.iter_mut().zip(devs) {
            p.median_dev = d;
        }
        spectro.peaks = detect_peaks(&spectro);
        Ok(spectro)
    }
}

/// Buckets aggregates by the reference publication year of their canonical
/// variant. Every year of the range is present; years without references
/// hold zeros. Aggregates without a plausible year cannot be placed on the
/// axis and are ignored here.
pub fn compute_spectrogram(aggregates: &[AggregatedCR], rpy_range: &YearRange) -> Spectrogram {
    let (lo, hi) = (rpy_range.lo, rpy_range.hi);
    let n_years = (hi - lo + 1) as usize;
    let mut points: Vec<SpectrogramPoint> = (0..n_years)
        .map(|i| SpectrogramPoint {
            rpy: lo + i as i32,
            ncr: 0,
            n_distinct_crs: 0,
            median_dev: 0.0,
        })
        .collect();
    for agg in aggregates {
        if let Some(y) = agg.rpy() {
            if y >= lo && y <= hi {
                let p = &mut points[(y - lo) as usize];
                p.ncr += agg.ncr;
                p.n_distinct_crs += 1;
            }
        }
    }
    Spectrogram {
        points,
        peaks: Vec::new(),
    }
}

fn median_of(window: &mut [f64]) -> f64 {
    window.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let n = window.len();
    if n.is_multiple_of(2) {
        (window[n / 2 - 1] + window[n / 2]) / 2.0
    } else {
        window[n / 2]
    }
}

/// Deviation of each value from the median of the window centered on it.
///
/// At the boundaries the window is truncated to the available years; the
/// median of an even number of values is the mean of the two central ones.
pub fn median_deviation(series: &[f64], window: usize) -> Result<Vec<f64>, SpectroError> {
    if window < 3 || window.is_multiple_of(2) {
        return Err(SpectroError::InvalidWindow(window));
    }
    if window > series.len() {
        return Err(SpectroError::WindowTooLarge {
            window,
            len: series.len(),
        });
    }
    let half = window / 2;
    let mut scratch = Vec::with_capacity(window);
    Ok(series
        .iter()
        .enumerate()
        .map(|(t, &v)| {
            let start = t.saturating_sub(half);
            let end = (t + half + 1).min(series.len());
            scratch.clear();
            scratch.extend_from_slice(&series[start..end]);
            v - median_of(&mut scratch)
        })
        .collect())
}

/// Peak positions in a deviation series: strictly positive deviation that
/// does not fall below its left neighbor and strictly exceeds its right
/// neighbor. Boundary entries compare only against the neighbor they have.
pub fn peak_indices(median_devs: &[f64]) -> Vec<usize> {
    let mut peaks = Vec::new();
    for (t, &dev) in median_devs.iter().enumerate() {
        if dev <= 0.0 {
            continue;
        }
        let left_ok = t == 0 || dev >= median_devs[t - 1];
        let right_ok = t + 1 == median_devs.len() || dev > median_devs[t + 1];
        if left_ok && right_ok {
            peaks.push(t);
        }
    }
    peaks
}

/// Peak years of a spectrogram whose median deviation has been populated,
/// in ascending order.
pub fn detect_peaks(spectrogram: &Spectrogram) -> Vec<i32> {
    let devs: Vec<f64> = spectrogram.points.iter().map(|p| p.median_dev).collect();
    peak_indices(&devs)
        .into_iter()
        .map(|i| spectrogram.points[i].rpy)
        .collect()
}

/// One row of a ranked cited-reference table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrRow {
    /// 1-based rank under the table order.
    pub rank: usize,
    pub rpy: Option<i32>,
    /// Display string: the raw text of the canonical variant.
    pub cr: String,
    pub ncr: u64,
    pub n_variants: usize,
}

/// Total order for tables: occurrence count descending, then reference year
/// ascending (missing years last), then normalized key, then DOI. Ties
/// never survive, so exports are reproducible byte for byte.
pub fn table_order(a: &AggregatedCR, b: &AggregatedCR) -> Ordering {
    b.ncr
        .cmp(&a.ncr)
        .then_with(|| match (a.rpy(), b.rpy()) {
            (Some(x), Some(y)) => x.cmp(&y),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        })
        .then_with(|| normalize_cr(&a.canonical).cmp(&normalize_cr(&b.canonical)))
        .then_with(|| a.canonical.doi.cmp(&b.canonical.doi))
}

/// The `n` most frequent aggregates as table rows, optionally restricted to
/// a single reference publication year.
pub fn top_crs(aggregates: &[AggregatedCR], n: usize, within_year: Option<i32>) -> Vec<CrRow> {
    let mut selected: Vec<&AggregatedCR> = aggregates
        .iter()
        .filter(|a| within_year.is_none() || a.rpy() == within_year)
        .collect();
    selected.sort_by(|a, b| table_order(a, b));
    selected
        .into_iter()
        .take(n)
        .enumerate()
        .map(|(i, a)| CrRow {
            rank: i + 1,
            rpy: a.rpy(),
            cr: a.canonical.raw.clone(),
            ncr: a.ncr,
            n_variants: a.variants.len(),
        })
        .collect()
}
