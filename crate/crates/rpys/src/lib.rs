//! Reference publication year spectroscopy (RPYS) over bibliographic
//! corpora.
//!
//! The pipeline discovers the seminal works of a research field from the
//! references its papers cite: noisy cited-reference variants are clustered
//! and merged, occurrence counts are laid out per reference publication
//! year as a spectrogram, a median-deviation curve detrends the series, and
//! the years that stand out as peaks point at the field's historical roots.
//! The co-citation variant (RPYS-CO) scopes the whole analysis to the
//! records citing one or more *marker papers*, and can suggest better
//! markers when the starting one turns out to be poorly cited.
//!
//! ```
//! use rpys::import::{parse_wos, ImportConfig};
//! use rpys::cluster::{cluster, merge, ClusterConfig};
//! use rpys::record::YearRange;
//! use rpys::spectroscopy::Spectrogram;
//!
//! let data = "\
//! PT J
//! PY 1995
//! CR Kohn W, 1965, Physical Review, V140, P1133
//!    K0hn W, 1965, Physical Review, V140, P1133
//!    Slater JC, 1951, Physical Review, V81, P385
//! ER
//! EF
//! ";
//! let corpus = parse_wos(data.as_bytes(), &ImportConfig::default())?;
//! let aggregates = merge(&cluster(&corpus.all_cited_refs(), &ClusterConfig::default()));
//! assert_eq!(aggregates.len(), 2); // the OCR-mutated variant merged away
//!
//! let range = YearRange::new(1950, 1970, false)?;
//! let spectrogram = Spectrogram::analyze(&aggregates, &range, 5)?;
//! assert_eq!(spectrogram.total_ncr(), 3);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Batch use goes through the script language (see [`script`]) or the `rpys`
//! binary; each major capability also has a runnable example under
//! `examples/`.

pub mod cli;
pub mod cluster;
pub mod cocitation;
pub mod export;
pub mod import;
pub mod record;
pub mod script;
pub mod spectroscopy;

pub use cluster::{cr_similarity, ClusterConfig};
pub use cocitation::{run_rpys_co, AnalysisOptions, MarkerQuery, RpysCoResult};
pub use import::{normalize_cr, parse_cr_line, ImportConfig};
pub use record::{AggregatedCR, CitedRef, Corpus, Record, YearRange};
pub use spectroscopy::Spectrogram;
