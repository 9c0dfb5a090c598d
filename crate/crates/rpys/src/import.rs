//! Corpus import: the tagged-field plain-text export format (`WOS`) and a
//! minimal CSV layout, plus structured parsing of individual cited-reference
//! lines and the key normalization that clustering builds on.
//!
//! The tagged format is line oriented. A record opens with `PT` and closes
//! with `ER`; the file ends with `EF`. Field values continue on lines that
//! begin with three spaces. Under the `CR` tag every line (the tagged line
//! and each continuation) holds exactly one cited reference. Unknown tags
//! are skipped so newer export dialects still parse.

use std::io::{BufRead, Read};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::record::{sanitize_year, CitedRef, Corpus, Record, YearRange};

#[derive(Debug, Error)]
pub enum ImportError {
    #[error("malformed file at line {line}: {message}")]
    MalformedFile { line: usize, message: String },

    #[error("empty cited-reference line")]
    EmptyCrLine,

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl ImportError {
    fn malformed(line: usize, message: impl Into<String>) -> Self {
        ImportError::MalformedFile {
            line,
            message: message.into(),
        }
    }

    /// True when the root cause is an I/O failure rather than bad input.
    pub fn is_io(&self) -> bool {
        match self {
            ImportError::Io(_) => true,
            ImportError::Csv(e) => e.is_io_error(),
            _ => false,
        }
    }
}

/// Record and reference filters applied while importing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImportConfig {
    /// Reference publication years to keep.
    pub rpy_range: YearRange,
    /// Publication years of citing records to keep.
    pub py_range: YearRange,
    /// Per-record cap on imported cited references; 0 means unlimited.
    pub max_cr_per_record: usize,
}

impl Default for ImportConfig {
    fn default() -> Self {
        ImportConfig {
            rpy_range: YearRange::all(),
            py_range: YearRange::all(),
            max_cr_per_record: 0,
        }
    }
}

/// Uppercases, removes punctuation, and collapses runs of whitespace.
/// Idempotent: applying it twice gives the same string.
pub fn normalize_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut pending_space = false;
    for c in s.chars() {
        if c.is_alphanumeric() {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            // Some uppercasings expand into combining marks; keep only what
            // the alphanumeric filter would keep again, so the result is a
            // fixed point.
            for u in c.to_uppercase() {
                if u.is_alphanumeric() {
                    out.push(u);
                }
            }
        } else if c.is_whitespace() {
            pending_space = true;
        }
    }
    out
}

/// Canonical key for a cited reference: `AUTHOR|RPY|SOURCE|V|P` over the
/// normalized fields. Deterministic and idempotent; absent fields leave
/// their slot empty.
pub fn normalize_cr(cr: &CitedRef) -> String {
    let mut key = String::new();
    key.push_str(&cr.first_author.as_deref().map(normalize_text).unwrap_or_default());
    key.push('|');
    if let Some(y) = cr.rpy {
        key.push_str(&y.to_string());
    }
    key.push('|');
    key.push_str(&cr.source.as_deref().map(normalize_text).unwrap_or_default());
    key.push('|');
    key.push_str(&cr.volume.as_deref().map(normalize_text).unwrap_or_default());
    key.push('|');
    key.push_str(&cr.page.as_deref().map(normalize_text).unwrap_or_default());
    key
}

// Strips punctuation hugging a token, so a line-terminating period never
// hides a year or page marker.
fn token_core(tok: &str) -> &str {
    tok.trim_matches(|c: char| !c.is_alphanumeric())
}

fn volume_of(tok: &str) -> Option<&str> {
    let rest = token_core(tok).strip_prefix('V')?;
    (!rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())).then_some(rest)
}

// A page marker is `P` followed by alphanumerics containing at least one
// digit ("P3098", "Pb864"); the digit requirement keeps plain words out.
fn page_of(tok: &str) -> Option<&str> {
    let rest = token_core(tok).strip_prefix('P')?;
    (!rest.is_empty()
        && rest.bytes().all(|b| b.is_ascii_alphanumeric())
        && rest.bytes().any(|b| b.is_ascii_digit()))
    .then_some(rest)
}

fn year_of(tok: &str) -> Option<i32> {
    let core = token_core(tok);
    if core.len() == 4 && core.bytes().all(|b| b.is_ascii_digit()) {
        core.parse().ok().and_then(sanitize_year)
    } else {
        None
    }
}

fn doi_text(tok: &str) -> Option<&str> {
    let mut rest = tok.trim();
    let mut found = false;
    while rest.len() >= 4 && rest[..4].eq_ignore_ascii_case("doi ") {
        rest = rest[4..].trim_start();
        found = true;
    }
    let rest = rest.trim_end_matches(['.', ',', ';']);
    if found && !rest.is_empty() {
        Some(rest)
    } else {
        None
    }
}

/// Parses one comma-separated cited-reference string into its structured
/// fields. The raw text is preserved verbatim; extraction is best effort and
/// never fails on a non-empty line.
pub fn parse_cr_line(line: &str) -> Result<CitedRef, ImportError> {
    if line.trim().is_empty() {
        return Err(ImportError::EmptyCrLine);
    }
    let mut cr = CitedRef::from_raw(line);
    let tokens: Vec<&str> = line.split(", ").map(str::trim).collect();

    let author = normalize_text(tokens[0]);
    if !author.is_empty() {
        cr.first_author = Some(author);
    }

    let mut year_idx = None;
    for (i, tok) in tokens.iter().enumerate() {
        if let Some(y) = year_of(tok) {
            cr.rpy = Some(y);
            year_idx = Some(i);
            break;
        }
    }

    let source_idx = year_idx.map(|i| i + 1).filter(|&i| {
        tokens.get(i).is_some_and(|t| {
            volume_of(t).is_none() && page_of(t).is_none() && doi_text(t).is_none()
        })
    });
    if let Some(i) = source_idx {
        let src = normalize_text(tokens[i]);
        if !src.is_empty() {
            cr.source = Some(src);
        }
    }

    for (i, tok) in tokens.iter().enumerate().skip(1) {
        if Some(i) == year_idx || Some(i) == source_idx {
            continue;
        }
        if cr.volume.is_none() && volume_of(tok).is_some() {
            cr.volume = volume_of(tok).map(str::to_string);
        } else if cr.page.is_none() && page_of(tok).is_some() {
            cr.page = page_of(tok).map(str::to_string);
        } else if cr.doi.is_none() {
            if let Some(d) = doi_text(tok) {
                cr.doi = Some(d.to_lowercase());
            }
        }
    }
    Ok(cr)
}

#[derive(Default)]
struct RecordDraft {
    py: Option<i32>,
    title: Option<String>,
    source: Option<String>,
    cr_lines: Vec<String>,
}

impl RecordDraft {
    fn finish(self, id: String, config: &ImportConfig) -> Option<Record> {
        if !config.py_range.contains(self.py) {
            return None;
        }
        let mut refs: Vec<CitedRef> = self
            .cr_lines
            .iter()
            .filter_map(|l| parse_cr_line(l).ok())
            .filter(|cr| config.rpy_range.contains(cr.rpy))
            .collect();
        if config.max_cr_per_record > 0 {
            refs.truncate(config.max_cr_per_record);
        }
        Some(Record {
            id,
            py: self.py,
            title: self.title,
            source: self.source,
            cited_refs: refs,
        })
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Tag {
    Pt,
    Au,
    Ti,
    So,
    Py,
    Cr,
    Other,
}

fn split_tag(line: &str) -> Option<(&str, &str)> {
    let b = line.as_bytes();
    if b.len() < 2 {
        return None;
    }
    let tag_ok = b[..2]
        .iter()
        .all(|c| c.is_ascii_uppercase() || c.is_ascii_digit());
    if !tag_ok {
        return None;
    }
    match b.get(2) {
        None => Some((&line[..2], "")),
        Some(b' ') => Some((&line[..2], line[3..].trim_end())),
        _ => None,
    }
}

/// Parses a tagged-field export into a corpus, applying the configured
/// publication-year and reference-year filters. Records and their cited
/// references keep file order; record ids are synthesized from file order.
pub fn parse_wos<R: BufRead>(input: R, config: &ImportConfig) -> Result<Corpus, ImportError> {
    let mut records = Vec::new();
    let mut draft: Option<RecordDraft> = None;
    let mut last_tag = Tag::Other;
    let mut seq = 0usize;
    let mut saw_ef = false;
    let mut line_no = 0usize;

    for line in input.lines() {
        line_no += 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.trim().is_empty() {
            continue;
        }

        if let Some(cont) = line.strip_prefix("   ") {
            let Some(d) = draft.as_mut() else {
                return Err(ImportError::malformed(
                    line_no,
                    "continuation line before record start",
                ));
            };
            let text = cont.trim();
            match last_tag {
                Tag::Cr => {
                    if !text.is_empty() {
                        d.cr_lines.push(text.to_string());
                    }
                }
                Tag::Ti => append_text(&mut d.title, text),
                Tag::So => append_text(&mut d.source, text),
                _ => {}
            }
            continue;
        }

        let Some((tag, value)) = split_tag(line) else {
            return Err(ImportError::malformed(line_no, "unrecognized line"));
        };

        match tag {
            "EF" => {
                if draft.is_some() {
                    return Err(ImportError::malformed(
                        line_no,
                        "EF inside record (missing ER)",
                    ));
                }
                saw_ef = true;
                break;
            }
            "PT" => {
                if draft.is_some() {
                    return Err(ImportError::malformed(
                        line_no,
                        "new record before ER terminated the previous one",
                    ));
                }
                draft = Some(RecordDraft::default());
                last_tag = Tag::Pt;
            }
            "ER" => {
                let Some(d) = draft.take() else {
                    return Err(ImportError::malformed(line_no, "ER before record start"));
                };
                seq += 1;
                if let Some(rec) = d.finish(format!("r{seq}"), config) {
                    records.push(rec);
                }
                last_tag = Tag::Other;
            }
            "AU" | "TI" | "SO" | "PY" | "CR" => {
                let Some(d) = draft.as_mut() else {
                    return Err(ImportError::malformed(
                        line_no,
                        format!("tag {tag} before record start"),
                    ));
                };
                last_tag = match tag {
                    "AU" => Tag::Au,
                    "TI" => {
                        append_text(&mut d.title, value.trim());
                        Tag::Ti
                    }
                    "SO" => {
                        append_text(&mut d.source, value.trim());
                        Tag::So
                    }
                    "PY" => {
                        d.py = value.trim().parse().ok().and_then(sanitize_year);
                        Tag::Py
                    }
                    "CR" => {
                        if !value.trim().is_empty() {
                            d.cr_lines.push(value.trim().to_string());
                        }
                        Tag::Cr
                    }
                    _ => Tag::Au,
                };
            }
            _ => {
                // Unknown tag: skip the line and swallow its continuations.
                last_tag = Tag::Other;
            }
        }
    }

    if !saw_ef {
        return Err(ImportError::malformed(line_no + 1, "missing EF terminator"));
    }
    Ok(Corpus {
        records,
        provenance: "wos import".to_string(),
    })
}

fn append_text(slot: &mut Option<String>, text: &str) {
    if text.is_empty() {
        return;
    }
    match slot {
        Some(existing) => {
            existing.push(' ');
            existing.push_str(text);
        }
        None => *slot = Some(text.to_string()),
    }
}

/// Parses the CSV import layout: header `id,py,cr_raw`, one cited reference
/// per row. Rows sharing an id merge into one record in order of first
/// appearance; an empty `cr_raw` declares a record without adding a
/// reference.
pub fn parse_csv<R: Read>(input: R, config: &ImportConfig) -> Result<Corpus, ImportError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(input);

    let headers = reader.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (Some(id_col), Some(py_col), Some(cr_col)) = (col("id"), col("py"), col("cr_raw")) else {
        return Err(ImportError::malformed(
            1,
            "CSV header must contain columns id,py,cr_raw",
        ));
    };

    let mut order: Vec<String> = Vec::new();
    let mut by_id: std::collections::HashMap<String, RecordDraft> =
        std::collections::HashMap::new();

    for result in reader.records() {
        let row = result?;
        let line = row
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or_default();
        let id = row.get(id_col).unwrap_or("").trim();
        if id.is_empty() {
            return Err(ImportError::malformed(line, "empty id field"));
        }
        let draft = by_id.entry(id.to_string()).or_insert_with(|| {
            order.push(id.to_string());
            RecordDraft::default()
        });
        if draft.py.is_none() {
            draft.py = row
                .get(py_col)
                .and_then(|v| v.trim().parse().ok())
                .and_then(sanitize_year);
        }
        let cr_raw = row.get(cr_col).unwrap_or("").trim();
        if !cr_raw.is_empty() {
            draft.cr_lines.push(cr_raw.to_string());
        }
    }

    let mut records = Vec::new();
    for id in order {
        let draft = by_id.remove(&id).expect("id collected above");
        if let Some(rec) = draft.finish(id, config) {
            records.push(rec);
        }
    }
    Ok(Corpus {
        records,
        provenance: "csv import".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(rpy: (i32, i32, bool), py: (i32, i32, bool)) -> ImportConfig {
        ImportConfig {
            rpy_range: YearRange::new(rpy.0, rpy.1, rpy.2).unwrap(),
            py_range: YearRange::new(py.0, py.1, py.2).unwrap(),
            max_cr_per_record: 0,
        }
    }

    #[test]
    fn parse_cr_line_full_fields() {
        let cr = parse_cr_line("Becke AD, 1988, Physical Review A, V38, P3098").unwrap();
        assert_eq!(cr.first_author.as_deref(), Some("BECKE AD"));
        assert_eq!(cr.rpy, Some(1988));
        assert_eq!(cr.source.as_deref(), Some("PHYSICAL REVIEW A"));
        assert_eq!(cr.volume.as_deref(), Some("38"));
        assert_eq!(cr.page.as_deref(), Some("3098"));
        assert_eq!(cr.doi, None);
        assert_eq!(cr.raw, "Becke AD, 1988, Physical Review A, V38, P3098");
    }

    #[test]
    fn parse_cr_line_book_without_volume_or_page() {
        let cr = parse_cr_line("Kittel C, 1953, Introduction to solid state physics").unwrap();
        assert_eq!(cr.first_author.as_deref(), Some("KITTEL C"));
        assert_eq!(cr.rpy, Some(1953));
        assert_eq!(cr.source.as_deref(), Some("INTRODUCTION TO SOLID STATE PHYSICS"));
        assert_eq!(cr.volume, None);
        assert_eq!(cr.page, None);
    }

    #[test]
    fn parse_cr_line_volume_only() {
        let cr = parse_cr_line("Sun JW, 2013, Journal of Chemical Physics, V138").unwrap();
        assert_eq!(cr.volume.as_deref(), Some("138"));
        assert_eq!(cr.page, None);
    }

    #[test]
    fn parse_cr_line_doi_lowercased_and_stripped() {
        let cr = parse_cr_line("Kohn W, 1965, Physical Review, V140, P1133, DOI 10.1103/PhysRev.140.A1133")
            .unwrap();
        assert_eq!(cr.doi.as_deref(), Some("10.1103/physrev.140.a1133"));
        // Doubled prefix occurs in the wild.
        let cr = parse_cr_line("Kohn W, 1965, Physical Review, DOI DOI 10.1103/PhysRev.140.A1133")
            .unwrap();
        assert_eq!(cr.doi.as_deref(), Some("10.1103/physrev.140.a1133"));
    }

    #[test]
    fn parse_cr_line_alphanumeric_page() {
        let cr = parse_cr_line("Hohenberg P, 1964, Physical Review B, V136, Pb864").unwrap();
        assert_eq!(cr.page.as_deref(), Some("b864"));
    }

    #[test]
    fn parse_cr_line_implausible_year_left_absent() {
        let cr = parse_cr_line("Ghost A, 3012, Imaginary Journal").unwrap();
        assert_eq!(cr.rpy, None);
        assert_eq!(cr.source, None);
    }

    #[test]
    fn parse_cr_line_empty_is_error() {
        assert!(matches!(parse_cr_line("   "), Err(ImportError::EmptyCrLine)));
    }

    #[test]
    fn normalize_cr_key_layout() {
        let cr = parse_cr_line("Becke AD, 1988, PHYS REV A, V38, P3098").unwrap();
        assert_eq!(normalize_cr(&cr), "BECKE AD|1988|PHYS REV A|38|3098");
    }

    #[test]
    fn normalize_cr_idempotent_through_reconstruction() {
        let original = parse_cr_line("Becke A.D., 1988, Physical Review A., V38, P3098").unwrap();
        let key = normalize_cr(&original);
        let rebuilt = format!(
            "{}, {}, {}, V{}, P{}",
            original.first_author.as_deref().unwrap(),
            original.rpy.unwrap(),
            original.source.as_deref().unwrap(),
            original.volume.as_deref().unwrap(),
            original.page.as_deref().unwrap(),
        );
        let reparsed = parse_cr_line(&rebuilt).unwrap();
        assert_eq!(normalize_cr(&reparsed), key);
    }

    #[test]
    fn normalize_collapses_case_and_punctuation_variants() {
        // Exhaustive over a mutation fixture: case changes and trailing
        // punctuation must never split a key.
        let base = "Lee CT, 1988, Physical Review B, V37, P785";
        let key = normalize_cr(&parse_cr_line(base).unwrap());
        let mut variants = Vec::new();
        for mutate_case in [false, true] {
            for punct in ["", ".", "..", " .", ",,"] {
                for author in ["Lee CT", "LEE CT", "lee ct", "Lee C.T.", "Lee  CT"] {
                    let line = if mutate_case {
                        format!("{author}, 1988, PHYSICAL REVIEW B, V37, P785{punct}")
                    } else {
                        format!("{author}, 1988, physical review b, V37, P785{punct}")
                    };
                    variants.push(line);
                }
            }
        }
        assert_eq!(variants.len(), 50);
        for v in &variants {
            assert_eq!(normalize_cr(&parse_cr_line(v).unwrap()), key, "variant {v:?}");
        }
    }

    const TWO_RECORDS: &str = "\
FN Synthetic export
VR 1.0
PT J
AU Smith, J
TI A study of
   density functionals
SO Journal of Testing
PY 1987
CR Becke AD, 1988, Physical Review A, V38, P3098
   Kohn W, 1965, Physical Review, V140, P1133
ER
PT J
AU Doe, J
TI Another study
SO Journal of Testing
PY 1996
CR Kohn W, 1965, Physical Review, V140, P1133
ER
EF
";

    #[test]
    fn py_filter_drops_out_of_range_records() {
        let corpus = parse_wos(
            TWO_RECORDS.as_bytes(),
            &cfg((1500, 2100, true), (1988, 2017, false)),
        )
        .unwrap();
        assert_eq!(corpus.records.len(), 1);
        assert_eq!(corpus.records[0].py, Some(1996));
        assert_eq!(corpus.records[0].id, "r2");
    }

    #[test]
    fn title_continuation_appends() {
        let corpus = parse_wos(TWO_RECORDS.as_bytes(), &ImportConfig::default()).unwrap();
        assert_eq!(
            corpus.records[0].title.as_deref(),
            Some("A study of density functionals")
        );
        assert_eq!(corpus.records[0].cited_refs.len(), 2);
    }

    #[test]
    fn empty_input_is_malformed() {
        let err = parse_wos("".as_bytes(), &ImportConfig::default()).unwrap_err();
        assert!(matches!(err, ImportError::MalformedFile { .. }));
        assert!(err.to_string().contains("EF"));
    }

    #[test]
    fn rpy_filter_drops_out_of_range_refs() {
        let text = "\
PT J
PY 1995
CR Old A, 1949, Ancient Journal, V1, P1
   Old B, 1949, Ancient Journal, V1, P2
   New A, 1955, Modern Journal, V2, P3
   New B, 1960, Modern Journal, V3, P4
   New C, 1970, Modern Journal, V4, P5
ER
EF
";
        let corpus = parse_wos(text.as_bytes(), &cfg((1950, 1990, false), (1500, 2100, true)))
            .unwrap();
        assert_eq!(corpus.records[0].cited_refs.len(), 3);
    }

    #[test]
    fn missing_rpy_governed_by_include_missing() {
        let text = "\
PT J
PY 1995
CR Anon, Untitled report
   New A, 1955, Modern Journal, V2, P3
ER
EF
";
        let keep = parse_wos(text.as_bytes(), &cfg((1950, 1990, true), (1500, 2100, true)))
            .unwrap();
        assert_eq!(keep.records[0].cited_refs.len(), 2);
        let drop = parse_wos(text.as_bytes(), &cfg((1950, 1990, false), (1500, 2100, true)))
            .unwrap();
        assert_eq!(drop.records[0].cited_refs.len(), 1);
    }

    #[test]
    fn max_cr_caps_after_filtering() {
        let text = "\
PT J
PY 1995
CR Old A, 1949, Ancient Journal, V1, P1
   New A, 1955, Modern Journal, V2, P3
   New B, 1960, Modern Journal, V3, P4
ER
EF
";
        let mut config = cfg((1950, 1990, false), (1500, 2100, true));
        config.max_cr_per_record = 1;
        let corpus = parse_wos(text.as_bytes(), &config).unwrap();
        let refs = &corpus.records[0].cited_refs;
        assert_eq!(refs.len(), 1);
        assert_eq!(refs[0].first_author.as_deref(), Some("NEW A"));
    }

    #[test]
    fn tag_before_record_start_reports_line() {
        let text = "CR Becke AD, 1988, Physical Review A\nEF\n";
        let err = parse_wos(text.as_bytes(), &ImportConfig::default()).unwrap_err();
        match err {
            ImportError::MalformedFile { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn unknown_tags_and_their_continuations_skipped() {
        let text = "\
PT J
UT WOS:000012345
ID some keywords;
   more keywords
PY 1995
CR Kohn W, 1965, Physical Review, V140, P1133
ER
EF
";
        let corpus = parse_wos(text.as_bytes(), &ImportConfig::default()).unwrap();
        assert_eq!(corpus.records.len(), 1);
        assert_eq!(corpus.records[0].cited_refs.len(), 1);
    }

    #[test]
    fn crlf_accepted() {
        let text = TWO_RECORDS.replace('\n', "\r\n");
        let corpus = parse_wos(text.as_bytes(), &ImportConfig::default()).unwrap();
        assert_eq!(corpus.records.len(), 2);
    }

    #[test]
    fn record_count_matches_er_count_without_filters() {
        let ers = TWO_RECORDS.lines().filter(|l| *l == "ER").count();
        let corpus = parse_wos(TWO_RECORDS.as_bytes(), &ImportConfig::default()).unwrap();
        assert_eq!(corpus.records.len(), ers);
    }

    #[test]
    fn csv_import_groups_rows_by_id() {
        let text = "\
id,py,cr_raw
a,1995,\"Kohn W, 1965, Physical Review, V140, P1133\"
a,1995,\"Becke AD, 1988, Physical Review A, V38, P3098\"
b,2001,\"Kohn W, 1965, Physical Review, V140, P1133\"
c,2003,
";
        let corpus = parse_csv(text.as_bytes(), &ImportConfig::default()).unwrap();
        assert_eq!(corpus.records.len(), 3);
        assert_eq!(corpus.records[0].id, "a");
        assert_eq!(corpus.records[0].cited_refs.len(), 2);
        assert_eq!(corpus.records[1].cited_refs.len(), 1);
        assert_eq!(corpus.records[2].cited_refs.len(), 0);
    }

    #[test]
    fn csv_import_requires_header() {
        let text = "ident,year\nx,1990\n";
        let err = parse_csv(text.as_bytes(), &ImportConfig::default()).unwrap_err();
        assert!(err.to_string().contains("id,py,cr_raw"));
    }

    proptest! {
        #[test]
        fn parse_cr_line_never_panics_and_preserves_raw(line in "\\PC{1,120}") {
            prop_assume!(!line.trim().is_empty());
            let cr = parse_cr_line(&line).unwrap();
            prop_assert_eq!(cr.raw, line);
        }

        #[test]
        fn normalize_text_idempotent(s in "\\PC{0,60}") {
            let once = normalize_text(&s);
            prop_assert_eq!(normalize_text(&once), once);
        }

        #[test]
        fn widening_ranges_never_loses_records(
            lo in 1950i32..=1980,
            hi in 1981i32..=2010,
        ) {
            let narrow = cfg((lo, hi, false), (lo, hi, false));
            let wide = cfg((lo - 10, hi + 10, true), (lo - 10, hi + 10, true));
            let a = parse_wos(TWO_RECORDS.as_bytes(), &narrow).unwrap();
            let b = parse_wos(TWO_RECORDS.as_bytes(), &wide).unwrap();
            prop_assert!(a.records.len() <= b.records.len());
            let total = |c: &Corpus| c.stats().n_cr_occurrences;
            prop_assert!(total(&a) <= total(&b));
        }
    }
}
