//! Checks of the bundled corpus against oracles that read the raw file
//! directly, independent of the parser.

use std::path::{Path, PathBuf};

use rpys::import::{parse_wos, ImportConfig};

fn fixture_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/citing_papers.wos.txt")
}

/// Counts reference lines in CR blocks straight off the text: the tagged
/// line plus every three-space continuation that follows it.
fn count_cr_lines(raw: &str) -> usize {
    let mut count = 0;
    let mut in_cr_block = false;
    for line in raw.lines() {
        if line.starts_with("CR ") {
            in_cr_block = true;
            count += 1;
        } else if line.starts_with("   ") {
            if in_cr_block {
                count += 1;
            }
        } else {
            in_cr_block = false;
        }
    }
    count
}

#[test]
fn corpus_stats_match_line_count_oracle() {
    let raw = std::fs::read_to_string(fixture_path()).unwrap();
    let expected_refs = count_cr_lines(&raw);
    let expected_records = raw.lines().filter(|l| *l == "ER").count();

    // Permissive config: nothing filtered, so the parsed counts must equal
    // the raw line counts.
    let corpus = parse_wos(raw.as_bytes(), &ImportConfig::default()).unwrap();
    let stats = corpus.stats();
    assert_eq!(stats.n_records, expected_records);
    assert_eq!(stats.n_cr_occurrences, expected_refs);

    let summed: usize = corpus.records.iter().map(|r| r.cited_refs.len()).sum();
    assert_eq!(summed, stats.n_cr_occurrences);
}

#[test]
fn record_ids_unique_and_in_file_order() {
    let raw = std::fs::read_to_string(fixture_path()).unwrap();
    let corpus = parse_wos(raw.as_bytes(), &ImportConfig::default()).unwrap();
    let mut seen = std::collections::HashSet::new();
    for r in &corpus.records {
        assert!(seen.insert(r.id.clone()), "duplicate id {}", r.id);
    }
    let numbers: Vec<usize> = corpus
        .records
        .iter()
        .map(|r| r.id[1..].parse().unwrap())
        .collect();
    let mut sorted = numbers.clone();
    sorted.sort_unstable();
    assert_eq!(numbers, sorted);
}
