//! Compute a citation spectrogram: per-year reference counts, the median
//! deviation curve, and the peak years that point at seminal works.
//!
//! ```bash
//! cargo run -p rpys --example spectrogram
//! ```

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use rpys::cluster::{cluster, merge, ClusterConfig};
use rpys::import::{parse_wos, ImportConfig};
use rpys::record::YearRange;
use rpys::spectroscopy::{top_crs, Spectrogram};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/citing_papers.wos.txt");
    let range = YearRange::new(1950, 1990, false)?;
    let config = ImportConfig {
        rpy_range: range,
        py_range: YearRange::new(1988, 2017, false)?,
        max_cr_per_record: 0,
    };
    let corpus = parse_wos(BufReader::new(File::open(path)?), &config)?;
    let aggregates = merge(&cluster(&corpus.all_cited_refs(), &ClusterConfig::default()));

    let spectrogram = Spectrogram::analyze(&aggregates, &range, 5)?;
    println!("year  ncr  distinct  median-dev");
    for p in spectrogram.points.iter().filter(|p| p.ncr > 0) {
        let peak = if spectrogram.peaks.contains(&p.rpy) { "  <- peak" } else { "" };
        println!(
            "{}  {:>4}  {:>8}  {:>10.2}{peak}",
            p.rpy, p.ncr, p.n_distinct_crs, p.median_dev
        );
    }
    println!("\npeak years: {:?}", spectrogram.peaks);

    println!("\nmost frequent references:");
    for row in top_crs(&aggregates, 5, None) {
        println!(
            "  {}. [{}] NCR={:<4} {}",
            row.rank,
            row.rpy.map(|y| y.to_string()).unwrap_or_else(|| "----".into()),
            row.ncr,
            row.cr
        );
    }
    Ok(())
}
