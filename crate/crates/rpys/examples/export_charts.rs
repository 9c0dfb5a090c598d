//! Render spectrograms as static SVG charts: the single-analysis view with
//! count and median-deviation curves, and a normalized overlay comparing
//! several analyses.
//!
//! ```bash
//! cargo run -p rpys --example export_charts
//! ```

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use rpys::cocitation::{run_rpys_co, AnalysisOptions, MarkerQuery};
use rpys::export::{export_svg, SvgOptions, SvgSeries};
use rpys::import::{parse_wos, ImportConfig};
use rpys::record::YearRange;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/citing_papers.wos.txt");
    let corpus = parse_wos(BufReader::new(File::open(path)?), &ImportConfig::default())?;

    let options = AnalysisOptions {
        rpy_range: YearRange::new(1950, 1990, false)?,
        ..AnalysisOptions::default()
    };
    let markers = [
        MarkerQuery::parse_spec("Becke AD,1988,V38,P3098")?,
        MarkerQuery::parse_spec("Kohn W,1965,V140,P1133")?,
        MarkerQuery::parse_spec("Vosko SH,1980,V58,P1200")?,
    ];
    let runs: Vec<_> = markers
        .iter()
        .map(|m| run_rpys_co(&corpus, std::slice::from_ref(m), &options))
        .collect::<Result<_, _>>()?;

    let out = std::env::temp_dir().join("rpys_charts");
    std::fs::create_dir_all(&out)?;

    // Single analysis: count curve plus median deviation.
    let single = out.join("becke_spectrogram.svg");
    export_svg(
        &[SvgSeries {
            name: "co-cited with the 1988 marker",
            spectrogram: &runs[0].spectrogram,
        }],
        &SvgOptions::default(),
        &single,
    )?;
    println!("wrote {}", single.display());

    // Overlay of all runs, normalized so different corpus sizes compare.
    let overlay = out.join("comparison.svg");
    let labels: Vec<String> = markers.iter().map(|m| m.display()).collect();
    let series: Vec<SvgSeries> = labels
        .iter()
        .zip(&runs)
        .map(|(label, r)| SvgSeries {
            name: label,
            spectrogram: &r.spectrogram,
        })
        .collect();
    export_svg(&series, &SvgOptions { normalize: true }, &overlay)?;
    println!("wrote {}", overlay.display());
    Ok(())
}
