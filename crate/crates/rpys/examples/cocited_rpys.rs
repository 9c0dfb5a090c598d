//! Co-citation analysis around a marker paper: select the records citing
//! it, then run the spectroscopy pipeline on that subset.
//!
//! ```bash
//! cargo run -p rpys --example cocited_rpys
//! ```

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use rpys::cocitation::{run_rpys_co, AnalysisOptions, MarkerQuery};
use rpys::import::{parse_wos, ImportConfig};
use rpys::record::YearRange;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/citing_papers.wos.txt");

    // Import with the reference years wide open: the analysis window is
    // applied after marker selection, so a marker outside it still works.
    let corpus = parse_wos(
        BufReader::new(File::open(path)?),
        &ImportConfig {
            py_range: YearRange::new(1988, 2017, false)?,
            ..ImportConfig::default()
        },
    )?;

    let marker = MarkerQuery::parse_spec("Becke AD,1988,V38,P3098")?;
    let options = AnalysisOptions {
        rpy_range: YearRange::new(1950, 1990, false)?,
        ..AnalysisOptions::default()
    };
    let result = run_rpys_co(&corpus, &[marker], &options)?;

    println!("marker:            {}", result.markers[0].display());
    println!("citing records:    {}", result.n_citing);
    println!("aggregates:        {}", result.aggregates.len());
    println!("peak years:        {:?}", result.spectrogram.peaks);

    println!("\nreferences under the peaks:");
    for row in result.peak_table.iter().take(8) {
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
