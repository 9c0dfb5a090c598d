//! Import a tagged-field bibliographic export and inspect what was parsed.
//!
//! ```bash
//! cargo run -p rpys --example parse_wos
//! ```

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use rpys::import::{parse_wos, ImportConfig};
use rpys::record::YearRange;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/citing_papers.wos.txt");

    let config = ImportConfig {
        rpy_range: YearRange::new(1950, 1990, false)?,
        py_range: YearRange::new(1988, 2017, false)?,
        max_cr_per_record: 0,
    };
    let corpus = parse_wos(BufReader::new(File::open(&path)?), &config)?;

    let stats = corpus.stats();
    println!("corpus: {}", path.display());
    println!("  records imported:      {}", stats.n_records);
    println!("  reference occurrences: {}", stats.n_cr_occurrences);
    println!(
        "  reference years:       {} .. {}",
        stats.rpy_min.unwrap_or_default(),
        stats.rpy_max.unwrap_or_default()
    );

    let record = &corpus.records[0];
    println!("\nfirst record ({}):", record.id);
    println!("  title:  {}", record.title.as_deref().unwrap_or("-"));
    println!("  source: {}", record.source.as_deref().unwrap_or("-"));
    println!("  year:   {}", record.py.map(|y| y.to_string()).unwrap_or_default());
    println!("  cited references:");
    for cr in &record.cited_refs {
        println!(
            "    [{}] {} | vol {} page {}",
            cr.rpy.map(|y| y.to_string()).unwrap_or_else(|| "----".into()),
            cr.first_author.as_deref().unwrap_or("?"),
            cr.volume.as_deref().unwrap_or("-"),
            cr.page.as_deref().unwrap_or("-"),
        );
    }
    Ok(())
}
