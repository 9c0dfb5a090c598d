//! Execute a batch analysis script against the bundled corpus.
//!
//! The script language mirrors published analysis workflows: import with
//! year filters, cluster and merge equivalent reference variants, drop
//! rarely cited ones, export tables and spectrogram series.
//!
//! ```bash
//! cargo run -p rpys --example run_script
//! ```

use std::path::Path;

use rpys::script::{execute, parse_script, AnalysisSession, ExecContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let text = std::fs::read_to_string(fixtures.join("full_rpys.crs"))?;
    println!("script:\n{text}");

    let commands = parse_script(&text)?;
    println!("parsed {} commands", commands.len());

    let out = std::env::temp_dir().join("rpys_script_demo");
    std::fs::create_dir_all(&out)?;
    let ctx = ExecContext::new(&fixtures, &out);
    let session = execute(&commands, AnalysisSession::new(), &ctx)?;

    println!("\nexecuted:");
    for entry in &session.history {
        println!("  {entry}");
    }
    println!("\naggregates kept: {}", session.aggregates.map(|a| a.len()).unwrap_or(0));
    for name in ["full_rpys_CR.csv", "full_rpys_GRAPH.csv"] {
        let path = out.join(name);
        println!("\n--- {} ---", path.display());
        let content = std::fs::read_to_string(&path)?;
        for line in content.lines().take(6) {
            println!("{line}");
        }
    }
    Ok(())
}
