//! Iterating from a poor marker paper towards a good one.
//!
//! When no well-cited marker is known, start from any reasonable paper, run
//! the co-citation analysis, and look at the most frequent co-cited
//! references: a candidate whose count rivals the size of the citing set is
//! a hint that the current marker is no better cited than its neighbors.
//! Pick a stronger candidate and rerun.
//!
//! ```bash
//! cargo run -p rpys --example iterative_markers
//! ```

use rpys::cocitation::{
    run_rpys_co, suggest_markers, AnalysisOptions, MarkerQuery, COMPARABLE_TOLERANCE,
};
use rpys::import::parse_cr_line;
use rpys::record::{Corpus, Record, YearRange};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A small synthetic corpus: the "poor" marker is cited 40 times, while
    // two foundational references dominate its co-citation neighborhood.
    let mut records = Vec::new();
    for i in 0..200 {
        let mut refs = Vec::new();
        if i < 40 {
            refs.push("Niche A, 2012, Journal of Narrow Results, V7, P101");
        }
        if i < 38 || i % 3 == 0 {
            refs.push("Kohn W, 1965, Physical Review, V140, P1133");
        }
        if i < 30 || i % 4 == 0 {
            refs.push("Becke AD, 1988, Physical Review A, V38, P3098");
        }
        if i % 7 == 0 {
            refs.push("Slater JC, 1951, Physical Review, V81, P385");
        }
        let record = Record {
            id: format!("r{i}"),
            py: Some(2013 + i % 5),
            title: None,
            source: None,
            cited_refs: refs.iter().map(|r| parse_cr_line(r).unwrap()).collect(),
        };
        records.push(record);
    }
    let corpus = Corpus::new(records, "synthetic demo")?;

    let poor = MarkerQuery::parse_spec("Niche A,2012,V7,P101")?;
    let options = AnalysisOptions {
        rpy_range: YearRange::new(1950, 2017, false)?,
        ..AnalysisOptions::default()
    };

    println!("== step 1: poor marker ==");
    let first = run_rpys_co(&corpus, &[poor], &options)?;
    println!("citing records: {}", first.n_citing);
    println!("candidate markers:");
    let candidates = suggest_markers(&first, 5, COMPARABLE_TOLERANCE);
    for c in &candidates {
        let mut notes = Vec::new();
        if c.is_marker {
            notes.push("the marker itself");
        }
        if c.comparable_to_marker {
            notes.push("comparable count: marker looks weak");
        }
        println!(
            "  {}. NCR={:<3} ratio={:.2} {} {}",
            c.rank,
            c.ncr,
            c.ratio,
            c.cr,
            if notes.is_empty() { String::new() } else { format!("({})", notes.join("; ")) }
        );
    }

    // The strongest non-marker candidate becomes the next marker.
    let next = candidates
        .iter()
        .find(|c| !c.is_marker)
        .expect("a candidate beyond the marker");
    println!("\n== step 2: rerun with `{}` ==", next.cr);
    let better = MarkerQuery::parse_spec(&format!(
        "{},{}",
        next.cr.split(", ").next().unwrap(),
        next.rpy.unwrap()
    ))?;
    let second = run_rpys_co(&corpus, &[better], &options)?;
    println!("citing records: {} (was {})", second.n_citing, first.n_citing);
    println!("peak years: {:?}", second.spectrogram.peaks);
    Ok(())
}
