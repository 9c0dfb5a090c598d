//! Import a corpus from the minimal CSV layout (`id,py,cr_raw`, one cited
//! reference per row), the escape hatch for data that does not ship in the
//! tagged-field export format.
//!
//! ```bash
//! cargo run -p rpys --example corpus_from_csv
//! ```

use rpys::cluster::{cluster, merge, ClusterConfig};
use rpys::import::{parse_csv, ImportConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let csv = "\
id,py,cr_raw
p1,2001,\"Kohn W, 1965, Physical Review, V140, P1133\"
p1,2001,\"Becke AD, 1988, Physical Review A, V38, P3098\"
p2,2004,\"Kohn W, 1965, Phys Rev, V140, P1133\"
p2,2004,\"Slater JC, 1951, Physical Review, V81, P385\"
p3,2010,\"K0hn W, 1965, Physical Review, V140, P1133\"
p4,2011,\"Kohn W, 1965, Physical Review, V140, P1133\"
p5,2011,
";
    let corpus = parse_csv(csv.as_bytes(), &ImportConfig::default())?;
    let stats = corpus.stats();
    println!(
        "{} records, {} reference occurrences",
        stats.n_records, stats.n_cr_occurrences
    );

    for aggregate in merge(&cluster(&corpus.all_cited_refs(), &ClusterConfig::default())) {
        println!(
            "NCR {}  ({} variants)  {}",
            aggregate.ncr,
            aggregate.variants.len(),
            aggregate.canonical.raw
        );
    }
    Ok(())
}
