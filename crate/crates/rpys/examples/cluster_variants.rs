//! Cluster noisy cited-reference variants and merge them into aggregates.
//!
//! References mutate between citing papers: OCR flips digits, journals get
//! abbreviated, stray punctuation creeps in. This example shows how close
//! variants link up while genuinely different references stay apart.
//!
//! ```bash
//! cargo run -p rpys --example cluster_variants
//! ```

use rpys::cluster::{cluster, cr_similarity, merge, ClusterConfig};
use rpys::import::parse_cr_line;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lines = [
        "Kohn W, 1965, Physical Review, V140, P1133",
        "Kohn W, 1965, Physical Review, V140, P1133",
        "Kohn W, 1965, Phys Rev, V140, P1133",
        "K0hn W, 1965, Physical Review, V140, P1133",
        "KOHN W, 1965, PHYSICAL REVIEW, V140, P1133.",
        "Hohenberg P, 1964, Physical Review B, V136, Pb864",
        "Hohenberg P, 1964, Phys Rev B, V136, Pb864",
        "Becke AD, 1988, Physical Review A, V38, P3098",
        "Becke AD, 1988, Physical Review A, V83, P3098", // volume mismatch
    ];
    let occurrences: Vec<_> = lines
        .iter()
        .map(|l| parse_cr_line(l))
        .collect::<Result<_, _>>()?;

    let a = &occurrences[0];
    let b = &occurrences[2];
    println!("similarity of\n  {}\n  {}\n  = {:.4}\n", a.raw, b.raw, cr_similarity(a, b));

    let config = ClusterConfig::default(); // threshold 0.75, volume+page must match
    let clustering = cluster(&occurrences, &config);
    println!(
        "{} occurrences -> {} variants -> {} clusters",
        occurrences.len(),
        clustering.variants.len(),
        clustering.clusters.len()
    );

    for aggregate in merge(&clustering) {
        println!("\nNCR {:>2}  {}", aggregate.ncr, aggregate.canonical.raw);
        for (variant, count) in &aggregate.variants {
            println!("        {count}x {}", variant.raw);
        }
    }
    Ok(())
}
