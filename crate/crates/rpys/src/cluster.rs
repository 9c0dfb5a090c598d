//! Clustering of equivalent cited-reference variants.
//!
//! References mutate between citing papers: journal abbreviations differ,
//! OCR turns a `0` into an `8`, pages get truncated. Two occurrences are
//! linked when they sit in the same reference-year bucket, agree on every
//! field the configuration requires, and their normalized keys are close
//! under normalized edit distance. Clusters are the connected components of
//! that link relation, so chains of small mutations merge transitively.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::import::{normalize_cr, normalize_text};
use crate::record::{AggregatedCR, CitedRef};

/// Linking rules for variant clustering. Defaults match the usual analysis
/// script: threshold 0.75, volume and page must agree, DOI free.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterConfig {
    /// Minimum normalized-key similarity in `[0, 1]` for two variants to link.
    pub threshold: f64,
    pub require_volume_match: bool,
    pub require_page_match: bool,
    pub require_doi_match: bool,
    /// Allow links across different reference publication years. Off by
    /// default: year buckets bound the pairwise comparison.
    pub cross_rpy: bool,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        ClusterConfig {
            threshold: 0.75,
            require_volume_match: true,
            require_page_match: true,
            require_doi_match: false,
            cross_rpy: false,
        }
    }
}

impl ClusterConfig {
    pub fn new(threshold: f64) -> Self {
        ClusterConfig {
            threshold,
            ..ClusterConfig::default()
        }
    }
}

/// One distinct cited-reference variant with its occurrence count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variant {
    /// First occurrence seen for this variant, used for display.
    pub repr: CitedRef,
    /// Normalized key (`AUTHOR|RPY|SOURCE|V|P`).
    pub key: String,
    pub count: u64,
}

/// Result of [`cluster`]: the distinct variants plus a partition of their
/// indices into clusters. Cluster order follows first occurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub variants: Vec<Variant>,
    pub clusters: Vec<Vec<usize>>,
}

/// Levenshtein distance over characters.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    edit_distance_chars(&a, &b)
}

fn edit_distance_chars(a: &[char], b: &[char]) -> usize {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return long.len();
    }
    let mut row: Vec<usize> = (0..=short.len()).collect();
    for (j, &cb) in long.iter().enumerate() {
        let mut prev_diag = row[0];
        row[0] = j + 1;
        for (i, &ca) in short.iter().enumerate() {
            let cost = if ca == cb { 0 } else { 1 };
            let next = (prev_diag + cost).min(row[i] + 1).min(row[i + 1] + 1);
            prev_diag = row[i + 1];
            row[i + 1] = next;
        }
    }
    row[short.len()]
}

/// Similarity of two normalized keys: `1 - dist / max_len`, with two empty
/// keys defined as identical.
pub fn key_similarity(a: &str, b: &str) -> f64 {
    let la = a.chars().count();
    let lb = b.chars().count();
    let max = la.max(lb);
    if max == 0 {
        return 1.0;
    }
    1.0 - edit_distance(a, b) as f64 / max as f64
}

/// Similarity of two cited references over their normalized keys.
pub fn cr_similarity(a: &CitedRef, b: &CitedRef) -> f64 {
    key_similarity(&normalize_cr(a), &normalize_cr(b))
}

struct VariantMeta {
    chars: Vec<char>,
    rpy: Option<i32>,
    volume: Option<String>,
    page: Option<String>,
    doi: Option<String>,
}

impl VariantMeta {
    fn of(cr: &CitedRef, key: &str) -> Self {
        VariantMeta {
            chars: key.chars().collect(),
            rpy: cr.rpy,
            volume: cr.volume.as_deref().map(normalize_text),
            page: cr.page.as_deref().map(normalize_text),
            doi: cr.doi.as_deref().map(str::to_lowercase),
        }
    }
}

fn fields_match(a: &Option<String>, b: &Option<String>) -> bool {
    a == b
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Groups occurrences into clusters of equivalent variants.
///
/// Two variants link iff they share a reference-year bucket (unless
/// `cross_rpy`), every enabled `require_*_match` field is equal on both
/// sides (both present and equal, or both absent), and key similarity
/// reaches the threshold. Clusters are the transitive closure of links;
/// every variant lands in exactly one cluster.
pub fn cluster(occurrences: &[CitedRef], config: &ClusterConfig) -> Clustering {
    debug_assert!((0.0..=1.0).contains(&config.threshold));

    // Collapse occurrences into distinct variants. Identity is the
    // normalized key plus the DOI, so a DOI disagreement can still keep
    // variants apart when require_doi_match is on.
    let mut variants: Vec<Variant> = Vec::new();
    let mut meta: Vec<VariantMeta> = Vec::new();
    let mut index: HashMap<(String, Option<String>), usize> = HashMap::new();
    for cr in occurrences {
        let key = normalize_cr(cr);
        let doi = cr.doi.as_deref().map(str::to_lowercase);
        match index.entry((key.clone(), doi)) {
            std::collections::hash_map::Entry::Occupied(e) => {
                variants[*e.get()].count += 1;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(variants.len());
                meta.push(VariantMeta::of(cr, &key));
                variants.push(Variant {
                    repr: cr.clone(),
                    key,
                    count: 1,
                });
            }
        }
    }

    // Lossless blocking: variants that differ on the year bucket or on a
    // required field can never link, so partition before comparing pairs.
    type BlockKey = (Option<i32>, Option<String>, Option<String>, Option<String>);
    let mut blocks: HashMap<BlockKey, Vec<usize>> = HashMap::new();
    for (i, m) in meta.iter().enumerate() {
        let block_key = (
            if config.cross_rpy { None } else { m.rpy },
            if config.require_volume_match {
                m.volume.clone()
            } else {
                None
            },
            if config.require_page_match {
                m.page.clone()
            } else {
                None
            },
            if config.require_doi_match {
                m.doi.clone()
            } else {
                None
            },
        );
        blocks.entry(block_key).or_default().push(i);
    }

    let mut uf = UnionFind::new(variants.len());
    for members in blocks.values() {
        for (a_pos, &i) in members.iter().enumerate() {
            for &j in &members[a_pos + 1..] {
                if uf.find(i) == uf.find(j) {
                    continue;
                }
                if linked(&meta[i], &meta[j], config) {
                    uf.union(i, j);
                }
            }
        }
    }

    // Components ordered by their first variant; members in input order.
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..variants.len() {
        let root = uf.find(i);
        by_root.entry(root).or_default().push(i);
    }
    let mut clusters: Vec<Vec<usize>> = by_root.into_values().collect();
    clusters.iter_mut().for_each(|c| c.sort_unstable());
    clusters.sort_unstable_by_key(|c| c[0]);

    Clustering { variants, clusters }
}

fn linked(a: &VariantMeta, b: &VariantMeta, config: &ClusterConfig) -> bool {
    if !config.cross_rpy && a.rpy != b.rpy {
        return false;
    }
    if config.require_volume_match && !fields_match(&a.volume, &b.volume) {
        return false;
    }
    if config.require_page_match && !fields_match(&a.page, &b.page) {
        return false;
    }
    if config.require_doi_match && !fields_match(&a.doi, &b.doi) {
        return false;
    }
    let max_len = a.chars.len().max(b.chars.len());
    if max_len == 0 {
        return true;
    }
    // Length gap alone can rule the pair out before running the DP.
    let diff = a.chars.len().abs_diff(b.chars.len());
    if 1.0 - diff as f64 / (max_len as f64) < config.threshold {
        return false;
    }
    let sim = 1.0 - edit_distance_chars(&a.chars, &b.chars) as f64 / max_len as f64;
    sim >= config.threshold
}

/// Merges each cluster into one aggregated cited reference.
///
/// The canonical variant is the most frequent member, ties broken by the
/// lexicographically smallest key so repeated runs emit identical bytes.
/// The total count over all aggregates equals the occurrence count fed in.
pub fn merge(clustering: &Clustering) -> Vec<AggregatedCR> {
    clustering
        .clusters
        .iter()
        .enumerate()
        .map(|(cluster_id, members)| {
            let mut ncr = 0u64;
            let mut variants = Vec::with_capacity(members.len());
            let mut canonical = members[0];
            for &i in members {
                let v = &clustering.variants[i];
                ncr += v.count;
                variants.push((v.repr.clone(), v.count));
                let best = &clustering.variants[canonical];
                if v.count > best.count || (v.count == best.count && v.key < best.key) {
                    canonical = i;
                }
            }
            AggregatedCR {
                canonical: clustering.variants[canonical].repr.clone(),
                ncr,
                variants,
                cluster_id,
            }
        })
        .collect()
}

/// Drops every aggregate whose count falls inside `[lo, hi]`; order is
/// preserved and counts are never altered.
pub fn remove_cr(aggregates: Vec<AggregatedCR>, lo: u64, hi: u64) -> Vec<AggregatedCR> {
    debug_assert!(lo <= hi);
    aggregates
        .into_iter()
        .filter(|a| !(lo..=hi).contains(&a.ncr))
        .collect()
}
