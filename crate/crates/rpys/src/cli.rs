//! Command-line surface for batch runs: execute an analysis script, or run
//! a marker-based co-citation analysis end to end.
//!
//! Exit codes are part of the contract: 0 success (including a marker that
//! matches nothing), 1 script or analysis error, 2 I/O or usage error.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::cocitation::{
    run_rpys_co, select_citing, suggest_markers, AnalysisOptions, MarkerError, MarkerQuery,
    COMPARABLE_TOLERANCE,
};
use crate::cluster::ClusterConfig;
use crate::export::{
    export_cr_csv, export_graph_csv, export_svg, ExportError, SvgOptions, SvgSeries,
};
use crate::import::{parse_csv, parse_wos, ImportConfig, ImportError};
use crate::record::{Corpus, YearRange};
use crate::script::{execute, parse_script, AnalysisSession, ExecContext, ScriptError};
use crate::spectroscopy::SpectroError;

#[derive(Parser)]
#[command(name = "rpys", version, about = "Reference publication year spectroscopy")]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Run an analysis script (importFile/cluster/merge/removeCR/exportFile).
    RunScript(RunScriptArgs),
    /// Run a co-citation analysis around one or more marker papers.
    RpysCo(RpysCoArgs),
}

#[derive(Args)]
struct RunScriptArgs {
    /// Script file to execute.
    script: PathBuf,
    /// Directory input files are resolved against (default: the script's
    /// directory).
    #[arg(long)]
    data: Option<PathBuf>,
    /// Directory exports are written to.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct RpysCoArgs {
    /// Bibliographic corpus to analyze.
    #[arg(long)]
    input: PathBuf,
    /// Input format.
    #[arg(long, default_value = "wos", value_parser = ["wos", "csv"])]
    format: String,
    /// Marker paper, e.g. "Becke AD,1988,V38,P3098". Repeatable; records
    /// citing any marker are selected.
    #[arg(long)]
    marker: Vec<String>,
    /// Marker paper identified by DOI alone. Repeatable.
    #[arg(long)]
    marker_doi: Vec<String>,
    /// Reference publication year axis as LO:HI (default: the observed
    /// range of the selected records).
    #[arg(long)]
    rpy: Option<String>,
    /// Publication-year filter for citing records as LO:HI.
    #[arg(long)]
    py: Option<String>,
    /// Similarity threshold for variant clustering.
    #[arg(long, default_value_t = 0.75)]
    cluster_threshold: f64,
    /// Require equal volume fields when clustering.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    match_volume: bool,
    /// Require equal page fields when clustering.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    match_page: bool,
    /// Require equal DOIs when clustering.
    #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
    match_doi: bool,
    /// Remove aggregates cited fewer than N times; 0 keeps everything.
    #[arg(long, default_value_t = 100)]
    remove_below: u64,
    /// Median window for the deviation curve (odd, >= 3).
    #[arg(long, default_value_t = 5)]
    window: usize,
    /// Append the top-N candidate marker table to the output.
    #[arg(long, value_name = "N")]
    suggest_markers: Option<usize>,
    /// Normalize overlay curves to max = 1 in the SVG.
    #[arg(long)]
    normalize_plot: bool,
    /// Output directory.
    #[arg(long, default_value = "rpys_out")]
    out: PathBuf,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Script(#[from] ScriptError),
    #[error("{0}")]
    Import(#[from] ImportError),
    #[error("{0}")]
    Marker(#[from] MarkerError),
    #[error("{0}")]
    Spectro(#[from] SpectroError),
    #[error("{0}")]
    Export(#[from] ExportError),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 2,
            CliError::Usage(_) => 2,
            CliError::Script(e) if e.is_io() => 2,
            CliError::Import(e) if e.is_io() => 2,
            CliError::Export(ExportError::Io(_)) => 2,
            _ => 1,
        }
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 2;
        }
    };
    let result = match &cli.command {
        CliCommand::RunScript(args) => cmd_run_script(args),
        CliCommand::RpysCo(args) => cmd_rpys_co(args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn cmd_run_script(args: &RunScriptArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.script)?;
    let commands = parse_script(&text)?;
    let data_dir = args
        .data
        .clone()
        .or_else(|| args.script.parent().map(Path::to_path_buf))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&args.out)?;
    let ctx = ExecContext::new(data_dir, args.out.clone());
    execute(&commands, AnalysisSession::new(), &ctx)?;
    Ok(())
}

fn parse_year_pair(flag: &str, value: &str) -> Result<(i32, i32), CliError> {
    let err = || CliError::Usage(format!("--{flag} expects LO:HI, got `{value}`"));
    let (lo, hi) = value.split_once(':').ok_or_else(err)?;
    let lo: i32 = lo.trim().parse().map_err(|_| err())?;
    let hi: i32 = hi.trim().parse().map_err(|_| err())?;
    if lo > hi {
        return Err(CliError::Usage(format!("--{flag}: {lo} > {hi}")));
    }
    Ok((lo, hi))
}

fn load_corpus(args: &RpysCoArgs) -> Result<Corpus, CliError> {
    // Reference-year scoping happens after marker selection, so markers
    // outside the analysis window still find their citing records. Only the
    // publication-year filter applies at import.
    let py_range = match &args.py {
        Some(v) => {
            let (lo, hi) = parse_year_pair("py", v)?;
            YearRange::new(lo, hi, false).expect("validated lo <= hi")
        }
        None => YearRange::all(),
    };
    let config = ImportConfig {
        rpy_range: YearRange::all(),
        py_range,
        max_cr_per_record: 0,
    };
    let handle = File::open(&args.input)?;
    let mut corpus = match args.format.as_str() {
        "csv" => parse_csv(handle, &config)?,
        _ => parse_wos(BufReader::new(handle), &config)?,
    };
    corpus.provenance = args.input.display().to_string();
    Ok(corpus)
}

fn resolve_markers(args: &RpysCoArgs) -> Result<Vec<MarkerQuery>, CliError> {
    let mut markers = Vec::new();
    for spec in &args.marker {
        markers.push(MarkerQuery::parse_spec(spec)?);
    }
    for doi in &args.marker_doi {
        markers.push(MarkerQuery::by_doi(doi));
    }
    if markers.is_empty() {
        return Err(CliError::Usage(
            "at least one --marker or --marker-doi is required".to_string(),
        ));
    }
    Ok(markers)
}

fn cmd_rpys_co(args: &RpysCoArgs) -> Result<(), CliError> {
    let corpus = load_corpus(args)?;
    let markers = resolve_markers(args)?;

    // Resolve the year axis: explicit flag, otherwise the observed span of
    // the selected records, widened to fit the median window.
    let citing = select_citing(&corpus, &markers);
    let rpy_range = match &args.rpy {
        Some(v) => {
            let (lo, hi) = parse_year_pair("rpy", v)?;
            Some(YearRange::new(lo, hi, false).expect("validated lo <= hi"))
        }
        None => {
            let stats = citing.stats();
            match (stats.rpy_min, stats.rpy_max) {
                (Some(lo), Some(hi)) => {
                    let hi = hi.max(lo + args.window.max(1) as i32 - 1);
                    Some(YearRange::new(lo, hi, false).expect("lo <= hi"))
                }
                _ => None,
            }
        }
    };

    std::fs::create_dir_all(&args.out)?;
    let cr_path = args.out.join("rpys_co_CR.csv");
    let graph_path = args.out.join("rpys_co_GRAPH.csv");
    let svg_path = args.out.join("rpys_co_GRAPH.svg");
    let manifest_path = args.out.join("manifest.json");

    let options = AnalysisOptions {
        rpy_range: rpy_range.unwrap_or_else(YearRange::all),
        cluster: ClusterConfig {
            threshold: args.cluster_threshold,
            require_volume_match: args.match_volume,
            require_page_match: args.match_page,
            require_doi_match: args.match_doi,
            cross_rpy: false,
        },
        remove_ncr: (args.remove_below > 0).then(|| (0, args.remove_below - 1)),
        window: args.window,
        top_n: 10,
    };

    if !(0.0..=1.0).contains(&args.cluster_threshold) {
        return Err(CliError::Usage(format!(
            "--cluster-threshold must lie in [0, 1], got {}",
            args.cluster_threshold
        )));
    }

    let (result, spectro_empty);
    if rpy_range.is_none() {
        // Nothing matched and no explicit axis: emit empty outputs.
        eprintln!(
            "warning: no records cite the given marker(s); writing empty outputs"
        );
        result = None;
        spectro_empty = crate::spectroscopy::Spectrogram::empty();
    } else {
        let r = run_rpys_co(&corpus, &markers, &options)?;
        if r.n_citing == 0 {
            eprintln!(
                "warning: no records cite the given marker(s); writing empty outputs"
            );
        }
        result = Some(r);
        spectro_empty = crate::spectroscopy::Spectrogram::empty();
    }

    let (aggregates, spectrogram, n_citing, peaks) = match &result {
        Some(r) => (
            r.aggregates.as_slice(),
            &r.spectrogram,
            r.n_citing,
            r.spectrogram.peaks.clone(),
        ),
        None => ([].as_slice(), &spectro_empty, 0, Vec::new()),
    };

    export_cr_csv(aggregates, &cr_path)?;
    export_graph_csv(spectrogram, &graph_path)?;
    let marker_label = markers
        .iter()
        .map(MarkerQuery::display)
        .collect::<Vec<_>>()
        .join("; ");
    export_svg(
        &[SvgSeries {
            name: &marker_label,
            spectrogram,
        }],
        &SvgOptions {
            normalize: args.normalize_plot,
        },
        &svg_path,
    )?;

    println!("n_citing: {n_citing}");
    println!(
        "peaks: {}",
        peaks
            .iter()
            .map(|y| y.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );

    let suggestions = match (&result, args.suggest_markers) {
        (Some(r), Some(n)) => {
            let candidates = suggest_markers(r, n, COMPARABLE_TOLERANCE);
            println!("candidate markers (rank, rpy, ncr, ratio, flags):");
            for c in &candidates {
                let mut flags = Vec::new();
                if c.is_marker {
                    flags.push("marker");
                }
                if c.comparable_to_marker {
                    flags.push("comparable");
                }
                println!(
                    "  {:>2}. [{}] NCR={} ratio={:.3} {} {}",
                    c.rank,
                    c.rpy.map(|y| y.to_string()).unwrap_or_else(|| "----".into()),
                    c.ncr,
                    c.ratio,
                    c.cr,
                    if flags.is_empty() { String::new() } else { format!("({})", flags.join(", ")) },
                );
            }
            Some(candidates)
        }
        _ => None,
    };

    // The manifest echoes every knob of the run, so it can be reproduced
    // exactly from this file alone.
    let manifest = serde_json::json!({
        "command": "rpys-co",
        "input": args.input.display().to_string(),
        "format": args.format,
        "markers": markers.iter().map(MarkerQuery::display).collect::<Vec<_>>(),
        "py": args.py,
        "rpy": rpy_range.map(|r| serde_json::json!({
            "lo": r.lo, "hi": r.hi, "include_missing": r.include_missing,
        })),
        "cluster": options.cluster,
        "remove_below": args.remove_below,
        "window": args.window,
        "suggest_markers": args.suggest_markers,
        "normalize_plot": args.normalize_plot,
        "out": args.out.display().to_string(),
        "outputs": ["rpys_co_CR.csv", "rpys_co_GRAPH.csv", "rpys_co_GRAPH.svg"],
        "n_citing": n_citing,
        "peaks": peaks,
        "suggestions": suggestions,
    });
    std::fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)? + "\n")
        .map_err(CliError::Io)?;
    Ok(())
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}
