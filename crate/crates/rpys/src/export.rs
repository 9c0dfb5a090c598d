//! Deterministic exports: the two CSV layouts consumed by downstream
//! plotting tools, and a static SVG rendering of spectrograms. All output
//! is byte-reproducible: LF line endings, RFC 4180 quoting, fixed decimal
//! formatting.

use std::io::Write;
use std::path::Path;

use thiserror::Error;

use crate::record::AggregatedCR;
use crate::spectroscopy::{top_crs, Spectrogram};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("no series to render")]
    EmptySeries,
}

/// Writes the ranked cited-reference table as CSV and returns the number of
/// data rows. Header: `rank,rpy,cr,ncr,n_variants`; rows follow the table
/// order of [`top_crs`].
pub fn write_cr_csv<W: Write>(aggregates: &[AggregatedCR], out: W) -> Result<usize, ExportError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(["rank", "rpy", "cr", "ncr", "n_variants"])
        .map_err(csv_io)?;
    let rows = top_crs(aggregates, usize::MAX, None);
    let n = rows.len();
    for row in rows {
        w.write_record([
            row.rank.to_string(),
            row.rpy.map(|y| y.to_string()).unwrap_or_default(),
            row.cr,
            row.ncr.to_string(),
            row.n_variants.to_string(),
        ])
        .map_err(csv_io)?;
    }
    w.flush()?;
    Ok(n)
}

/// Writes the per-year spectrogram series as CSV and returns the number of
/// data rows (one per year). Header: `rpy,ncr,median_dev,is_peak`; the
/// deviation is printed with fixed six decimals.
pub fn write_graph_csv<W: Write>(
    spectrogram: &Spectrogram,
    out: W,
) -> Result<usize, ExportError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(["rpy", "ncr", "median_dev", "is_peak"])
        .map_err(csv_io)?;
    for p in &spectrogram.points {
        w.write_record([
            p.rpy.to_string(),
            p.ncr.to_string(),
            format!("{:.6}", p.median_dev),
            spectrogram.peaks.contains(&p.rpy).to_string(),
        ])
        .map_err(csv_io)?;
    }
    w.flush()?;
    Ok(spectrogram.points.len())
}

// The csv writer only fails on I/O once headers are fixed-width records.
fn csv_io(e: csv::Error) -> ExportError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => ExportError::Io(io),
        other => ExportError::Io(std::io::Error::other(format!("csv: {other:?}"))),
    }
}

/// Renders into memory first and writes the file in one shot, so a failed
/// export never leaves partial bytes behind.
pub fn export_cr_csv<P: AsRef<Path>>(
    aggregates: &[AggregatedCR],
    destination: P,
) -> Result<usize, ExportError> {
    let mut buf = Vec::new();
    let n = write_cr_csv(aggregates, &mut buf)?;
    std::fs::write(destination, buf)?;
    Ok(n)
}

/// File variant of [`write_graph_csv`].
pub fn export_graph_csv<P: AsRef<Path>>(
    spectrogram: &Spectrogram,
    destination: P,
) -> Result<usize, ExportError> {
    let mut buf = Vec::new();
    let n = write_graph_csv(spectrogram, &mut buf)?;
    std::fs::write(destination, buf)?;
    Ok(n)
}

pub const SVG_WIDTH: f64 = 900.0;
pub const SVG_HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 64.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 52.0;

const NCR_COLOR: &str = "#d62728";
const DEV_COLOR: &str = "#1f77b4";
const PALETTE: [&str; 6] = [
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// One named spectrogram to draw.
pub struct SvgSeries<'a> {
    pub name: &'a str,
    pub spectrogram: &'a Spectrogram,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SvgOptions {
    /// Scale every series to a maximum of 1 before overlaying, so corpora
    /// of very different sizes stay comparable. The legend says so.
    pub normalize: bool,
}

fn esc(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Axis {
    lo: i32,
    hi: i32,
}

impl Axis {
    fn x(&self, year: i32) -> f64 {
        let span = (self.hi - self.lo) as f64;
        if span == 0.0 {
            return MARGIN_LEFT + plot_width() / 2.0;
        }
        MARGIN_LEFT + (year - self.lo) as f64 / span * plot_width()
    }

    fn tick_step(&self) -> i32 {
        match self.hi - self.lo {
            0..=10 => 1,
            11..=20 => 2,
            21..=60 => 5,
            61..=120 => 10,
            _ => 20,
        }
    }
}

fn plot_width() -> f64 {
    SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT
}

fn plot_height() -> f64 {
    SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
}

// Maps a value in [lo, hi] to a canvas y coordinate, top = hi.
fn scale_y(value: f64, lo: f64, hi: f64) -> f64 {
    let span = if hi > lo { hi - lo } else { 1.0 };
    MARGIN_TOP + (hi - value) / span * plot_height()
}

fn polyline(points: &[(f64, f64)], color: &str) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect();
    format!(
        "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        coords.join(" ")
    )
}

fn markers(points: &[(f64, f64)], color: &str) -> String {
    let mut out = String::new();
    for (x, y) in points {
        out.push_str(&format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2.5\" fill=\"{color}\"/>\n"
        ));
    }
    out
}

/// Renders one or more spectrograms as a fixed 900x500 SVG 1.1 document.
///
/// With a single series the reference-count curve (red) and the median
/// deviation curve (blue) are drawn with circle markers on their own value
/// scales. With several series only the count curves are overlaid, colored
/// from a fixed palette, with a legend.
pub fn render_svg(series: &[SvgSeries], options: &SvgOptions) -> Result<String, ExportError> {
    if series.is_empty() {
        return Err(ExportError::EmptySeries);
    }

    let lo = series
        .iter()
        .filter_map(|s| s.spectrogram.year_span())
        .map(|(lo, _)| lo)
        .min();
    let hi = series
        .iter()
        .filter_map(|s| s.spectrogram.year_span())
        .map(|(_, hi)| hi)
        .max();

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" \
         viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" fill=\"white\"/>\n"
    ));

    let (Some(lo), Some(hi)) = (lo, hi) else {
        // Nothing to plot: emit the empty frame.
        svg.push_str("</svg>\n");
        return Ok(svg);
    };
    let axis = Axis { lo, hi };

    // Year axis.
    let base_y = MARGIN_TOP + plot_height();
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{base_y:.2}\" x2=\"{:.2}\" y2=\"{base_y:.2}\" stroke=\"black\"/>\n",
        MARGIN_LEFT,
        MARGIN_LEFT + plot_width()
    ));
    let step = axis.tick_step();
    let mut year = lo + (step - lo.rem_euclid(step)) % step;
    while year <= hi {
        let x = axis.x(year);
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{base_y:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            base_y + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{year}</text>\n",
            base_y + 20.0
        ));
        year += step;
    }

    if series.len() == 1 {
        render_single(&mut svg, &axis, series[0].spectrogram);
    } else {
        render_overlay(&mut svg, &axis, series, options);
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn render_single(svg: &mut String, axis: &Axis, spectrogram: &Spectrogram) {
    let ncr_max = spectrogram
        .points
        .iter()
        .map(|p| p.ncr)
        .max()
        .unwrap_or(0)
        .max(1) as f64;
    let dev_lo = spectrogram
        .points
        .iter()
        .map(|p| p.median_dev)
        .fold(0.0f64, f64::min);
    let dev_hi = spectrogram
        .points
        .iter()
        .map(|p| p.median_dev)
        .fold(0.0f64, f64::max)
        .max(dev_lo + 1.0);

    let ncr_points: Vec<(f64, f64)> = spectrogram
        .points
        .iter()
        .map(|p| (axis.x(p.rpy), scale_y(p.ncr as f64, 0.0, ncr_max)))
        .collect();
    let dev_points: Vec<(f64, f64)> = spectrogram
        .points
        .iter()
        .map(|p| (axis.x(p.rpy), scale_y(p.median_dev, dev_lo, dev_hi)))
        .collect();

    // Left axis carries the count scale, right axis the deviation scale.
    let top = MARGIN_TOP;
    let bottom = MARGIN_TOP + plot_height();
    svg.push_str(&format!(
        "<line x1=\"{MARGIN_LEFT:.2}\" y1=\"{top:.2}\" x2=\"{MARGIN_LEFT:.2}\" y2=\"{bottom:.2}\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" fill=\"{NCR_COLOR}\">{}</text>\n",
        MARGIN_LEFT - 6.0,
        top + 4.0,
        ncr_max as u64
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" fill=\"{NCR_COLOR}\">0</text>\n",
        MARGIN_LEFT - 6.0,
        bottom + 4.0
    ));
    let right = MARGIN_LEFT + plot_width();
    svg.push_str(&format!(
        "<line x1=\"{right:.2}\" y1=\"{top:.2}\" x2=\"{right:.2}\" y2=\"{bottom:.2}\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"{DEV_COLOR}\">{dev_hi:.1}</text>\n",
        right + 6.0,
        top + 4.0
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"{DEV_COLOR}\">{dev_lo:.1}</text>\n",
        right + 6.0,
        bottom + 4.0
    ));

    svg.push_str(&polyline(&ncr_points, NCR_COLOR));
    svg.push_str(&markers(&ncr_points, NCR_COLOR));
    svg.push_str(&polyline(&dev_points, DEV_COLOR));
    svg.push_str(&markers(&dev_points, DEV_COLOR));
}

fn render_overlay(svg: &mut String, axis: &Axis, series: &[SvgSeries], options: &SvgOptions) {
    let global_max = series
        .iter()
        .flat_map(|s| s.spectrogram.points.iter().map(|p| p.ncr))
        .max()
        .unwrap_or(0)
        .max(1) as f64;

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let own_max = s
            .spectrogram
            .points
            .iter()
            .map(|p| p.ncr)
            .max()
            .unwrap_or(0)
            .max(1) as f64;
        let points: Vec<(f64, f64)> = s
            .spectrogram
            .points
            .iter()
            .map(|p| {
                let v = if options.normalize {
                    p.ncr as f64 / own_max
                } else {
                    p.ncr as f64
                };
                let hi = if options.normalize { 1.0 } else { global_max };
                (axis.x(p.rpy), scale_y(v, 0.0, hi))
            })
            .collect();
        svg.push_str(&polyline(&points, color));

        let legend_y = MARGIN_TOP + 16.0 * i as f64;
        let legend_x = MARGIN_LEFT + plot_width() - 180.0;
        svg.push_str(&format!(
            "<line x1=\"{legend_x:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"3\"/>\n",
            legend_y - 4.0,
            legend_x + 24.0,
            legend_y - 4.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{legend_y:.2}\">{}</text>\n",
            legend_x + 30.0,
            esc(s.name)
        ));
    }
    if options.normalize {
        svg.push_str(&format!(
            "<text x=\"{MARGIN_LEFT:.2}\" y=\"{:.2}\">curves normalized to max = 1</text>\n",
            MARGIN_TOP - 12.0
        ));
    }
}

/// File variant of [`render_svg`].
pub fn export_svg<P: AsRef<Path>>(
    series: &[SvgSeries],
    options: &SvgOptions,
    destination: P,
) -> Result<(), ExportError> {
    let svg = render_svg(series, options)?;
    std::fs::write(destination, svg)?;
    Ok(())
}
