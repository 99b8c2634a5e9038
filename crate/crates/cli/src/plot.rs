//! Standalone SVG line charts of scan records against `tau`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use jcpurity::ScanRecord;
use thiserror::Error;

use crate::output::{format_number, Row, COLUMNS};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
pub const Y_MAX: f64 = 1.05;

pub const DEFAULT_SERIES: [&str; 3] = ["tan_phi", "concurrence", "excitation"];

const EXTRA_COLORS: [&str; 8] = ["purple", "orange", "teal", "brown", "magenta", "gray", "olive", "navy"];

#[derive(Debug, Error)]
pub enum PlotError {
    #[error("unknown or empty series '{0}'")]
    EmptySeries(String),

    #[error("need at least 2 records to plot, got {0}")]
    TooFewRecords(usize),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Fixed colour for a column; the three headline series are blue, red and green.
pub fn series_color(name: &str) -> &'static str {
    match name {
        "tan_phi" => "blue",
        "concurrence" => "red",
        "excitation" => "green",
        other => {
            let idx = COLUMNS.iter().position(|c| *c == other).unwrap_or(0);
            EXTRA_COLORS[idx % EXTRA_COLORS.len()]
        }
    }
}

fn plot_w() -> f64 {
    WIDTH - LEFT - RIGHT
}

fn plot_h() -> f64 {
    HEIGHT - TOP - BOTTOM
}

/// Pixel row of a value on the fixed `[0, 1.05]` axis.
pub fn y_pixel(v: f64) -> f64 {
    TOP + plot_h() * (1.0 - v / Y_MAX)
}

fn x_pixel(tau: f64, t0: f64, t1: f64) -> f64 {
    LEFT + plot_w() * (tau - t0) / (t1 - t0)
}

fn px(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

pub fn render_svg(records: &[ScanRecord], series: &[String]) -> Result<String, PlotError> {
    if records.len() < 2 {
        return Err(PlotError::TooFewRecords(records.len()));
    }
    if series.is_empty() {
        return Err(PlotError::EmptySeries(String::new()));
    }
    if let Some(bad) = series.iter().find(|s| *s == "tau" || !COLUMNS.contains(&s.as_str())) {
        return Err(PlotError::EmptySeries(bad.clone()));
    }
    let rows: Vec<Row> = records.iter().map(Row::from).collect();
    let t0 = rows[0].tau;
    let t1 = rows[rows.len() - 1].tau;
    let (t0, t1) = if t1 > t0 { (t0, t1) } else { (t0, t0 + 1.0) };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot-area"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath></defs>"#,
        px(LEFT),
        px(TOP),
        px(plot_w()),
        px(plot_h())
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        px(LEFT),
        px(TOP),
        px(plot_w()),
        px(plot_h())
    );

    // y ticks every 0.25
    for i in 0..=4 {
        let v = 0.25 * i as f64;
        let y = px(y_pixel(v));
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="lightgray"/><text x="{}" y="{y}" text-anchor="end" dominant-baseline="middle">{}</text>"#,
            px(LEFT),
            px(LEFT + plot_w()),
            px(LEFT - 6.0),
            format_number(v)
        );
    }
    // x ticks: ten intervals
    for i in 0..=10 {
        let tau = t0 + (t1 - t0) * i as f64 / 10.0;
        let x = px(x_pixel(tau, t0, t1));
        let _ = writeln!(
            s,
            r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="black"/><text x="{x}" y="{}" text-anchor="middle">{}</text>"#,
            px(TOP + plot_h()),
            px(TOP + plot_h() + 5.0),
            px(TOP + plot_h() + 20.0),
            format_number((tau * 1e6).round() / 1e6)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">τ = g t</text>"#,
        px(LEFT + plot_w() / 2.0),
        px(HEIGHT - 15.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">value</text>"#,
        px(TOP + plot_h() / 2.0),
        px(TOP + plot_h() / 2.0)
    );

    for name in series {
        let points: Vec<String> = rows
            .iter()
            .map(|r| {
                let v = r.get(name).expect("validated column");
                format!("{},{}", px(x_pixel(r.tau, t0, t1)), px(y_pixel(v)))
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline id="series-{name}" fill="none" stroke="{}" stroke-width="1.2" clip-path="url(#plot-area)" points="{}"/>"#,
            series_color(name),
            points.join(" ")
        );
    }

    let lx = LEFT + plot_w() + 15.0;
    for (i, name) in series.iter().enumerate() {
        let y = TOP + 10.0 + 20.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2"/><text x="{}" y="{}" dominant-baseline="middle">{name}</text>"#,
            px(lx),
            px(y),
            px(lx + 25.0),
            px(y),
            series_color(name),
            px(lx + 32.0),
            px(y)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn write_svg(records: &[ScanRecord], series: &[String], path: &Path) -> Result<(), PlotError> {
    let svg = render_svg(records, series)?;
    fs::write(path, svg).map_err(|source| PlotError::Io {
        path: path.into(),
        source,
    })
}

/// Extracts the `points` attribute of the polyline for `name`.
pub fn polyline_points(svg: &str, name: &str) -> Option<Vec<(f64, f64)>> {
    let marker = format!(r#"id="series-{name}""#);
    let start = svg.find(&marker)?;
    let rest = &svg[start..];
    let p = rest.find("points=\"")? + "points=\"".len();
    let end = rest[p..].find('"')?;
    rest[p..p + end]
        .split(' ')
        .map(|pair| {
            let (x, y) = pair.split_once(',')?;
            Some((x.parse().ok()?, y.parse().ok()?))
        })
        .collect()
}
