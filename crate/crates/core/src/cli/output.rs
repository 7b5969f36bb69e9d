//! CSV and SVG emission.
//!
//! CSV is the contract: `#`-prefixed header lines carry the effective config
//! (reparseable with [`super::config::parse_echo`]), `##` lines carry run
//! metadata, then a column header and one row per sample with every value in
//! `{:.16e}` so binary64 values survive a round trip. The SVG is a quick look.

use std::fmt::Write as _;

/// Formats one value losslessly.
pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.16e}")
    }
}

pub fn csv_document(config_echo: &str, metadata: &[String], header: &[&str], columns: &[&[f64]]) -> String {
    let mut out = String::new();
    for line in metadata {
        let _ = writeln!(out, "## {line}");
    }
    for line in config_echo.lines() {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "{}", header.join(","));
    let rows = columns.iter().map(|c| c.len()).min().unwrap_or(0);
    for i in 0..rows {
        let row: Vec<String> = columns.iter().map(|c| format_value(c[i])).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

/// Parses the data rows of a document written by [`csv_document`].
pub fn parse_csv_rows(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or("missing column header")?
        .split(',')
        .map(str::to_string)
        .collect::<Vec<_>>();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = line
            .split(',')
            .map(|f| f.parse::<f64>().map_err(|e| format!("row {}: {e}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != header.len() {
            return Err(format!("row {} has {} fields, expected {}", i + 1, row.len(), header.len()));
        }
        rows.push(row);
    }
    Ok((header, rows))
}

pub struct SvgSeries<'a> {
    pub label: String,
    pub x: &'a [f64],
    pub y: &'a [f64],
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const COLOURS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Line plot with linear axes; non-finite points are skipped.
pub fn svg_plot(title: &str, x_label: &str, y_label: &str, series: &[SvgSeries<'_>]) -> String {
    let finite = |v: &&f64| v.is_finite();
    let xs = series.iter().flat_map(|s| s.x.iter()).filter(finite);
    let ys = series.iter().flat_map(|s| s.y.iter()).filter(finite);
    let (x_min, x_max) = bounds(xs);
    let (y_min, y_max) = bounds(ys);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let py = |y: f64| TOP + plot_h - (y - y_min) / (y_max - y_min) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let _ = writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    let tick = |v: f64| format!("{v:.4e}");
    let _ = writeln!(
        out,
        r#"<text x="{LEFT}" y="{}" font-family="sans-serif" font-size="12" text-anchor="start">{}</text>"#,
        TOP + plot_h + 18.0,
        tick(x_min)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
        LEFT + plot_w,
        TOP + plot_h + 18.0,
        tick(x_max)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
        LEFT - 6.0,
        TOP + plot_h,
        tick(y_min)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
        LEFT - 6.0,
        TOP + 12.0,
        tick(y_max)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 16.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(y_label)
    );

    for (k, s) in series.iter().enumerate() {
        let colour = COLOURS[k % COLOURS.len()];
        let points: Vec<String> = s
            .x
            .iter()
            .zip(s.y.iter())
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        if !points.is_empty() {
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{colour}" stroke-width="1.2" points="{}"/>"#,
                points.join(" ")
            );
        }
        let ly = TOP + 14.0 + 16.0 * k as f64;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{ly}" font-family="sans-serif" font-size="12" fill="{colour}" text-anchor="end">{}</text>"#,
            LEFT + plot_w - 8.0,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn bounds<'a>(values: impl Iterator<Item = &'a f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
