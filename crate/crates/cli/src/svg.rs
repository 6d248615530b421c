//! Deterministic SVG 1.1 scatter/line plots of metric tables: identical
//! inputs give identical bytes, so plots are diffable artifacts.

use crate::error::HarnessError;
use crate::table::MetricTable;

#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub x_col: String,
    pub y_col: String,
    pub log_x: bool,
    pub log_y: bool,
    pub title: String,
    /// Optional horizontal reference value (drawn dashed).
    pub refline: Option<f64>,
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;
const SERIES_COLORS: &[&str] = &["#1f6fb2", "#b02a2a", "#2a8a4a", "#8a5d2a", "#6a3fb2"];

fn fmt(v: f64) -> String {
    // fixed short form keeps coordinates byte-stable
    format!("{v:.3}")
}

fn fmt_tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e5 || v.abs() < 1e-3) {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.4}");
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t.is_empty() { "0".into() } else { t.to_string() }
    }
}

/// Ticks at 1-2-5 steps covering [lo, hi].
fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    if !(hi > lo) {
        return vec![lo];
    }
    let span = hi - lo;
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&s| span / s <= 6.0)
        .unwrap_or(mag * 10.0);
    let start = (lo / step).ceil() * step;
    let mut out = Vec::new();
    let mut t = start;
    while t <= hi + step * 1e-9 {
        out.push(t);
        t += step;
    }
    out
}

/// Render one plot from one or more named tables.
pub fn render_plot(
    series: &[(String, MetricTable)],
    spec: &PlotSpec,
) -> Result<String, HarnessError> {
    if series.is_empty() {
        return Err(HarnessError::Validation("no input tables".into()));
    }
    let mut data: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for (name, table) in series {
        let xs = table.column_f64(&spec.x_col)?;
        let ys = table.column_f64(&spec.y_col)?;
        let points: Vec<(f64, f64)> = xs
            .into_iter()
            .zip(ys)
            .filter(|&(x, y)| {
                x.is_finite()
                    && y.is_finite()
                    && (!spec.log_x || x > 0.0)
                    && (!spec.log_y || y > 0.0)
            })
            .map(|(x, y)| {
                (
                    if spec.log_x { x.log10() } else { x },
                    if spec.log_y { y.log10() } else { y },
                )
            })
            .collect();
        if points.is_empty() {
            return Err(HarnessError::Validation(format!(
                "series {name:?} has no plottable points"
            )));
        }
        data.push((name.clone(), points));
    }
    let mut x_lo = f64::MAX;
    let mut x_hi = f64::MIN;
    let mut y_lo = f64::MAX;
    let mut y_hi = f64::MIN;
    for (_, pts) in &data {
        for &(x, y) in pts {
            x_lo = x_lo.min(x);
            x_hi = x_hi.max(x);
            y_lo = y_lo.min(y);
            y_hi = y_hi.max(y);
        }
    }
    if let Some(r) = spec.refline {
        let r = if spec.log_y { r.log10() } else { r };
        y_lo = y_lo.min(r);
        y_hi = y_hi.max(r);
    }
    // degenerate ranges get a unit pad so single points render
    if x_hi - x_lo < 1e-12 {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if y_hi - y_lo < 1e-12 {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    let pad_x = (x_hi - x_lo) * 0.05;
    let pad_y = (y_hi - y_lo) * 0.05;
    x_lo -= pad_x;
    x_hi += pad_x;
    y_lo -= pad_y;
    y_hi += pad_y;

    let to_px = |x: f64| MARGIN_L + (x - x_lo) / (x_hi - x_lo) * (W - MARGIN_L - MARGIN_R);
    let to_py = |y: f64| H - MARGIN_B - (y - y_lo) / (y_hi - y_lo) * (H - MARGIN_T - MARGIN_B);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" font-family=\"monospace\" font-size=\"15\" text-anchor=\"middle\">{}</text>\n",
        fmt(W / 2.0),
        xml_escape(&spec.title)
    ));

    // gridlines and ticks
    for t in nice_ticks(x_lo, x_hi) {
        let px = to_px(t);
        svg.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            fmt(px),
            fmt(MARGIN_T),
            fmt(H - MARGIN_B)
        ));
        let label = if spec.log_x {
            format!("1e{}", fmt_tick(t))
        } else {
            fmt_tick(t)
        };
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            fmt(px),
            fmt(H - MARGIN_B + 16.0),
            label
        ));
    }
    for t in nice_ticks(y_lo, y_hi) {
        let py = to_py(t);
        svg.push_str(&format!(
            "<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            fmt(py),
            fmt(MARGIN_L),
            fmt(W - MARGIN_R)
        ));
        let label = if spec.log_y {
            format!("1e{}", fmt_tick(t))
        } else {
            fmt_tick(t)
        };
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            fmt(MARGIN_L - 6.0),
            fmt(py + 4.0),
            label
        ));
    }
    // axes
    svg.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
        fmt(MARGIN_L),
        fmt(MARGIN_T),
        fmt(W - MARGIN_L - MARGIN_R),
        fmt(H - MARGIN_T - MARGIN_B)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
        fmt((MARGIN_L + W - MARGIN_R) / 2.0),
        fmt(H - 12.0),
        xml_escape(&spec.x_col)
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
        fmt((MARGIN_T + H - MARGIN_B) / 2.0),
        fmt((MARGIN_T + H - MARGIN_B) / 2.0),
        xml_escape(&spec.y_col)
    ));

    if let Some(r) = spec.refline {
        let rv = if spec.log_y { r.log10() } else { r };
        let py = to_py(rv);
        svg.push_str(&format!(
            "<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"#888888\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n",
            fmt(py),
            fmt(MARGIN_L),
            fmt(W - MARGIN_R)
        ));
    }

    for (s, (name, pts)) in data.iter().enumerate() {
        let color = SERIES_COLORS[s % SERIES_COLORS.len()];
        if pts.len() > 1 {
            let path: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{},{}", fmt(to_px(x)), fmt(to_py(y))))
                .collect();
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                path.join(" ")
            ));
        }
        for &(x, y) in pts {
            svg.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"/>\n",
                fmt(to_px(x)),
                fmt(to_py(y))
            ));
        }
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" fill=\"{color}\">{}</text>\n",
            fmt(MARGIN_L + 8.0),
            fmt(MARGIN_T + 16.0 + 14.0 * s as f64),
            xml_escape(name)
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
