//! Hand-rolled static SVG line charts. The charts are a convenience view
//! of the summary table; the CSV files are the interface of record, so no
//! plotting dependency is worth carrying here.

use std::fmt::Write as _;

use fcomp_core::Algorithm;

use crate::summary::SummaryRow;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 56.0;
const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisScale {
    Linear,
    Log2,
    Log10,
}

impl AxisScale {
    fn forward(self, v: f64) -> f64 {
        match self {
            AxisScale::Linear => v,
            AxisScale::Log2 => v.log2(),
            AxisScale::Log10 => v.log10(),
        }
    }

    fn inverse(self, t: f64) -> f64 {
        match self {
            AxisScale::Linear => t,
            AxisScale::Log2 => t.exp2(),
            AxisScale::Log10 => 10f64.powf(t),
        }
    }
}

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

pub struct ChartSpec {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_scale: AxisScale,
    pub y_scale: AxisScale,
}

fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if !(1e-3..1e6).contains(&a) {
        format!("{v:.1e}")
    } else if (v - v.round()).abs() < 1e-9 * a.max(1.0) {
        format!("{:.0}", v.round())
    } else {
        format!("{v:.3}")
    }
}

/// Data range in transformed coordinates, padded so a flat series still
/// renders mid-plot instead of dividing by zero.
fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

pub fn line_chart(spec: &ChartSpec, series: &[Series]) -> String {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

    let (x_lo, x_hi) = padded_range(
        series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| spec.x_scale.forward(p.0))),
    );
    let (y_lo, y_hi) = padded_range(
        series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| spec.y_scale.forward(p.1))),
    );

    let sx = |x: f64| MARGIN_LEFT + (spec.x_scale.forward(x) - x_lo) / (x_hi - x_lo) * plot_w;
    let sy =
        |y: f64| MARGIN_TOP + plot_h - (spec.y_scale.forward(y) - y_lo) / (y_hi - y_lo) * plot_h;

    let mut out = String::new();
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = write!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = write!(
        out,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        spec.title
    );

    // Frame.
    let _ = write!(
        out,
        r##"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#333"/>"##
    );

    // X ticks at the distinct data abscissae (the swept grid sizes).
    let mut xs: Vec<f64> = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.0))
        .collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    for &x in &xs {
        let px = sx(x);
        let _ = write!(
            out,
            r##"<line x1="{px:.1}" y1="{MARGIN_TOP}" x2="{px:.1}" y2="{:.1}" stroke="#ddd"/>"##,
            MARGIN_TOP + plot_h
        );
        let _ = write!(
            out,
            r#"<text x="{px:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            MARGIN_TOP + plot_h + 18.0,
            fmt_num(x)
        );
    }

    // Five evenly spaced y ticks in transformed space.
    for i in 0..=4 {
        let t = y_lo + (y_hi - y_lo) * f64::from(i) / 4.0;
        let py = MARGIN_TOP + plot_h - (t - y_lo) / (y_hi - y_lo) * plot_h;
        let _ = write!(
            out,
            r##"<line x1="{MARGIN_LEFT}" y1="{py:.1}" x2="{:.1}" y2="{py:.1}" stroke="#ddd"/>"##,
            MARGIN_LEFT + plot_w
        );
        let _ = write!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 6.0,
            py + 4.0,
            fmt_num(spec.y_scale.inverse(t))
        );
    }

    // Axis labels.
    let _ = write!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0,
        spec.x_label
    );
    let _ = write!(
        out,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        spec.y_label
    );

    // Series polylines, markers, legend.
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut path = String::new();
        for &(x, y) in &s.points {
            let _ = write!(path, "{:.1},{:.1} ", sx(x), sy(y));
        }
        let _ = write!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.8"/>"#,
            path.trim_end()
        );
        for &(x, y) in &s.points {
            let _ = write!(
                out,
                r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{color}"/>"#,
                sx(x),
                sy(y)
            );
        }
        let ly = MARGIN_TOP + 14.0 + 16.0 * i as f64;
        let lx = MARGIN_LEFT + plot_w - 86.0;
        let _ = write!(
            out,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="1.8"/>"#,
            lx + 22.0
        );
        let _ = write!(
            out,
            r#"<text x="{:.1}" y="{:.1}">{}</text>"#,
            lx + 28.0,
            ly + 4.0,
            s.label
        );
    }
    if series.is_empty() {
        let _ = write!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">no data</text>"#,
            WIDTH / 2.0,
            MARGIN_TOP + plot_h / 2.0
        );
    }

    out.push_str("</svg>\n");
    out
}

fn per_algorithm(rows: &[SummaryRow], value: impl Fn(&SummaryRow) -> f64) -> Vec<Series> {
    Algorithm::ALL
        .iter()
        .filter_map(|a| {
            let points: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.algo == *a)
                .map(|r| (r.n_star as f64, value(r)))
                .collect();
            (!points.is_empty()).then(|| Series {
                label: a.name().to_string(),
                points,
            })
        })
        .collect()
}

pub fn miss_rate_chart(rows: &[SummaryRow]) -> String {
    line_chart(
        &ChartSpec {
            title: "Miss rate vs grid density".to_string(),
            x_label: "grid nodes per axis (log scale)".to_string(),
            y_label: "miss rate".to_string(),
            x_scale: AxisScale::Log2,
            y_scale: AxisScale::Linear,
        },
        &per_algorithm(rows, |r| r.miss_rate),
    )
}

pub fn solve_time_chart(rows: &[SummaryRow]) -> String {
    let series = per_algorithm(rows, |r| r.time_median_ns);
    // Zeroed timing columns (parallel runs) cannot go on a log axis.
    let log_ok = series
        .iter()
        .all(|s| s.points.iter().all(|&(_, y)| y > 0.0));
    line_chart(
        &ChartSpec {
            title: "Median solve time vs grid density".to_string(),
            x_label: "grid nodes per axis (log scale)".to_string(),
            y_label: "median solve time (ns)".to_string(),
            x_scale: AxisScale::Log2,
            y_scale: if log_ok {
                AxisScale::Log10
            } else {
                AxisScale::Linear
            },
        },
        &series,
    )
}
