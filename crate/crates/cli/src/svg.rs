//! Self-contained SVG 1.1 charts. Presentation only; the CSV files are the
//! data contract.

use std::fmt::Write;

use spwt_core::experiments::SweepResult;
use spwt_core::placement::ResidualGrid;

use crate::output::fmt_num;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_Y: f64 = 40.0;
const COLORS: &[&str] = &[
    "#d62728", "#1f1f1f", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];
/// Heatmap cells per axis; larger grids are block-reduced by their minimum
/// so that nulls stay visible.
const MAX_CELLS: usize = 120;

/// Roughly five round tick values covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    if !(hi > lo) {
        return vec![lo];
    }
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn plot_width() -> f64 {
        WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    }

    fn plot_height() -> f64 {
        HEIGHT - 2.0 * MARGIN_Y
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN_LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * Self::plot_width()
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_Y - (y - self.y.0) / (self.y.1 - self.y.0) * Self::plot_height()
    }

    fn axes(&self, out: &mut String, x_label: &str, y_label: &str) {
        let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
        let (y0, y1) = (HEIGHT - MARGIN_Y, MARGIN_Y);
        let _ = writeln!(
            out,
            r#"<rect x="{x0}" y="{y1}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            x1 - x0,
            y0 - y1
        );
        for t in ticks(self.x.0, self.x.1) {
            let px = self.px(t);
            let _ = writeln!(
                out,
                r#"<line x1="{px:.2}" y1="{y0}" x2="{px:.2}" y2="{}" stroke="black"/><text x="{px:.2}" y="{}" text-anchor="middle" font-size="11">{}</text>"#,
                y0 + 5.0,
                y0 + 18.0,
                fmt_num(t)
            );
        }
        for t in ticks(self.y.0, self.y.1) {
            let py = self.py(t);
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end" font-size="11">{}</text>"#,
                x0 - 5.0,
                x0 - 8.0,
                py + 4.0,
                fmt_num(t)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{}" text-anchor="middle" font-size="13">{x_label}</text>"#,
            (x0 + x1) / 2.0,
            HEIGHT - 6.0
        );
        let _ = writeln!(
            out,
            r#"<text x="16" y="{:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 16 {:.2})">{y_label}</text>"#,
            (y0 + y1) / 2.0,
            (y0 + y1) / 2.0
        );
    }
}

fn open(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">
<rect width="100%" height="100%" fill="white"/>"#
    );
}

pub fn sweep_chart(result: &SweepResult) -> String {
    let xs = &result.x_axis;
    let x_range = (
        xs.iter().copied().fold(f64::INFINITY, f64::min),
        xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    );
    let x_range = if x_range.1 > x_range.0 {
        x_range
    } else {
        (x_range.0 - 1.0, x_range.0 + 1.0)
    };
    let y_max = result
        .series
        .iter()
        .flat_map(|s| s.values.iter().copied())
        .fold(0.0, f64::max);
    let frame = Frame {
        x: x_range,
        y: (0.0, if y_max > 0.0 { y_max * 1.05 } else { 1.0 }),
    };

    let mut out = String::new();
    open(&mut out);
    let x_label = if result.x_label == "snr_db" {
        "SNR (dB)"
    } else {
        "alpha"
    };
    frame.axes(&mut out, x_label, "secrecy rate (bit/s/Hz)");
    for (i, series) in result.series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let dash = if series.name == "sr_theory" {
            r#" stroke-dasharray="6 4""#
        } else {
            ""
        };
        let points: Vec<String> = xs
            .iter()
            .zip(&series.values)
            .map(|(x, y)| format!("{:.2},{:.2}", frame.px(*x), frame.py(*y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2"{dash} points="{}"/>"#,
            points.join(" ")
        );
        let ly = MARGIN_Y + 18.0 * i as f64 + 10.0;
        let lx = WIDTH - MARGIN_RIGHT + 12.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/><text x="{}" y="{}" font-size="12">{}</text>"#,
            lx + 24.0,
            lx + 30.0,
            ly + 4.0,
            series.name
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Residual 0 is dark, 1 is light; the square root stretches the region
/// near the nulls.
fn shade(residual: f64) -> String {
    let t = residual.clamp(0.0, 1.0).sqrt();
    let lerp = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        lerp(13.0, 250.0),
        lerp(8.0, 231.0),
        lerp(135.0, 35.0)
    )
}

/// Heatmap of `|h_E^H h_B|` with the solver placements marked.
pub fn pattern_heatmap(grid: &ResidualGrid, marks: &[(f64, f64)]) -> String {
    let (nx, ny) = (grid.xs.len(), grid.ys.len());
    let bx = nx.div_ceil(MAX_CELLS).max(1);
    let by = ny.div_ceil(MAX_CELLS).max(1);
    let span = |v: &[f64]| {
        let (lo, hi) = (v[0], v[v.len() - 1]);
        if hi > lo {
            (lo, hi)
        } else {
            (lo - 1.0, lo + 1.0)
        }
    };
    let frame = Frame {
        x: span(&grid.xs),
        y: span(&grid.ys),
    };

    let mut out = String::new();
    open(&mut out);
    let cells_x = nx.div_ceil(bx);
    let cells_y = ny.div_ceil(by);
    let cw = Frame::plot_width() / cells_x as f64;
    let ch = Frame::plot_height() / cells_y as f64;
    for cy in 0..cells_y {
        for cx in 0..cells_x {
            let mut v = f64::INFINITY;
            for iy in cy * by..((cy + 1) * by).min(ny) {
                for ix in cx * bx..((cx + 1) * bx).min(nx) {
                    v = v.min(grid.at(ix, iy));
                }
            }
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                MARGIN_LEFT + cx as f64 * cw,
                HEIGHT - MARGIN_Y - (cy + 1) as f64 * ch,
                cw + 0.05,
                ch + 0.05,
                shade(v)
            );
        }
    }
    frame.axes(&mut out, "x (m)", "y (m)");
    for (x, y) in marks {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="5" fill="none" stroke="#00e5ff" stroke-width="2"/>"##,
            frame.px(*x),
            frame.py(*y)
        );
    }
    let lx = WIDTH - MARGIN_RIGHT + 20.0;
    for i in 0..=10 {
        let r = 1.0 - i as f64 / 10.0;
        let _ = writeln!(
            out,
            r#"<rect x="{lx}" y="{:.2}" width="20" height="{:.2}" fill="{}"/>"#,
            MARGIN_Y + i as f64 * 30.0,
            30.0,
            shade(r)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="11">1</text><text x="{}" y="{}" font-size="11">0</text><text x="{lx}" y="{}" font-size="12">|h_E^H h_B|</text>"#,
        lx + 26.0,
        MARGIN_Y + 10.0,
        lx + 26.0,
        MARGIN_Y + 330.0,
        MARGIN_Y + 352.0
    );
    out.push_str("</svg>\n");
    out
}
