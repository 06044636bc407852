//! SVG rendering of a size function: the half-plane above the diagonal
//! shaded by the value of `ℓ`, proper cornerpoints sized by multiplicity and
//! vertical lines for cornerpoints at infinity.

use std::fmt::Write;

use sizefn_core::extended::format_sig;
use sizefn_core::{ell_query, EllQuery, SizeFunctionDiagram};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 48.0;

struct Frame {
    lo: f64,
    hi: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.lo) / (self.hi - self.lo) * (SIZE - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        SIZE - MARGIN - (y - self.lo) / (self.hi - self.lo) * (SIZE - 2.0 * MARGIN)
    }
}

pub fn render(diagram: &SizeFunctionDiagram, title: &str) -> String {
    let mut levels: Vec<f64> = diagram.infinity().to_vec();
    for c in diagram.points() {
        levels.push(c.x);
        levels.push(c.y);
    }
    let (mut lo, mut hi) = levels
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        (lo, hi) = (0.0, 1.0);
    }
    let pad = ((hi - lo) * 0.15).max(0.5);
    let frame = Frame {
        lo: lo - pad,
        hi: hi + pad,
    };
    levels.push(frame.lo);
    levels.push(frame.hi);
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="13">{}</text>"#,
        SIZE / 2.0,
        escape(title)
    );

    // staircase regions: ℓ is constant on each cell of the level grid
    let queries: Vec<(f64, f64, [(f64, f64); 4], usize)> = levels
        .windows(2)
        .enumerate()
        .flat_map(|(i, wx)| {
            levels.windows(2).enumerate().skip(i).map(move |(j, wy)| {
                let (x0, x1, y0, y1) = (wx[0], wx[1], wy[0], wy[1]);
                if i == j {
                    // triangle above the diagonal
                    let cx = (2.0 * x0 + x1) / 3.0;
                    let cy = (x0 + 2.0 * x1) / 3.0;
                    (cx, cy, [(x0, x0), (x0, x1), (x1, x1), (x1, x1)], 3)
                } else {
                    ((x0 + x1) / 2.0, (y0 + y1) / 2.0, [(x0, y0), (x1, y0), (x1, y1), (x0, y1)], 4)
                }
            })
        })
        .collect();
    let values: Vec<u64> = queries
        .iter()
        .map(|&(x, y, _, _)| EllQuery::new(x, y).map_or(0, |q| ell_query(diagram, q)))
        .collect();
    let top = values.iter().copied().max().unwrap_or(0).max(1);
    for ((_, _, corners, k), &v) in queries.iter().zip(&values) {
        if v == 0 {
            continue;
        }
        let shade = 235 - (v * 150 / top) as u32;
        let pts: Vec<String> = corners[..*k]
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", frame.px(x), frame.py(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polygon points="{}" fill="rgb({shade},{shade},255)" stroke="none"><title>ℓ = {v}</title></polygon>"#,
            pts.join(" ")
        );
    }

    // axes and diagonal
    let (a, b) = (frame.px(frame.lo), frame.px(frame.hi));
    let _ = writeln!(
        svg,
        r#"<rect x="{a:.2}" y="{b2:.2}" width="{w:.2}" height="{w:.2}" fill="none" stroke="black"/>"#,
        b2 = frame.py(frame.hi),
        w = b - a
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
        frame.px(frame.lo),
        frame.py(frame.lo),
        frame.px(frame.hi),
        frame.py(frame.hi)
    );
    for &t in &levels[1..levels.len() - 1] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            frame.px(t),
            SIZE - MARGIN + 16.0,
            format_sig(t, 4)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN - 6.0,
            frame.py(t) + 4.0,
            format_sig(t, 4)
        );
    }

    for &k in diagram.infinity() {
        let _ = writeln!(
            svg,
            r#"<line class="infinity" x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="crimson" stroke-width="2"/>"#,
            frame.py(k),
            frame.py(frame.hi),
            x = frame.px(k)
        );
    }
    for c in diagram.points() {
        let r = 3.0 + 2.0 * f64::from(c.mult);
        let _ = writeln!(
            svg,
            r#"<circle class="cornerpoint" cx="{:.2}" cy="{:.2}" r="{r}" fill="crimson"><title>({}, {}) × {}</title></circle>"#,
            frame.px(c.x),
            frame.py(c.y),
            format_sig(c.x, 12),
            format_sig(c.y, 12),
            c.mult
        );
        if c.mult > 1 {
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}">×{}</text>"#,
                frame.px(c.x) + r + 2.0,
                frame.py(c.y) - r,
                c.mult
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
