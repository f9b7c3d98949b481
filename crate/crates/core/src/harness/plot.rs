//! Self-contained SVG rendering of a sweep: exact values as sticks with dots,
//! the asymptotic values as a line over the allowed window.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;

use super::sweep::SweepRow;

const W: f64 = 900.0;
const H: f64 = 420.0;
const PAD: f64 = 60.0;

pub fn render_svg(rows: &[SweepRow], title: &str) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    if rows.is_empty() {
        svg.push_str("</svg>\n");
        return svg;
    }

    let xs: Vec<f64> = rows.iter().map(|r| f64::from(r.twice_j5) / 2.0).collect();
    let exact: Vec<f64> = rows.iter().map(SweepRow::exact_f64).collect();
    let (x0, x1) = (xs[0], xs[xs.len() - 1].max(xs[0] + 1.0));
    let ymax = exact
        .iter()
        .copied()
        .chain(rows.iter().filter_map(|r| r.asym))
        .filter(|v| v.is_finite())
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE)
        * 1.1;
    let px = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let py = |y: f64| H / 2.0 - y / ymax * (H / 2.0 - PAD);

    if let (Some(a), Some(b)) = (
        rows.iter().find(|r| r.allowed),
        rows.iter().rev().find(|r| r.allowed),
    ) {
        let (l, r) = (
            px(f64::from(a.twice_j5) / 2.0),
            px(f64::from(b.twice_j5) / 2.0),
        );
        let _ = writeln!(
            svg,
            r##"<rect x="{l:.2}" y="{PAD}" width="{:.2}" height="{}" fill="#eef4ff"/>"##,
            (r - l).max(1.0),
            H - 2.0 * PAD
        );
    }
    let _ = writeln!(
        svg,
        r#"<line x1="{PAD}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="black"/>"#,
        W - PAD,
        y = py(0.0)
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{}" stroke="black"/>"#,
        H - PAD
    );
    for (v, anchor) in [(ymax / 1.1, "end"), (-ymax / 1.1, "end")] {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.2}" text-anchor="{anchor}">{v:.2e}</text>"#,
            PAD - 6.0,
            py(v) + 4.0
        );
    }
    let step = ((x1 - x0) / 10.0).ceil().max(1.0);
    let mut t = x0.ceil();
    while t <= x1 {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{t}</text>"#,
            px(t),
            H - PAD + 18.0
        );
        t += step;
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">j5</text>"#,
        W / 2.0,
        H - 16.0
    );

    for (x, y) in xs.iter().zip(&exact) {
        let _ = writeln!(
            svg,
            r#"<line x1="{X:.2}" y1="{:.2}" x2="{X:.2}" y2="{:.2}" stroke="gray"/><circle cx="{X:.2}" cy="{:.2}" r="2.5" fill="black"/>"#,
            py(0.0),
            py(*y),
            py(*y),
            X = px(*x)
        );
    }
    let mut segment = Vec::new();
    let flush = |seg: &mut Vec<String>, svg: &mut String| {
        if seg.len() > 1 {
            let _ = writeln!(
                svg,
                r##"<polyline points="{}" fill="none" stroke="#c0392b" stroke-width="1.5"/>"##,
                seg.join(" ")
            );
        }
        seg.clear();
    };
    for (r, x) in rows.iter().zip(&xs) {
        match r.asym {
            Some(a) if a.is_finite() => segment.push(format!("{:.2},{:.2}", px(*x), py(a))),
            _ => flush(&mut segment, &mut svg),
        }
    }
    flush(&mut segment, &mut svg);
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="44" text-anchor="end"><tspan fill="black">● exact</tspan>  <tspan fill="#c0392b">— asymptotic</tspan></text>"##,
        W - PAD
    );
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn emit_plot(rows: &[SweepRow], path: &Path, title: &str) -> Result<()> {
    std::fs::write(path, render_svg(rows, title))?;
    Ok(())
}
