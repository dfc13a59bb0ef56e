//! Minimal SVG 1.1 writers.

use std::fmt::Write;

use crate::stats::FordCircle;

const HEADER: &str = r#"<?xml version="1.0" encoding="UTF-8"?>"#;

/// Ford circles over slopes `[lo, hi]`, `width` pixels wide. Circles
/// smaller than half a pixel are left out.
pub fn ford_svg(circles: &[FordCircle], lo: f64, hi: f64, width: f64) -> (String, usize) {
    let scale = width / (hi - lo);
    let tallest = circles.iter().map(|c| 2.0 * c.radius * scale).fold(0.0, f64::max);
    let height = tallest.clamp(1.0, width) + 10.0;
    let base = height - 5.0;
    let mut s = String::new();
    let _ = writeln!(s, "{HEADER}");
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = width + 10.0,
        h = height
    );
    let _ = writeln!(s, r#"<line x1="5" y1="{base:.3}" x2="{:.3}" y2="{base:.3}" stroke="black" stroke-width="0.5"/>"#, width + 5.0);
    let mut drawn = 0;
    for c in circles {
        let r = c.radius * scale;
        if r < 0.5 {
            continue;
        }
        drawn += 1;
        let cx = 5.0 + (c.center.0 - lo) * scale;
        let cy = base - r;
        let _ = writeln!(s, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" fill="none" stroke="steelblue" stroke-width="0.5"/>"#);
    }
    s.push_str("</svg>\n");
    (s, drawn)
}

/// Points of `[-1, 1]^2` as dots on a `size` pixel square.
pub fn point_cloud_svg(points: &[(f64, f64)], size: f64) -> String {
    let half = size / 2.0;
    let mut s = String::new();
    let _ = writeln!(s, "{HEADER}");
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.3} {size:.3}">"#
    );
    let _ = writeln!(s, r#"<g fill="black">"#);
    for &(x, y) in points {
        let px = half + x * half;
        let py = half - y * half;
        let _ = writeln!(s, r#"<circle cx="{px:.2}" cy="{py:.2}" r="0.6"/>"#);
    }
    s.push_str("</g>\n</svg>\n");
    s
}
