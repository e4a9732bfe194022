//! Polyline plots of PL functions as standalone SVG.

use std::fmt::Write;

use num_traits::Zero;

use crate::plcalc::PlFunction;
use crate::rational::{format_rational, to_f64, Rational};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Fixed 640×400 viewBox; x ticks at integer `t`, y ticks at the extreme
/// values and zero, all labelled exactly.
pub fn render(f: &PlFunction, title: &str) -> String {
    let points = f.breakpoints();
    let end = to_f64(f.domain_end());
    let zero = Rational::zero();
    let lo = points.iter().map(|(_, v)| v).min().unwrap_or(&zero).min(&zero).clone();
    let hi = points.iter().map(|(_, v)| v).max().unwrap_or(&zero).max(&zero).clone();
    let (ylo, yhi) = if lo == hi { (to_f64(&lo) - 1.0, to_f64(&hi) + 1.0) } else { (to_f64(&lo), to_f64(&hi)) };
    let x = |t: f64| MARGIN + (WIDTH - 2.0 * MARGIN) * t / end;
    let y = |v: f64| HEIGHT - MARGIN - (HEIGHT - 2.0 * MARGIN) * (v - ylo) / (yhi - ylo);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="monospace" font-size="12">"#
    );
    let _ = writeln!(out, r#"  <title>{}</title>"#, escape(title));
    let _ = writeln!(out, r#"  <rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(out, r#"  <text x="{}" y="20" text-anchor="middle">{}</text>"#, WIDTH / 2.0, escape(title));

    let y0 = y(0.0);
    let _ = writeln!(
        out,
        r#"  <line x1="{:.2}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}" stroke="black"/>"#,
        x(0.0),
        x(end)
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
        x(0.0),
        y(ylo),
        x(0.0),
        y(yhi)
    );
    let mut t = 0u64;
    while (t as f64) <= end {
        let px = x(t as f64);
        let _ = writeln!(
            out,
            r#"  <line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
            y0 - 4.0,
            y0 + 4.0
        );
        let _ = writeln!(out, r#"  <text x="{px:.2}" y="{:.2}" text-anchor="middle">{t}</text>"#, y0 + 18.0);
        t += 1;
    }
    let mut labels = vec![lo.clone(), zero.clone(), hi.clone()];
    labels.dedup();
    for v in &labels {
        let py = y(to_f64(v));
        let _ = writeln!(
            out,
            r#"  <text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x(0.0) - 6.0,
            py + 4.0,
            format_rational(v)
        );
    }

    let coords: Vec<String> =
        points.iter().map(|(t, v)| format!("{:.2},{:.2}", x(to_f64(t)), y(to_f64(v)))).collect();
    let _ = writeln!(out, r#"  <polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#, coords.join(" "));
    for (t, v) in points {
        let _ = writeln!(
            out,
            r#"  <circle cx="{:.2}" cy="{:.2}" r="3" fill="steelblue"><title>({}, {})</title></circle>"#,
            x(to_f64(t)),
            y(to_f64(v)),
            format_rational(t),
            format_rational(v)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::upsilon::ups_staircase;

    #[test]
    fn staircase_plot() {
        let svg = render(&ups_staircase(3).unwrap(), "T(3,4)");
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 4);
        assert!(svg.contains("(2/3, -2)"));
        assert!(svg.contains(">-2</text>"));
        assert!(svg.contains(">2</text>"));
    }

    #[test]
    fn flat_function() {
        let svg = render(&PlFunction::zero(Rational::from_integer(2.into())), "unknot");
        assert!(!svg.contains("NaN"));
    }
}
