//! Minimal static SVG histograms, written directly so plotting needs no
//! external dependency. Bars show a sampled or exact distribution; an
//! optional dotted polyline overlays the analytic law.

use std::fmt::Write;

use crate::distribution::Distribution;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 48.0;
const MARGIN_B: f64 = 56.0;

struct Frame {
    x_lo: i64,
    x_hi: i64,
    y_max: f64,
}

impl Frame {
    fn x_px(&self, x: f64) -> f64 {
        let span = (self.x_hi - self.x_lo).max(1) as f64;
        MARGIN_L + (x - self.x_lo as f64) / span * (WIDTH - MARGIN_L - MARGIN_R)
    }

    fn y_px(&self, p: f64) -> f64 {
        HEIGHT - MARGIN_B - p / self.y_max * (HEIGHT - MARGIN_T - MARGIN_B)
    }
}

/// Render a distribution as an SVG bar chart with an optional dotted analytic
/// overlay and a caption line. Output is deterministic for identical inputs.
pub fn render_histogram(
    data: &Distribution,
    overlay: Option<&Distribution>,
    caption: &str,
) -> String {
    let (mut x_lo, mut x_hi) = data.support_bounds().unwrap_or((0, 0));
    let mut y_max = data.iter().map(|(_, p)| p).fold(0.0, f64::max);
    if let Some(ov) = overlay {
        if let Some((lo, hi)) = ov.support_bounds() {
            x_lo = x_lo.min(lo);
            x_hi = x_hi.max(hi);
        }
        y_max = y_max.max(ov.iter().map(|(_, p)| p).fold(0.0, f64::max));
    }
    let frame = Frame {
        x_lo: x_lo - 1,
        x_hi: x_hi + 1,
        y_max: (y_max * 1.08).max(1e-12),
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="28" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(caption)
    );

    // axes
    let x_axis_y = frame.y_px(0.0);
    let _ = writeln!(
        svg,
        r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black" stroke-width="1"/>"#,
        MARGIN_L,
        x_axis_y,
        WIDTH - MARGIN_R,
        x_axis_y
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black" stroke-width="1"/>"#,
        MARGIN_L,
        MARGIN_T,
        MARGIN_L,
        x_axis_y
    );
    // axis labels: ends, zero, and the probability peak
    for x in [frame.x_lo, 0, frame.x_hi] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{x}</text>"#,
            frame.x_px(x as f64),
            x_axis_y + 18.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="end">{:.4}</text>"#,
        MARGIN_L - 6.0,
        frame.y_px(y_max) + 4.0,
        y_max
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="end">0</text>"#,
        MARGIN_L - 6.0,
        x_axis_y + 4.0
    );

    // bars
    let slot = (WIDTH - MARGIN_L - MARGIN_R) / ((frame.x_hi - frame.x_lo).max(1) as f64 + 1.0);
    let bar_w = (slot * 0.8).clamp(0.8, 26.0);
    for (x, p) in data.iter() {
        let cx = frame.x_px(x as f64);
        let top = frame.y_px(p);
        let _ = writeln!(
            svg,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="steelblue" fill-opacity="0.85"/>"#,
            cx - bar_w / 2.0,
            top,
            bar_w,
            (x_axis_y - top).max(0.0)
        );
    }

    // dotted analytic overlay
    if let Some(ov) = overlay {
        let points: Vec<String> = ov
            .iter()
            .map(|(x, p)| format!("{:.2},{:.2}", frame.x_px(x as f64), frame.y_px(p)))
            .collect();
        if points.len() > 1 {
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="crimson" stroke-width="1.5" stroke-dasharray="2,4"/>"#,
                points.join(" ")
            );
        }
    }

    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::binomial_distribution;

    #[test]
    fn renders_wellformed_svg() {
        let d = binomial_distribution(0, 8);
        let svg = render_histogram(&d, Some(&d), "test caption sigma=2.83");
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<rect").count(), d.len() + 1); // background + bars
        assert!(svg.contains("polyline"));
        assert!(svg.contains("test caption"));
    }

    #[test]
    fn deterministic_output() {
        let d = binomial_distribution(0, 6);
        assert_eq!(
            render_histogram(&d, None, "c"),
            render_histogram(&d, None, "c")
        );
    }

    #[test]
    fn escapes_caption() {
        let d = binomial_distribution(0, 2);
        let svg = render_histogram(&d, None, "a<b & c>d");
        assert!(svg.contains("a&lt;b &amp; c&gt;d"));
    }
}
