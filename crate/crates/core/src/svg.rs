//! Minimal SVG emission for the CLI plots (line charts and scatter plots).
//!
//! Plots are plain text artifacts; no rasterization, no external deps.

use std::fmt::Write as _;

const W: f64 = 900.0;
const H: f64 = 520.0;
const MARGIN: f64 = 55.0;

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\">\n\
         <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"24\" font-family=\"monospace\" font-size=\"15\">{}</text>\n",
        MARGIN,
        xml_escape(title)
    )
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn scale(points: &[(f64, f64)]) -> ((f64, f64), (f64, f64)) {
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    ((x0, x1), (y0.min(0.0), y1))
}

fn to_px(x: f64, y: f64, xr: (f64, f64), yr: (f64, f64)) -> (f64, f64) {
    let px = MARGIN + (x - xr.0) / (xr.1 - xr.0) * (W - 2.0 * MARGIN);
    let py = H - MARGIN - (y - yr.0) / (yr.1 - yr.0) * (H - 2.0 * MARGIN);
    (px, py)
}

fn axes(out: &mut String, xr: (f64, f64), yr: (f64, f64)) {
    let _ = write!(
        out,
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <text x=\"{m}\" y=\"{lb}\" font-family=\"monospace\" font-size=\"12\">{x0:.4}</text>\n\
         <text x=\"{rr}\" y=\"{lb}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">{x1:.4}</text>\n\
         <text x=\"4\" y=\"{b}\" font-family=\"monospace\" font-size=\"12\">{y0:.3}</text>\n\
         <text x=\"4\" y=\"{tt}\" font-family=\"monospace\" font-size=\"12\">{y1:.3}</text>\n",
        m = MARGIN,
        b = H - MARGIN,
        t = MARGIN,
        r = W - MARGIN,
        rr = W - MARGIN,
        lb = H - MARGIN + 18.0,
        tt = MARGIN + 4.0,
        x0 = xr.0,
        x1 = xr.1,
        y0 = yr.0,
        y1 = yr.1,
    );
}

/// Polyline plot of `(x, y)` series.
pub fn line_plot(title: &str, points: &[(f64, f64)]) -> String {
    let mut out = header(title);
    if points.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let (xr, yr) = scale(points);
    axes(&mut out, xr, yr);
    out.push_str("<polyline fill=\"none\" stroke=\"#1565c0\" stroke-width=\"1\" points=\"");
    for &(x, y) in points {
        let (px, py) = to_px(x, y, xr, yr);
        let _ = write!(out, "{px:.2},{py:.2} ");
    }
    out.push_str("\"/>\n</svg>\n");
    out
}

/// Scatter plot with circles of pixel-scaled radius `r_data` (same units as x).
pub fn scatter_plot(title: &str, points: &[(f64, f64)], r_data: f64) -> String {
    let mut out = header(title);
    if points.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let (xr, yr) = scale(points);
    axes(&mut out, xr, yr);
    let r_px = r_data / (xr.1 - xr.0) * (W - 2.0 * MARGIN);
    for &(x, y) in points {
        let (px, py) = to_px(x, y, xr, yr);
        let _ = write!(
            out,
            "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"{:.2}\" fill=\"none\" stroke=\"#2e7d32\"/>\n",
            r_px.max(1.0)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emits_well_formed_ish_svg() {
        let s = line_plot("curve", &[(0.0, 1.0), (1.0, 2.0), (2.0, 0.5)]);
        assert!(s.starts_with("<svg"));
        assert!(s.trim_end().ends_with("</svg>"));
        assert!(s.contains("polyline"));
    }
}
