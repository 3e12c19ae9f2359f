// SPDX-License-Identifier: MIT OR Apache-2.0

//! Static SVG overlay: the series as a polyline, each segment's mean as a
//! horizontal bar, and dashed rules at the interior change points.

use std::fmt::Write;

use hmmseg_core::{segment_stats, Result, Segmentation, TimeSeries};

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

struct Frame {
    len: usize,
    lo: f64,
    hi: f64,
}

impl Frame {
    /// Horizontal position of one-based index `t`.
    fn px(&self, t: f64) -> f64 {
        let span = (self.len.max(2) - 1) as f64;
        MARGIN + (t - 1.0) / span * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, v: f64) -> f64 {
        HEIGHT - MARGIN - (v - self.lo) / (self.hi - self.lo) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn axis_label(x: &TimeSeries, t: usize) -> String {
    match x.labels() {
        Some(l) => l[t - 1].to_string(),
        None => t.to_string(),
    }
}

pub fn render(x: &TimeSeries, segmentation: &Segmentation) -> Result<String> {
    let stats = segment_stats(x, segmentation)?;
    let (mut lo, mut hi) = x
        .values()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if hi - lo < 1e-12 {
        lo -= 1.0;
        hi += 1.0;
    }
    let f = Frame { len: x.len(), lo, hi };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1"><line x1="{m}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{m}" y1="{m}" x2="{m}" y2="{b}"/></g>"#,
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="12"><text x="{m}" y="{ty}" text-anchor="middle">{first}</text><text x="{r}" y="{ty}" text-anchor="middle">{last}</text><text x="{lx}" y="{yl}" text-anchor="end">{lo:.3}</text><text x="{lx}" y="{yh}" text-anchor="end">{hi:.3}</text></g>"#,
        m = MARGIN,
        r = WIDTH - MARGIN,
        ty = HEIGHT - MARGIN + 18.0,
        first = axis_label(x, 1),
        last = axis_label(x, x.len()),
        lx = MARGIN - 6.0,
        yl = f.py(lo) + 4.0,
        yh = f.py(hi) + 4.0,
    );

    s.push_str(r#"<polyline fill="none" stroke="steelblue" stroke-width="1.2" points=""#);
    for (i, &v) in x.values().iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{:.2},{:.2}", f.px((i + 1) as f64), f.py(v));
    }
    s.push_str("\"/>\n");

    let cps = segmentation.change_points();
    s.push_str("<g stroke=\"gray\" stroke-dasharray=\"4 3\">\n");
    for &t in &cps[1..cps.len() - 1] {
        let px = f.px(t as f64 + 0.5);
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{top}" x2="{px:.2}" y2="{bot}"/>"#,
            top = MARGIN,
            bot = HEIGHT - MARGIN
        );
    }
    s.push_str("</g>\n<g stroke=\"firebrick\" stroke-width=\"2.5\">\n");
    for (w, st) in cps.windows(2).zip(&stats) {
        let x1 = f.px((w[0] as f64 + 0.5).max(1.0));
        let x2 = f.px((w[1] as f64 + 0.5).min(x.len() as f64));
        let y = f.py(st.mean);
        let _ = writeln!(s, r#"<line x1="{x1:.2}" y1="{y:.2}" x2="{x2:.2}" y2="{y:.2}"/>"#);
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}
