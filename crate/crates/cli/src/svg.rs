//! Minimal SVG emission on a fixed 800×600 viewport.

use std::fmt::Write;

use crate::format::real_text;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

pub struct Series<'a> {
    pub name: &'a str,
    pub color: &'a str,
    pub points: Vec<(f64, f64)>,
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn fit(points: impl Iterator<Item = (f64, f64)>) -> Frame {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for (x, y) in points.filter(|(x, y)| x.is_finite() && y.is_finite()) {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        let pad = |lo: f64, hi: f64| if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
        Frame { x: pad(x0, x1), y: pad(y0.min(0.0), y1) }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600">"#);
    let _ = writeln!(out, r#"<rect width="800" height="600" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="400" y="30" text-anchor="middle" font-family="sans-serif" font-size="18">{}</text>"#,
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axes(out: &mut String, frame: &Frame, x_label: &str, y_label: &str) {
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let _ =
        writeln!(out, r#"<path d="M{x0:.2} {y1:.2} L{x0:.2} {y0:.2} L{x1:.2} {y0:.2}" stroke="black" fill="none"/>"#);
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let xv = frame.x.0 + t * (frame.x.1 - frame.x.0);
        let yv = frame.y.0 + t * (frame.y.1 - frame.y.0);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
            frame.px(xv),
            y0 + 18.0,
            short(xv)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="12">{}</text>"#,
            x0 - 6.0,
            frame.py(yv) + 4.0,
            short(yv)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="400" y="585" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="20" y="300" text-anchor="middle" font-family="sans-serif" font-size="14" transform="rotate(-90 20 300)">{}</text>"#,
        escape(y_label)
    );
}

fn short(x: f64) -> String {
    let s = real_text((x * 1e4).round() / 1e4);
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn legend(out: &mut String, entries: &[(&str, &str)]) {
    for (i, (name, color)) in entries.iter().enumerate() {
        let y = TOP + 10.0 + 20.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="14" height="10" fill="{color}"/>"#,
            WIDTH - RIGHT - 150.0,
            y
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{}</text>"#,
            WIDTH - RIGHT - 130.0,
            y + 9.0,
            escape(name)
        );
    }
}

pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let frame = Frame::fit(series.iter().flat_map(|s| s.points.iter().copied()));
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, &frame, x_label, y_label);
    for s in series {
        let mut d = String::new();
        for (i, (x, y)) in s.points.iter().enumerate() {
            let _ = write!(d, "{}{:.2} {:.2} ", if i == 0 { "M" } else { "L" }, frame.px(*x), frame.py(*y));
        }
        let _ = writeln!(out, r#"<path d="{}" stroke="{}" stroke-width="2" fill="none"/>"#, d.trim_end(), s.color);
        for (x, y) in &s.points {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#,
                frame.px(*x),
                frame.py(*y),
                s.color
            );
        }
    }
    legend(&mut out, &series.iter().map(|s| (s.name, s.color)).collect::<Vec<_>>());
    out.push_str("</svg>\n");
    out
}

/// Two bands stacked on each other: `[0, lower]` and `[lower, lower + upper]`.
pub fn stack_chart(title: &str, x_label: &str, xs: &[f64], lower: (&str, &[f64]), upper: (&str, &[f64])) -> String {
    let tops: Vec<f64> = lower.1.iter().zip(upper.1).map(|(a, b)| a + b).collect();
    let frame =
        Frame::fit(xs.iter().zip(lower.1).map(|(x, y)| (*x, *y)).chain(xs.iter().zip(&tops).map(|(x, y)| (*x, *y))));
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, &frame, x_label, "value");
    let band = |base: &[f64], top: &[f64]| {
        let mut d = String::new();
        for (i, (x, y)) in xs.iter().zip(top).enumerate() {
            let _ = write!(d, "{}{:.2} {:.2} ", if i == 0 { "M" } else { "L" }, frame.px(*x), frame.py(*y));
        }
        for (x, y) in xs.iter().zip(base).rev() {
            let _ = write!(d, "L{:.2} {:.2} ", frame.px(*x), frame.py(*y));
        }
        d.push('Z');
        d
    };
    let zeros = vec![0.0; xs.len()];
    let _ = writeln!(out, r##"<path d="{}" fill="#4c72b0" fill-opacity="0.7"/>"##, band(&zeros, lower.1));
    let _ = writeln!(out, r##"<path d="{}" fill="#dd8452" fill-opacity="0.7"/>"##, band(lower.1, &tops));
    legend(&mut out, &[(lower.0, "#4c72b0"), (upper.0, "#dd8452")]);
    out.push_str("</svg>\n");
    out
}

/// Heatmap of `values[i][j]` over the square `[-extent, extent]²`, colour by
/// `log(1 + value)`; cells outside the disk are left blank.
pub fn heatmap(title: &str, extent: f64, values: &[Vec<Option<f64>>]) -> String {
    let n = values.len();
    let top = values.iter().flatten().flatten().map(|v| v.ln_1p()).fold(0.0, f64::max);
    let side = (HEIGHT - TOP - BOTTOM).min(WIDTH - LEFT - RIGHT);
    let cell = side / n as f64;
    let x0 = (WIDTH - side) / 2.0;
    let mut out = String::new();
    header(&mut out, title);
    for (i, row) in values.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let Some(v) = v else { continue };
            let t = if top > 0.0 { v.ln_1p() / top } else { 0.0 };
            let (r, g, b) = (
                (255.0 * t).round() as u8,
                (80.0 + 100.0 * (1.0 - (2.0 * t - 1.0).abs())).round() as u8,
                (255.0 * (1.0 - t)).round() as u8,
            );
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="rgb({r},{g},{b})"/>"#,
                x0 + cell * j as f64,
                TOP + cell * (n - 1 - i) as f64,
                cell + 0.05,
                cell + 0.05
            );
        }
    }
    let _ = writeln!(
        out,
        r#"<text x="400" y="585" text-anchor="middle" font-family="sans-serif" font-size="14">Re z, Im z in [-{e}, {e}]; colour log(1 + f#), max {m}</text>"#,
        e = short(extent),
        m = short(top.exp_m1())
    );
    out.push_str("</svg>\n");
    out
}
