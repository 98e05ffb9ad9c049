//! Deterministic SVG plots, 1000 x 600, one fixed colour per homology
//! dimension. Infinite deaths sit on a dotted line at the cap.

use std::fmt::Write as _;

use homodim::landscape::PersistenceLandscape;
use homodim::persistence::PersistenceDiagram;

pub const WIDTH: f64 = 1000.0;
pub const HEIGHT: f64 = 600.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 960.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 540.0;

const PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

pub fn color(k: usize) -> &'static str {
    PALETTE[k % PALETTE.len()]
}

struct Frame {
    x_max: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        LEFT + (RIGHT - LEFT) * v / self.x_max
    }

    fn y(&self, v: f64) -> f64 {
        BOTTOM - (BOTTOM - TOP) * v / self.y_max
    }
}

fn open(s: &mut String, title: &str) {
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{title}</text>"#,
        WIDTH / 2.0
    );
}

fn axes(s: &mut String, frame: Option<&Frame>, x_label: &str, y_label: &str) {
    let _ = writeln!(
        s,
        r#"<g class="axes" stroke="black" stroke-width="1"><line x1="{LEFT}" y1="{BOTTOM}" x2="{RIGHT}" y2="{BOTTOM}"/><line x1="{LEFT}" y1="{BOTTOM}" x2="{LEFT}" y2="{TOP}"/></g>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="580" font-family="sans-serif" font-size="13" text-anchor="middle">{x_label}</text>"#,
        (LEFT + RIGHT) / 2.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 18 {})">{y_label}</text>"#,
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0
    );
    let Some(frame) = frame else { return };
    for i in 0..=4 {
        let xv = frame.x_max * i as f64 / 4.0;
        let yv = frame.y_max * i as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{xv:.3}</text>"#,
            frame.x(xv),
            BOTTOM + 16.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{yv:.3}</text>"#,
            LEFT - 6.0,
            frame.y(yv) + 4.0
        );
    }
}

fn cap_line(s: &mut String, frame: &Frame, cap: f64) {
    let y = frame.y(cap);
    let _ = writeln!(
        s,
        r##"<line class="cap" x1="{LEFT}" y1="{y:.2}" x2="{RIGHT}" y2="{y:.2}" stroke="#444444" stroke-dasharray="2,4"/>"##
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{:.2}" font-family="sans-serif" font-size="12">∞</text>"#,
        RIGHT + 6.0,
        y + 4.0
    );
}

fn legend(s: &mut String, ks: &[usize]) {
    for (i, &k) in ks.iter().enumerate() {
        let y = BOTTOM - 12.0 - 18.0 * (ks.len() - 1 - i) as f64;
        let _ = writeln!(
            s,
            r#"<rect x="{}" y="{}" width="12" height="12" fill="{}"/><text x="{}" y="{}" font-family="sans-serif" font-size="12">H{k}</text>"#,
            RIGHT - 60.0,
            y - 10.0,
            color(k),
            RIGHT - 42.0,
            y
        );
    }
}

/// Birth/death scatter of every diagram with essential points drawn at
/// `cap`; an empty input gives bare axes.
pub fn diagram_svg(diagrams: &[PersistenceDiagram], cap: f64) -> String {
    let mut s = String::new();
    open(&mut s, "persistence diagram");
    let ks: Vec<usize> = diagrams.iter().filter(|d| !d.is_empty()).map(|d| d.k).collect();
    if ks.is_empty() {
        axes(&mut s, None, "birth", "death");
        s.push_str("</svg>\n");
        return s;
    }
    let hi = diagrams
        .iter()
        .filter_map(PersistenceDiagram::max_finite_value)
        .fold(cap, f64::max);
    let frame = Frame {
        x_max: hi * 1.05,
        y_max: hi * 1.05,
    };
    axes(&mut s, Some(&frame), "birth", "death");
    let _ = writeln!(
        s,
        r##"<line class="diagonal" x1="{LEFT}" y1="{BOTTOM}" x2="{:.2}" y2="{:.2}" stroke="#bbbbbb"/>"##,
        frame.x(frame.x_max),
        frame.y(frame.y_max)
    );
    cap_line(&mut s, &frame, cap);
    for dg in diagrams {
        for p in &dg.points {
            let _ = writeln!(
                s,
                r#"<circle class="point" cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#,
                frame.x(p.birth),
                frame.y(p.death.unwrap_or(cap)),
                color(dg.k)
            );
        }
    }
    legend(&mut s, &ks);
    s.push_str("</svg>\n");
    s
}

/// Every layer of one landscape as a polyline.
pub fn landscape_svg(pl: &PersistenceLandscape) -> String {
    let mut s = String::new();
    open(&mut s, &format!("persistence landscape H{}", pl.k));
    let x_max = pl.grid.last().copied().filter(|&x| x > 0.0).unwrap_or(1.0);
    let cap = if pl.cap > 0.0 { pl.cap } else { x_max };
    let frame = Frame {
        x_max: x_max.max(cap) * 1.02,
        y_max: cap * 1.05,
    };
    axes(&mut s, Some(&frame), "(birth + death) / 2", "(death - birth) / 2");
    cap_line(&mut s, &frame, cap);
    for layer in &pl.layers {
        let mut d = String::new();
        for (i, (&x, &y)) in pl.grid.iter().zip(layer).enumerate() {
            let _ = write!(
                d,
                "{}{:.2},{:.2}",
                if i == 0 { "M" } else { " L" },
                frame.x(x),
                frame.y(y)
            );
        }
        let _ = writeln!(
            s,
            r#"<path class="layer" d="{d}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            color(pl.k)
        );
    }
    legend(&mut s, &[pl.k]);
    s.push_str("</svg>\n");
    s
}
