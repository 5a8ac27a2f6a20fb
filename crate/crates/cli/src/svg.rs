//! Deterministic SVG rendering of the exclusion arc and of pillowcase
//! images. Axes are ticked at multiples of π/3; the reducible lines β = ±π
//! are dashed; arc vertices carry full-precision data attributes.

use std::f64::consts::PI;
use std::fmt::Write;

use pillowcase_core::{ExclusionArc, PillowcaseImage, Tube};

const W: f64 = 640.0;
const H: f64 = 560.0;
const MARGIN: f64 = 60.0;

struct Frame {
    amin: f64,
    amax: f64,
    bmin: f64,
    bmax: f64,
}

impl Frame {
    fn x(&self, alpha: f64) -> f64 {
        MARGIN + (alpha - self.amin) / (self.amax - self.amin) * (W - 2.0 * MARGIN)
    }
    fn y(&self, beta: f64) -> f64 {
        // SVG y grows downward.
        H - MARGIN - (beta - self.bmin) / (self.bmax - self.bmin) * (H - 2.0 * MARGIN)
    }
}

fn axes(out: &mut String, frame: &Frame) {
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-width="1"/>"##,
        frame.x(frame.amin),
        frame.y(0.0),
        frame.x(frame.amax),
        frame.y(0.0)
    );
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-width="1"/>"##,
        frame.x(0.0),
        frame.y(frame.bmin),
        frame.x(0.0),
        frame.y(frame.bmax)
    );
    // Ticks at multiples of π/3 on both axes.
    let tick = PI / 3.0;
    let mut k = (frame.amin / tick).ceil() as i64;
    while (k as f64) * tick <= frame.amax + 1e-9 {
        let a = k as f64 * tick;
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-width="1"/>"##,
            frame.x(a),
            frame.y(0.0) - 4.0,
            frame.x(a),
            frame.y(0.0) + 4.0
        );
        if k != 0 {
            let _ = writeln!(
                out,
                r##"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle" fill="#444">{}π/3</text>"##,
                frame.x(a),
                frame.y(0.0) + 18.0,
                k
            );
        }
        k += 1;
    }
    let mut k = (frame.bmin / tick).ceil() as i64;
    while (k as f64) * tick <= frame.bmax + 1e-9 {
        let b = k as f64 * tick;
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-width="1"/>"##,
            frame.x(0.0) - 4.0,
            frame.y(b),
            frame.x(0.0) + 4.0,
            frame.y(b)
        );
        if k != 0 {
            let _ = writeln!(
                out,
                r##"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end" fill="#444">{}π/3</text>"##,
                frame.x(0.0) - 8.0,
                frame.y(b) + 4.0,
                k
            );
        }
        k += 1;
    }
    let _ = writeln!(
        out,
        r##"<text x="{:.2}" y="{:.2}" font-size="13" fill="#222">α</text>"##,
        frame.x(frame.amax) + 8.0,
        frame.y(0.0) + 4.0
    );
    let _ = writeln!(
        out,
        r##"<text x="{:.2}" y="{:.2}" font-size="13" fill="#222">β</text>"##,
        frame.x(0.0) - 4.0,
        frame.y(frame.bmax) - 8.0
    );
}

fn dashed_beta_pi(out: &mut String, frame: &Frame) {
    for sign in [1.0, -1.0] {
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#b44" stroke-width="1.2" stroke-dasharray="7,5"/>"##,
            frame.x(frame.amin),
            frame.y(sign * PI),
            frame.x(frame.amax),
            frame.y(sign * PI)
        );
    }
}

/// The exclusion-arc figure: solid arc, dashed β = ±π reducible lines,
/// labeled vertices z1..z6, optional tube outline, machine-readable
/// metadata.
pub fn figure_svg(arc: &ExclusionArc, tube: Option<&Tube>) -> String {
    let frame = Frame {
        amin: -PI - 0.45,
        amax: PI + 0.45,
        bmin: -PI - 0.45,
        bmax: PI + 0.45,
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"##
    );
    let n_contacts = arc.beta_pi_points().len();
    let _ = writeln!(
        out,
        r##"<metadata>{{"slope": {{"p": {}, "q": {}}}, "beta_pi_contacts": {}, "epsilon": {}}}</metadata>"##,
        arc.slope.p,
        arc.slope.q,
        n_contacts,
        tube.map(|t| t.epsilon.to_string()).unwrap_or("null".into())
    );
    let _ = writeln!(out, r##"<rect width="{W}" height="{H}" fill="white"/>"##);
    axes(&mut out, &frame);
    dashed_beta_pi(&mut out, &frame);

    if let Some(t) = tube {
        // Coarse tube silhouette: translucent circles along the arc.
        let steps = 160;
        for i in 0..=steps {
            let p = arc.point_at(i as f64 / steps as f64);
            let r = t.epsilon / (frame.amax - frame.amin) * (W - 2.0 * MARGIN);
            let _ = writeln!(
                out,
                r##"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="#cfe3ff" fill-opacity="0.35" stroke="none"/>"##,
                frame.x(p.alpha),
                frame.y(p.beta),
                r
            );
        }
    }

    let path: Vec<String> = arc
        .vertices
        .iter()
        .map(|v| format!("{:.4},{:.4}", frame.x(v[0]), frame.y(v[1])))
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#1a4fa0" stroke-width="2.2"/>"##,
        path.join(" ")
    );

    for (i, v) in arc.vertices.iter().enumerate() {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3.2" fill="#1a4fa0" data-vertex="z{}" data-alpha="{:.17e}" data-beta="{:.17e}"/>"##,
            frame.x(v[0]),
            frame.y(v[1]),
            i + 1,
            v[0],
            v[1]
        );
        let dx = if v[0] < 0.0 { -10.0 } else { 10.0 };
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle" fill="#1a4fa0">z{}</text>"##,
            frame.x(v[0]) + dx,
            frame.y(v[1]) - 8.0,
            i + 1
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Scatter plot of a sampled image with the reducible locus dashed.
pub fn image_svg(img: &PillowcaseImage, twist: bool) -> String {
    let frame = Frame {
        amin: -0.25,
        amax: PI + 0.25,
        bmin: -PI - 0.45,
        bmax: PI + 0.45,
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"##
    );
    let _ = writeln!(
        out,
        r##"<metadata>{{"knot": "{}", "samples": {}, "twist": {}}}</metadata>"##,
        img.knot,
        img.samples.len(),
        img.twist
    );
    let _ = writeln!(out, r##"<rect width="{W}" height="{H}" fill="white"/>"##);
    axes(&mut out, &frame);
    // Reducible locus: β ≡ π twisted, β ≡ 0 untwisted.
    if twist {
        dashed_beta_pi(&mut out, &frame);
    } else {
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#b44" stroke-width="1.2" stroke-dasharray="7,5"/>"##,
            frame.x(frame.amin),
            frame.y(0.0),
            frame.x(frame.amax),
            frame.y(0.0)
        );
    }
    for s in &img.samples {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="1.4" fill="#1a4fa0"/>"##,
            frame.x(s.boundary.alpha),
            frame.y(s.boundary.beta)
        );
    }
    out.push_str("</svg>\n");
    out
}
