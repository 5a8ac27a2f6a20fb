//! The pillowcase ℝ²/(2πℤ² ⋊ ±1): canonical representatives, the quotient
//! metric, filling lines, the reducible locus, the piecewise-linear exclusion
//! arc, and tubes around it.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::su2::AnglePair;

const TAU: f64 = 2.0 * PI;

/// Wraps an angle into (−π, π]. Values already in range pass through
/// unchanged, which makes canonicalization exactly idempotent.
pub fn wrap_angle(x: f64) -> f64 {
    if x > -PI && x <= PI {
        return x + 0.0; // normalizes -0.0
    }
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Canonical representative of an orbit of (α, β) under 2π shifts and
/// simultaneous negation: α ∈ [0, π], β ∈ (−π, π], and β ≥ 0 on the edges
/// α ∈ {0, π} where negation still acts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PillowcasePoint {
    pub alpha: f64,
    pub beta: f64,
}

/// Canonicalizes a raw angle pair. Idempotent; orbit-equal raw pairs map to
/// the same canonical point (up to floating-point reduction error).
pub fn canonicalize(raw: AnglePair) -> PillowcasePoint {
    let mut a = wrap_angle(raw.alpha);
    let mut b = raw.beta;
    if a < 0.0 {
        a = -a;
        b = -b;
    }
    a += 0.0;
    let mut b = wrap_angle(b);
    if (a == 0.0 || a == PI) && b < 0.0 {
        b = wrap_angle(-b);
    }
    PillowcasePoint {
        alpha: a,
        beta: b + 0.0,
    }
}

impl PillowcasePoint {
    pub fn new(alpha: f64, beta: f64) -> PillowcasePoint {
        canonicalize(AnglePair { alpha, beta })
    }

    pub fn as_pair(&self) -> AnglePair {
        AnglePair {
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    /// Translation by (π, 0) on the quotient; an involution.
    pub fn shift_alpha_pi(&self) -> PillowcasePoint {
        PillowcasePoint::new(self.alpha + PI, self.beta)
    }

    /// True if β ≡ π (mod 2π) up to `tol` on the canonical form.
    pub fn on_beta_pi(&self, tol: f64) -> bool {
        (self.beta - PI).abs() <= tol || (self.beta + PI).abs() <= tol
    }
}

/// Quotient metric: the minimum Euclidean distance between orbit
/// representatives.
pub fn distance(a: &PillowcasePoint, b: &PillowcasePoint) -> f64 {
    let mut best = f64::INFINITY;
    for &sign in &[1.0, -1.0] {
        for m in -1..=1 {
            for n in -1..=1 {
                let da = sign * b.alpha + TAU * m as f64 - a.alpha;
                let db = sign * b.beta + TAU * n as f64 - a.beta;
                let d = (da * da + db * db).sqrt();
                if d < best {
                    best = d;
                }
            }
        }
    }
    best
}

/// A Dehn-filling slope p/q in lowest terms, q ≥ 0, with q = 0 only for the
/// meridian slope (1, 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Slope {
    /// Normalizes (p, q): divides by the gcd and fixes q ≥ 0 (a slope is an
    /// unoriented curve class, so (p, q) ~ (−p, −q)).
    pub fn new(p: i64, q: i64) -> Result<Slope> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidSlope { p, q });
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn is_meridian(&self) -> bool {
        self.q == 0
    }

    /// p/q as a float; infinite for the meridian slope.
    pub fn ratio(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// Valid as the filling slope of the exclusion arc: p, q ≥ 1, p/q ≤ 2.
    pub fn check_arc_range(&self) -> Result<()> {
        if self.p < 1 || self.q < 1 || self.p > 2 * self.q {
            return Err(Error::SlopeOutOfRange {
                p: self.p,
                q: self.q,
            });
        }
        Ok(())
    }
}

/// The locus {pα + qβ ≡ c (mod 2π)} on the pillowcase. As a subset of the
/// quotient this is {pα + qβ ≡ ±c}, which is what `residual` measures.
/// `twist` records whether the constant was produced in the twisted
/// convention (reducibles on β ≡ π) or the untwisted one (β ≡ 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FillingLine {
    pub p: i64,
    pub q: i64,
    /// Constant term, normalized into [0, 2π).
    pub c: f64,
    pub twist: bool,
}

impl FillingLine {
    pub fn new(p: i64, q: i64, c: f64, twist: bool) -> FillingLine {
        FillingLine {
            p,
            q,
            c: c.rem_euclid(TAU),
            twist,
        }
    }

    /// The filling line of `slope`: pα + qβ ≡ 0 untwisted, ≡ qπ twisted.
    pub fn for_slope(slope: Slope, twist: bool) -> FillingLine {
        let c = if twist { slope.q as f64 * PI } else { 0.0 };
        FillingLine::new(slope.p, slope.q, c, twist)
    }

    /// The reducible locus: β ≡ π in the twisted convention, β ≡ 0 in the
    /// untwisted one.
    pub fn reducible_locus(twist: bool) -> FillingLine {
        FillingLine::new(0, 1, if twist { PI } else { 0.0 }, twist)
    }

    /// Distance (in the mod-2π sense) from a point to the locus, minimized
    /// over the negation ambiguity.
    pub fn residual(&self, pt: &PillowcasePoint) -> f64 {
        let v = self.p as f64 * pt.alpha + self.q as f64 * pt.beta;
        let r1 = wrap_angle(v - self.c).abs();
        let r2 = wrap_angle(v + self.c).abs();
        r1.min(r2)
    }

    pub fn contains(&self, pt: &PillowcasePoint, tol: f64) -> bool {
        self.residual(pt) <= tol
    }
}

/// The six-vertex piecewise-linear exclusion arc for a slope with
/// 0 < p/q ≤ 2. Its segments lie on α = ∓π, the lines pα + qβ = ∓qπ, and
/// α = 0; together with its 2π-translates it is invariant under negation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExclusionArc {
    pub slope: Slope,
    /// Vertices z1..z6 in order, as raw plane coordinates.
    pub vertices: [[f64; 2]; 6],
}

impl ExclusionArc {
    pub fn new(slope: Slope) -> Result<ExclusionArc> {
        slope.check_arc_range()?;
        let ratio = slope.p as f64 / slope.q as f64;
        let shoulder = -(1.0 - ratio) * PI;
        let vertices = [
            [-PI, 0.0],
            [-PI, shoulder],
            [0.0, -PI],
            [0.0, PI],
            [PI, -shoulder],
            [PI, 0.0],
        ];
        Ok(ExclusionArc { slope, vertices })
    }

    /// The five segments z1z2 .. z5z6, with zero-length segments (p/q = 1)
    /// skipped.
    pub fn segments(&self) -> Vec<([f64; 2], [f64; 2])> {
        self.vertices
            .windows(2)
            .map(|w| (w[0], w[1]))
            .filter(|(a, b)| (a[0] - b[0]).abs() > 0.0 || (a[1] - b[1]).abs() > 0.0)
            .collect()
    }

    /// Raw vertices lying on β = ±π: two for p/q < 2, four for p/q = 2.
    pub fn beta_pi_points(&self) -> Vec<AnglePair> {
        self.vertices
            .iter()
            .filter(|v| (v[1].abs() - PI).abs() <= 1e-12)
            .map(|v| AnglePair {
                alpha: v[0],
                beta: v[1],
            })
            .collect()
    }

    /// Minimum plane distance from any orbit representative of `pt` to the
    /// arc (the arc itself lives in the fundamental strip; its translates
    /// are accounted for via the orbit of the point).
    pub fn distance_to(&self, pt: &PillowcasePoint) -> f64 {
        let mut best = f64::INFINITY;
        let segments = self.segments();
        for &sign in &[1.0, -1.0] {
            for m in -1..=1 {
                for n in -1..=1 {
                    let x = sign * pt.alpha + TAU * m as f64;
                    let y = sign * pt.beta + TAU * n as f64;
                    for (a, b) in &segments {
                        let d = point_segment_distance([x, y], *a, *b);
                        if d < best {
                            best = d;
                        }
                    }
                }
            }
        }
        best
    }

    /// Point on the arc at fraction `t` ∈ [0, 1] of its total length.
    pub fn point_at(&self, t: f64) -> AnglePair {
        let segments = self.segments();
        let lengths: Vec<f64> = segments
            .iter()
            .map(|(a, b)| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt())
            .collect();
        let total: f64 = lengths.iter().sum();
        let mut target = t.clamp(0.0, 1.0) * total;
        for (i, (a, b)) in segments.iter().enumerate() {
            let len = lengths[i];
            if target <= len || i == segments.len() - 1 {
                let s = if len > 0.0 {
                    (target / len).min(1.0)
                } else {
                    0.0
                };
                return AnglePair {
                    alpha: a[0] + s * (b[0] - a[0]),
                    beta: a[1] + s * (b[1] - a[1]),
                };
            }
            target -= len;
        }
        let last = self.vertices[5];
        AnglePair {
            alpha: last[0],
            beta: last[1],
        }
    }
}

fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let dx = p[0] - (a[0] + t * ab[0]);
    let dy = p[1] - (a[1] + t * ab[1]);
    (dx * dx + dy * dy).sqrt()
}

/// An ε-neighborhood of the exclusion arc. The starred variant removes the
/// lines β = ±π.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tube {
    pub arc: ExclusionArc,
    pub epsilon: f64,
}

impl Tube {
    pub fn new(arc: ExclusionArc, epsilon: f64) -> Tube {
        Tube { arc, epsilon }
    }

    /// Membership in U (star = false) or U* = U \ {β = ±π} (star = true).
    /// Points within 1e−12 of β = ±π count as on the line, so the starred
    /// test never falsely reports emptiness.
    pub fn contains(&self, pt: &PillowcasePoint, star: bool) -> bool {
        if star && pt.on_beta_pi(1e-12) {
            return false;
        }
        self.arc.distance_to(pt) <= self.epsilon
    }
}

/// Canonical forms of the reducible points {(2πk/p, π) : k = 0..p−1} for a
/// filling slope; for the meridian slope (1, 0) this is the single point
/// (0, π). Duplicate orbits are removed.
pub fn reducible_points(slope: Slope) -> Result<Vec<PillowcasePoint>> {
    if slope.p < 1 {
        return Err(Error::InvalidSlope {
            p: slope.p,
            q: slope.q,
        });
    }
    let mut out: Vec<PillowcasePoint> = Vec::new();
    for k in 0..slope.p {
        let pt = PillowcasePoint::new(TAU * k as f64 / slope.p as f64, PI);
        if !out.iter().any(|q| distance(q, &pt) < 1e-9) {
            out.push(pt);
        }
    }
    out.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalize_examples() {
        let p = canonicalize(AnglePair {
            alpha: 0.0,
            beta: 0.0,
        });
        assert_eq!((p.alpha, p.beta), (0.0, 0.0));

        let p = canonicalize(AnglePair {
            alpha: TAU + 0.3,
            beta: -0.4,
        });
        assert!((p.alpha - 0.3).abs() < 1e-12 && (p.beta + 0.4).abs() < 1e-12);

        let p = canonicalize(AnglePair {
            alpha: -0.3,
            beta: 0.4,
        });
        assert!((p.alpha - 0.3).abs() < 1e-15 && (p.beta + 0.4).abs() < 1e-15);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for i in 0..500 {
            let raw = AnglePair {
                alpha: -17.0 + 0.07 * i as f64,
                beta: 23.0 - 0.09 * i as f64,
            };
            let once = canonicalize(raw);
            let twice = canonicalize(once.as_pair());
            assert_eq!(once, twice, "raw = {raw:?}");
        }
    }

    #[test]
    fn canonicalize_edge_tiebreak() {
        let p = canonicalize(AnglePair {
            alpha: 0.0,
            beta: -0.7,
        });
        assert_eq!(p.beta, 0.7);
        let p = canonicalize(AnglePair {
            alpha: PI,
            beta: -0.7,
        });
        assert_eq!(p.beta, 0.7);
        // β = −π wraps to π
        let p = canonicalize(AnglePair {
            alpha: 0.4,
            beta: -PI,
        });
        assert_eq!(p.beta, PI);
    }

    #[test]
    fn distance_examples() {
        let x = PillowcasePoint::new(0.3, 0.5);
        assert_eq!(distance(&x, &x), 0.0);
        let a = PillowcasePoint::new(0.0, PI);
        let b = PillowcasePoint::new(0.0, -PI);
        assert!(distance(&a, &b) < 1e-15);
        let c = PillowcasePoint::new(0.1, 0.0);
        let d = PillowcasePoint::new(-0.1, 0.0);
        assert!(distance(&c, &d) < 1e-15);
    }

    #[test]
    fn slope_normalization() {
        let s = Slope::new(-5, -3).unwrap();
        assert_eq!((s.p, s.q), (5, 3));
        let s = Slope::new(4, 6).unwrap();
        assert_eq!((s.p, s.q), (2, 3));
        let s = Slope::new(-1, 0).unwrap();
        assert_eq!((s.p, s.q), (1, 0));
        assert!(Slope::new(0, 0).is_err());
    }

    #[test]
    fn filling_line_constants() {
        let l = FillingLine::for_slope(Slope::new(1, 0).unwrap(), false);
        assert_eq!((l.p, l.q, l.c), (1, 0, 0.0));
        let l = FillingLine::for_slope(Slope::new(5, 3).unwrap(), true);
        // 3π ≡ π (mod 2π)
        assert!((l.c - PI).abs() < 1e-12);
        let l = FillingLine::for_slope(Slope::new(0, 1).unwrap(), false);
        assert!(l.contains(&PillowcasePoint::new(1.1, 0.0), 1e-12));
    }

    #[test]
    fn reducible_locus_conventions() {
        let tw = FillingLine::reducible_locus(true);
        assert!(tw.contains(&PillowcasePoint::new(0.7, PI), 1e-12));
        assert!(!tw.contains(&PillowcasePoint::new(0.7, 0.0), 1e-6));
        let un = FillingLine::reducible_locus(false);
        assert!(un.contains(&PillowcasePoint::new(0.7, 0.0), 1e-12));
    }

    #[test]
    fn arc_vertices_for_5_3() {
        let arc = ExclusionArc::new(Slope::new(5, 3).unwrap()).unwrap();
        let z2 = arc.vertices[1];
        let z5 = arc.vertices[4];
        assert!((z2[0] + PI).abs() < 1e-15 && (z2[1] - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((z5[0] - PI).abs() < 1e-15 && (z5[1] + 2.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn arc_beta_pi_contacts() {
        let arc = ExclusionArc::new(Slope::new(5, 3).unwrap()).unwrap();
        assert_eq!(arc.beta_pi_points().len(), 2);
        // Orbit classes collapse to one point.
        let canon: Vec<PillowcasePoint> = arc
            .beta_pi_points()
            .iter()
            .map(|p| canonicalize(*p))
            .collect();
        assert!(distance(&canon[0], &canon[1]) < 1e-15);

        let arc = ExclusionArc::new(Slope::new(2, 1).unwrap()).unwrap();
        assert_eq!(arc.beta_pi_points().len(), 4);

        let arc = ExclusionArc::new(Slope::new(1, 1).unwrap()).unwrap();
        assert_eq!(arc.beta_pi_points().len(), 2);
        // z1 = z2 degenerates; only four live segments remain.
        assert_eq!(arc.segments().len(), 3);
    }

    #[test]
    fn arc_rejects_out_of_range() {
        assert!(matches!(
            ExclusionArc::new(Slope::new(7, 3).unwrap()),
            Err(Error::SlopeOutOfRange { .. })
        ));
    }

    #[test]
    fn tube_membership() {
        let arc = ExclusionArc::new(Slope::new(5, 3).unwrap()).unwrap();
        let tube = Tube::new(arc, 0.1);
        // z1 has β = 0: in U*.
        assert!(tube.contains(&PillowcasePoint::new(-PI, 0.0), true));
        // (0, π) is the vertex z4: in U but not U*.
        let v = PillowcasePoint::new(0.0, PI);
        assert!(tube.contains(&v, false));
        assert!(!tube.contains(&v, true));
    }

    #[test]
    fn shift_alpha_pi_examples() {
        let p = PillowcasePoint::new(0.0, PI).shift_alpha_pi();
        assert!((p.alpha - PI).abs() < 1e-15 && (p.beta - PI).abs() < 1e-15);
        // (π/2, 0) is a fixed point: (3π/2, 0) ≡ (π/2, 0).
        let p = PillowcasePoint::new(PI / 2.0, 0.0);
        let q = p.shift_alpha_pi();
        assert!(distance(&p, &q) < 1e-12);
        // Involution.
        for i in 0..200 {
            let x = PillowcasePoint::new(0.013 * i as f64, -0.027 * i as f64);
            assert!(distance(&x, &x.shift_alpha_pi().shift_alpha_pi()) < 1e-12);
        }
    }

    #[test]
    fn shift_alpha_pi_maps_lines() {
        // Preserves the twisted reducible locus (β unchanged)...
        let on = PillowcasePoint::new(0.9, PI);
        assert!(on.shift_alpha_pi().on_beta_pi(1e-12));
        // ...and carries {α ≡ 0} to {α ≡ π}.
        let l0 = FillingLine::for_slope(Slope::new(1, 0).unwrap(), false);
        for i in 0..20 {
            let pt = PillowcasePoint::new(0.0, -2.9 + 0.3 * i as f64);
            assert!(l0.contains(&pt, 1e-12));
            assert!((pt.shift_alpha_pi().alpha - PI).abs() < 1e-12);
        }
    }

    #[test]
    fn reducible_points_examples() {
        let pts = reducible_points(Slope::new(1, 0).unwrap()).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(distance(&pts[0], &PillowcasePoint::new(0.0, PI)) < 1e-15);

        let pts = reducible_points(Slope::new(2, 1).unwrap()).unwrap();
        assert_eq!(pts.len(), 2);

        // k = 2 is orbit-equal to k = 1 for p = 3.
        let pts = reducible_points(Slope::new(3, 1).unwrap()).unwrap();
        assert_eq!(pts.len(), 2);
        assert!((pts[1].alpha - TAU / 3.0).abs() < 1e-12);
    }
}
