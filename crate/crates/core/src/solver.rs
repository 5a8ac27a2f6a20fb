//! Numerical computation of the irreducible SU(2) representation variety of
//! a knot group, fibered over the meridian angle and projected to the
//! pillowcase.
//!
//! At a fixed meridian angle the relator equations cut out finitely many
//! conjugacy classes; these are found by seeded multi-start Gauss-Newton.
//! Grid points are independent work items (solved in parallel when the
//! `parallel` feature is on, with per-index seeds so results do not depend
//! on scheduling); a sequential predictor-corrector sweep then carries
//! solutions along the grid to fill anything multi-start missed.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::knots::{evaluate_word, KnotPresentation, Word};
use crate::newton::{gauss_newton, NewtonOptions, NewtonOutcome};
use crate::pillowcase::{canonicalize, FillingLine, PillowcasePoint};
use crate::su2::{commuting_angles, rotation_between, Su2};

/// Solver tolerances and search effort.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Number of interior grid points on (0, π).
    pub grid: usize,
    /// Multi-start restarts at anchor grid points (and for `solve_at_alpha`).
    pub restarts: usize,
    pub seed: u64,
    /// Converged points must have relator residual at most this.
    pub tol_rep: f64,
    /// Commutator gap above which a point counts as irreducible.
    pub tol_irr: f64,
    /// Tolerance on peripheral commutativity.
    pub tol_commute: f64,
    /// Every `anchor_every`-th grid point gets the full restart budget;
    /// the rest get a reduced one (continuation fills the gaps).
    pub anchor_every: usize,
    /// Use the rayon thread pool for the grid (no effect without the
    /// `parallel` feature).
    pub parallel: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            grid: 2000,
            restarts: 64,
            seed: 0,
            tol_rep: 1e-9,
            tol_irr: 1e-6,
            tol_commute: 1e-8,
            anchor_every: 16,
            parallel: true,
        }
    }
}

/// A converged representation at one meridian angle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepPoint {
    /// One SU(2) element per generator, in the canonical conjugation gauge
    /// (meridian axis on +z, first off-axis generator in the xz-plane with
    /// positive x).
    pub assignment: Vec<Su2>,
    /// max over relators of ‖evaluate(rel) − 1‖.
    pub relator_residual: f64,
    /// Canonical pillowcase coordinates of (meridian, longitude) holonomy.
    pub boundary: PillowcasePoint,
    pub irreducible: bool,
    /// max over generator pairs of ‖[ρ(g_i), ρ(g_j)]‖.
    pub commutator_gap: f64,
}

/// Sampled pillowcase image of the irreducible representation variety.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PillowcaseImage {
    pub knot: String,
    pub knot_hash: String,
    /// False: honest SU(2) coordinates (abelian locus β ≡ 0). True: shifted
    /// by (0, π) into the twisted convention (reducibles on β ≡ π).
    pub twist: bool,
    pub alpha_grid: usize,
    pub samples: Vec<RepPoint>,
    pub solver_meta: SolverMeta,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverMeta {
    pub seed: u64,
    pub restarts: usize,
    pub tol_rep: f64,
    pub tol_irr: f64,
    pub tol_commute: f64,
}

impl PillowcaseImage {
    /// The same image in the twisted coordinates β ↦ β + π.
    pub fn to_twisted(&self) -> PillowcaseImage {
        if self.twist {
            return self.clone();
        }
        let mut out = self.clone();
        out.twist = true;
        for s in &mut out.samples {
            s.boundary = PillowcasePoint::new(s.boundary.alpha, s.boundary.beta + PI);
        }
        out
    }

    /// The versioned JSON document form (fixed field order).
    pub fn to_doc(&self) -> ImageDoc {
        ImageDoc {
            version: 1,
            knot: self.knot.clone(),
            knot_hash: self.knot_hash.clone(),
            twist: self.twist,
            alpha_grid: self.alpha_grid,
            solver_meta: self.solver_meta.clone(),
            samples: self
                .samples
                .iter()
                .map(|s| SampleDoc {
                    alpha: s.boundary.alpha,
                    beta: s.boundary.beta,
                    residual: s.relator_residual,
                    commutator_gap: s.commutator_gap,
                    generators: s.assignment.iter().map(|q| q.components()).collect(),
                })
                .collect(),
        }
    }
}

/// Serialized image document: metadata block plus flat sample array.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImageDoc {
    pub version: u32,
    pub knot: String,
    pub knot_hash: String,
    pub twist: bool,
    pub alpha_grid: usize,
    pub solver_meta: SolverMeta,
    pub samples: Vec<SampleDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleDoc {
    pub alpha: f64,
    pub beta: f64,
    pub residual: f64,
    pub commutator_gap: f64,
    pub generators: Vec<[f64; 4]>,
}

/// The abelian representations of any knot group kill the null-homologous
/// longitude, so their locus is β ≡ 0 in the untwisted convention.
pub fn abelian_locus(_k: &KnotPresentation) -> FillingLine {
    FillingLine::reducible_locus(false)
}

// ---------------------------------------------------------------------------
// Residual systems
// ---------------------------------------------------------------------------

fn assignment_from_vars(vars: &[f64]) -> Vec<Su2> {
    vars.chunks_exact(4)
        .map(|c| Su2 {
            w: c[0],
            x: c[1],
            y: c[2],
            z: c[3],
        })
        .collect()
}

fn vars_from_assignment(assignment: &[Su2]) -> Vec<f64> {
    assignment.iter().flat_map(|q| q.components()).collect()
}

/// Raw (unnormalized) word product; keeps the residual smooth in the
/// quaternion components.
fn eval_raw(word: &Word, qs: &[Su2]) -> Su2 {
    let mut acc = Su2 {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };
    for &l in &word.letters {
        let g = &qs[l.unsigned_abs() as usize - 1];
        let g = if l > 0 { *g } else { g.inverse() };
        acc = Su2 {
            w: acc.w * g.w - acc.x * g.x - acc.y * g.y - acc.z * g.z,
            x: acc.w * g.x + acc.x * g.w + acc.y * g.z - acc.z * g.y,
            y: acc.w * g.y - acc.x * g.z + acc.y * g.w + acc.z * g.x,
            z: acc.w * g.z + acc.x * g.y - acc.y * g.x + acc.z * g.w,
        };
    }
    acc
}

/// Residual for the fixed-meridian-angle system: unit norms, relator vector
/// parts, and the angle pins (per generator for Wirtinger presentations, on
/// the meridian word otherwise).
fn alpha_pinned_residual(k: &KnotPresentation, alpha: f64, vars: &[f64]) -> Vec<f64> {
    let qs = assignment_from_vars(vars);
    let cos_a = alpha.cos();
    let mut out = Vec::with_capacity(4 * qs.len());
    for q in &qs {
        out.push(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z - 1.0);
    }
    for r in &k.relators {
        let e = eval_raw(r, &qs);
        out.push(e.x);
        out.push(e.y);
        out.push(e.z);
        // Distinguish +1 from −1: penalize only the deficit of w from 1.
        out.push(1.0 - e.w);
    }
    if k.wirtinger {
        for q in &qs {
            out.push(q.w - cos_a);
        }
    } else {
        let m = eval_raw(&k.meridian, &qs);
        out.push(m.w - cos_a);
    }
    out
}

/// Residual for the line-constrained polish: unit norms, relators, and
/// p·α + q·β = target where (α, β) are the measured boundary angles on a
/// fixed branch.
fn line_pinned_residual(
    k: &KnotPresentation,
    line_p: f64,
    line_q: f64,
    target: f64,
    branch_sign: f64,
    vars: &[f64],
) -> Vec<f64> {
    let qs = assignment_from_vars(vars);
    let mut out = Vec::with_capacity(4 * qs.len());
    for q in &qs {
        out.push(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z - 1.0);
    }
    for r in &k.relators {
        let e = eval_raw(r, &qs);
        out.push(e.x);
        out.push(e.y);
        out.push(e.z);
        out.push(1.0 - e.w);
    }
    let (a, b) = measured_boundary(k, &qs);
    out.push(branch_sign * (line_p * a + line_q * b) - target);
    out
}

/// Smooth boundary measurement: α from the meridian (in [0, π]) and β as the
/// signed angle of the longitude about the meridian axis.
fn measured_boundary(k: &KnotPresentation, qs: &[Su2]) -> (f64, f64) {
    let m = eval_raw(&k.meridian, qs);
    let l = eval_raw(&k.longitude, qs);
    let vn = (m.x * m.x + m.y * m.y + m.z * m.z).sqrt();
    let alpha = vn.atan2(m.w);
    if vn < 1e-12 {
        return (alpha, l.angle());
    }
    let n = [m.x / vn, m.y / vn, m.z / vn];
    let proj = l.x * n[0] + l.y * n[1] + l.z * n[2];
    (alpha, proj.atan2(l.w))
}

// ---------------------------------------------------------------------------
// Gauge fixing and deduplication
// ---------------------------------------------------------------------------

/// Conjugates the assignment into the canonical gauge. Returns `None` when
/// every generator axis is collinear with the meridian axis (abelian image).
fn canonical_gauge(k: &KnotPresentation, qs: &[Su2]) -> Option<Vec<Su2>> {
    let m = eval_raw(&k.meridian, qs).normalized();
    let axis = m.axis()?;
    let g1 = rotation_between(axis, [0.0, 0.0, 1.0]);
    let mut out: Vec<Su2> = qs.iter().map(|q| q.conjugated_by(&g1)).collect();
    let off_axis = out.iter().find_map(|q| {
        let r = (q.x * q.x + q.y * q.y).sqrt();
        if r > 1e-8 && !q.is_central(1e-8) {
            Some((q.x, q.y))
        } else {
            None
        }
    });
    let (x, y) = off_axis?;
    let psi = y.atan2(x);
    // Conjugation by (cos(ψ/2), 0, 0, −sin(ψ/2)) rotates azimuths by −ψ.
    let g2 = Su2::new((psi / 2.0).cos(), 0.0, 0.0, -(psi / 2.0).sin());
    for q in &mut out {
        *q = q.conjugated_by(&g2);
    }
    Some(out)
}

fn assignments_close(a: &[Su2], b: &[Su2], tol: f64) -> bool {
    a.iter().zip(b).all(|(p, q)| p.dist(q) <= tol)
}

const DEDUP_TOL: f64 = 1e-6;

// ---------------------------------------------------------------------------
// Point construction
// ---------------------------------------------------------------------------

fn finish_point(k: &KnotPresentation, vars: &[f64], opts: &SolverOptions) -> Option<RepPoint> {
    let qs: Vec<Su2> = assignment_from_vars(vars)
        .iter()
        .map(|q| q.normalized())
        .collect();
    let relator_residual = k
        .relators
        .iter()
        .map(|r| evaluate_word(r, &qs).unwrap().dist(&Su2::IDENTITY))
        .fold(0.0, f64::max);
    if relator_residual > opts.tol_rep {
        return None;
    }
    let gauged = canonical_gauge(k, &qs)?;
    let mut gap = 0.0f64;
    for i in 0..gauged.len() {
        for j in i + 1..gauged.len() {
            gap = gap.max(gauged[i].commutator_norm(&gauged[j]));
        }
    }
    if gap <= opts.tol_irr {
        return None;
    }
    let mu = evaluate_word(&k.meridian, &gauged).unwrap();
    let lam = evaluate_word(&k.longitude, &gauged).unwrap();
    let pair = commuting_angles(&mu, &lam, opts.tol_commute).ok()?;
    Some(RepPoint {
        assignment: gauged,
        relator_residual,
        boundary: canonicalize(pair),
        irreducible: true,
        commutator_gap: gap,
    })
}

fn insert_dedup(points: &mut Vec<RepPoint>, p: RepPoint) {
    if points
        .iter()
        .any(|q| assignments_close(&q.assignment, &p.assignment, DEDUP_TOL))
    {
        return;
    }
    points.push(p);
}

fn sort_points(points: &mut [RepPoint]) {
    points.sort_by(|a, b| {
        a.boundary
            .alpha
            .total_cmp(&b.boundary.alpha)
            .then(a.boundary.beta.total_cmp(&b.boundary.beta))
            .then(a.assignment[0].z.total_cmp(&b.assignment[0].z))
    });
}

// ---------------------------------------------------------------------------
// Multi-start solves
// ---------------------------------------------------------------------------

fn random_unit_axis(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

fn random_start(k: &KnotPresentation, alpha: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let qs: Vec<Su2> = (0..k.n_generators)
        .map(|_| {
            let axis = random_unit_axis(rng);
            let t = if k.wirtinger {
                alpha
            } else {
                rng.gen_range(0.05..PI - 0.05)
            };
            Su2::from_axis_angle(axis, t).unwrap()
        })
        .collect();
    vars_from_assignment(&qs)
}

/// Per-grid-point RNG seed (SplitMix64 step keeps the streams decorrelated).
/// Part of the deterministic grid policy: results must not depend on worker
/// scheduling, so seeds derive from the grid index alone.
pub fn grid_point_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The i-th grid angle: uniform interior points of (0, π).
pub fn grid_alpha(grid: usize, index: usize) -> f64 {
    PI * (index + 1) as f64 / (grid + 1) as f64
}

/// Restart budget at a grid point: anchors get the full budget, the rest a
/// reduced one (continuation fills the gaps).
pub fn grid_restarts(opts: &SolverOptions, index: usize) -> usize {
    if index % opts.anchor_every.max(1) == 0 {
        opts.restarts
    } else {
        (opts.restarts / 8).max(4)
    }
}

/// All irreducible conjugacy classes found at one meridian angle, solved
/// from `restarts` random starts, deduplicated in the canonical gauge and
/// deterministically ordered.
pub fn solve_at_alpha(
    k: &KnotPresentation,
    alpha: f64,
    restarts: usize,
    seed: u64,
    opts: &SolverOptions,
) -> Vec<RepPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let newton = NewtonOptions::default();
    let mut found: Vec<RepPoint> = Vec::new();
    for _ in 0..restarts {
        let mut vars = random_start(k, alpha, &mut rng);
        let outcome = gauss_newton(|v| alpha_pinned_residual(k, alpha, v), &mut vars, &newton);
        if let NewtonOutcome::Converged = outcome {
            if let Some(p) = finish_point(k, &vars, opts) {
                insert_dedup(&mut found, p);
            }
        }
    }
    sort_points(&mut found);
    found
}

/// Newton-corrects a known assignment to a nearby meridian angle.
fn correct_to_alpha(
    k: &KnotPresentation,
    assignment: &[Su2],
    alpha: f64,
    opts: &SolverOptions,
) -> Option<RepPoint> {
    let mut vars = vars_from_assignment(assignment);
    let newton = NewtonOptions {
        max_iters: 25,
        ..NewtonOptions::default()
    };
    match gauss_newton(|v| alpha_pinned_residual(k, alpha, v), &mut vars, &newton) {
        NewtonOutcome::Converged => finish_point(k, &vars, opts),
        NewtonOutcome::Stalled => None,
    }
}

fn grid_alphas(n: usize) -> Vec<f64> {
    (0..n).map(|i| grid_alpha(n, i)).collect()
}

/// Computes the sampled pillowcase image over a uniform grid on (0, π).
///
/// Phase 1 solves every grid point independently (parallel when enabled);
/// phase 2 is a sequential two-direction continuation sweep that corrects
/// each point's solutions onto its neighbors. Output is deterministic for a
/// fixed seed and grid, independent of thread scheduling.
pub fn pillowcase_image(k: &KnotPresentation, opts: &SolverOptions) -> PillowcaseImage {
    let alphas = grid_alphas(opts.grid);
    let solve_one = |i: usize| -> Vec<RepPoint> {
        solve_at_alpha(
            k,
            alphas[i],
            grid_restarts(opts, i),
            grid_point_seed(opts.seed, i),
            opts,
        )
    };

    #[cfg(feature = "parallel")]
    let mut per_alpha: Vec<Vec<RepPoint>> = if opts.parallel {
        use rayon::prelude::*;
        (0..alphas.len()).into_par_iter().map(solve_one).collect()
    } else {
        (0..alphas.len()).map(solve_one).collect()
    };

    #[cfg(not(feature = "parallel"))]
    let mut per_alpha: Vec<Vec<RepPoint>> = (0..alphas.len()).map(solve_one).collect();

    // Continuation sweeps, strictly sequential.
    for i in 1..alphas.len() {
        continue_into(k, &mut per_alpha, i - 1, i, alphas[i], opts);
    }
    for i in (0..alphas.len().saturating_sub(1)).rev() {
        continue_into(k, &mut per_alpha, i + 1, i, alphas[i], opts);
    }

    let mut samples: Vec<RepPoint> = per_alpha.into_iter().flatten().collect();
    sort_points(&mut samples);

    PillowcaseImage {
        knot: k.name.clone(),
        knot_hash: k.hash(),
        twist: false,
        alpha_grid: opts.grid,
        samples,
        solver_meta: SolverMeta {
            seed: opts.seed,
            restarts: opts.restarts,
            tol_rep: opts.tol_rep,
            tol_irr: opts.tol_irr,
            tol_commute: opts.tol_commute,
        },
    }
}

fn continue_into(
    k: &KnotPresentation,
    per_alpha: &mut [Vec<RepPoint>],
    from: usize,
    to: usize,
    alpha_to: f64,
    opts: &SolverOptions,
) {
    if per_alpha[from].is_empty() {
        return;
    }
    let predictors: Vec<Vec<Su2>> = per_alpha[from]
        .iter()
        .map(|p| p.assignment.clone())
        .collect();
    for pred in predictors {
        if let Some(p) = correct_to_alpha(k, &pred, alpha_to, opts) {
            insert_dedup(&mut per_alpha[to], p);
        }
    }
    sort_points(&mut per_alpha[to]);
}

// ---------------------------------------------------------------------------
// Line intersection
// ---------------------------------------------------------------------------

/// Image samples on (or near) a filling line, polished by a constrained
/// Newton solve until both the relators and the line equation hold to
/// `tol_polish` (1e−9). `tol_seed` is the pre-filter width for candidates.
pub fn intersect_with_line(
    k: &KnotPresentation,
    img: &PillowcaseImage,
    line: &FillingLine,
    tol_seed: f64,
    opts: &SolverOptions,
) -> Result<Vec<RepPoint>> {
    if img.twist != line.twist {
        return Err(Error::ConventionMismatch);
    }
    if img.knot_hash != k.hash() {
        return Err(Error::PresentationMismatch);
    }
    let tol_polish = 1e-9;
    let mut out: Vec<RepPoint> = Vec::new();

    // In twisted images the stored β is the untwisted measurement plus π;
    // polishing operates on the honest holonomy angles, so shift the line
    // constant back: p·α + q·(β_untw + π) = c  ⇔  p·α + q·β_untw = c − qπ.
    let c_untw = if img.twist {
        line.c - line.q as f64 * PI
    } else {
        line.c
    };

    let newton = NewtonOptions {
        max_iters: 40,
        ..NewtonOptions::default()
    };
    for sample in &img.samples {
        if line.residual(&sample.boundary) > tol_seed {
            continue;
        }
        // Fix the branch: sign and 2π multiple realized at the seed.
        let (a0, b0) = measured_boundary(k, &sample.assignment);
        let v0 = line.p as f64 * a0 + line.q as f64 * b0;
        let mut best = (f64::INFINITY, 1.0, 0.0);
        for sign in [1.0, -1.0] {
            let k2pi = ((sign * v0 - c_untw) / (2.0 * PI)).round();
            let target = c_untw + 2.0 * PI * k2pi;
            let miss = (sign * v0 - target).abs();
            if miss < best.0 {
                best = (miss, sign, target);
            }
        }
        let (_, branch_sign, target) = best;

        let mut vars = vars_from_assignment(&sample.assignment);
        let outcome = gauss_newton(
            |v| line_pinned_residual(k, line.p as f64, line.q as f64, target, branch_sign, v),
            &mut vars,
            &newton,
        );
        if let NewtonOutcome::Converged = outcome {
            if let Some(mut p) = finish_point(k, &vars, opts) {
                if img.twist {
                    p.boundary = PillowcasePoint::new(p.boundary.alpha, p.boundary.beta + PI);
                }
                if line.residual(&p.boundary) <= tol_polish && p.relator_residual <= tol_polish {
                    insert_dedup(&mut out, p);
                }
            }
        }
    }
    sort_points(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::{parse_braid, torus_knot};
    use crate::pillowcase::distance;

    fn quick_opts(seed: u64) -> SolverOptions {
        SolverOptions {
            grid: 60,
            restarts: 24,
            seed,
            parallel: false,
            ..SolverOptions::default()
        }
    }

    #[test]
    fn unknot_has_empty_image() {
        let k = parse_braid("1").unwrap();
        let pts = solve_at_alpha(&k, PI / 2.0, 32, 7, &quick_opts(7));
        assert!(pts.is_empty());
        let img = pillowcase_image(&k, &quick_opts(7));
        assert!(img.samples.is_empty());
    }

    #[test]
    fn trefoil_single_class_at_half_pi() {
        let k = torus_knot(2, 3).unwrap();
        let pts = solve_at_alpha(&k, PI / 2.0, 48, 3, &quick_opts(3));
        assert_eq!(pts.len(), 1, "expected one conjugacy class");
        let p = &pts[0];
        assert!(p.relator_residual <= 1e-10);
        assert!(p.commutator_gap > 1e-3);
        // β = π − 6α at α = π/2 gives β ≡ 0 on the pillowcase.
        let expect = PillowcasePoint::new(PI / 2.0, PI - 6.0 * (PI / 2.0));
        assert!(distance(&p.boundary, &expect) < 1e-8);
    }

    #[test]
    fn trefoil_empty_outside_trace_window() {
        let k = torus_knot(2, 3).unwrap();
        let pts = solve_at_alpha(&k, PI / 12.0, 48, 5, &quick_opts(5));
        assert!(pts.is_empty(), "no irreducibles below α = π/6");
    }

    #[test]
    fn trefoil_image_lies_on_line() {
        let k = torus_knot(2, 3).unwrap();
        let img = pillowcase_image(&k, &quick_opts(11));
        assert!(!img.samples.is_empty());
        for s in &img.samples {
            let a = s.boundary.alpha;
            let expect = PillowcasePoint::new(a, PI - 6.0 * a);
            assert!(
                distance(&s.boundary, &expect) < 1e-7,
                "off the line at α = {a}: {:?}",
                s.boundary
            );
            assert!(a > PI / 6.0 - 0.1 && a < 5.0 * PI / 6.0 + 0.1);
        }
    }

    #[test]
    fn determinism_same_seed() {
        let k = torus_knot(2, 3).unwrap();
        let a = pillowcase_image(&k, &quick_opts(9));
        let b = pillowcase_image(&k, &quick_opts(9));
        assert_eq!(a.samples.len(), b.samples.len());
        for (x, y) in a.samples.iter().zip(&b.samples) {
            assert_eq!(x.boundary, y.boundary);
            for (p, q) in x.assignment.iter().zip(&y.assignment) {
                assert_eq!(p.components(), q.components());
            }
        }
    }

    #[test]
    fn gauge_fixing_is_sound() {
        // Re-solving from random conjugates of a converged assignment lands
        // on the same canonical representative.
        let k = torus_knot(2, 3).unwrap();
        let opts = quick_opts(1);
        let pts = solve_at_alpha(&k, 1.3, 32, 1, &opts);
        assert!(!pts.is_empty());
        let base = &pts[0];
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let g = Su2::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let conj: Vec<Su2> = base
                .assignment
                .iter()
                .map(|q| q.conjugated_by(&g))
                .collect();
            let gauged = canonical_gauge(&k, &conj).unwrap();
            assert!(
                assignments_close(&gauged, &base.assignment, 1e-9),
                "gauge not recovered"
            );
        }
    }

    #[test]
    fn intersect_trefoil_with_unit_slope_line() {
        // Image line β = π − 6α meets α + β ≡ 0 at α = π/5 and 3π/5.
        let k = torus_knot(2, 3).unwrap();
        let opts = SolverOptions {
            grid: 200,
            restarts: 24,
            seed: 4,
            parallel: false,
            ..SolverOptions::default()
        };
        let img = pillowcase_image(&k, &opts);
        let line = FillingLine::new(1, 1, 0.0, false);
        let hits = intersect_with_line(&k, &img, &line, 0.2, &opts).unwrap();
        assert!(!hits.is_empty());
        let alphas: Vec<f64> = hits.iter().map(|h| h.boundary.alpha).collect();
        assert!(
            alphas.iter().any(|a| (a - PI / 5.0).abs() < 1e-7),
            "missing α = π/5 in {alphas:?}"
        );
        for h in &hits {
            assert!(line.residual(&h.boundary) <= 1e-9);
            assert!(h.relator_residual <= 1e-9);
        }
    }

    #[test]
    fn intersect_respects_convention() {
        let k = torus_knot(2, 3).unwrap();
        let opts = quick_opts(2);
        let img = pillowcase_image(&k, &opts);
        let twisted_line = FillingLine::reducible_locus(true);
        assert!(matches!(
            intersect_with_line(&k, &img, &twisted_line, 0.1, &opts),
            Err(Error::ConventionMismatch)
        ));
    }
}
