//! End-to-end Dehn-surgery certification: exhibit an irreducible SU(2)
//! representation of the filled manifold's fundamental group (holonomy of
//! the filling curve = identity, i.e. pα + qβ ≡ 0 mod 2π in the untwisted
//! convention), or report that the seeded search found none. Certificates
//! store the representation itself so the claim can be re-verified from the
//! quaternions alone.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::knots::{evaluate_word, KnotPresentation};
use crate::perturb::{construct_g, perturbed_variety_is_empty, EmptinessReport, PerturbationFn};
use crate::pillowcase::{canonicalize, distance, ExclusionArc, FillingLine, Slope, Tube};
use crate::solver::{intersect_with_line, pillowcase_image, RepPoint, SolverOptions};
use crate::su2::{commuting_angles, Su2};

pub const CERT_VERSION: u32 = 1;

/// Residual thresholds a Found certificate must meet.
pub const CERT_TOL_RESIDUAL: f64 = 1e-9;
pub const CERT_TOL_GAP: f64 = 1e-6;
/// Certificates are rejected within this α-distance of the open interval's
/// ends, where arcs can degenerate into the abelian locus.
const ENDPOINT_MARGIN: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Found,
    NotFound,
    OutOfScope,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Residuals {
    /// max over relators of ‖evaluate(rel) − 1‖.
    pub relator: f64,
    /// |pα + qβ| distance to the filling line (mod 2π, mod orbit).
    pub line: f64,
    /// Commutator gap (irreducibility margin), must exceed 1e−6.
    pub commutator: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertRep {
    /// One unit quaternion (w, x, y, z) per generator, canonical gauge.
    pub quaternions: Vec<[f64; 4]>,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertMeta {
    pub seed: u64,
    pub grid: usize,
    pub restarts: usize,
    pub tol_rep: f64,
    pub tol_irr: f64,
    pub tol_commute: f64,
    /// |r| ≤ 2, the range in which a non-cyclic representation is expected
    /// for any non-trivial knot.
    pub in_theorem_range: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub knot: KnotRef,
    /// Signed surgery coefficient p/q as supplied (negative p means the
    /// search ran on the mirror with the coefficient negated).
    pub slope: SignedSlope,
    pub twist: bool,
    pub verdict: Verdict,
    pub rep: Option<CertRep>,
    pub residuals: Option<Residuals>,
    pub meta: CertMeta,
    pub notes: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KnotRef {
    pub name: String,
    pub hash: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedSlope {
    pub p: i64,
    pub q: i64,
}

impl SignedSlope {
    /// Lowest terms with q ≥ 0; sign carried by p.
    pub fn new(p: i64, q: i64) -> Result<SignedSlope> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidSlope { p, q });
        }
        let g = {
            let (mut a, mut b) = (p.abs(), q.abs());
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a
        };
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        Ok(SignedSlope { p, q })
    }
}

fn meta_for(opts: &SolverOptions, in_range: bool) -> CertMeta {
    CertMeta {
        seed: opts.seed,
        grid: opts.grid,
        restarts: opts.restarts,
        tol_rep: opts.tol_rep,
        tol_irr: opts.tol_irr,
        tol_commute: opts.tol_commute,
        in_theorem_range: in_range,
    }
}

/// Searches for an irreducible SU(2) representation of the p/q-filled
/// manifold. Negative coefficients run on the mirror knot with |p|/q.
/// `NotFound` reports an unsuccessful sampling-based search, not a proof of
/// nonexistence.
pub fn certify_surgery(
    k: &KnotPresentation,
    p: i64,
    q: i64,
    opts: &SolverOptions,
) -> Result<Certificate> {
    let slope = SignedSlope::new(p, q)?;
    let knot = KnotRef {
        name: k.name.clone(),
        hash: k.hash(),
    };
    let in_range = slope.p.abs() <= 2 * slope.q;

    if slope.q == 0 {
        return Ok(Certificate {
            version: CERT_VERSION,
            knot,
            slope,
            twist: false,
            verdict: Verdict::OutOfScope,
            rep: None,
            residuals: None,
            meta: meta_for(opts, false),
            notes: "meridian filling (1/0) is reserved for hypothesis checks".into(),
        });
    }

    let mirrored = slope.p < 0;
    let search_knot;
    let kk: &KnotPresentation = if mirrored {
        search_knot = k.mirror();
        &search_knot
    } else {
        k
    };
    let (sp, sq) = (slope.p.abs(), slope.q);

    let img = pillowcase_image(kk, opts);
    let line = FillingLine::new(sp, sq, 0.0, false);
    let hits = intersect_with_line(kk, &img, &line, 0.1, opts)?;
    let hit = hits.iter().find(|h| {
        h.boundary.alpha > ENDPOINT_MARGIN
            && h.boundary.alpha < PI - ENDPOINT_MARGIN
            && h.commutator_gap > CERT_TOL_GAP
    });

    let mut notes = Vec::new();
    if mirrored {
        notes.push(format!(
            "negative coefficient: searched the mirror at {}/{}",
            sp, sq
        ));
    }
    if slope.p == 0 {
        notes.push("r = 0 uses the untwisted longitude line; independent numerical check".into());
    }
    notes.push(if in_range {
        "in theorem range |r| <= 2".into()
    } else {
        "outside theorem range |r| > 2; attempted anyway".into()
    });

    match hit {
        Some(h) => Ok(Certificate {
            version: CERT_VERSION,
            knot,
            slope,
            twist: false,
            verdict: Verdict::Found,
            rep: Some(CertRep {
                quaternions: h.assignment.iter().map(|q| q.components()).collect(),
                alpha: h.boundary.alpha,
                beta: h.boundary.beta,
            }),
            residuals: Some(Residuals {
                relator: h.relator_residual,
                line: line.residual(&h.boundary),
                commutator: h.commutator_gap,
            }),
            meta: meta_for(opts, in_range),
            notes: notes.join("; "),
        }),
        None => {
            notes.push(format!(
                "search effort: grid {}, restarts {}, seed {}",
                opts.grid, opts.restarts, opts.seed
            ));
            Ok(Certificate {
                version: CERT_VERSION,
                knot,
                slope,
                twist: false,
                verdict: Verdict::NotFound,
                rep: None,
                residuals: None,
                meta: meta_for(opts, in_range),
                notes: notes.join("; "),
            })
        }
    }
}

/// Recomputes every residual of a Found certificate from the stored
/// quaternions alone; true iff all thresholds hold. Pure function of
/// (certificate, presentation).
pub fn verify_certificate(cert: &Certificate, k: &KnotPresentation) -> Result<bool> {
    if cert.knot.hash != k.hash() {
        return Err(Error::PresentationMismatch);
    }
    let rep = match &cert.rep {
        Some(r) => r,
        None => return Ok(false),
    };
    let mirrored = cert.slope.p < 0;
    let search_knot;
    let kk: &KnotPresentation = if mirrored {
        search_knot = k.mirror();
        &search_knot
    } else {
        k
    };
    let (sp, sq) = (cert.slope.p.abs(), cert.slope.q);

    if rep.quaternions.len() != kk.n_generators {
        return Ok(false);
    }
    let qs: Vec<Su2> = rep
        .quaternions
        .iter()
        .map(|c| Su2 {
            w: c[0],
            x: c[1],
            y: c[2],
            z: c[3],
        })
        .collect();
    // Unit norms must hold as stored; no renormalization slack.
    if qs.iter().any(|q| (q.norm() - 1.0).abs() > 1e-9) {
        return Ok(false);
    }
    let relator = kk
        .relators
        .iter()
        .map(|r| evaluate_word(r, &qs).unwrap().dist(&Su2::IDENTITY))
        .fold(0.0, f64::max);
    if relator > CERT_TOL_RESIDUAL {
        return Ok(false);
    }
    let mut gap = 0.0f64;
    for i in 0..qs.len() {
        for j in i + 1..qs.len() {
            gap = gap.max(qs[i].commutator_norm(&qs[j]));
        }
    }
    if gap <= CERT_TOL_GAP {
        return Ok(false);
    }
    let mu = evaluate_word(&kk.meridian, &qs).unwrap();
    let lam = evaluate_word(&kk.longitude, &qs).unwrap();
    let pair = match commuting_angles(&mu, &lam, 1e-8) {
        Ok(p) => p,
        Err(_) => return Ok(false),
    };
    let boundary = canonicalize(pair);
    let stored = crate::pillowcase::PillowcasePoint::new(rep.alpha, rep.beta);
    if distance(&boundary, &stored) > 1e-8 {
        return Ok(false);
    }
    let line = FillingLine::new(sp, sq, 0.0, false);
    if line.residual(&boundary) > CERT_TOL_RESIDUAL {
        return Ok(false);
    }
    Ok(true)
}

/// Report of the emptiness pipeline for a filling slope with 0 < p/q ≤ 2.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropositionReport {
    pub version: u32,
    pub knot: KnotRef,
    pub slope: Slope,
    pub epsilon: f64,
    /// True when no irreducible lies on the meridian-filling line or on
    /// either filling line of the slope.
    pub hypothesis_holds: bool,
    pub meridian_line_hits: usize,
    pub slope_line_hits: [usize; 2],
    /// An irreducible representation witnessing hypothesis failure.
    pub witness: Option<RepPoint>,
    pub perturbation: Option<PerturbationFn>,
    pub emptiness: Option<EmptinessReport>,
    /// p/q = 2: the exclusion arc touches β = ±π in four points instead of
    /// two; flagged rather than silently handled.
    pub boundary_case: bool,
    pub notes: String,
}

/// Runs the constructive emptiness pipeline: checks the no-noncyclic
/// hypothesis numerically on the meridian filling and on both filling lines
/// of the slope (twisted picture), and if it holds builds the exclusion
/// arc, the tube, the perturbation curve g, and certifies that the graph
/// β = −g(α) misses the image and the reducible locus.
pub fn proposition_pipeline(
    k: &KnotPresentation,
    slope: Slope,
    epsilon: f64,
    opts: &SolverOptions,
) -> Result<PropositionReport> {
    slope.check_arc_range()?;
    let knot = KnotRef {
        name: k.name.clone(),
        hash: k.hash(),
    };

    let img = pillowcase_image(k, opts).to_twisted();
    // Twisted-convention lines: α ≡ 0 for the meridian filling, and
    // pα + qβ ≡ 0 and ≡ qπ for the slope filling.
    let meridian_line = FillingLine::new(1, 0, 0.0, true);
    let slope_lines = [
        FillingLine::new(slope.p, slope.q, 0.0, true),
        FillingLine::new(slope.p, slope.q, slope.q as f64 * PI, true),
    ];

    let hits_a = intersect_with_line(k, &img, &meridian_line, 0.1, opts)?;
    let hits_0 = intersect_with_line(k, &img, &slope_lines[0], 0.1, opts)?;
    let hits_pi = intersect_with_line(k, &img, &slope_lines[1], 0.1, opts)?;

    let boundary_case = slope.p == 2 * slope.q;
    let witness = hits_0
        .first()
        .or_else(|| hits_pi.first())
        .or_else(|| hits_a.first())
        .cloned();
    let hypothesis_holds = witness.is_none();

    if !hypothesis_holds {
        return Ok(PropositionReport {
            version: CERT_VERSION,
            knot,
            slope,
            epsilon,
            hypothesis_holds,
            meridian_line_hits: hits_a.len(),
            slope_line_hits: [hits_0.len(), hits_pi.len()],
            witness,
            perturbation: None,
            emptiness: None,
            boundary_case,
            notes: "hypothesis fails: an irreducible representation survives the filling lines"
                .into(),
        });
    }

    let arc = ExclusionArc::new(slope)?;
    let tube = Tube::new(arc, epsilon);
    let g = construct_g(&tube)?;
    let reducibles = [FillingLine::reducible_locus(true)];
    let emptiness = perturbed_variety_is_empty(&img, &reducibles, &g, 1e-6)?;

    let mut notes = vec![format!(
        "graph clears beta = ±pi by at least {:.6} (required {:.6})",
        g.certification.clearance_margin + g.certification.required_clearance,
        g.certification.required_clearance
    )];
    if boundary_case {
        notes.push("boundary case p/q = 2: arc touches beta = ±pi in four points".into());
    }

    Ok(PropositionReport {
        version: CERT_VERSION,
        knot,
        slope,
        epsilon,
        hypothesis_holds,
        meridian_line_hits: hits_a.len(),
        slope_line_hits: [hits_0.len(), hits_pi.len()],
        witness: None,
        perturbation: Some(g),
        emptiness: Some(emptiness),
        boundary_case,
        notes: notes.join("; "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::{parse_braid, torus_knot};

    fn opts(seed: u64) -> SolverOptions {
        SolverOptions {
            grid: 300,
            restarts: 24,
            seed,
            parallel: false,
            ..SolverOptions::default()
        }
    }

    #[test]
    fn trefoil_plus_one_found_at_pi_over_five() {
        let k = torus_knot(2, 3).unwrap();
        let cert = certify_surgery(&k, 1, 1, &opts(7)).unwrap();
        assert_eq!(cert.verdict, Verdict::Found);
        let rep = cert.rep.as_ref().unwrap();
        assert!((rep.alpha - PI / 5.0).abs() < 1e-8, "alpha = {}", rep.alpha);
        let res = cert.residuals.as_ref().unwrap();
        assert!(res.relator <= 1e-9 && res.line <= 1e-9 && res.commutator > 1e-6);
        assert!(verify_certificate(&cert, &k).unwrap());
    }

    #[test]
    fn trefoil_plus_five_not_found() {
        let k = torus_knot(2, 3).unwrap();
        let cert = certify_surgery(&k, 5, 1, &opts(7)).unwrap();
        assert_eq!(cert.verdict, Verdict::NotFound);
    }

    #[test]
    fn unknot_never_found() {
        let k = parse_braid("1").unwrap();
        for (p, q) in [(1, 1), (2, 1), (1, 2)] {
            let cert = certify_surgery(&k, p, q, &opts(3)).unwrap();
            assert_eq!(cert.verdict, Verdict::NotFound, "r = {p}/{q}");
        }
    }

    #[test]
    fn meridian_slope_out_of_scope() {
        let k = torus_knot(2, 3).unwrap();
        let cert = certify_surgery(&k, 1, 0, &opts(1)).unwrap();
        assert_eq!(cert.verdict, Verdict::OutOfScope);
    }

    #[test]
    fn tampered_certificate_fails() {
        let k = torus_knot(2, 3).unwrap();
        let mut cert = certify_surgery(&k, 1, 1, &opts(9)).unwrap();
        assert!(verify_certificate(&cert, &k).unwrap());
        if let Some(rep) = cert.rep.as_mut() {
            rep.quaternions[0][1] += 1e-3;
        }
        assert!(!verify_certificate(&cert, &k).unwrap());
        // Replaying against a different knot is a hash mismatch.
        let other = parse_braid("1 -2 1 -2").unwrap();
        assert!(matches!(
            verify_certificate(&cert, &other),
            Err(Error::PresentationMismatch)
        ));
    }

    #[test]
    fn unknot_pipeline_certifies_emptiness() {
        let k = parse_braid("1").unwrap();
        let report = proposition_pipeline(&k, Slope::new(1, 1).unwrap(), 0.15, &opts(5)).unwrap();
        assert!(report.hypothesis_holds);
        let emptiness = report.emptiness.as_ref().unwrap();
        assert!(emptiness.empty);
        assert!(report.perturbation.is_some());
    }

    #[test]
    fn trefoil_pipeline_halts_with_witness() {
        let k = torus_knot(2, 3).unwrap();
        let report = proposition_pipeline(&k, Slope::new(1, 1).unwrap(), 0.15, &opts(5)).unwrap();
        assert!(!report.hypothesis_holds);
        assert!(report.witness.is_some());
        assert!(report.perturbation.is_none());
    }

    #[test]
    fn mirror_coherence_of_verdicts() {
        // certify(k, r) and certify(mirror(k), -r) must agree; the mirror of
        // the mirror is the original presentation.
        let small = SolverOptions {
            grid: 200,
            restarts: 24,
            seed: 11,
            ..SolverOptions::default()
        };
        for k in [torus_knot(2, 3).unwrap(), parse_braid("1 -2 1 -2").unwrap()] {
            let m = k.mirror();
            for (p, q) in [(1i64, 1i64), (-1, 1), (1, 2), (-1, 2), (2, 1), (-2, 1)] {
                let a = certify_surgery(&k, p, q, &small).unwrap();
                let b = certify_surgery(&m, -p, q, &small).unwrap();
                assert_eq!(a.verdict, b.verdict, "{} at {p}/{q}", k.name);
            }
        }
    }

    #[test]
    fn proposition_consistency_with_certify() {
        // Certified emptiness implies the surgery searches at the relevant
        // slopes come back empty-handed.
        let o = opts(6);
        let k = parse_braid("1").unwrap();
        let report = proposition_pipeline(&k, Slope::new(1, 1).unwrap(), 0.15, &o).unwrap();
        assert!(report.hypothesis_holds && report.emptiness.unwrap().empty);
        let cert = certify_surgery(&k, 1, 1, &o).unwrap();
        assert_eq!(cert.verdict, Verdict::NotFound);
    }

    #[test]
    fn out_of_range_slope_rejected() {
        let k = parse_braid("1").unwrap();
        assert!(matches!(
            proposition_pipeline(&k, Slope::new(5, 2).unwrap(), 0.1, &opts(1)),
            Err(Error::SlopeOutOfRange { .. })
        ));
    }
}
