//! Construction of the holonomy-perturbation curve: a smooth odd
//! 2π-periodic g whose graph β = −g(α) threads the starred tube around the
//! exclusion arc, the induced class function (f' = g), and the emptiness
//! decision for the perturbed representation variety via the solid-torus
//! correspondence β = −f'(α).

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::pillowcase::{wrap_angle, FillingLine, PillowcasePoint, Tube};
use crate::solver::PillowcaseImage;
use crate::su2::ClassFunction;

/// A finite sine series g together with its target tube and certification
/// data for the containment of the graph of −g in the starred tube.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PerturbationFn {
    pub degree: usize,
    /// Sine coefficients of g; being a sine series makes g odd, 2π-periodic
    /// and g(π) = 0 exactly, matching the graph endpoints.
    pub coefficients: Vec<f64>,
    /// Σ |c_k|, bounding |g|.
    pub sup_norm: f64,
    /// Σ k |c_k|, bounding |g'|; used in the Lipschitz certification.
    pub derivative_bound: f64,
    pub target_tube: TubeSpec,
    pub certification: Certification,
}

/// Slope and radius of the tube a perturbation was built for.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TubeSpec {
    pub p: i64,
    pub q: i64,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certification {
    /// Sample count of the containment sweep.
    pub samples: usize,
    /// Worst slack of the tube-containment inequality (≥ 0 when certified).
    pub tube_margin: f64,
    /// Worst slack of the β = ±π clearance inequality (≥ 0 when certified).
    pub clearance_margin: f64,
    /// Required clearance from β = ±π (ε/4).
    pub required_clearance: f64,
}

impl PerturbationFn {
    pub fn g_at(&self, alpha: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * ((i + 1) as f64 * alpha).sin())
            .sum()
    }
}

/// The class function induced by g: the unique (up to constant) φ with
/// f' = g under the eigenvalue-angle correspondence.
pub fn phi_from_g(g: &PerturbationFn) -> ClassFunction {
    ClassFunction::from_sine_coeffs(&g.coefficients)
}

const CERT_SAMPLES: usize = 100_000;
const MAX_DEGREE: usize = 256;

/// Builds g for the given tube: the target path follows the exclusion arc
/// with the vertical segments replaced by steep ramps of width
/// δ = min(ε/2, 0.01π) and the β-range clamped to ±(π − ε/4); corners are
/// mollified and the result is least-squares fitted by a sine series whose
/// degree doubles until the sampled-plus-Lipschitz certification passes.
pub fn construct_g(tube: &Tube) -> Result<PerturbationFn> {
    if tube.epsilon <= 0.0 || tube.epsilon.is_nan() {
        return Err(Error::Infeasible("tube radius must be positive".into()));
    }
    tube.arc.slope.check_arc_range()?;
    let eps = tube.epsilon;
    let delta = (eps / 2.0).min(0.01 * PI);
    let clearance = eps / 4.0;
    if clearance >= PI {
        return Err(Error::Infeasible(
            "tube is so wide the clearance band swallows the strip".into(),
        ));
    }

    let ratio = tube.arc.slope.ratio();
    // Design the path to clear β = ±π by 1.5× the certified clearance; the
    // extra half is the budget for fit truncation and sampling slack. The
    // capped portion stays within 1.5·clearance of the shoulder lines, well
    // inside the tube.
    let cap = PI - 1.5 * clearance;
    // Piecewise-linear single-valued target for −g on [0, π].
    let core = |a: f64| (PI - ratio * a).clamp(-cap, cap);
    let target = move |a: f64| -> f64 {
        if a <= 0.0 {
            0.0
        } else if a < delta {
            let end = core(delta);
            end * a / delta
        } else if a <= PI - delta {
            core(a)
        } else if a < PI {
            let start = core(PI - delta);
            start * (PI - a) / delta
        } else {
            0.0
        }
    };
    // Mollify with two moving-average passes (triangular kernel) so the sine
    // coefficients decay like k^{-4}. The corner displacement this causes
    // points along the steep ramps, which hug the vertical arc segments, so
    // containment is unaffected.
    let m = 16384usize;
    let h = PI / m as f64;
    let window = ((delta / 2.0) / h).round().max(1.0) as i64;
    let raw: Vec<f64> = (0..=m).map(|i| target(i as f64 * h)).collect();
    let smooth_pass = |data: &[f64]| -> Vec<f64> {
        let odd_sample = |idx: i64| -> f64 {
            // Odd, 2π-periodic extension of the tabulated half-period.
            let period = 2 * m as i64;
            let mut j = idx.rem_euclid(period);
            if j <= m as i64 {
                data[j as usize]
            } else {
                j = period - j;
                -data[j as usize]
            }
        };
        (0..=m)
            .map(|i| {
                let mut acc = 0.0;
                for d in -window..=window {
                    acc += odd_sample(i as i64 + d);
                }
                acc / (2 * window + 1) as f64
            })
            .collect()
    };
    let smooth = smooth_pass(&smooth_pass(&raw));

    let mut degree = 32usize;
    loop {
        // Sine coefficients of the smoothed target by composite trapezoid
        // (endpoints vanish for sin(k·)).
        let coeffs: Vec<f64> = (1..=degree)
            .map(|k| {
                let mut acc = 0.0;
                for (i, &v) in smooth.iter().enumerate().take(m).skip(1) {
                    acc += v * (k as f64 * i as f64 * h).sin();
                }
                2.0 * acc * h / PI
            })
            .collect();
        // g = −target fit: the graph of −g is the target path.
        let g_coeffs: Vec<f64> = coeffs.iter().map(|c| -c).collect();
        let g = ClassFunction::from_sine_coeffs(&g_coeffs);
        let candidate = PerturbationFn {
            degree,
            sup_norm: g.sup_norm_bound(),
            derivative_bound: g.derivative_bound(),
            target_tube: TubeSpec {
                p: tube.arc.slope.p,
                q: tube.arc.slope.q,
                epsilon: tube.epsilon,
            },
            certification: Certification {
                samples: 0,
                tube_margin: 0.0,
                clearance_margin: 0.0,
                required_clearance: clearance,
            },
            coefficients: g_coeffs,
        };
        match certify_graph(&candidate, tube, clearance, CERT_SAMPLES) {
            Ok(cert) => {
                let mut out = candidate;
                out.certification = cert;
                return Ok(out);
            }
            Err(_) if degree < MAX_DEGREE => {
                degree *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Sampling-plus-Lipschitz certificate that the graph of −g lies in U* with
/// clearance `clearance` from β = ±π. The inter-sample slack uses the bound
/// √(1 + B²)·h/2 on how far the graph moves between samples (B = Σ k|c_k|).
pub fn certify_graph(
    g: &PerturbationFn,
    tube: &Tube,
    clearance: f64,
    samples: usize,
) -> Result<Certification> {
    let h = 2.0 * PI / samples as f64;
    let lip = (1.0 + g.derivative_bound * g.derivative_bound).sqrt();
    let tube_slack = lip * h / 2.0;
    let beta_slack = g.derivative_bound * h / 2.0;

    let mut tube_margin = f64::INFINITY;
    let mut clearance_margin = f64::INFINITY;
    for i in 0..=samples {
        let a = -PI + i as f64 * h;
        let b = -g.g_at(a);
        let pt = PillowcasePoint::new(a, b);
        let dist = tube.arc.distance_to(&pt);
        let tm = tube.epsilon - tube_slack - dist;
        if tm < tube_margin {
            tube_margin = tm;
        }
        let clear = (b.abs() - PI).abs();
        let cm = clear - beta_slack - clearance;
        if cm < clearance_margin {
            clearance_margin = cm;
        }
        if tm < 0.0 {
            return Err(Error::Infeasible(format!(
                "graph leaves the tube near α = {a:.6} (distance {dist:.3e} vs ε = {:.3e})",
                tube.epsilon
            )));
        }
        if cm < 0.0 {
            return Err(Error::Infeasible(format!(
                "graph comes within {clear:.3e} of β = ±π near α = {a:.6}, below the required {clearance:.3e}"
            )));
        }
    }
    Ok(Certification {
        samples,
        tube_margin,
        clearance_margin,
        required_clearance: clearance,
    })
}

/// Largest ε ≤ `upper` whose tube admits a certified curve, found by
/// bisection. Returns the certified curve alongside.
pub fn largest_certified_epsilon(
    tube_of: impl Fn(f64) -> Tube,
    lower: f64,
    upper: f64,
    iters: usize,
) -> Option<(f64, PerturbationFn)> {
    let mut lo = lower;
    let mut hi = upper;
    let mut best: Option<(f64, PerturbationFn)> = None;
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        match construct_g(&tube_of(mid)) {
            Ok(g) => {
                best = Some((mid, g));
                lo = mid;
            }
            Err(_) => hi = mid,
        }
    }
    best
}

/// Outcome of the emptiness decision: either empty, or a witness point where
/// the graph meets the image or a reducible line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmptinessReport {
    pub empty: bool,
    pub witness: Option<Witness>,
    /// Smallest graph residual seen over all image samples.
    pub min_image_residual: f64,
    /// Smallest graph residual seen along the reducible lines.
    pub min_line_residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    /// Raw coordinates of the offending point.
    pub raw: [f64; 2],
    /// Canonical pillowcase coordinates.
    pub canonical: PillowcasePoint,
    pub source: WitnessSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessSource {
    ImageSample,
    ReducibleLine,
}

/// Decides whether the perturbed variety is empty: no image sample and no
/// point of a reducible line may satisfy β ≡ −g(α) within `tol` (mod the
/// orbit). Image and lines must share the image's twist convention.
pub fn perturbed_variety_is_empty(
    img: &PillowcaseImage,
    reducibles: &[FillingLine],
    g: &PerturbationFn,
    tol: f64,
) -> Result<EmptinessReport> {
    for line in reducibles {
        if line.twist != img.twist {
            return Err(Error::ConventionMismatch);
        }
    }

    let graph_residual = |alpha: f64, beta: f64| -> f64 {
        // The graph set is symmetric, so one wrapped comparison covers the
        // whole orbit of (α, β).
        wrap_angle(beta + g.g_at(alpha)).abs()
    };

    let mut min_image = f64::INFINITY;
    let mut witness: Option<Witness> = None;
    for s in &img.samples {
        let r = graph_residual(s.boundary.alpha, s.boundary.beta);
        if r < min_image {
            min_image = r;
        }
        if r <= tol && witness.is_none() {
            witness = Some(Witness {
                raw: [s.boundary.alpha, s.boundary.beta],
                canonical: s.boundary,
                source: WitnessSource::ImageSample,
            });
        }
    }

    // Reducible lines are continua: scan densely, then refine any near-miss
    // by local bisection so the decision is sound at tolerance `tol`.
    let mut min_line = f64::INFINITY;
    for line in reducibles {
        let f = |alpha: f64| -> f64 {
            // Point of the line over α (q ≠ 0), compared against the graph.
            if line.q != 0 {
                let beta = (line.c - line.p as f64 * alpha) / line.q as f64;
                graph_residual(alpha, beta)
            } else {
                // A vertical line α ≡ c/p: the graph always crosses it; the
                // residual is zero at that α.
                let a0 = line.c / line.p as f64;
                wrap_angle(alpha - a0).abs()
            }
        };
        if line.q == 0 {
            let a0 = line.c / line.p as f64;
            min_line = 0.0;
            if witness.is_none() {
                let b = -g.g_at(a0);
                witness = Some(Witness {
                    raw: [a0, b],
                    canonical: PillowcasePoint::new(a0, b),
                    source: WitnessSource::ReducibleLine,
                });
            }
            continue;
        }
        let n = 200_000usize;
        let h = 2.0 * PI / n as f64;
        // A root between samples can leave the nearest sample with residual
        // up to lip·h/2; refine everything below that envelope.
        let lip = (line.p as f64 / line.q as f64).abs() + g.derivative_bound;
        let trigger = tol + lip * h;
        for i in 0..=n {
            let a = -PI + i as f64 * h;
            let mut r = f(a);
            if r < trigger {
                // Local refinement.
                let (mut lo, mut hi) = (a - h, a + h);
                for _ in 0..40 {
                    let m1 = lo + (hi - lo) / 3.0;
                    let m2 = hi - (hi - lo) / 3.0;
                    if f(m1) < f(m2) {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                let am = 0.5 * (lo + hi);
                r = f(am);
                if r <= tol && witness.is_none() {
                    let beta = (line.c - line.p as f64 * am) / line.q as f64;
                    witness = Some(Witness {
                        raw: [am, beta],
                        canonical: PillowcasePoint::new(am, beta),
                        source: WitnessSource::ReducibleLine,
                    });
                }
            }
            if r < min_line {
                min_line = r;
            }
        }
    }

    Ok(EmptinessReport {
        empty: witness.is_none(),
        witness,
        min_image_residual: min_image,
        min_line_residual: min_line,
    })
}
