//! Library half of the command-line tool: job configuration (flags merged
//! over optional TOML job files), command implementations returning typed
//! outcomes, and deterministic JSON/SVG emission. The thin binary in
//! `main.rs` maps outcomes to exit codes.

pub mod svg;

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use pillowcase_core::certify::{
    certify_surgery, proposition_pipeline, Certificate, PropositionReport, Verdict,
};
use pillowcase_core::solver::{grid_alpha, grid_point_seed, grid_restarts, ImageDoc};
use pillowcase_core::{
    named_knot, parse_braid, parse_pd, solve_at_alpha, torus_knot, ExclusionArc, KnotPresentation,
    Slope, SolverOptions, Tube,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Tube radius used by `perturb` when none is supplied.
pub const DEFAULT_EPSILON: f64 = 0.15;

/// Exit-code contract: 0 found/certified, 1 negative result, 2 parse error,
/// 3 internal error, 4 out-of-scope input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Negative,
    ParseError,
    Internal,
    OutOfScope,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Negative => 1,
            Outcome::ParseError => 2,
            Outcome::Internal => 3,
            Outcome::OutOfScope => 4,
        }
    }
}

/// Fully resolved job configuration; echoed verbatim into every output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: String,
    pub braid: Option<String>,
    pub pd: Option<String>,
    pub torus: Option<[i64; 2]>,
    pub named: Option<String>,
    pub slope: Option<String>,
    pub grid: usize,
    pub seed: u64,
    pub restarts: usize,
    pub epsilon: Option<f64>,
    pub twist: bool,
    pub output: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

/// Raw knobs as they appear on the command line or in a TOML job file.
/// `merge` applies file values underneath flag values (flags win).
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub braid: Option<String>,
    pub pd: Option<String>,
    pub torus: Option<[i64; 2]>,
    pub named: Option<String>,
    pub slope: Option<String>,
    pub grid: Option<usize>,
    pub seed: Option<u64>,
    pub restarts: Option<usize>,
    pub epsilon: Option<f64>,
    pub twist: Option<bool>,
    pub output: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl JobSpec {
    pub fn from_toml_file(path: &Path) -> Result<JobSpec, String> {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read job file {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad job file {}: {e}", path.display()))
    }

    /// Overlays `self` (flags) on `base` (job file).
    pub fn merge_over(self, base: JobSpec) -> JobSpec {
        JobSpec {
            braid: self.braid.or(base.braid),
            pd: self.pd.or(base.pd),
            torus: self.torus.or(base.torus),
            named: self.named.or(base.named),
            slope: self.slope.or(base.slope),
            grid: self.grid.or(base.grid),
            seed: self.seed.or(base.seed),
            restarts: self.restarts.or(base.restarts),
            epsilon: self.epsilon.or(base.epsilon),
            twist: self.twist.or(base.twist),
            output: self.output.or(base.output),
            svg: self.svg.or(base.svg),
        }
    }

    pub fn resolve(self, command: &str, default_grid: usize) -> JobConfig {
        JobConfig {
            command: command.to_string(),
            braid: self.braid,
            pd: self.pd,
            torus: self.torus,
            named: self.named,
            slope: self.slope,
            grid: self.grid.unwrap_or(default_grid),
            seed: self.seed.unwrap_or(0),
            restarts: self.restarts.unwrap_or(64),
            epsilon: self.epsilon,
            twist: self.twist.unwrap_or(false),
            output: self.output,
            svg: self.svg,
        }
    }
}

impl JobConfig {
    /// Exactly one knot source must be present.
    pub fn knot(&self) -> Result<KnotPresentation, CliError> {
        let sources = [
            self.braid.is_some(),
            self.pd.is_some(),
            self.torus.is_some(),
            self.named.is_some(),
        ]
        .iter()
        .filter(|b| **b)
        .count();
        if sources != 1 {
            return Err(CliError::parse(format!(
                "exactly one knot source required (braid|pd|torus|named), got {sources}"
            )));
        }
        let k = if let Some(b) = &self.braid {
            parse_braid(b)
        } else if let Some(p) = &self.pd {
            parse_pd(p)
        } else if let Some([p, q]) = self.torus {
            torus_knot(p, q)
        } else {
            named_knot(self.named.as_deref().unwrap())
        };
        k.map_err(CliError::from_core_parse)
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            grid: self.grid,
            restarts: self.restarts,
            seed: self.seed,
            ..SolverOptions::default()
        }
    }

    pub fn signed_slope(&self) -> Result<(i64, i64), CliError> {
        let text = self
            .slope
            .as_deref()
            .ok_or_else(|| CliError::parse("--slope is required".into()))?;
        parse_slope_text(text)
    }
}

/// "p/q", "p", "-p/q"; q defaults to 1.
pub fn parse_slope_text(text: &str) -> Result<(i64, i64), CliError> {
    let mut parts = text.splitn(2, '/');
    let p: i64 = parts
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|_| CliError::parse(format!("bad slope '{text}'")))?;
    let q: i64 = match parts.next() {
        Some(t) => t
            .trim()
            .parse()
            .map_err(|_| CliError::parse(format!("bad slope '{text}'")))?,
        None => 1,
    };
    if p == 0 && q == 0 {
        return Err(CliError::parse("slope 0/0 is not a curve class".into()));
    }
    Ok((p, q))
}

#[derive(Debug)]
pub struct CliError {
    pub outcome: Outcome,
    pub message: String,
}

impl CliError {
    pub fn parse(message: String) -> CliError {
        CliError {
            outcome: Outcome::ParseError,
            message,
        }
    }

    pub fn internal(message: String) -> CliError {
        CliError {
            outcome: Outcome::Internal,
            message,
        }
    }

    pub fn out_of_scope(message: String) -> CliError {
        CliError {
            outcome: Outcome::OutOfScope,
            message,
        }
    }

    fn from_core_parse(e: pillowcase_core::Error) -> CliError {
        use pillowcase_core::Error as E;
        let outcome = match &e {
            E::SlopeOutOfRange { .. } | E::MeridianFilling => Outcome::OutOfScope,
            E::Parse(_)
            | E::InconsistentPd(_)
            | E::MultiComponentLink { .. }
            | E::NotCoprime { .. }
            | E::InvalidSlope { .. } => Outcome::ParseError,
            _ => Outcome::Internal,
        };
        CliError {
            outcome,
            message: e.to_string(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

// ---------------------------------------------------------------------------
// Output documents
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct RepsDoc {
    pub version: u32,
    pub tool_version: &'static str,
    pub config: JobConfig,
    pub knot_hash: String,
    pub image: ImageDoc,
}

#[derive(Debug, Serialize)]
pub struct CertifyDoc {
    pub version: u32,
    pub tool_version: &'static str,
    pub config: JobConfig,
    pub certificate: Certificate,
}

#[derive(Debug, Serialize)]
pub struct PerturbDoc {
    pub version: u32,
    pub tool_version: &'static str,
    pub config: JobConfig,
    pub report: PropositionReport,
}

#[derive(Debug, Serialize)]
pub struct ArcDoc {
    pub version: u32,
    pub tool_version: &'static str,
    pub config: JobConfig,
    pub slope: Slope,
    pub vertices: [[f64; 2]; 6],
    pub beta_pi_contacts: usize,
    pub tube_epsilon: Option<f64>,
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::internal(format!("write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Wall-clock metadata lives in a sidecar so the primary JSON is
/// byte-identical across runs of the same job.
fn write_sidecar(path: Option<&Path>, elapsed_ms: u128) {
    if let Some(p) = path {
        let sidecar = p.with_extension("meta.json");
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let text = format!("{{\"unix_time\": {now}, \"elapsed_ms\": {elapsed_ms}}}\n");
        let _ = fs::write(sidecar, text);
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// Computes the pillowcase image, writes the JSON document (and optional
/// scatter SVG), and spot-checks grid determinism.
pub fn cmd_reps(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let start = std::time::Instant::now();
    let k = cfg.knot()?;
    let opts = cfg.solver_options();
    let mut img = pillowcase_image(&k, &opts);
    if cfg.twist {
        img = img.to_twisted();
    }

    // Determinism spot check: re-solving a few grid points with the same
    // per-index seeds must reproduce bit-identical phase-1 results.
    for i in [0usize, opts.grid / 2, opts.grid.saturating_sub(1)] {
        if i >= opts.grid {
            continue;
        }
        let again = solve_at_alpha(
            &k,
            grid_alpha(opts.grid, i),
            grid_restarts(&opts, i),
            grid_point_seed(opts.seed, i),
            &opts,
        );
        for p in &again {
            let expected = if cfg.twist {
                pillowcase_core::PillowcasePoint::new(
                    p.boundary.alpha,
                    p.boundary.beta + std::f64::consts::PI,
                )
            } else {
                p.boundary
            };
            let reproduced = img.samples.iter().any(|s| {
                s.boundary == expected
                    && s.assignment
                        .iter()
                        .zip(&p.assignment)
                        .all(|(a, b)| a.components() == b.components())
            });
            if !reproduced {
                return Err(CliError::internal(
                    "solver non-determinism detected: grid point re-solve does not match".into(),
                ));
            }
        }
    }

    let doc = RepsDoc {
        version: 1,
        tool_version: TOOL_VERSION,
        config: cfg.clone(),
        knot_hash: k.hash(),
        image: img.to_doc(),
    };
    let text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::internal(format!("serialize: {e}")))?;
    write_output(cfg.output.as_deref(), &text)?;
    if let Some(svg_path) = &cfg.svg {
        let svg = svg::image_svg(&img, cfg.twist);
        fs::write(svg_path, svg)
            .map_err(|e| CliError::internal(format!("write {}: {e}", svg_path.display())))?;
    }
    write_sidecar(cfg.output.as_deref(), start.elapsed().as_millis());
    Ok(Outcome::Success)
}

/// Searches for a surgery certificate; exit 0 on Found, 1 on NotFound,
/// 4 on out-of-scope input.
pub fn cmd_certify(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let start = std::time::Instant::now();
    let k = cfg.knot()?;
    let (p, q) = cfg.signed_slope()?;
    let opts = cfg.solver_options();
    let cert = certify_surgery(&k, p, q, &opts).map_err(CliError::from_core_parse)?;
    let verdict = cert.verdict;
    let doc = CertifyDoc {
        version: 1,
        tool_version: TOOL_VERSION,
        config: cfg.clone(),
        certificate: cert,
    };
    let text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::internal(format!("serialize: {e}")))?;
    write_output(cfg.output.as_deref(), &text)?;
    write_sidecar(cfg.output.as_deref(), start.elapsed().as_millis());
    Ok(match verdict {
        Verdict::Found => Outcome::Success,
        Verdict::NotFound => Outcome::Negative,
        Verdict::OutOfScope => Outcome::OutOfScope,
    })
}

/// Runs the emptiness pipeline; exit 0 when emptiness is certified, 1 when
/// the hypothesis fails (witness recorded), 4 on out-of-scope slope.
pub fn cmd_perturb(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let start = std::time::Instant::now();
    let k = cfg.knot()?;
    let (p, q) = cfg.signed_slope()?;
    if p <= 0 || q <= 0 {
        return Err(CliError::out_of_scope(format!(
            "perturbation pipeline requires positive p, q; got {p}/{q}"
        )));
    }
    let slope = Slope::new(p, q).map_err(CliError::from_core_parse)?;
    slope.check_arc_range().map_err(CliError::from_core_parse)?;
    let mut cfg = cfg.clone();
    cfg.epsilon = Some(cfg.epsilon.unwrap_or(DEFAULT_EPSILON));
    let cfg = &cfg;
    let opts = cfg.solver_options();
    let report = proposition_pipeline(&k, slope, cfg.epsilon.unwrap(), &opts)
        .map_err(CliError::from_core_parse)?;
    let outcome =
        if report.hypothesis_holds && report.emptiness.as_ref().map(|e| e.empty).unwrap_or(false) {
            Outcome::Success
        } else {
            Outcome::Negative
        };
    let doc = PerturbDoc {
        version: 1,
        tool_version: TOOL_VERSION,
        config: cfg.clone(),
        report,
    };
    let text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::internal(format!("serialize: {e}")))?;
    write_output(cfg.output.as_deref(), &text)?;
    write_sidecar(cfg.output.as_deref(), start.elapsed().as_millis());
    Ok(outcome)
}

/// Emits the exclusion arc (and tube, when an epsilon is supplied) as JSON.
pub fn cmd_arc(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let (p, q) = cfg.signed_slope()?;
    let slope = Slope::new(p, q).map_err(CliError::from_core_parse)?;
    let arc = ExclusionArc::new(slope).map_err(CliError::from_core_parse)?;
    let doc = ArcDoc {
        version: 1,
        tool_version: TOOL_VERSION,
        config: cfg.clone(),
        slope,
        vertices: arc.vertices,
        beta_pi_contacts: arc.beta_pi_points().len(),
        tube_epsilon: cfg.epsilon,
    };
    let text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::internal(format!("serialize: {e}")))?;
    write_output(cfg.output.as_deref(), &text)?;
    Ok(Outcome::Success)
}

/// Renders the exclusion arc with the dashed reducible lines; vertex
/// coordinates are embedded at full precision.
pub fn cmd_figure(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let (p, q) = cfg.signed_slope()?;
    let slope = Slope::new(p, q).map_err(CliError::from_core_parse)?;
    let arc = ExclusionArc::new(slope).map_err(CliError::from_core_parse)?;
    let tube = cfg.epsilon.map(|eps| Tube::new(arc.clone(), eps));
    let text = svg::figure_svg(&arc, tube.as_ref());
    let target = cfg.svg.clone().or_else(|| cfg.output.clone());
    write_output(target.as_deref(), &text)?;
    Ok(Outcome::Success)
}

pub use pillowcase_core::pillowcase_image;
pub use pillowcase_core::solver::RepPoint;
