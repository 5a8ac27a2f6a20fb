//! `pillowcase` binary: subcommand parsing and the exit-code contract
//! (0 found/certified, 1 negative result, 2 parse error, 3 internal,
//! 4 out-of-scope).
//!
//! Braid grammar (whitespace-separated letters):
//!   word   = letter { ws letter } ;
//!   letter = [ "+" | "-" ] [ "s" | "S" ] [ "-" ] digits ;
//! with letter k denoting the Artin generator σ_k and negatives its inverse.
//!
//! PD grammar:
//!   code  = [ "PD" ] "[" [ tuple { "," tuple } ] "]" ;
//!   tuple = "(" int "," int "," int "," int ")" | "X[" int... "]" ;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pillowcase_cli::{
    cmd_arc, cmd_certify, cmd_figure, cmd_perturb, cmd_reps, JobConfig, JobSpec, Outcome,
};

#[derive(Parser)]
#[command(
    name = "pillowcase",
    version,
    about = "SU(2) representation varieties of knot exteriors in pillowcase coordinates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// Braid word, e.g. "1 1 1" or "s1 -s2"
    #[arg(long)]
    braid: Option<String>,
    /// PD code, e.g. "PD[(1,4,2,5),(3,6,4,1),(5,2,6,3)]"
    #[arg(long)]
    pd: Option<String>,
    /// Torus knot parameters p q
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    torus: Option<Vec<i64>>,
    /// Built-in knot name (unknot, trefoil, figure-eight, cinquefoil)
    #[arg(long)]
    named: Option<String>,
    /// Surgery or filling slope "p/q" (or integer "p"); negatives allowed
    #[arg(long, allow_hyphen_values = true)]
    slope: Option<String>,
    /// Grid points on (0, π)
    #[arg(long)]
    grid: Option<usize>,
    /// RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// Multi-start restarts at anchor grid points
    #[arg(long)]
    restarts: Option<usize>,
    /// Tube radius in radians
    #[arg(long)]
    epsilon: Option<f64>,
    /// Use the twisted convention (reducibles on β ≡ π)
    #[arg(long)]
    twist: bool,
    /// Output JSON path (stdout when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// SVG output path
    #[arg(long)]
    svg: Option<PathBuf>,
    /// TOML job file; command-line flags win on conflict
    #[arg(long)]
    job: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the pillowcase image of the irreducible representation variety
    Reps(CommonArgs),
    /// Search for an irreducible representation of the surgered manifold
    Certify(CommonArgs),
    /// Emit the exclusion arc for a filling slope
    Arc(CommonArgs),
    /// Run the holonomy-perturbation emptiness pipeline
    Perturb(CommonArgs),
    /// Render the exclusion arc and reducible lines as SVG
    Figure(CommonArgs),
}

fn resolve(args: &CommonArgs, command: &str, default_grid: usize) -> Result<JobConfig, String> {
    let flags = JobSpec {
        braid: args.braid.clone(),
        pd: args.pd.clone(),
        torus: args.torus.as_ref().map(|v| [v[0], v[1]]),
        named: args.named.clone(),
        slope: args.slope.clone(),
        grid: args.grid,
        seed: args.seed,
        restarts: args.restarts,
        epsilon: args.epsilon,
        twist: if args.twist { Some(true) } else { None },
        output: args.output.clone(),
        svg: args.svg.clone(),
    };
    let merged = match &args.job {
        Some(path) => flags.merge_over(JobSpec::from_toml_file(path)?),
        None => flags,
    };
    Ok(merged.resolve(command, default_grid))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cfg, runner): (Result<JobConfig, String>, fn(&JobConfig) -> _) = match &cli.command {
        Command::Reps(a) => (resolve(a, "reps", 2000), cmd_reps),
        Command::Certify(a) => (resolve(a, "certify", 800), cmd_certify),
        Command::Arc(a) => (resolve(a, "arc", 0), cmd_arc),
        Command::Perturb(a) => (resolve(a, "perturb", 600), cmd_perturb),
        Command::Figure(a) => (resolve(a, "figure", 0), cmd_figure),
    };
    let cfg = match cfg {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(Outcome::ParseError.code() as u8);
        }
    };
    match runner(&cfg) {
        Ok(outcome) => ExitCode::from(outcome.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.outcome.code() as u8)
        }
    }
}
