//! `oscsum`: command-line front end. Every subcommand writes CSV, preceded by
//! a `# config:` line with the fully resolved settings.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "oscsum", version, about = "Exponential twists of GL(2) x GL(2) forms at desk scale")]
pub struct Cli {
    /// Worker threads for the numerical kernels; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Write CSV here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Coefficient cache directory; tables are built in memory when unset.
    #[arg(long, global = true, env = "OSCSUM_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hecke eigenvalues of the level-one eigenform of one weight, in cache format.
    Coeffs(CoeffsArgs),
    /// One smoothed twist sum S(t, X).
    Twist(TwistArgs),
    /// Normalized twist-sum constants over a grid of (t, X).
    #[command(name = "harness-thm1")]
    Harness(HarnessArgs),
    /// Degree-five partial sums against L(1, f x g) X.
    Gl5(Gl5Args),
    /// Certified estimate of L(1, f x g).
    Lvalue(LvalueArgs),
    /// Both sides of the Voronoi formula for one residue class.
    VoronoiCheck(VoronoiArgs),
    /// The resonance sum and its main term.
    Resonance(ResonanceArgs),
    /// The delta-symbol expansion at -nmax..=nmax.
    DeltaCheck(DeltaArgs),
    /// Stationary-phase estimates, measured against their predictions.
    PhaseCheck(PhaseCheckArgs),
    /// Exponent pairs of the A/B closure with exact objective values.
    Exppair(ExppairArgs),
    /// The numbered verification criteria.
    VerifyAll(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub weight: u32,
    #[arg(long = "N")]
    pub n: usize,
}

/// `a,b,delta` of a smooth window.
#[derive(Debug, Clone, Copy)]
pub struct WindowArg(pub f64, pub f64, pub f64);

impl std::str::FromStr for WindowArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let v = parse_floats(s)?;
        match v[..] {
            [a, b, d] => Ok(WindowArg(a, b, d)),
            _ => Err(format!("window takes a,b,delta; got {s:?}")),
        }
    }
}

/// `k,kappa`.
#[derive(Debug, Clone, Copy)]
pub struct Weights(pub u32, pub u32);

impl std::str::FromStr for Weights {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        match parts[..] {
            [a, b] => Ok(Weights(
                a.parse().map_err(|_| format!("bad weight {a:?}"))?,
                b.parse().map_err(|_| format!("bad weight {b:?}"))?,
            )),
            _ => Err(format!("weights take k,kappa; got {s:?}")),
        }
    }
}

/// `log` or `pow:<beta>`.
#[derive(Debug, Clone, Copy)]
pub enum PhaseArg {
    Log,
    Pow(f64),
}

impl std::str::FromStr for PhaseArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "log" {
            return Ok(PhaseArg::Log);
        }
        match s.strip_prefix("pow:") {
            Some(b) => b.parse().map(PhaseArg::Pow).map_err(|_| format!("bad exponent {b:?}")),
            None => Err(format!("phase must be log or pow:<beta>, got {s:?}")),
        }
    }
}

fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(|p| p.trim().parse::<f64>().map_err(|_| format!("bad number {p:?}"))).collect()
}

#[derive(Debug, Args)]
pub struct TwistArgs {
    #[arg(long)]
    pub weights: Weights,
    #[arg(long, default_value = "log")]
    pub phase: PhaseArg,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long)]
    pub t: f64,
    #[arg(long = "X")]
    pub x: f64,
    #[arg(long, default_value = "1,2,4")]
    pub window: WindowArg,
}

#[derive(Debug, Args)]
pub struct HarnessArgs {
    /// File of `t,X` lines; `#` starts a comment. The built-in grid when unset.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    #[arg(long, default_value = "12,16")]
    pub weights: Weights,
    #[arg(long, default_value = "log")]
    pub phase: PhaseArg,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value = "1,2,4")]
    pub window: WindowArg,
}

#[derive(Debug, Args)]
pub struct Gl5Args {
    #[arg(long = "Xmax")]
    pub x_max: u64,
    /// Rows at Xmax/4^k for k below this.
    #[arg(long, default_value_t = 3)]
    pub points: u32,
    /// Use this L(1, f x g) instead of estimating it.
    #[arg(long)]
    pub l1: Option<f64>,
    #[arg(long, default_value = "12,16")]
    pub weights: Weights,
}

#[derive(Debug, Args)]
pub struct LvalueArgs {
    #[arg(long)]
    pub weights: Weights,
    /// Required stability of the estimate.
    #[arg(long, default_value_t = 1e-4)]
    pub target: f64,
}

#[derive(Debug, Args)]
pub struct VoronoiArgs {
    #[arg(long)]
    pub weight: u32,
    #[arg(long)]
    pub q: u64,
    #[arg(long, allow_negative_numbers = true)]
    pub a: i64,
    #[arg(long = "X")]
    pub x: f64,
    #[arg(long, default_value = "1,5,1")]
    pub window: WindowArg,
    /// Largest defect accepted.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ResonanceArgs {
    #[arg(long)]
    pub weight: u32,
    #[arg(long)]
    pub q: u64,
    #[arg(long = "X")]
    pub x: f64,
    #[arg(long, default_value = "1,2,4")]
    pub window: WindowArg,
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    #[arg(long = "Q")]
    pub big_q: f64,
    #[arg(long)]
    pub nmax: u32,
    /// Largest defect accepted.
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum Lemma {
    /// decay of a non-stationary integral, grid over R
    Nonstationary,
    /// one-point stationary phase, grid over H
    Stationary,
    /// second-derivative bound, grid over lambda0
    SecondDerivative,
    /// the transform J* against quadrature, grid over t
    Transform,
    /// decay of H(x), grid over x
    HBound,
}

#[derive(Debug, Args)]
pub struct PhaseCheckArgs {
    #[arg(long, value_enum)]
    pub lemma: Lemma,
    /// Comma-separated values of the scale parameter.
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Debug, Args)]
pub struct ExppairArgs {
    #[arg(long, default_value = "38+33p-28q/58+48p-43q")]
    pub objective: String,
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "fast")]
    pub level: oscsum_core::suite::Level,
    /// Comma-separated criterion numbers; all when unset.
    #[arg(long)]
    pub criteria: Option<String>,
    /// Perturb lambda(n) in every coefficient table.
    #[arg(long, hide = true)]
    pub inject_fault: Option<usize>,
}

/// Why a run stopped early.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or values: exit 2.
    Usage(String),
    /// A measured quantity missed its limit, or a computation failed: exit 1.
    Check(String),
}

impl From<oscsum_core::Error> for Failure {
    fn from(e: oscsum_core::Error) -> Self {
        use oscsum_core::Error::*;
        match e {
            InvalidArgument(_) | InvalidPhase(_) | Parse(_) | DegenerateSupport { .. } | UnsupportedWeight(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    };
    let mut out = String::new();
    let result = pool.install(|| commands::run(&cli, &mut out));
    if let Err(e) = emit(&cli, &out) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(1);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("FAIL {m}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}
