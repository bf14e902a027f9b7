//! `bura`: regenerates the rational-approximation and fractional-diffusion
//! error tables as long-format CSV.

mod config;
mod error;
mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use bura::experiments::UniformRhs;
use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{parse_degrees, parse_list, Degrees, parse_method, Experiment, ExperimentConfig, MeshSize, ProblemKind};
use error::CliError;

#[derive(Parser)]
#[command(name = "bura", version, about = "Fractional diffusion with best uniform rational approximations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Uniform errors E_{γ,k} of the best rational approximations of t^γ.
    BuraTable(Common),
    /// One solve with a dense reference when the problem is small enough.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "fd2d")]
        problem: ProblemKind,
        /// Right-hand side for `fd2d`.
        #[arg(long, value_enum, default_value = "sine")]
        rhs: RhsArg,
    },
    /// Checkerboard right-hand side on uniform meshes.
    Table2(Common),
    /// Sine right-hand side on uniform meshes.
    Table3(Common),
    /// 1D constant right-hand side on boundary-refined meshes.
    Table4(Common),
    /// 1D point source on centre-refined meshes.
    Table5(Common),
    /// Consistent-mass `M Ã^α` entries, optionally with a positivity battery.
    Mmatrix {
        #[command(flatten)]
        common: Common,
        /// L-shaped domain instead of (0, 1).
        #[arg(long)]
        lshaped: bool,
        /// Random nonnegative loads per scheme on top of the unit loads; 0 skips the battery.
        #[arg(long, default_value_t = 0)]
        battery: usize,
    },
    /// Tensor-product checkerboard solve on a locally refined mesh.
    Figure2(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum RhsArg {
    Sine,
    Checkerboard,
}

#[derive(Args)]
struct Common {
    /// Comma list of fractional powers.
    #[arg(long, alias = "alphas", value_delimiter = ',')]
    alpha: Option<Vec<f64>>,
    /// Degree range `5..10` or comma list.
    #[arg(long, value_parser = parse_degrees)]
    k: Option<Degrees>,
    /// Sinc step for the k'-Q-method.
    #[arg(long)]
    kprime: Option<f64>,
    /// Comma list of mesh sizes: `2^-8`, `1/10` or decimals.
    #[arg(long, value_delimiter = ',')]
    h: Option<Vec<MeshSize>>,
    /// Comma list of initial mesh exponents e, h0 = 2^-e.
    #[arg(long, value_delimiter = ',')]
    h0: Option<Vec<u32>>,
    /// Local refinement steps; defaults to reaching the published smallest segment.
    #[arg(long)]
    refine_steps: Option<u32>,
    /// Geometric refinement factor.
    #[arg(long)]
    p: Option<usize>,
    /// Comma list of pbura, pbura-mult, bura, q, kprime-q.
    #[arg(long, alias = "methods")]
    method: Option<String>,
    /// Relative residual tolerance of the inner solves.
    #[arg(long)]
    tol: Option<f64>,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for columnar plot data.
    #[arg(long)]
    plot_dir: Option<PathBuf>,
    /// Seed of the random test batteries.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Series terms of the 1D reference solutions.
    #[arg(long)]
    terms: Option<usize>,
    /// Append a wall-time column (output is then no longer reproducible).
    #[arg(long)]
    timings: bool,
}

fn config(experiment: Experiment, c: Common) -> Result<ExperimentConfig, CliError> {
    let mut cfg = ExperimentConfig::defaults(experiment);
    if let Some(a) = c.alpha {
        cfg.alphas = a;
    }
    if let Some(k) = c.k {
        cfg.degrees = k.0;
        cfg.degrees_given = true;
    }
    if let Some(v) = c.kprime {
        cfg.kprime = v;
    }
    if let Some(h) = c.h {
        cfg.meshes = h;
    }
    if let Some(h0) = c.h0 {
        cfg.h0 = h0;
    }
    cfg.refine_steps = c.refine_steps.or(cfg.refine_steps);
    if let Some(p) = c.p {
        cfg.p = p;
    }
    if let Some(m) = c.method {
        cfg.methods = parse_list::<String>(&m)
            .and_then(|l| l.iter().map(|s| parse_method(s)).collect())
            .map_err(CliError::Config)?;
    }
    if let Some(t) = c.tol {
        cfg.tol = t;
    }
    if let Some(t) = c.terms {
        cfg.terms = t;
    }
    cfg.out = c.out;
    cfg.plot_dir = c.plot_dir;
    cfg.seed = c.seed;
    cfg.timings = c.timings;
    if cfg.degrees_given && cfg.degrees.len() > 1 && experiment != Experiment::BuraTable {
        return Err(CliError::Config(format!("{} takes a single degree", experiment.as_str())));
    }
    Ok(cfg)
}

fn build(cli: Cli) -> Result<ExperimentConfig, CliError> {
    match cli.command {
        Command::BuraTable(c) => config(Experiment::BuraTable, c),
        Command::Solve { common, problem, rhs } => {
            let mut cfg = config(Experiment::SingleSolve, common)?;
            cfg.problem = problem;
            cfg.rhs = match rhs {
                RhsArg::Sine => UniformRhs::Sine,
                RhsArg::Checkerboard => UniformRhs::Checkerboard,
            };
            Ok(cfg)
        }
        Command::Table2(c) => config(Experiment::Table2, c),
        Command::Table3(c) => config(Experiment::Table3, c),
        Command::Table4(c) => config(Experiment::Table4, c),
        Command::Table5(c) => config(Experiment::Table5, c),
        Command::Mmatrix { common, lshaped, battery } => {
            let alphas_given = common.alpha.is_some();
            let meshes_given = common.h.is_some();
            let mut cfg = config(Experiment::MmatrixStudy, common)?;
            cfg.lshaped = lshaped;
            cfg.battery = battery;
            cfg.mmatrix_defaults(alphas_given, meshes_given);
            Ok(cfg)
        }
        Command::Figure2(c) => config(Experiment::Figure2, c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match build(cli).and_then(|cfg| run::run(&cfg)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
