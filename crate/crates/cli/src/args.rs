use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use isostab::Mode;

#[derive(Parser)]
#[command(
    name = "isostab",
    version,
    about = "Stability tables, deviation bounds and certification for ε-isometries on bounded subsets of ℝⁿ",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Constant-table mode: `paper` reproduces the classical worked tables,
    /// `tight` uses the sharpest admissible ε at every recurrence step.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Paper)]
    pub mode: ModeArg,

    /// Root seed for seeded subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the constant table c_ij with σ and the admissible ε budget.
    #[command(after_help = "CSV layout: `i,j,c` rows for the lower triangle, then \
                            `sigma,<value>` and `eps_sup,<p/q>,<decimal>` trailers.")]
    Constants {
        /// Dimension (n ≥ 3).
        #[arg(long)]
        n: usize,
    },

    /// Print B(n, d), its exact squared polynomial in d, an integer linear
    /// majorant, and the comparison with the classical 27·ε^(1/2ⁿ) bound.
    Bound {
        /// Dimension (n ≥ 3).
        #[arg(long)]
        n: usize,
        /// Domain radius (d ≥ 1).
        #[arg(long)]
        d: f64,
    },

    /// Certify a point-map file. Exits 0 when certified, 2 when the measured
    /// distortion is not below the admissible budget, 3 on a bound violation.
    Certify {
        /// Path to a point-map JSON file
        /// ({"dimension", "d", "points", "images"}).
        file: PathBuf,
        /// Subtract f(0) from every image before measuring (distortion is
        /// unchanged; the recovered isometry gains the translation back).
        #[arg(long)]
        recenter: bool,
    },

    /// Run seeded Monte Carlo certification trials on perturbed rotations.
    #[command(after_help = "Per-trial CSV columns: trial, seed, eps_measured, \
                            sup_deviation, bound, ratio.")]
    Simulate {
        /// Dimension (n ≥ 3).
        #[arg(long)]
        n: usize,
        /// Domain radius (d ≥ 1).
        #[arg(long)]
        d: f64,
        /// Target distortion; must be strictly below the mode's ε budget.
        #[arg(long)]
        eps: f64,
        /// Number of independent trials.
        #[arg(long)]
        trials: usize,
        /// Random domain points beyond the mandatory {0, e_1, …, e_n}.
        #[arg(long, default_value_t = 20)]
        extra_points: usize,
        /// Also write one CSV row per trial to this path.
        #[arg(long, value_name = "FILE")]
        per_trial: Option<PathBuf>,
    },

    /// Tabulate the linear bound B(n, d)·ε against the classical
    /// 27·ε^(1/2ⁿ) bound over an ε grid, with the crossover ε*.
    #[command(after_help = "CSV columns: eps, new_bound, fickett_bound, ratio, \
                            within_budget; a final `crossover_eps,<value>` row follows.")]
    CompareFickett {
        /// Dimension (n ≥ 3).
        #[arg(long)]
        n: usize,
        /// Domain radius (d ≥ 1).
        #[arg(long)]
        d: f64,
        /// Comma-separated ε grid (each entry > 0).
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Paper,
    Tight,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Paper => Mode::Paper,
            ModeArg::Tight => Mode::Tight,
        }
    }
}
