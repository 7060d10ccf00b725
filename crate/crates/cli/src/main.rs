use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use isostab::{
    bound_coefficient, bound_linear_majorant, bound_squared_polynomial, certify,
    crossover_epsilon, fickett_bound, run_trials, summarize, ConstantTable, ExperimentConfig,
    Verdict,
};

use isostab_cli::args::{Cli, Command};
use isostab_cli::pointmap_file::PointMapFile;
use isostab_cli::render::{self, ComparisonRow};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let mode = cli.mode.into();
    let format = cli.format;
    match cli.command {
        Command::Constants { n } => {
            let table = ConstantTable::build(n, mode).map_err(|e| e.to_string())?;
            print!("{}", render::constants(&table, format));
            Ok(ExitCode::SUCCESS)
        }

        Command::Bound { n, d } => {
            let table = ConstantTable::build(n, mode).map_err(|e| e.to_string())?;
            let b = bound_coefficient(n, d, &table).map_err(|e| e.to_string())?;
            let budget = table.epsilon_sup();
            let eps_sup = budget.eps_sup_f64();
            let report = render::BoundReport {
                n,
                d,
                poly: bound_squared_polynomial(&table),
                majorant: bound_linear_majorant(&table),
                b,
                eps_sup_rational: budget.eps_sup.to_string(),
                eps_sup,
                bound_at_eps_sup: b * eps_sup,
                fickett_at_eps_sup: fickett_bound(n as u32, eps_sup),
                crossover: crossover_epsilon(n, d, &table).map_err(|e| e.to_string())?,
            };
            print!("{}", render::bound(&report, &mode.to_string(), format));
            Ok(ExitCode::SUCCESS)
        }

        Command::Certify { file, recenter } => {
            let pm = PointMapFile::load(&file)?
                .into_point_map()
                .map_err(|e| format!("{}: {e}", file.display()))?;
            let table = ConstantTable::build(pm.dimension(), mode).map_err(|e| e.to_string())?;
            let report = certify(&pm, &table, recenter).map_err(|e| e.to_string())?;
            print!(
                "{}",
                render::certify(&report, &mode.to_string(), recenter, format)
            );
            Ok(match report.verdict {
                Verdict::Certified => ExitCode::SUCCESS,
                Verdict::InadmissibleEpsilon => ExitCode::from(2),
                Verdict::BoundViolated => ExitCode::from(3),
            })
        }

        Command::Simulate {
            n,
            d,
            eps,
            trials,
            extra_points,
            per_trial,
        } => {
            let config = ExperimentConfig {
                n,
                d,
                extra_points,
                eps_target: eps,
                trials,
                seed: cli.seed,
                mode,
            };
            let records = run_trials(&config).map_err(|e| e.to_string())?;
            if let Some(path) = per_trial {
                std::fs::write(&path, render::per_trial_csv(&records))
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            let summary = summarize(&records);
            print!("{}", render::summary(&summary, &config, format));
            Ok(ExitCode::SUCCESS)
        }

        Command::CompareFickett { n, d, eps } => {
            let table = ConstantTable::build(n, mode).map_err(|e| e.to_string())?;
            let b = bound_coefficient(n, d, &table).map_err(|e| e.to_string())?;
            if let Some(bad) = eps.iter().find(|&&e| !(e.is_finite() && e > 0.0)) {
                return Err(format!("eps grid entries must be positive, got {bad}"));
            }
            let rows: Vec<ComparisonRow> = eps
                .iter()
                .map(|&e| {
                    let new_bound = b * e;
                    let fickett = fickett_bound(n as u32, e);
                    ComparisonRow {
                        eps: e,
                        new_bound,
                        fickett,
                        ratio: new_bound / fickett,
                        within_budget: table.admits(e),
                    }
                })
                .collect();
            let crossover = crossover_epsilon(n, d, &table).map_err(|e| e.to_string())?;
            print!(
                "{}",
                render::comparison(n, d, &mode.to_string(), &rows, crossover, format)
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}
