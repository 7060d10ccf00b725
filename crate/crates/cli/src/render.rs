//! Report rendering. Reals are printed with 17 significant digits so every
//! value round-trips losslessly through its decimal form; exact rationals
//! print as `p/q`.

use serde_json::json;

use isostab::{ConstantTable, Matrix, StabilityReport, TrialRecord};

use crate::args::OutputFormat;

/// 17-significant-digit decimal rendering of an f64.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn matrix_rows(q: &Matrix) -> Vec<Vec<f64>> {
    (0..q.n())
        .map(|i| (0..q.n()).map(|j| q[(i, j)]).collect())
        .collect()
}

fn matrix_text(q: &Matrix, indent: &str) -> String {
    matrix_rows(q)
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|&x| fmt_real(x)).collect();
            format!("{indent}[ {} ]", cells.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn vector_text(v: &[f64]) -> String {
    let cells: Vec<String> = v.iter().map(|&x| fmt_real(x)).collect();
    format!("[ {} ]", cells.join("  "))
}

// ── constants ───────────────────────────────────────────────────────

pub fn constants(table: &ConstantTable, format: OutputFormat) -> String {
    let n = table.n();
    let budget = table.epsilon_sup();
    let rows: Vec<Vec<u64>> = (1..=n)
        .map(|i| (1..=i).map(|j| table.c(i, j)).collect())
        .collect();
    match format {
        OutputFormat::Text => {
            let mut out = format!("constant table  n = {n}  mode = {}\n", table.mode());
            let width = rows
                .iter()
                .flatten()
                .map(|c| c.to_string().len())
                .max()
                .unwrap_or(1);
            for (i, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                out.push_str(&format!("  c[{:>2}][*]  {}\n", i + 1, cells.join(" ")));
            }
            out.push_str(&format!("sigma   = {}\n", budget.sigma));
            out.push_str(&format!(
                "eps_sup = {} ({})\n",
                budget.eps_sup,
                fmt_real(budget.eps_sup_f64())
            ));
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("i,j,c\n");
            for (i, row) in rows.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    out.push_str(&format!("{},{},{c}\n", i + 1, j + 1));
                }
            }
            out.push_str(&format!("sigma,{}\n", budget.sigma));
            out.push_str(&format!(
                "eps_sup,{},{}\n",
                budget.eps_sup,
                fmt_real(budget.eps_sup_f64())
            ));
            out
        }
        OutputFormat::Json => {
            let value = json!({
                "n": n,
                "mode": table.mode().to_string(),
                "c": rows,
                "sigma": budget.sigma,
                "eps_sup": {
                    "rational": budget.eps_sup.to_string(),
                    "decimal": budget.eps_sup_f64(),
                },
            });
            format!("{value:#}\n")
        }
    }
}

// ── bound ───────────────────────────────────────────────────────────

pub struct BoundReport {
    pub n: usize,
    pub d: f64,
    pub poly: (u64, u64, u64),
    pub majorant: (u64, u64),
    pub b: f64,
    pub eps_sup_rational: String,
    pub eps_sup: f64,
    pub bound_at_eps_sup: f64,
    pub fickett_at_eps_sup: f64,
    pub crossover: f64,
}

pub fn bound(report: &BoundReport, mode: &str, format: OutputFormat) -> String {
    let (pa, pb, pc) = report.poly;
    let (ma, mb) = report.majorant;
    let poly = format!("{pa}*d^2 + {pb}*d + {pc}");
    let majorant = format!("{ma}*d + {mb}");
    match format {
        OutputFormat::Text => {
            let mut out = format!(
                "deviation bound  n = {}  d = {}  mode = {mode}\n",
                report.n, report.d
            );
            out.push_str(&format!("B(n,d)^2 polynomial = {poly}\n"));
            out.push_str(&format!("B(n,d)              = {}\n", fmt_real(report.b)));
            out.push_str(&format!(
                "linear majorant     = {majorant} = {} at this d\n",
                fmt_real(ma as f64 * report.d + mb as f64)
            ));
            out.push_str(&format!(
                "eps_sup             = {} ({})\n",
                report.eps_sup_rational,
                fmt_real(report.eps_sup)
            ));
            out.push_str(&format!(
                "bound at eps_sup    = {}\n",
                fmt_real(report.bound_at_eps_sup)
            ));
            out.push_str(&format!(
                "fickett at eps_sup  = {}\n",
                fmt_real(report.fickett_at_eps_sup)
            ));
            out.push_str(&format!(
                "crossover eps*      = {} (linear bound is smaller below this)\n",
                fmt_real(report.crossover)
            ));
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("key,value\n");
            out.push_str(&format!("n,{}\n", report.n));
            out.push_str(&format!("d,{}\n", fmt_real(report.d)));
            out.push_str(&format!("poly_d2,{pa}\npoly_d1,{pb}\npoly_d0,{pc}\n"));
            out.push_str(&format!("majorant_slope,{ma}\nmajorant_intercept,{mb}\n"));
            out.push_str(&format!("b,{}\n", fmt_real(report.b)));
            out.push_str(&format!("eps_sup,{}\n", report.eps_sup_rational));
            out.push_str(&format!(
                "bound_at_eps_sup,{}\n",
                fmt_real(report.bound_at_eps_sup)
            ));
            out.push_str(&format!(
                "fickett_at_eps_sup,{}\n",
                fmt_real(report.fickett_at_eps_sup)
            ));
            out.push_str(&format!("crossover_eps,{}\n", fmt_real(report.crossover)));
            out
        }
        OutputFormat::Json => {
            let value = json!({
                "n": report.n,
                "d": report.d,
                "mode": mode,
                "bound_squared_polynomial": {"d2": pa, "d1": pb, "d0": pc, "text": poly},
                "linear_majorant": {"slope": ma, "intercept": mb, "text": majorant},
                "b": report.b,
                "eps_sup": {"rational": report.eps_sup_rational, "decimal": report.eps_sup},
                "bound_at_eps_sup": report.bound_at_eps_sup,
                "fickett_at_eps_sup": report.fickett_at_eps_sup,
                "crossover_eps": report.crossover,
            });
            format!("{value:#}\n")
        }
    }
}

// ── certify ─────────────────────────────────────────────────────────

pub fn certify(report: &StabilityReport, mode: &str, recenter: bool, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = format!("certification  mode = {mode}  recenter = {recenter}\n");
            out.push_str(&format!(
                "epsilon_measured        = {}\n",
                fmt_real(report.epsilon_measured)
            ));
            out.push_str(&format!(
                "eps_sup                 = {} ({})\n",
                report.budget.eps_sup,
                fmt_real(report.budget.eps_sup_f64())
            ));
            out.push_str(&format!("admissible              = {}\n", report.admissible));
            out.push_str(&format!(
                "bound_coefficient       = {}\n",
                fmt_real(report.bound_coefficient)
            ));
            out.push_str(&format!(
                "bound_value             = {}\n",
                fmt_real(report.bound_value)
            ));
            out.push_str(&format!(
                "sup_deviation alignment = {}\n",
                fmt_real(report.sup_deviation_alignment)
            ));
            out.push_str(&format!(
                "sup_deviation procrustes= {}\n",
                fmt_real(report.sup_deviation_procrustes)
            ));
            out.push_str(&format!(
                "frobenius alignment     = {}\n",
                fmt_real(report.frobenius_deviation_alignment)
            ));
            out.push_str(&format!(
                "frobenius procrustes    = {}\n",
                fmt_real(report.frobenius_deviation_procrustes)
            ));
            out.push_str(&format!(
                "coordinate_violations   = {}\n",
                report.coordinate_bound_violations
            ));
            out.push_str(&format!("verdict                 = {}\n", report.verdict));
            out.push_str("recovered isometry (alignment route):\n");
            out.push_str(&matrix_text(&report.alignment.q, "  "));
            out.push('\n');
            out.push_str(&format!("translation = {}\n", vector_text(&report.alignment.t)));
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("key,value\n");
            out.push_str(&format!(
                "epsilon_measured,{}\n",
                fmt_real(report.epsilon_measured)
            ));
            out.push_str(&format!("eps_sup,{}\n", report.budget.eps_sup));
            out.push_str(&format!("admissible,{}\n", report.admissible));
            out.push_str(&format!(
                "bound_coefficient,{}\n",
                fmt_real(report.bound_coefficient)
            ));
            out.push_str(&format!("bound_value,{}\n", fmt_real(report.bound_value)));
            out.push_str(&format!(
                "sup_deviation_alignment,{}\n",
                fmt_real(report.sup_deviation_alignment)
            ));
            out.push_str(&format!(
                "sup_deviation_procrustes,{}\n",
                fmt_real(report.sup_deviation_procrustes)
            ));
            out.push_str(&format!(
                "frobenius_deviation_alignment,{}\n",
                fmt_real(report.frobenius_deviation_alignment)
            ));
            out.push_str(&format!(
                "frobenius_deviation_procrustes,{}\n",
                fmt_real(report.frobenius_deviation_procrustes)
            ));
            out.push_str(&format!(
                "coordinate_violations,{}\n",
                report.coordinate_bound_violations
            ));
            out.push_str(&format!("verdict,{}\n", report.verdict));
            out
        }
        OutputFormat::Json => {
            let value = json!({
                "mode": mode,
                "recenter": recenter,
                "epsilon_measured": report.epsilon_measured,
                "eps_sup": {
                    "rational": report.budget.eps_sup.to_string(),
                    "decimal": report.budget.eps_sup_f64(),
                },
                "sigma": report.budget.sigma,
                "admissible": report.admissible,
                "bound_coefficient": report.bound_coefficient,
                "bound_value": report.bound_value,
                "sup_deviation_alignment": report.sup_deviation_alignment,
                "sup_deviation_procrustes": report.sup_deviation_procrustes,
                "frobenius_deviation_alignment": report.frobenius_deviation_alignment,
                "frobenius_deviation_procrustes": report.frobenius_deviation_procrustes,
                "coordinate_violations": report.coordinate_bound_violations,
                "verdict": report.verdict.to_string(),
                "isometry": {
                    "q": matrix_rows(&report.alignment.q),
                    "t": report.alignment.t,
                },
                "isometry_procrustes": {
                    "q": matrix_rows(&report.procrustes.q),
                    "t": report.procrustes.t,
                },
            });
            format!("{value:#}\n")
        }
    }
}

// ── simulate ────────────────────────────────────────────────────────

pub fn summary(
    s: &isostab::ExperimentSummary,
    config: &isostab::ExperimentConfig,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = format!(
                "simulation  n = {}  d = {}  mode = {}  eps_target = {}  extra_points = {}  seed = {}\n",
                config.n,
                config.d,
                config.mode,
                fmt_real(config.eps_target),
                config.extra_points,
                config.seed
            );
            out.push_str(&format!("trials_run                = {}\n", s.trials_run));
            out.push_str(&format!("certified_count           = {}\n", s.certified_count));
            out.push_str(&format!("max_ratio                 = {}\n", fmt_real(s.max_ratio)));
            out.push_str(&format!("mean_ratio                = {}\n", fmt_real(s.mean_ratio)));
            out.push_str(&format!(
                "max_coordinate_violations = {}\n",
                s.max_coordinate_violations
            ));
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from(
                "trials_run,certified_count,max_ratio,mean_ratio,max_coordinate_violations\n",
            );
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.trials_run,
                s.certified_count,
                fmt_real(s.max_ratio),
                fmt_real(s.mean_ratio),
                s.max_coordinate_violations
            ));
            out
        }
        OutputFormat::Json => {
            let value = json!({
                "n": config.n,
                "d": config.d,
                "mode": config.mode.to_string(),
                "eps_target": config.eps_target,
                "extra_points": config.extra_points,
                "trials": config.trials,
                "seed": config.seed,
                "trials_run": s.trials_run,
                "certified_count": s.certified_count,
                "max_ratio": s.max_ratio,
                "mean_ratio": s.mean_ratio,
                "max_coordinate_violations": s.max_coordinate_violations,
            });
            format!("{value:#}\n")
        }
    }
}

/// Per-trial CSV: one row per trial, stable layout, 17-digit reals.
pub fn per_trial_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from("trial,seed,eps_measured,sup_deviation,bound,ratio\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.index,
            r.seed,
            fmt_real(r.epsilon_measured),
            fmt_real(r.sup_deviation),
            fmt_real(r.bound_value),
            fmt_real(r.ratio)
        ));
    }
    out
}

// ── compare-fickett ─────────────────────────────────────────────────

pub struct ComparisonRow {
    pub eps: f64,
    pub new_bound: f64,
    pub fickett: f64,
    pub ratio: f64,
    pub within_budget: bool,
}

pub fn comparison(
    n: usize,
    d: f64,
    mode: &str,
    rows: &[ComparisonRow],
    crossover: f64,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = format!("bound comparison  n = {n}  d = {d}  mode = {mode}\n");
            out.push_str("eps, new_bound = B*eps, fickett = 27*eps^(1/2^n), ratio, within_budget\n");
            for r in rows {
                out.push_str(&format!(
                    "{}, {}, {}, {}, {}\n",
                    fmt_real(r.eps),
                    fmt_real(r.new_bound),
                    fmt_real(r.fickett),
                    fmt_real(r.ratio),
                    r.within_budget
                ));
            }
            out.push_str(&format!("crossover eps* = {}\n", fmt_real(crossover)));
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("eps,new_bound,fickett_bound,ratio,within_budget\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt_real(r.eps),
                    fmt_real(r.new_bound),
                    fmt_real(r.fickett),
                    fmt_real(r.ratio),
                    r.within_budget
                ));
            }
            out.push_str(&format!("crossover_eps,{}\n", fmt_real(crossover)));
            out
        }
        OutputFormat::Json => {
            let value = json!({
                "n": n,
                "d": d,
                "mode": mode,
                "rows": rows.iter().map(|r| json!({
                    "eps": r.eps,
                    "new_bound": r.new_bound,
                    "fickett_bound": r.fickett,
                    "ratio": r.ratio,
                    "within_budget": r.within_budget,
                })).collect::<Vec<_>>(),
                "crossover_eps": crossover,
            });
            format!("{value:#}\n")
        }
    }
}
