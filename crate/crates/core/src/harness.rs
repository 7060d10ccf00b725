//! Deterministic synthetic data generation and Monte Carlo experiments.
//!
//! Trials are fully reproducible: every random quantity derives from a root
//! seed through [`derive_seed`], a splitmix64-style mixer, so identical
//! configurations yield identical summaries regardless of execution order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::constants::{ConstantTable, Mode};
use crate::error::{Error, Result};
use crate::linalg::{norm, random_orthogonal, Matrix};
use crate::stability::{self, certify, PointMap, Verdict};

/// Maximum bisection steps when steering noise into the distortion window.
const BISECTION_LIMIT: usize = 60;

/// Mixes a root seed with a stream index into an independent sub-seed
/// (splitmix64 finalizer over root ⊕ index·golden-ratio).
pub fn derive_seed(root: u64, index: u64) -> u64 {
    let mut z = root ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Returns {0, e_1, …, e_n} followed by `extra_points` points drawn
/// uniformly from the radius-d ball (rejection sampling from the cube).
/// Deterministic per seed.
pub fn random_point_cloud(
    n: usize,
    d: f64,
    extra_points: usize,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be ≥ 1".into()));
    }
    if !d.is_finite() || d < 1.0 {
        return Err(Error::InvalidInput(format!("radius d must be ≥ 1, got {d}")));
    }
    let mut cloud = Vec::with_capacity(n + 1 + extra_points);
    cloud.push(vec![0.0; n]);
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        cloud.push(e);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra_points {
        loop {
            let p: Vec<f64> = (0..n).map(|_| rng.random_range(-d..=d)).collect();
            if norm(&p) <= d {
                cloud.push(p);
                break;
            }
        }
    }
    Ok(cloud)
}

/// Builds a point map f(x) = q0·x + η_x with seeded per-point noise, scaled
/// by bisection until the measured distortion lands in
/// [0.8·eps_target, eps_target]. The origin gets zero noise, so f(0) = 0.
///
/// The map's radius is the tightest valid one, max(1, max_k ‖x_k‖).
pub fn perturbed_isometry(
    cloud: &[Vec<f64>],
    q0: &Matrix,
    eps_target: f64,
    seed: u64,
) -> Result<PointMap> {
    let n = q0.n();
    if !(eps_target.is_finite() && eps_target > 0.0) {
        return Err(Error::InvalidInput(format!(
            "eps_target must be positive, got {eps_target}"
        )));
    }
    let base: Vec<Vec<f64>> = cloud.iter().map(|x| q0.mul_vec(x)).collect();
    let d = cloud.iter().map(|x| norm(x)).fold(1.0_f64, f64::max);

    // One seeded unit direction and magnitude factor per point; the origin
    // keeps zero noise.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise: Vec<Vec<f64>> = cloud
        .iter()
        .map(|x| {
            let dir: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            let mag: f64 = rng.random_range(0.5..=1.0);
            if norm(x) == 0.0 {
                return vec![0.0; n];
            }
            let dn = norm(&dir);
            dir.iter().map(|&v| mag * v / dn).collect()
        })
        .collect();

    let images_at = |scale: f64| -> Vec<Vec<f64>> {
        base.iter()
            .zip(&noise)
            .map(|(b, e)| b.iter().zip(e).map(|(bi, ei)| bi + scale * ei).collect())
            .collect()
    };
    let distortion_at =
        |scale: f64| stability::pairwise_distortion(cloud, &images_at(scale));

    let lo_target = 0.8 * eps_target;
    let in_window = |v: f64| (lo_target..=eps_target).contains(&v);

    // Bracket the window, then bisect into it.
    let mut lo = 0.0_f64;
    let mut hi = eps_target;
    let mut grow = 0;
    loop {
        let v = distortion_at(hi);
        if in_window(v) {
            return PointMap::new(n, cloud.to_vec(), images_at(hi), d);
        }
        if v > eps_target {
            break;
        }
        lo = hi;
        hi *= 2.0;
        grow += 1;
        if grow > 64 {
            return Err(Error::Generation(
                "noise scaling cannot reach the distortion window".into(),
            ));
        }
    }
    for _ in 0..BISECTION_LIMIT {
        let mid = 0.5 * (lo + hi);
        let v = distortion_at(mid);
        if in_window(v) {
            return PointMap::new(n, cloud.to_vec(), images_at(mid), d);
        }
        if v > eps_target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::Generation(format!(
        "bisection failed to enter the distortion window [{lo_target}, {eps_target}]"
    )))
}

// ── Experiments ─────────────────────────────────────────────────────

/// Configuration of a Monte Carlo certification experiment.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub n: usize,
    pub d: f64,
    /// Random domain points beyond the mandatory {0, e_1, …, e_n}.
    pub extra_points: usize,
    /// Target distortion; trials land in [0.8·eps_target, eps_target].
    /// Must be strictly below the mode's admissible supremum.
    pub eps_target: f64,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
}

/// Per-trial certification record.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub epsilon_measured: f64,
    pub sup_deviation: f64,
    pub bound_value: f64,
    /// sup_deviation / bound_value; at most 1 whenever the guarantee applies.
    pub ratio: f64,
    pub certified: bool,
    pub coordinate_violations: usize,
    pub frobenius_deviation_alignment: f64,
    pub frobenius_deviation_procrustes: f64,
}

/// Order-insensitive aggregate of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSummary {
    pub trials_run: usize,
    pub certified_count: usize,
    pub max_ratio: f64,
    pub mean_ratio: f64,
    pub max_coordinate_violations: usize,
}

fn validate(config: &ExperimentConfig, table: &ConstantTable) -> Result<()> {
    if config.trials == 0 {
        return Err(Error::InvalidInput("trials must be ≥ 1".into()));
    }
    if !table.admits(config.eps_target) || config.eps_target <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "eps_target = {} is not inside the admissible window (0, {})",
            config.eps_target,
            table.epsilon_sup().eps_sup
        )));
    }
    Ok(())
}

/// Runs the per-trial pipeline (cloud → rotation → perturbation → certify)
/// with seeds derived from the root seed, returning every record.
pub fn run_trials(config: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    let table = ConstantTable::build(config.n, config.mode)?;
    validate(config, &table)?;

    let mut records = Vec::with_capacity(config.trials);
    for index in 0..config.trials {
        let trial_seed = derive_seed(config.seed, index as u64);
        let cloud = random_point_cloud(
            config.n,
            config.d,
            config.extra_points,
            derive_seed(trial_seed, 1),
        )?;
        let q0 = random_orthogonal(config.n, derive_seed(trial_seed, 2))?;
        let pm = perturbed_isometry(&cloud, &q0, config.eps_target, derive_seed(trial_seed, 3))
            .map_err(|e| Error::Generation(format!("trial {index}: {e}")))?;
        let report = certify(&pm, &table, false)?;
        records.push(TrialRecord {
            index,
            seed: trial_seed,
            epsilon_measured: report.epsilon_measured,
            sup_deviation: report.sup_deviation_alignment,
            bound_value: report.bound_value,
            ratio: report.sup_deviation_alignment / report.bound_value,
            certified: report.verdict == Verdict::Certified,
            coordinate_violations: report.coordinate_bound_violations,
            frobenius_deviation_alignment: report.frobenius_deviation_alignment,
            frobenius_deviation_procrustes: report.frobenius_deviation_procrustes,
        });
    }
    Ok(records)
}

/// Aggregates trial records (max/mean over a fixed multiset, so the result
/// does not depend on trial order).
pub fn summarize(records: &[TrialRecord]) -> ExperimentSummary {
    let trials_run = records.len();
    let certified_count = records.iter().filter(|r| r.certified).count();
    let max_ratio = records.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let mean_ratio = if trials_run == 0 {
        0.0
    } else {
        records.iter().map(|r| r.ratio).sum::<f64>() / trials_run as f64
    };
    let max_coordinate_violations = records
        .iter()
        .map(|r| r.coordinate_violations)
        .max()
        .unwrap_or(0);
    ExperimentSummary {
        trials_run,
        certified_count,
        max_ratio,
        mean_ratio,
        max_coordinate_violations,
    }
}

/// Runs a full experiment and returns its summary.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentSummary> {
    Ok(summarize(&run_trials(config)?))
}
