//! Stability machinery for ε-isometries on bounded subsets of ℝⁿ.
//!
//! An ε-isometry is a map whose pairwise-distance distortion
//! |‖f(x) − f(y)‖ − ‖x − y‖| never exceeds ε. For a finite domain that
//! contains 0 and the standard basis and sits inside a ball of radius d,
//! this crate:
//!
//! * builds the lower-triangular integer table c_ij bounding the aligned
//!   coordinates of the basis images, together with the admissible ε
//!   budget min{1/σ, min 1/(2c_ii), 1/12} ([`constants`]);
//! * evaluates the explicit deviation bound B(n, d)·ε and compares it with
//!   the classical 27·ε^(1/2ⁿ) bound ([`stability`]);
//! * recovers a nearby true isometry, by canonical frame alignment and by
//!   an independent orthogonal Procrustes fit, and certifies point maps
//!   against the bound ([`stability::certify`]);
//! * generates seeded synthetic ε-isometries and drives Monte Carlo
//!   certification experiments ([`harness`]).

pub mod canonical;
pub mod constants;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod stability;

pub use canonical::{canonical_alignment, AlignedFrame};
pub use constants::{
    diagonal_constant, subdiagonal_constant, ConstantTable, EpsilonBudget, Mode,
};
pub use error::{Error, Result};
pub use harness::{
    derive_seed, perturbed_isometry, random_point_cloud, run_experiment, run_trials, summarize,
    ExperimentConfig, ExperimentSummary, TrialRecord,
};
pub use linalg::{
    householder_qr, is_orthogonal, jacobi_svd, random_orthogonal, Matrix, QrResult, Svd,
};
pub use stability::{
    bound_coefficient, bound_linear_majorant, bound_squared_polynomial, certify,
    crossover_epsilon, crossover_from_bound, deviations, fickett_bound,
    recover_isometry_alignment, recover_isometry_procrustes, verify_coordinate_bounds,
    IsometryEstimate, PointMap, StabilityReport, Verdict,
};
