//! Deviation bounds, isometry recovery and certification of finite point maps.
//!
//! A point map is a finite domain D ⊂ ℝⁿ (containing 0 and the standard
//! basis, inside the ball of radius d) together with its images. For a map
//! whose measured distortion ε stays below the admissible budget of a
//! constant table, a true isometry U exists with
//!
//!   ‖f(x) − U(x)‖ ≤ B(n, d)·ε,   B(n, d)² = Σ_i ((2 + S_i)d + 4 + S_i)²,
//!
//! where S_i is the i-th row sum of the table. [`certify`] recovers U two
//! ways — through the canonical alignment (the constructive route behind
//! the bound) and through an orthogonal Procrustes fit (an independent
//! least-squares oracle) — and checks the bound empirically.

use std::fmt;

use crate::canonical::{canonical_alignment, AlignedFrame};
use crate::constants::{ConstantTable, EpsilonBudget};
use crate::error::{Error, Result};
use crate::linalg::{self, jacobi_svd, norm, sub, Matrix};

/// Coordinate tolerance when locating the mandatory points 0, e_1, …, e_n.
pub const COORD_MATCH_TOL: f64 = 1e-12;
/// Slack allowed on the radius constraint ‖x‖ ≤ d.
const RADIUS_TOL: f64 = 1e-12;
/// Absolute floating-point allowance in the certification comparison;
/// stands in for exact zero when the measured distortion vanishes.
pub const CERTIFY_FP_SLACK: f64 = 1e-10;
/// Absolute slack absorbing alignment round-off in coordinate-bound checks.
const COORD_CHECK_SLACK: f64 = 1e-12;

// ── Point maps ──────────────────────────────────────────────────────

/// A finite ε-isometry candidate: domain points, their images, and the
/// radius d of the ball containing the domain.
#[derive(Debug, Clone)]
pub struct PointMap {
    n: usize,
    domain: Vec<Vec<f64>>,
    images: Vec<Vec<f64>>,
    d: f64,
    origin_idx: usize,
    basis_idx: Vec<usize>,
}

impl PointMap {
    /// Validates and builds a point map.
    ///
    /// Requirements: index-aligned domain/image sequences of n-vectors with
    /// finite entries, d ≥ 1, every domain point inside the radius-d ball,
    /// and 0 and every e_i present among the domain points (to within
    /// [`COORD_MATCH_TOL`] per coordinate).
    pub fn new(
        n: usize,
        domain: Vec<Vec<f64>>,
        images: Vec<Vec<f64>>,
        d: f64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be ≥ 1".into()));
        }
        if domain.len() != images.len() {
            return Err(Error::InvalidInput(format!(
                "domain has {} points but images has {}",
                domain.len(),
                images.len()
            )));
        }
        if !d.is_finite() || d < 1.0 {
            return Err(Error::InvalidInput(format!("radius d must be ≥ 1, got {d}")));
        }
        for (what, pts) in [("domain", &domain), ("image", &images)] {
            for (k, p) in pts.iter().enumerate() {
                if p.len() != n {
                    return Err(Error::InvalidInput(format!(
                        "{what} point {k} has dimension {}, expected {n}",
                        p.len()
                    )));
                }
                if p.iter().any(|x| !x.is_finite()) {
                    return Err(Error::InvalidInput(format!(
                        "{what} point {k} has a non-finite coordinate"
                    )));
                }
            }
        }
        for (k, p) in domain.iter().enumerate() {
            if norm(p) > d + RADIUS_TOL {
                return Err(Error::InvalidInput(format!(
                    "domain point {k} has norm {} outside the radius-{d} ball",
                    norm(p)
                )));
            }
        }

        let find = |target: &dyn Fn(usize) -> f64| -> Option<usize> {
            domain.iter().position(|p| {
                p.iter()
                    .enumerate()
                    .all(|(j, &x)| (x - target(j)).abs() <= COORD_MATCH_TOL)
            })
        };
        let origin_idx = find(&|_| 0.0)
            .ok_or_else(|| Error::InvalidInput("domain must contain the origin".into()))?;
        let mut basis_idx = Vec::with_capacity(n);
        for i in 0..n {
            let idx = find(&|j| if j == i { 1.0 } else { 0.0 }).ok_or_else(|| {
                Error::InvalidInput(format!("domain must contain the basis vector e_{}", i + 1))
            })?;
            basis_idx.push(idx);
        }

        Ok(PointMap {
            n,
            domain,
            images,
            d,
            origin_idx,
            basis_idx,
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> f64 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn domain_points(&self) -> &[Vec<f64>] {
        &self.domain
    }

    pub fn image_points(&self) -> &[Vec<f64>] {
        &self.images
    }

    /// The image of the origin.
    pub fn image_of_origin(&self) -> &[f64] {
        &self.images[self.origin_idx]
    }

    /// Images of e_1, …, e_n in basis order.
    pub fn basis_images(&self) -> Vec<Vec<f64>> {
        self.basis_idx
            .iter()
            .map(|&k| self.images[k].clone())
            .collect()
    }

    /// Maximum distortion: the largest |‖f(x) − f(y)‖ − ‖x − y‖| over all
    /// unordered pairs, with ‖f(0)‖ folded in (a map that moves the origin
    /// cannot be an ε-isometry fixing 0 for any smaller ε).
    pub fn distortion(&self) -> f64 {
        let pairwise = pairwise_distortion(&self.domain, &self.images);
        pairwise.max(norm(&self.images[self.origin_idx]))
    }

    /// The recentered map g(x) = f(x) − f(0) together with the translation
    /// f(0). Pairwise distances, and hence the distortion, are unchanged.
    pub fn recentered(&self) -> (PointMap, Vec<f64>) {
        let t = self.images[self.origin_idx].clone();
        let images = self.images.iter().map(|p| sub(p, &t)).collect();
        let pm = PointMap {
            n: self.n,
            domain: self.domain.clone(),
            images,
            d: self.d,
            origin_idx: self.origin_idx,
            basis_idx: self.basis_idx.clone(),
        };
        (pm, t)
    }
}

pub(crate) fn pairwise_distortion(domain: &[Vec<f64>], images: &[Vec<f64>]) -> f64 {
    let m = domain.len();
    let mut worst = 0.0_f64;
    for k in 0..m {
        for l in (k + 1)..m {
            let gap = linalg::distance(&images[k], &images[l])
                - linalg::distance(&domain[k], &domain[l]);
            worst = worst.max(gap.abs());
        }
    }
    worst
}

// ── Deviation bound and the classical comparison ────────────────────

/// The coefficients (a, b, c) of B(n, d)² = a·d² + b·d + c, computed in
/// exact integer arithmetic over the table.
pub fn bound_squared_polynomial(table: &ConstantTable) -> (u64, u64, u64) {
    let mut a = 0;
    let mut b = 0;
    let mut c = 0;
    for i in 1..=table.n() {
        let s = table.row_sum(i);
        a += (2 + s) * (2 + s);
        b += 2 * (2 + s) * (4 + s);
        c += (4 + s) * (4 + s);
    }
    (a, b, c)
}

/// B(n, d) = sqrt(Σ_i ((2 + S_i)·d + 4 + S_i)²); the guaranteed deviation
/// bound for an admissible map of distortion ε is B(n, d)·ε.
pub fn bound_coefficient(n: usize, d: f64, table: &ConstantTable) -> Result<f64> {
    if n != table.n() {
        return Err(Error::InvalidInput(format!(
            "table is for dimension {}, requested {n}",
            table.n()
        )));
    }
    if !d.is_finite() || d < 1.0 {
        return Err(Error::InvalidInput(format!("radius d must be ≥ 1, got {d}")));
    }
    let mut total = 0.0;
    for i in 1..=n {
        let s = table.row_sum(i) as f64;
        let term = (2.0 + s) * d + 4.0 + s;
        total += term * term;
    }
    Ok(total.sqrt())
}

/// An integer linear majorant (a·d + b) of B(n, d): a = ⌈√A⌉, b = ⌈√C⌉ for
/// B² = A·d² + B'·d + C. Cauchy-Schwarz gives 2ab ≥ B', so it dominates
/// for every d ≥ 0.
pub fn bound_linear_majorant(table: &ConstantTable) -> (u64, u64) {
    let (a, _, c) = bound_squared_polynomial(table);
    (ceil_sqrt(a), ceil_sqrt(c))
}

fn ceil_sqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt().ceil() as u64;
    while r * r < x {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= x {
        r -= 1;
    }
    r
}

/// The classical bounded-domain deviation bound 27·ε^(1/2ⁿ).
pub fn fickett_bound(n: u32, eps: f64) -> f64 {
    debug_assert!(eps > 0.0, "eps must be positive");
    27.0 * eps.powf(1.0 / 2.0_f64.powi(n as i32))
}

/// The ε* at which B(n, d)·ε equals the classical bound 27·ε^(1/2ⁿ);
/// for ε < ε* the linear-in-ε bound is strictly smaller.
pub fn crossover_epsilon(n: usize, d: f64, table: &ConstantTable) -> Result<f64> {
    Ok(crossover_from_bound(n as u32, bound_coefficient(n, d, table)?))
}

/// Closed form of the crossover: ε* = (27/b)^(2ⁿ/(2ⁿ−1)).
pub fn crossover_from_bound(n: u32, b: f64) -> f64 {
    let p = 2.0_f64.powi(n as i32);
    (27.0 / b).powf(p / (p - 1.0))
}

// ── Isometry recovery ───────────────────────────────────────────────

/// A recovered isometry x ↦ q·x + t. The translation is zero unless the
/// map was recentered.
#[derive(Debug, Clone)]
pub struct IsometryEstimate {
    pub q: Matrix,
    pub t: Vec<f64>,
}

/// Recovers an isometry from the canonical alignment of the basis images:
/// q = Pᵀ, so that ‖f(x) − q·x‖ = ‖P·f(x) − x‖ pointwise. This is the
/// constructive route the deviation bound certifies.
pub fn recover_isometry_alignment(pm: &PointMap) -> Result<IsometryEstimate> {
    let frame = canonical_alignment(&pm.basis_images())?;
    Ok(IsometryEstimate {
        q: frame.p().transpose(),
        t: vec![0.0; pm.dimension()],
    })
}

/// Least-squares recovery over the full orthogonal group (reflections
/// permitted): q minimizes Σ_k ‖f(x_k) − q·x_k‖², via the SVD of the
/// cross-covariance Σ_k f(x_k)·x_kᵀ.
pub fn recover_isometry_procrustes(pm: &PointMap) -> Result<IsometryEstimate> {
    let n = pm.dimension();
    let mut cross = Matrix::zeros(n);
    for (x, y) in pm.domain.iter().zip(&pm.images) {
        for i in 0..n {
            for j in 0..n {
                cross[(i, j)] += y[i] * x[j];
            }
        }
    }
    let svd = jacobi_svd(&cross)?;
    if svd.s[0] <= 1e-12 {
        return Err(Error::AmbiguousFit(
            "cross-covariance has rank 0; every orthogonal matrix fits equally".into(),
        ));
    }
    Ok(IsometryEstimate {
        q: svd.u.mul(&svd.v.transpose()),
        t: vec![0.0; n],
    })
}

/// Sup and Frobenius deviations of the map from x ↦ q·x over the domain.
pub fn deviations(pm: &PointMap, q: &Matrix) -> (f64, f64) {
    let mut sup = 0.0_f64;
    let mut sum_sq = 0.0;
    for (x, y) in pm.domain.iter().zip(&pm.images) {
        let dev = linalg::distance(y, &q.mul_vec(x));
        sup = sup.max(dev);
        sum_sq += dev * dev;
    }
    (sup, sum_sq.sqrt())
}

// ── Coordinate-bound verification ───────────────────────────────────

/// Aligns the basis images and counts violations of the coordinate bounds
/// −c_ij·ε ≤ e′_ij ≤ c_ij·ε (i > j) and 1 − c_ii·ε ≤ e′_ii ≤ 1 + ε.
///
/// For maps whose distortion is at most `eps` with `eps` below the budget,
/// the count is guaranteed to be zero; out-of-hypothesis maps still run and
/// simply report their count. Comparisons carry a 1e−12 absolute slack for
/// alignment round-off.
pub fn verify_coordinate_bounds(pm: &PointMap, table: &ConstantTable, eps: f64) -> Result<usize> {
    if pm.dimension() != table.n() {
        return Err(Error::InvalidInput(format!(
            "table dimension {} does not match map dimension {}",
            table.n(),
            pm.dimension()
        )));
    }
    let frame = canonical_alignment(&pm.basis_images())?;
    Ok(count_coordinate_violations(&frame, table, eps))
}

pub(crate) fn count_coordinate_violations(
    frame: &AlignedFrame,
    table: &ConstantTable,
    eps: f64,
) -> usize {
    let n = table.n();
    let mut violations = 0;
    for i in 1..=n {
        for j in 1..=i {
            let e = frame.eprime(i, j);
            let c = table.c(i, j) as f64;
            let (lo, hi) = if i == j {
                (1.0 - c * eps, 1.0 + eps)
            } else {
                (-c * eps, c * eps)
            };
            if e < lo - COORD_CHECK_SLACK || e > hi + COORD_CHECK_SLACK {
                violations += 1;
            }
        }
    }
    violations
}

// ── Certification ───────────────────────────────────────────────────

/// Outcome of a certification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Distortion below budget and the recovered isometry meets the bound.
    Certified,
    /// Measured distortion is not below the admissible supremum; the
    /// guarantee does not apply (recoveries are still reported).
    InadmissibleEpsilon,
    /// Distortion was admissible but the bound failed — this would
    /// falsify the implementation, not the mathematics.
    BoundViolated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified => write!(f, "certified"),
            Verdict::InadmissibleEpsilon => write!(f, "inadmissible_epsilon"),
            Verdict::BoundViolated => write!(f, "bound_violated"),
        }
    }
}

/// Everything [`certify`] measures about a point map.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub epsilon_measured: f64,
    pub budget: EpsilonBudget,
    pub admissible: bool,
    /// B(n, d) for the map's table and radius.
    pub bound_coefficient: f64,
    /// B(n, d)·ε_measured, the guaranteed deviation when admissible.
    pub bound_value: f64,
    pub sup_deviation_alignment: f64,
    pub sup_deviation_procrustes: f64,
    pub frobenius_deviation_alignment: f64,
    pub frobenius_deviation_procrustes: f64,
    pub coordinate_bound_violations: usize,
    pub verdict: Verdict,
    pub alignment: IsometryEstimate,
    pub procrustes: IsometryEstimate,
}

/// Certifies a point map against a constant table.
///
/// With `recenter` set the map is first translated by −f(0) (distortion is
/// unchanged by this); otherwise ‖f(0)‖ is folded into the measured
/// distortion. The verdict is `Certified` when the distortion is strictly
/// below the budget and the alignment recovery satisfies the deviation
/// bound (with [`CERTIFY_FP_SLACK`] absorbing round-off at ε ≈ 0).
pub fn certify(pm: &PointMap, table: &ConstantTable, recenter: bool) -> Result<StabilityReport> {
    if pm.dimension() != table.n() {
        return Err(Error::InvalidInput(format!(
            "table dimension {} does not match map dimension {}",
            table.n(),
            pm.dimension()
        )));
    }
    let (work, t) = if recenter {
        pm.recentered()
    } else {
        (pm.clone(), vec![0.0; pm.dimension()])
    };

    let eps = work.distortion();
    let budget = table.epsilon_sup();
    let admissible = table.admits(eps);

    let mut alignment = recover_isometry_alignment(&work)?;
    let mut procrustes = recover_isometry_procrustes(&work)?;
    let (sup_a, frob_a) = deviations(&work, &alignment.q);
    let (sup_p, frob_p) = deviations(&work, &procrustes.q);
    alignment.t = t.clone();
    procrustes.t = t;

    let b = bound_coefficient(pm.dimension(), pm.radius(), table)?;
    let bound_value = b * eps;
    let violations = verify_coordinate_bounds(&work, table, eps)?;

    let verdict = if !admissible {
        Verdict::InadmissibleEpsilon
    } else if sup_a <= bound_value + CERTIFY_FP_SLACK {
        Verdict::Certified
    } else {
        Verdict::BoundViolated
    };

    Ok(StabilityReport {
        epsilon_measured: eps,
        budget,
        admissible,
        bound_coefficient: b,
        bound_value,
        sup_deviation_alignment: sup_a,
        sup_deviation_procrustes: sup_p,
        frobenius_deviation_alignment: frob_a,
        frobenius_deviation_procrustes: frob_p,
        coordinate_bound_violations: violations,
        verdict,
        alignment,
        procrustes,
    })
}
