//! The integer recurrence engine for the stability-constant table.
//!
//! For dimension n ≥ 3 the table c_ij (lower triangular, positive integers)
//! bounds the aligned coordinates of an ε-isometry's basis images:
//!
//!   −c_ij·ε ≤ e′_ij ≤ c_ij·ε   (i > j),
//!   1 − c_ii·ε ≤ e′_ii ≤ 1 + ε (i = j),
//!
//! valid for every ε below the admissible supremum
//! min{1/σ, min_i 1/(2c_ii), 1/12} with σ = Σ c_(i+1)i².
//!
//! The entries come from two recurrences, walked along the leading diagonal
//! (c_11, c_21, c_22, c_32, c_33, …):
//!
//!   diagonal:    c_jj = smallest positive integer with
//!                (3c_jj − 1)(c_jj − 1) ≥ Σ_{i<j} c_(i+1)i²
//!   subdiagonal: c_(k+1)k = smallest positive integer c with
//!                c ≥ (4 + 2√2 + ε + 2·Σ_{i<k} c_ki c_(k+1)i·ε) / (2(1 − c_kk·ε))
//!
//! evaluated at an ε-supremum that tightens as the table grows; every other
//! entry follows by row propagation, c_ik = c_(k+1)k for i > k.
//!
//! All threshold comparisons are carried out in exact rational arithmetic.
//! The constants are the deliverable here, and a floating-point rounding
//! near an inequality boundary could silently change one of them; the √2
//! term is compared by squaring, tracking the sign precondition.

use std::fmt;

use num::rational::BigRational;
use num::{BigInt, One, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// ε-supremum schedule used while building a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// The historical schedule: ε = 1/12 for the first two subdiagonal
    /// entries, then the running 1/(Σ c_(i+1)i²) refinement. Reproduces
    /// the classical worked tables entry for entry.
    Paper,
    /// The sharpest admissible ε at every step:
    /// min{1/12, 1/(2c_kk), 1/(Σ c_(i+1)i²)}. Never produces larger
    /// constants than `Paper`.
    Tight,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Paper => write!(f, "paper"),
            Mode::Tight => write!(f, "tight"),
        }
    }
}

/// σ together with the admissible ε-supremum min{1/σ, min 1/(2c_ii), 1/12}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonBudget {
    /// Σ_{i=1}^{n−1} c_(i+1)i², exact.
    pub sigma: u64,
    /// Exact admissible supremum; distortions must stay strictly below it.
    pub eps_sup: BigRational,
}

impl EpsilonBudget {
    /// Nearest-f64 rendering of the exact supremum.
    pub fn eps_sup_f64(&self) -> f64 {
        self.eps_sup.to_f64().expect("budget is a finite rational")
    }
}

/// Lower-triangular table of stability constants for a fixed dimension.
///
/// Thanks to row propagation only the diagonal and the first subdiagonal
/// are stored; `c(i, j)` reconstructs any entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantTable {
    n: usize,
    mode: Mode,
    diag: Vec<u64>,    // c_11 … c_nn
    subdiag: Vec<u64>, // c_21, c_32, …, c_n(n−1)
}

impl ConstantTable {
    /// Builds the table for dimension `n ≥ 3` by the alternating recurrence,
    /// then fills rows by propagation.
    ///
    /// ```
    /// use isostab::constants::{ConstantTable, Mode};
    /// let t = ConstantTable::build(4, Mode::Paper).unwrap();
    /// assert_eq!(t.c(4, 3), 5);
    /// assert_eq!(t.sigma(), 90);
    /// ```
    pub fn build(n: usize, mode: Mode) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "constant tables require dimension n ≥ 3, got {n}"
            )));
        }
        let mut diag: Vec<u64> = vec![1]; // c_11 = 1
        let mut subdiag: Vec<u64> = Vec::with_capacity(n - 1);
        for j in 2..=n {
            let k = j - 1;
            let partial: u64 = subdiag.iter().map(|c| c * c).sum();
            let eps = schedule_eps(mode, k, partial, diag[k - 1]);
            let c_next = smallest_subdiagonal(diag[k - 1], partial, &eps)?;
            subdiag.push(c_next);
            diag.push(smallest_diagonal(partial + c_next * c_next));
        }
        Ok(ConstantTable {
            n,
            mode,
            diag,
            subdiag,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Entry c_ij, 1-based with j ≤ i ≤ n (the table is lower triangular).
    ///
    /// Panics on indices outside the triangle.
    pub fn c(&self, i: usize, j: usize) -> u64 {
        assert!(
            j >= 1 && j <= i && i <= self.n,
            "c_ij indices are 1-based with j ≤ i ≤ n"
        );
        if i == j {
            self.diag[i - 1]
        } else {
            // Row propagation: c_ij = c_(j+1)j for every i > j.
            self.subdiag[j - 1]
        }
    }

    /// Row sum S_i = Σ_{j=1}^i c_ij.
    pub fn row_sum(&self, i: usize) -> u64 {
        (1..=i).map(|j| self.c(i, j)).sum()
    }

    /// σ = Σ_{i=1}^{n−1} c_(i+1)i², exact integer arithmetic.
    pub fn sigma(&self) -> u64 {
        self.subdiag.iter().map(|c| c * c).sum()
    }

    /// The admissible ε budget of this table.
    pub fn epsilon_sup(&self) -> EpsilonBudget {
        let sigma = self.sigma();
        let mut eps = ratio(1, 12);
        eps = eps.min(ratio_u(1, sigma));
        for &c in &self.diag {
            eps = eps.min(ratio_u(1, 2 * c));
        }
        EpsilonBudget { sigma, eps_sup: eps }
    }
}

/// The ε-supremum a schedule feeds to the subdiagonal recurrence at step k
/// (the step that determines c_(k+1)k), given the partial σ and c_kk
/// computed so far.
fn schedule_eps(mode: Mode, k: usize, partial_sigma: u64, c_kk: u64) -> BigRational {
    let twelfth = ratio(1, 12);
    match mode {
        Mode::Paper => {
            if k <= 2 {
                twelfth
            } else {
                ratio_u(1, partial_sigma)
            }
        }
        Mode::Tight => {
            let mut eps = twelfth.min(ratio_u(1, 2 * c_kk));
            if partial_sigma > 0 {
                eps = eps.min(ratio_u(1, partial_sigma));
            }
            eps
        }
    }
}

/// Smallest positive integer c with (3c − 1)(c − 1) ≥ sum_sq.
///
/// Starts from the closed-form root ⌈(2 + √(1 + 3·sum_sq))/3⌉ and adjusts
/// by exact integer checks, so a floating-point boundary can never shift
/// the result.
fn smallest_diagonal(sum_sq: u64) -> u64 {
    let holds = |c: u64| (3 * c as u128 - 1) * (c as u128 - 1) >= sum_sq as u128;
    let guess = ((2.0 + (1.0 + 3.0 * sum_sq as f64).sqrt()) / 3.0).ceil();
    let mut c = (guess as u64).max(1);
    while c > 1 && holds(c - 1) {
        c -= 1;
    }
    while !holds(c) {
        c += 1;
    }
    c
}

/// Exact test for c ≥ (4 + 2√2 + ε + 2·sum_sq·ε) / (2(1 − c_kk·ε)).
///
/// Rearranged to L := 2c(1 − c_kk·ε) − (4 + ε + 2·sum_sq·ε) ≥ 2√2, which
/// holds iff L > 0 and L² ≥ 8; both sides are rational.
fn subdiagonal_ok(c: u64, c_kk: u64, sum_sq: u64, eps: &BigRational) -> bool {
    let two = BigRational::from_integer(BigInt::from(2));
    let l = &two * rat(c) * (BigRational::one() - rat(c_kk) * eps)
        - (rat(4) + eps + &two * rat(sum_sq) * eps);
    l.is_positive() && &l * &l >= rat(8)
}

/// Smallest positive integer clearing the subdiagonal threshold at `eps`.
///
/// Requires eps ∈ (0, 1/12] and eps < 1/(2·c_kk); otherwise the bounding
/// denominator 2(1 − c_kk·ε) degenerates and no admissible constant exists.
fn smallest_subdiagonal(c_kk: u64, sum_sq: u64, eps: &BigRational) -> Result<u64> {
    if !eps.is_positive() || eps > &ratio(1, 12) {
        return Err(Error::InvalidInput(format!(
            "eps_upper must lie in (0, 1/12], got {eps}"
        )));
    }
    if eps >= &ratio_u(1, 2 * c_kk) {
        return Err(Error::InadmissibleEpsilon(format!(
            "eps_upper = {eps} is not below 1/(2·{c_kk})"
        )));
    }
    // Exact exponential + binary search for the crossing point.
    let mut hi: u64 = 1;
    while !subdiagonal_ok(hi, c_kk, sum_sq, eps) {
        hi *= 2;
    }
    let mut lo: u64 = hi / 2 + 1; // everything < lo already failed
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if subdiagonal_ok(mid, c_kk, sum_sq, eps) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(hi)
}

/// Smallest admissible diagonal constant c_jj for position `j`, recomputed
/// from the table's subdiagonal prefix. `j` must lie in 2..=n (c_11 is
/// pinned to 1 and has no recurrence).
pub fn diagonal_constant(j: usize, table: &ConstantTable) -> Result<u64> {
    if j < 2 || j > table.n {
        return Err(Error::Sequencing(format!(
            "diagonal entry {j} needs subdiagonal entries 1..{} of an n ≥ {j} table",
            j.saturating_sub(1)
        )));
    }
    let sum_sq: u64 = table.subdiag[..j - 1].iter().map(|c| c * c).sum();
    Ok(smallest_diagonal(sum_sq))
}

/// Smallest admissible subdiagonal constant c_(k+1)k evaluated at
/// `eps_upper`, recomputed from the table's prefix. `k` must lie in
/// 1..=n−1. Fails with an admissibility error when
/// eps_upper ≥ 1/(2·c_kk).
pub fn subdiagonal_constant(
    k: usize,
    table: &ConstantTable,
    eps_upper: &BigRational,
) -> Result<u64> {
    if k < 1 || k >= table.n {
        return Err(Error::Sequencing(format!(
            "subdiagonal entry at step {k} needs diagonal entries 1..={k} of an n > {k} table"
        )));
    }
    let sum_sq: u64 = table.subdiag[..k - 1].iter().map(|c| c * c).sum();
    smallest_subdiagonal(table.diag[k - 1], sum_sq, eps_upper)
}

fn rat(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// p/q with small signed parts.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn ratio_u(p: u64, q: u64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact rational value of an f64 (every finite f64 is p/2^k).
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

impl ConstantTable {
    /// True iff `eps` (taken exactly) is strictly below this table's budget.
    pub fn admits(&self, eps: f64) -> bool {
        match rational_from_f64(eps) {
            Some(r) => !r.is_negative() && r < self.epsilon_sup().eps_sup,
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper(n: usize) -> ConstantTable {
        ConstantTable::build(n, Mode::Paper).unwrap()
    }

    #[test]
    fn paper_table_n4_matches_worked_values() {
        let t = paper(4);
        assert_eq!(t.c(1, 1), 1);
        for i in 2..=4 {
            assert_eq!(t.c(i, 1), 4);
        }
        assert_eq!(t.c(2, 2), 3);
        assert_eq!(t.c(3, 2), 7);
        assert_eq!(t.c(4, 2), 7);
        assert_eq!(t.c(3, 3), 6);
        assert_eq!(t.c(4, 3), 5);
        assert_eq!(t.c(4, 4), 7);
    }

    #[test]
    fn paper_table_n5_adds_expected_row() {
        let t = paper(5);
        assert_eq!(t.c(5, 1), 4);
        assert_eq!(t.c(5, 2), 7);
        assert_eq!(t.c(5, 3), 5);
        assert_eq!(t.c(5, 4), 5);
        assert_eq!(t.c(5, 5), 7);
    }

    #[test]
    fn paper_table_n3_is_the_prefix() {
        let t = paper(3);
        assert_eq!(t.c(1, 1), 1);
        assert_eq!(t.c(2, 1), 4);
        assert_eq!(t.c(3, 1), 4);
        assert_eq!(t.c(2, 2), 3);
        assert_eq!(t.c(3, 2), 7);
        assert_eq!(t.c(3, 3), 6);
        assert_eq!(t.sigma(), 65);
        assert_eq!(t.epsilon_sup().eps_sup, ratio(1, 65));
    }

    #[test]
    fn sigma_and_budget_golden_values() {
        let t4 = paper(4);
        assert_eq!(t4.sigma(), 90);
        assert_eq!(t4.epsilon_sup().eps_sup, ratio(1, 90));
        let t5 = paper(5);
        assert_eq!(t5.sigma(), 115);
        assert_eq!(t5.epsilon_sup().eps_sup, ratio(1, 115));
    }

    #[test]
    fn diagonal_recurrence_golden_values() {
        let t = paper(5);
        assert_eq!(diagonal_constant(2, &t).unwrap(), 3); // from c_21 = 4
        assert_eq!(diagonal_constant(3, &t).unwrap(), 6); // sum 65
        assert_eq!(diagonal_constant(4, &t).unwrap(), 7); // sum 90
        assert_eq!(diagonal_constant(5, &t).unwrap(), 7); // sum 115
    }

    #[test]
    fn subdiagonal_recurrence_golden_values() {
        let t = paper(5);
        let twelfth = ratio(1, 12);
        assert_eq!(subdiagonal_constant(1, &t, &twelfth).unwrap(), 4);
        assert_eq!(subdiagonal_constant(2, &t, &twelfth).unwrap(), 7);
        assert_eq!(subdiagonal_constant(3, &t, &ratio(1, 65)).unwrap(), 5);
        assert_eq!(subdiagonal_constant(4, &t, &ratio(1, 90)).unwrap(), 5);
    }

    #[test]
    fn tight_mode_sharpens_c32() {
        let t = ConstantTable::build(5, Mode::Tight).unwrap();
        assert_eq!(t.c(3, 2), 6);
        // Full tight n = 5 run, recurrences re-derived by hand:
        // eps steps 1/12, 1/16, 1/52, 1/77.
        assert_eq!(t.c(2, 1), 4);
        assert_eq!(t.c(2, 2), 3);
        assert_eq!(t.c(3, 3), 5);
        assert_eq!(t.c(4, 3), 5);
        assert_eq!(t.c(4, 4), 6);
        assert_eq!(t.c(5, 4), 5);
        assert_eq!(t.c(5, 5), 7);
        assert_eq!(t.sigma(), 102);
        assert_eq!(t.epsilon_sup().eps_sup, ratio(1, 102));
    }

    #[test]
    fn tight_never_exceeds_paper() {
        for n in 3..=32 {
            let p = paper(n);
            let t = ConstantTable::build(n, Mode::Tight).unwrap();
            for i in 1..=n {
                for j in 1..=i {
                    assert!(t.c(i, j) <= p.c(i, j), "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn subdiagonal_entries_stay_within_one_to_nine() {
        for mode in [Mode::Paper, Mode::Tight] {
            for n in 3..=32 {
                let t = ConstantTable::build(n, mode).unwrap();
                for k in 1..n {
                    let c = t.c(k + 1, k);
                    assert!((1..=9).contains(&c), "mode={mode} n={n} k={k} c={c}");
                }
            }
        }
    }

    #[test]
    fn paper_budget_is_always_one_over_sigma() {
        // With c_21 = 4 forced at every dimension, σ ≥ 16, and for paper
        // tables up to n = 32 the 1/σ term is the binding one.
        for n in 3..=32 {
            let t = paper(n);
            assert!(t.sigma() >= 16);
            let budget = t.epsilon_sup();
            assert_eq!(budget.eps_sup, ratio_u(1, budget.sigma));
        }
    }

    #[test]
    fn tables_are_deterministic_and_prefix_stable() {
        for mode in [Mode::Paper, Mode::Tight] {
            for n in 3..=16 {
                let a = ConstantTable::build(n, mode).unwrap();
                let b = ConstantTable::build(n, mode).unwrap();
                assert_eq!(a, b);
                let bigger = ConstantTable::build(n + 1, mode).unwrap();
                for i in 1..=n {
                    for j in 1..=i {
                        assert_eq!(a.c(i, j), bigger.c(i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn constants_are_minimal() {
        for mode in [Mode::Paper, Mode::Tight] {
            let t = ConstantTable::build(16, mode).unwrap();
            // Diagonal: one less fails the defining integer inequality.
            for j in 2..=16 {
                let c = t.c(j, j);
                let sum_sq: u64 = (1..j).map(|i| t.c(i + 1, i).pow(2)).sum();
                assert!((3 * c - 1) * (c - 1) >= sum_sq);
                assert!(c == 1 || (3 * (c - 1) - 1) * (c - 2) < sum_sq, "j={j}");
            }
            // Subdiagonal: one less fails the exact threshold test.
            for k in 1..16 {
                let partial: u64 = (1..k).map(|i| t.c(i + 1, i).pow(2)).sum();
                let eps = schedule_eps(mode, k, partial, t.c(k, k));
                let c = t.c(k + 1, k);
                assert!(subdiagonal_ok(c, t.c(k, k), partial, &eps));
                assert!(
                    c == 1 || !subdiagonal_ok(c - 1, t.c(k, k), partial, &eps),
                    "mode={mode} k={k}"
                );
            }
        }
    }

    #[test]
    #[allow(clippy::int_plus_one)] // written as the closed-form inequality
    fn diagonal_matches_closed_form() {
        // Smallest integer ≥ (2 + √(1 + 3S))/3, checked exactly:
        // c ≥ root ⟺ 3c − 2 > 0 and (3c − 2)² ≥ 1 + 3S.
        for s in (0..2000).step_by(7) {
            let c = smallest_diagonal(s);
            let ok = |c: u64| c >= 1 && (3 * c - 2).pow(2) >= 1 + 3 * s;
            assert!(ok(c));
            assert!(c == 1 || !ok(c - 1));
        }
    }

    #[test]
    fn inadmissible_eps_is_rejected() {
        let t = paper(5);
        // c_44 = 7 so eps must stay below 1/14; 1/14 itself degenerates.
        let err = subdiagonal_constant(4, &t, &ratio(1, 14)).unwrap_err();
        assert!(matches!(err, Error::InadmissibleEpsilon(_)));
        assert!(matches!(
            subdiagonal_constant(4, &t, &ratio(1, 13)).unwrap_err(),
            Error::InadmissibleEpsilon(_)
        ));
        assert!(subdiagonal_constant(4, &t, &ratio(1, 15)).is_ok());
    }

    #[test]
    fn out_of_range_requests_are_sequencing_errors() {
        let t = paper(4);
        assert!(matches!(diagonal_constant(1, &t), Err(Error::Sequencing(_))));
        assert!(matches!(diagonal_constant(5, &t), Err(Error::Sequencing(_))));
        assert!(matches!(
            subdiagonal_constant(4, &t, &ratio(1, 90)),
            Err(Error::Sequencing(_))
        ));
    }

    #[test]
    fn small_dimensions_are_rejected() {
        for n in 0..3 {
            assert!(matches!(
                ConstantTable::build(n, Mode::Paper),
                Err(Error::InvalidInput(_))
            ));
        }
    }

    #[test]
    fn admits_compares_exactly() {
        let t = paper(4); // budget 1/90
        assert!(t.admits(1.0 / 180.0));
        assert!(t.admits(0.0111)); // 0.0111 < 1/90 = 0.0111…
        assert!(!t.admits(0.0112));
        assert!(!t.admits(0.5));
        assert!(t.admits(0.0)); // zero distortion is always admissible
    }
}
