//! Small dense real linear algebra.
//!
//! Everything here targets tiny square matrices (n ≤ ~32): QR with a
//! nonnegative diagonal, orthogonality testing, a one-sided Jacobi SVD,
//! and seeded random orthogonal matrices. All routines are pure functions
//! of their inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Relative QR reconstruction tolerance: ‖QR − A‖_F ≤ tol · max(1, ‖A‖_F).
pub const QR_RECONSTRUCTION_TOL: f64 = 1e-12;
/// Entrywise tolerance below which R is considered upper triangular.
pub const QR_ZERO_TOL: f64 = 1e-13;
/// Orthogonality tolerance for QR factors, max |QᵀQ − I|.
pub const QR_ORTHOGONALITY_TOL: f64 = 1e-12;
/// Orthogonality and reconstruction tolerance for the Jacobi SVD.
pub const SVD_TOL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense square matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Build from row-major entries. Fails on a length mismatch or any
    /// non-finite entry.
    pub fn from_rows(n: usize, entries: &[f64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("matrix dimension must be ≥ 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {n}×{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Matrix {
            n,
            data: entries.to_vec(),
        })
    }

    /// Build from column vectors (column i of the result is `columns[i]`).
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let n = columns.len();
        if n == 0 {
            return Err(Error::InvalidInput("matrix dimension must be ≥ 1".into()));
        }
        let mut m = Matrix::zeros(n);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(Error::InvalidInput(format!(
                    "column {j} has length {}, expected {n}",
                    col.len()
                )));
            }
            for (i, &x) in col.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::InvalidInput("matrix entries must be finite".into()));
                }
                m[(i, j)] = x;
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.n, x.len(), "dimension mismatch in matrix-vector product");
        let n = self.n;
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut s = 0.0;
            for j in 0..n {
                s += self[(i, j)] * x[j];
            }
            out[i] = s;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest entrywise absolute difference to another matrix.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

// ── Vector helpers ──────────────────────────────────────────────────

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    norm(&sub(a, b))
}

// ── QR decomposition ────────────────────────────────────────────────

/// Result of [`householder_qr`]: `a = q · r` with `q` orthogonal, `r`
/// upper triangular and `diag(r) ≥ 0`.
#[derive(Debug, Clone)]
pub struct QrResult {
    pub q: Matrix,
    pub r: Matrix,
}

/// QR decomposition by Householder reflections, with the diagonal of R
/// normalized to be nonnegative (negative pivots flip the corresponding
/// row of R and column of Q).
///
/// Zero columns are allowed; they leave a zero pivot on the diagonal.
pub fn householder_qr(a: &Matrix) -> Result<QrResult> {
    if !a.is_finite() {
        return Err(Error::InvalidInput("matrix entries must be finite".into()));
    }
    let n = a.n;
    let mut r = a.clone();
    let mut q = Matrix::identity(n);
    let mut v = vec![0.0; n];

    for k in 0..n {
        let mut sub_sq = 0.0;
        for i in (k + 1)..n {
            sub_sq += r[(i, k)] * r[(i, k)];
        }
        let x0 = r[(k, k)];
        if sub_sq == 0.0 {
            // Nothing below the pivot; sign handled by the final pass.
            continue;
        }
        let norm_x = (x0 * x0 + sub_sq).sqrt();
        // Sign chosen so v never cancels.
        let alpha = if x0 >= 0.0 { -norm_x } else { norm_x };
        v[k] = x0 - alpha;
        for i in (k + 1)..n {
            v[i] = r[(i, k)];
        }
        let vnorm = dot(&v[k..n], &v[k..n]).sqrt();
        for x in v[k..n].iter_mut() {
            *x /= vnorm;
        }

        // Column k maps to alpha·e_k by construction.
        r[(k, k)] = alpha;
        for i in (k + 1)..n {
            r[(i, k)] = 0.0;
        }
        // Apply H = I − 2vvᵀ to the remaining columns of R.
        for j in (k + 1)..n {
            let mut w = 0.0;
            for i in k..n {
                w += v[i] * r[(i, j)];
            }
            w *= 2.0;
            for i in k..n {
                r[(i, j)] -= w * v[i];
            }
        }
        // Accumulate Q ← Q·H.
        for i in 0..n {
            let mut w = 0.0;
            for j in k..n {
                w += q[(i, j)] * v[j];
            }
            w *= 2.0;
            for j in k..n {
                q[(i, j)] -= w * v[j];
            }
        }
    }

    // Normalize signs: A = (QD)(DR) for D = diag(±1).
    for i in 0..n {
        if r[(i, i)] < 0.0 {
            for j in i..n {
                r[(i, j)] = -r[(i, j)];
            }
            for row in 0..n {
                q[(row, i)] = -q[(row, i)];
            }
        }
    }

    Ok(QrResult { q, r })
}

/// True iff max |qᵀq − I| ≤ tol.
pub fn is_orthogonal(q: &Matrix, tol: f64) -> bool {
    debug_assert!(tol > 0.0, "tolerance must be positive");
    q.transpose().mul(q).max_abs_diff(&Matrix::identity(q.n)) <= tol
}

// ── Singular value decomposition ────────────────────────────────────

/// Result of [`jacobi_svd`]: `a = u · diag(s) · vᵀ` with `u`, `v`
/// orthogonal and `s` nonincreasing and nonnegative.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Matrix,
    pub s: Vec<f64>,
    pub v: Matrix,
}

/// One-sided Jacobi SVD.
///
/// Rotates column pairs of a working copy of `a` until all pairs are
/// numerically orthogonal, accumulating the rotations into V; singular
/// values are the resulting column norms. Columns with zero singular
/// value are completed to an orthonormal basis of U.
pub fn jacobi_svd(a: &Matrix) -> Result<Svd> {
    if !a.is_finite() {
        return Err(Error::InvalidInput("matrix entries must be finite".into()));
    }
    let n = a.n;
    let mut w = a.clone();
    let mut v = Matrix::identity(n);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut max_rel = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = 0.0;
                for i in 0..n {
                    app += w[(i, p)] * w[(i, p)];
                    aqq += w[(i, q)] * w[(i, q)];
                    apq += w[(i, p)] * w[(i, q)];
                }
                if app == 0.0 || aqq == 0.0 {
                    continue;
                }
                let rel = apq.abs() / (app * aqq).sqrt();
                max_rel = max_rel.max(rel);
                if rel <= 1e-15 {
                    continue;
                }
                let zeta = (aqq - app) / (2.0 * apq);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..n {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)];
                    w[(i, p)] = c * wp - s * wq;
                    w[(i, q)] = s * wp + c * wq;
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
        if max_rel <= 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            what: "one-sided Jacobi SVD",
            limit: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n)
        .map(|j| (0..n).map(|i| w[(i, j)] * w[(i, j)]).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap());

    let mut u = Matrix::zeros(n);
    let mut s = vec![0.0; n];
    let mut vs = Matrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        s[dst] = norms[src];
        for i in 0..n {
            vs[(i, dst)] = v[(i, src)];
            if norms[src] > 0.0 {
                u[(i, dst)] = w[(i, src)] / norms[src];
            }
        }
    }

    // Complete zero-σ columns of U to an orthonormal basis.
    for j in 0..n {
        if s[j] > 0.0 {
            continue;
        }
        let mut best: Option<(f64, Vec<f64>)> = None;
        for cand in 0..n {
            let mut r = vec![0.0; n];
            r[cand] = 1.0;
            for m in 0..n {
                if m == j || (s[m] == 0.0 && m > j) {
                    continue;
                }
                let proj: f64 = (0..n).map(|i| u[(i, m)] * r[i]).sum();
                for i in 0..n {
                    r[i] -= proj * u[(i, m)];
                }
            }
            let rn = norm(&r);
            if best.as_ref().is_none_or(|(bn, _)| rn > *bn) {
                best = Some((rn, r));
            }
        }
        let (rn, r) = best.unwrap();
        for i in 0..n {
            u[(i, j)] = r[i] / rn;
        }
    }

    Ok(Svd { u, s, v: vs })
}

// ── Random orthogonal matrices ──────────────────────────────────────

/// Seeded standard-Gaussian matrix (test-data generation).
pub fn gaussian_matrix(n: usize, seed: u64) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = rng.sample(StandardNormal);
        }
    }
    Ok(m)
}

/// Deterministic random orthogonal matrix: the Q factor of the QR
/// decomposition of a seeded Gaussian matrix.
pub fn random_orthogonal(n: usize, seed: u64) -> Result<Matrix> {
    let g = gaussian_matrix(n, seed)?;
    Ok(householder_qr(&g)?.q)
}
