//! Reference oracles shared by the integration suites.
//!
//! These are deliberately independent of the implementations they check:
//! QR is cross-checked against modified Gram-Schmidt, singular values
//! against a two-sided Jacobi eigensolve of aᵀa.

#![allow(dead_code)]

use isostab::Matrix;

/// Modified Gram-Schmidt QR for nonsingular matrices; the diagonal of R is
/// positive by construction.
pub fn gram_schmidt_qr(a: &Matrix) -> (Matrix, Matrix) {
    let n = a.n();
    let mut q = Matrix::zeros(n);
    let mut r = Matrix::zeros(n);
    for j in 0..n {
        let mut v: Vec<f64> = (0..n).map(|i| a[(i, j)]).collect();
        for i in 0..j {
            let proj: f64 = (0..n).map(|k| q[(k, i)] * v[k]).sum();
            r[(i, j)] = proj;
            for (k, x) in v.iter_mut().enumerate() {
                *x -= proj * q[(k, i)];
            }
        }
        let nrm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!(nrm > 0.0, "Gram-Schmidt oracle needs a nonsingular matrix");
        r[(j, j)] = nrm;
        for k in 0..n {
            q[(k, j)] = v[k] / nrm;
        }
    }
    (q, r)
}

/// Eigenvalues of a symmetric matrix by classical two-sided Jacobi
/// rotations, sorted descending.
pub fn symmetric_eigenvalues(a: &Matrix) -> Vec<f64> {
    let n = a.n();
    let mut m = a.clone();
    for _sweep in 0..200 {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[(p, q)].abs());
            }
        }
        let scale = m.frobenius_norm().max(1.0);
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // Rotate columns p, q then rows p, q.
                for i in 0..n {
                    let aip = m[(i, p)];
                    let aiq = m[(i, q)];
                    m[(i, p)] = c * aip - s * aiq;
                    m[(i, q)] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let api = m[(p, i)];
                    let aqi = m[(q, i)];
                    m[(p, i)] = c * api - s * aqi;
                    m[(q, i)] = s * api + c * aqi;
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    vals
}

/// Gram matrix aᵀa.
pub fn gram(a: &Matrix) -> Matrix {
    a.transpose().mul(a)
}

/// Frobenius norm of (a − b).
pub fn frobenius_diff(a: &Matrix, b: &Matrix) -> f64 {
    let n = a.n();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let d = a[(i, j)] - b[(i, j)];
            sum += d * d;
        }
    }
    sum.sqrt()
}
