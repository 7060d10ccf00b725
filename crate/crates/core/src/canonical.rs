//! Canonical frame alignment.
//!
//! Given the images of the standard basis under a map, finds the orthogonal
//! change of frame P that makes the image matrix upper triangular with a
//! nonnegative diagonal: P·f(e_i) = (e′_i1, …, e′_ii, 0, …, 0)ᵀ. P is the
//! transpose of the Q factor of the column matrix A = (f(e_1) … f(e_n)).

use crate::error::{Error, Result};
use crate::linalg::{householder_qr, Matrix};

/// Orthogonality tolerance for the alignment matrix P.
pub const ALIGNMENT_ORTHOGONALITY_TOL: f64 = 1e-10;

/// An orthogonal alignment P together with the triangular coordinate table
/// of the aligned basis images.
///
/// `eprime(i, j)` (1-based, j ≤ i) is the j-th coordinate of the aligned
/// i-th basis image; entries above the index (j > i) are structurally zero.
#[derive(Debug, Clone)]
pub struct AlignedFrame {
    p: Matrix,
    eprime: Vec<f64>,
}

impl AlignedFrame {
    pub fn dimension(&self) -> usize {
        self.p.n()
    }

    /// The orthogonal alignment matrix, applied from the left.
    pub fn p(&self) -> &Matrix {
        &self.p
    }

    /// Aligned coordinate e′_ij, 1-based indices with j ≤ i required.
    pub fn eprime(&self, i: usize, j: usize) -> f64 {
        let n = self.dimension();
        assert!(
            (1..=n).contains(&i) && (1..=n).contains(&j),
            "eprime indices are 1-based and must lie in 1..=n"
        );
        self.eprime[(i - 1) * n + (j - 1)]
    }

    /// Applies the alignment: returns P·y.
    pub fn apply(&self, y: &[f64]) -> Result<Vec<f64>> {
        if y.len() != self.dimension() {
            return Err(Error::InvalidInput(format!(
                "vector has length {}, frame dimension is {}",
                y.len(),
                self.dimension()
            )));
        }
        Ok(self.p.mul_vec(y))
    }

    /// Diagonal entry e′_ii, 1-based.
    pub fn diagonal(&self, i: usize) -> f64 {
        self.eprime(i, i)
    }
}

/// Computes the canonical alignment of `basis_images`, the images
/// (f(e_1), …, f(e_n)) of the standard basis.
pub fn canonical_alignment(basis_images: &[Vec<f64>]) -> Result<AlignedFrame> {
    let n = basis_images.len();
    if n == 0 {
        return Err(Error::InvalidInput("need at least one basis image".into()));
    }
    for (i, img) in basis_images.iter().enumerate() {
        if img.len() != n {
            return Err(Error::InvalidInput(format!(
                "basis image {i} has dimension {}, expected {n}",
                img.len()
            )));
        }
    }

    let a = Matrix::from_columns(basis_images)?;
    let qr = householder_qr(&a)?;
    let p = qr.q.transpose();

    // Column i of R holds the aligned coordinates of the i-th image;
    // entries above the index stay exactly zero.
    let mut eprime = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            eprime[i * n + j] = qr.r[(j, i)];
        }
    }

    Ok(AlignedFrame { p, eprime })
}
