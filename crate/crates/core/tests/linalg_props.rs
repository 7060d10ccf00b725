//! Property suites for the linear-algebra contracts and the measurement
//! invariants built on top of them.

mod common;

use proptest::prelude::*;

use isostab::linalg::{
    self, distance, gaussian_matrix, householder_qr, is_orthogonal, jacobi_svd,
    random_orthogonal, Matrix, QR_ORTHOGONALITY_TOL, QR_RECONSTRUCTION_TOL, SVD_TOL,
};
use isostab::{bound_coefficient, ConstantTable, Mode, PointMap};

fn square_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(-10.0..10.0f64, n * n)
            .prop_map(move |v| Matrix::from_rows(n, &v).unwrap())
    })
}

/// Matrix with singular values in [1, 3]: condition number ≤ 3, safe for
/// entrywise factor comparisons against the Gram-Schmidt oracle.
fn well_conditioned(n: usize, seed: u64, svals: &[f64]) -> Matrix {
    let u = random_orthogonal(n, seed).unwrap();
    let v = random_orthogonal(n, seed ^ 0xABCD_EF01).unwrap();
    let mut d = Matrix::zeros(n);
    for i in 0..n {
        d[(i, i)] = svals[i];
    }
    u.mul(&d).mul(&v.transpose())
}

proptest! {
    #[test]
    fn qr_satisfies_contract(a in square_matrix()) {
        let qr = householder_qr(&a).unwrap();
        let n = a.n();
        prop_assert!(is_orthogonal(&qr.q, QR_ORTHOGONALITY_TOL));
        prop_assert!(
            common::frobenius_diff(&qr.q.mul(&qr.r), &a)
                <= QR_RECONSTRUCTION_TOL * a.frobenius_norm().max(1.0)
        );
        for i in 0..n {
            prop_assert!(qr.r[(i, i)] >= -1e-14);
            for j in 0..i {
                prop_assert!(qr.r[(i, j)].abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn svd_satisfies_contract(a in square_matrix()) {
        let svd = jacobi_svd(&a).unwrap();
        let n = a.n();
        prop_assert!(is_orthogonal(&svd.u, SVD_TOL));
        prop_assert!(is_orthogonal(&svd.v, SVD_TOL));
        for k in 0..n {
            prop_assert!(svd.s[k] >= 0.0);
            if k + 1 < n {
                prop_assert!(svd.s[k] >= svd.s[k + 1]);
            }
        }
        let mut us = svd.u.clone();
        for i in 0..n {
            for j in 0..n {
                us[(i, j)] *= svd.s[j];
            }
        }
        prop_assert!(
            common::frobenius_diff(&us.mul(&svd.v.transpose()), &a)
                <= SVD_TOL * a.frobenius_norm().max(1.0)
        );
    }

    #[test]
    fn qr_agrees_with_gram_schmidt_oracle(
        seed in 0u64..1_000_000,
        n in 2usize..=8,
        raw in proptest::collection::vec(1.0..3.0f64, 8),
    ) {
        let a = well_conditioned(n, seed, &raw[..n]);
        let qr = householder_qr(&a).unwrap();
        let (q_ref, r_ref) = common::gram_schmidt_qr(&a);
        // Nonsingular + positive diagonal makes the factorization unique,
        // so the factors must agree entrywise, not just in product.
        prop_assert!(qr.q.max_abs_diff(&q_ref) <= 1e-9);
        prop_assert!(qr.r.max_abs_diff(&r_ref) <= 1e-9);
    }

    #[test]
    fn singular_values_match_eigen_oracle(seed in 0u64..1_000_000, n in 2usize..=8) {
        let a = gaussian_matrix(n, seed).unwrap();
        let svd = jacobi_svd(&a).unwrap();
        let eig = common::symmetric_eigenvalues(&common::gram(&a));
        for (s, lambda) in svd.s.iter().zip(eig) {
            prop_assert!((s - lambda.max(0.0).sqrt()).abs() <= 1e-8);
        }
    }

    #[test]
    fn random_orthogonal_preserves_distances(
        seed in 0u64..1_000_000,
        n in 1usize..=8,
    ) {
        let q = random_orthogonal(n, seed).unwrap();
        let g = gaussian_matrix(n, seed ^ 0x55AA).unwrap();
        let x: Vec<f64> = (0..n).map(|i| g[(i, 0)]).collect();
        let y: Vec<f64> = (0..n).map(|i| g[(i, n - 1)]).collect();
        let before = distance(&x, &y);
        let after = distance(&q.mul_vec(&x), &q.mul_vec(&y));
        prop_assert!((before - after).abs() <= 1e-10 * before.max(1.0));
    }

    #[test]
    fn bound_grows_strictly_with_radius(
        n in 3usize..=10,
        d1 in 1.0..50.0f64,
        gap in 0.1..50.0f64,
    ) {
        let t = ConstantTable::build(n, Mode::Paper).unwrap();
        let b1 = bound_coefficient(n, d1, &t).unwrap();
        let b2 = bound_coefficient(n, d1 + gap, &t).unwrap();
        prop_assert!(b2 > b1);
    }

    #[test]
    fn recentering_preserves_pairwise_distortion(
        seed in 0u64..1_000_000,
        shift in proptest::collection::vec(-5.0..5.0f64, 4),
    ) {
        let n = 4;
        let q0 = random_orthogonal(n, seed).unwrap();
        let mut cloud = vec![vec![0.0; n]];
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            cloud.push(e);
        }
        let images: Vec<Vec<f64>> = cloud
            .iter()
            .map(|x| {
                let y = q0.mul_vec(x);
                y.iter().zip(&shift).map(|(a, b)| a + b).collect()
            })
            .collect();
        let pm = PointMap::new(n, cloud.clone(), images.clone(), 1.0).unwrap();
        let (recentered, t) = pm.recentered();
        prop_assert_eq!(linalg::norm(recentered.image_of_origin()), 0.0);
        prop_assert_eq!(t, images[0].clone());

        // Pairwise distortion of the original map, recomputed by hand.
        let mut pairwise = 0.0_f64;
        for k in 0..cloud.len() {
            for l in (k + 1)..cloud.len() {
                let gap = distance(&images[k], &images[l]) - distance(&cloud[k], &cloud[l]);
                pairwise = pairwise.max(gap.abs());
            }
        }
        prop_assert!((recentered.distortion() - pairwise).abs() <= 1e-12);
    }
}
