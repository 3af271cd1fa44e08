//! Dense matrix kernels shared by the solver: thin SVD, orthogonal
//! Procrustes and column-wise ℓ2,1 shrinkage.

use nalgebra::{DMatrix, DVector, SVD};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Dense real matrix used for every view, representation and iterate.
pub type Matrix = DMatrix<f64>;

/// Thin singular value decomposition `a = left · diag(singular_values) · rightᵀ`.
///
/// For an `r × c` input with `p = min(r, c)`, `left` is `r × p`, `right` is
/// `c × p` and the singular values are sorted in descending order.
#[derive(Debug, Clone)]
pub struct SpectrumSlice {
    pub singular_values: DVector<f64>,
    pub left_factors: Matrix,
    pub right_factors: Matrix,
}

impl SpectrumSlice {
    pub fn rank(&self) -> usize {
        self.singular_values.len()
    }

    /// Rebuilds `left · diag(values) · rightᵀ` with replacement singular values.
    pub fn reconstruct_with(&self, values: &DVector<f64>) -> Matrix {
        assert_eq!(values.len(), self.rank(), "singular value count mismatch");
        let mut scaled = self.left_factors.clone();
        for (j, &s) in values.iter().enumerate() {
            scaled.column_mut(j).scale_mut(s);
        }
        scaled * self.right_factors.transpose()
    }

    pub fn reconstruct(&self) -> Matrix {
        self.reconstruct_with(&self.singular_values)
    }
}

pub fn all_finite(a: &Matrix) -> bool {
    a.iter().all(|v| v.is_finite())
}

/// Largest absolute entry (`‖a‖_∞` in the entrywise sense); zero for empty matrices.
pub fn max_abs(a: &Matrix) -> f64 {
    a.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Entrywise deviation of `a·aᵀ` from the identity.
pub fn orthogonality_residual(a: &Matrix) -> f64 {
    let gram = a * a.transpose();
    max_abs(&(gram - Matrix::identity(a.nrows(), a.nrows())))
}

pub fn thin_svd(a: &Matrix) -> Result<SpectrumSlice> {
    if !all_finite(a) {
        return Err(Error::invalid("thin_svd: input has non-finite entries"));
    }
    let (r, c) = a.shape();
    let p = r.min(c);
    if p == 0 {
        return Ok(SpectrumSlice {
            singular_values: DVector::zeros(0),
            left_factors: Matrix::zeros(r, 0),
            right_factors: Matrix::zeros(c, 0),
        });
    }

    // Tall inputs go through a QR pre-reduction so the iterative part only
    // touches a c × c triangle.
    if r > 2 * c {
        let qr = a.clone().qr();
        let inner = thin_svd(&qr.r())?;
        return Ok(SpectrumSlice {
            singular_values: inner.singular_values,
            left_factors: qr.q() * inner.left_factors,
            right_factors: inner.right_factors,
        });
    }

    let svd = SVD::new(a.clone(), true, true);
    let (Some(u), Some(v_t)) = (svd.u, svd.v_t) else {
        return Err(Error::invalid("thin_svd: factorization did not produce factors"));
    };
    Ok(SpectrumSlice {
        singular_values: svd.singular_values,
        left_factors: u,
        right_factors: v_t.transpose(),
    })
}

/// Solves `min_Ω ‖target − carrier·Ω‖_F²` subject to `Ω·Ωᵀ = I`.
///
/// `carrier` is `n × p`, `target` is `n × q` with `p ≤ q`; the minimizer is
/// `U·Vᵀ` from the thin SVD of `carrierᵀ·target` and has shape `p × q`.
pub fn procrustes_min(target: &Matrix, carrier: &Matrix) -> Result<Matrix> {
    if target.nrows() != carrier.nrows() {
        return Err(Error::invalid(format!(
            "procrustes_min: row mismatch ({} vs {})",
            target.nrows(),
            carrier.nrows()
        )));
    }
    if carrier.ncols() > target.ncols() {
        return Err(Error::invalid(format!(
            "procrustes_min: carrier has {} columns but target only {}",
            carrier.ncols(),
            target.ncols()
        )));
    }
    let cross = carrier.transpose() * target;
    let spectrum = thin_svd(&cross)?;
    Ok(&spectrum.left_factors * spectrum.right_factors.transpose())
}

/// Proximal map of `threshold·‖·‖_{2,1}`: every column of `c` is shrunk
/// towards zero by `threshold` in Euclidean norm, or zeroed if shorter.
pub fn shrink_columns_21(c: &Matrix, threshold: f64) -> Result<Matrix> {
    if !(threshold > 0.0) || !threshold.is_finite() {
        return Err(Error::invalid(format!(
            "shrink_columns_21: threshold must be positive and finite, got {threshold}"
        )));
    }
    let mut out = c.clone();
    for mut col in out.column_iter_mut() {
        let norm = col.norm();
        if norm > threshold {
            col.scale_mut((norm - threshold) / norm);
        } else {
            col.fill(0.0);
        }
    }
    Ok(out)
}

/// `Σ_i ‖c(:,i)‖₂`.
pub fn norm_21(c: &Matrix) -> f64 {
    c.column_iter().map(|col| col.norm()).sum()
}

/// Rescales `a` to Frobenius norm `target`; an all-zero matrix is returned unchanged.
pub fn scale_to_frobenius(a: &Matrix, target: f64) -> Matrix {
    let norm = a.norm();
    if norm == 0.0 {
        a.clone()
    } else {
        a * (target / norm)
    }
}

/// Matrix of independent standard normal entries.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Haar-distributed `n × n` orthogonal matrix (QR of a Gaussian with sign fix).
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    orthonormal_columns(gaussian_matrix(rng, n, n))
}

/// `rows × cols` matrix with orthonormal rows drawn from a seeded Gaussian.
/// Requires `rows ≤ cols`.
pub fn random_row_orthonormal<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    assert!(rows <= cols, "row-orthonormal matrix needs rows <= cols");
    orthonormal_columns(gaussian_matrix(rng, cols, rows)).transpose()
}

fn orthonormal_columns(g: Matrix) -> Matrix {
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..q.ncols() {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn svd_of_identity_and_diagonal() {
        let s = thin_svd(&Matrix::identity(3, 3)).unwrap();
        assert!(s.singular_values.iter().all(|&v| (v - 1.0).abs() < 1e-14));

        let d = Matrix::from_diagonal(&DVector::from_vec(vec![1.0, 3.0, 2.0]));
        let s = thin_svd(&d).unwrap();
        let got: Vec<f64> = s.singular_values.iter().copied().collect();
        for (g, e) in got.iter().zip([3.0, 2.0, 1.0]) {
            assert!((g - e).abs() < 1e-14);
        }
    }

    #[test]
    fn svd_rejects_nan() {
        let mut a = Matrix::zeros(2, 2);
        a[(0, 1)] = f64::NAN;
        assert!(matches!(thin_svd(&a), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn svd_reconstructs_tall_and_wide() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (r, c) in [(40, 5), (5, 40), (7, 7), (9, 4)] {
            let a = gaussian_matrix(&mut rng, r, c);
            let s = thin_svd(&a).unwrap();
            let err = (s.reconstruct() - &a).norm();
            assert!(err <= 1e-8 * a.norm().max(1.0), "{r}x{c}: {err}");
            assert!(orthogonality_residual(&s.left_factors.transpose()) < 1e-8);
            assert!(orthogonality_residual(&s.right_factors.transpose()) < 1e-8);
            for w in s.singular_values.as_slice().windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn svd_matches_power_iteration() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let a = gaussian_matrix(&mut rng, 5, 3);
        let s = thin_svd(&a).unwrap();
        // Power iteration on AᵀA with deflation.
        let mut gram = a.transpose() * &a;
        for k in 0..3 {
            let mut v = DVector::from_element(3, 1.0);
            for _ in 0..5000 {
                v = &gram * &v;
                v /= v.norm();
            }
            let lambda = (v.transpose() * &gram * &v)[(0, 0)];
            assert!((lambda.sqrt() - s.singular_values[k]).abs() < 1e-6);
            gram -= &v * v.transpose() * lambda;
        }
    }

    #[test]
    fn procrustes_self_alignment_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let z = gaussian_matrix(&mut rng, 12, 4);
        let omega = procrustes_min(&z, &z).unwrap();
        assert!(max_abs(&(omega - Matrix::identity(4, 4))) < 1e-10);
    }

    #[test]
    fn procrustes_recovers_exact_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = random_orthogonal(&mut rng, 5);
        let omega = procrustes_min(&q, &Matrix::identity(5, 5)).unwrap();
        assert!(max_abs(&(omega - q)) < 1e-10);
    }

    #[test]
    fn procrustes_dimension_errors() {
        let a = Matrix::zeros(4, 2);
        let b = Matrix::zeros(5, 2);
        assert!(procrustes_min(&a, &b).is_err());
        let wide_carrier = Matrix::zeros(4, 3);
        assert!(procrustes_min(&a, &wide_carrier).is_err());
    }

    #[test]
    fn shrink_examples() {
        let mut c = Matrix::zeros(3, 2);
        c[(1, 0)] = 2.0;
        c[(0, 1)] = 0.4;
        let out = shrink_columns_21(&c, 0.5).unwrap();
        assert!((out[(1, 0)] - 1.5).abs() < 1e-15);
        assert_eq!(out[(0, 0)], 0.0);
        assert_eq!(out.column(1).norm(), 0.0);
        assert!(shrink_columns_21(&c, 0.0).is_err());
        assert!(shrink_columns_21(&c, -1.0).is_err());
    }
}
