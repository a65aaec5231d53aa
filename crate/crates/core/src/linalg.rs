//! Small dense linear algebra helpers.
//!
//! Matrices here never exceed a few dozen rows, so everything is dense and
//! allocation-happy. Symmetric eigenproblems go through a cyclic Jacobi
//! sweep; null spaces and ranks go through an SVD with a relative threshold.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type RMatrix = DMatrix<f64>;
pub type CMatrix = DMatrix<Complex64>;

/// Pivot threshold for rank decisions on subspaces.
pub const RANK_TOL: f64 = 1e-10;

/// Off-diagonal threshold for the Jacobi sweep.
const JACOBI_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order together with the matching
/// orthonormal eigenvectors as columns.
pub fn symmetric_eigen(a: &RMatrix) -> (Vec<f64>, RMatrix) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "symmetric_eigen needs a square matrix");
    let mut a = (a + a.transpose()) * 0.5;
    let mut v = RMatrix::identity(n, n);
    let scale = a.norm().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let tau = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = RMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (values, vectors)
}

/// Smallest eigenvalue of a symmetric matrix and a unit eigenvector for it.
pub fn min_eigen(a: &RMatrix) -> (f64, DVector<f64>) {
    let (values, vectors) = symmetric_eigen(a);
    (values[0], vectors.column(0).into_owned())
}

/// Orthonormal basis (columns) of the null space of `a`.
///
/// Singular values below `tol * max(1, sigma_max)` count as zero.
pub fn null_space(a: &RMatrix, tol: f64) -> RMatrix {
    let cols = a.ncols();
    if cols == 0 {
        return RMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return RMatrix::identity(cols, cols);
    }
    // Pad to at least square so the thin SVD returns a full right basis.
    let rows = a.nrows().max(cols);
    let mut padded = RMatrix::zeros(rows, cols);
    padded.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("SVD requested right singular vectors");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol * sigma_max.max(1.0);
    let kept: Vec<usize> = (0..cols)
        .filter(|&i| svd.singular_values[i] <= cutoff)
        .collect();
    RMatrix::from_fn(cols, kept.len(), |r, c| v_t[(kept[c], r)])
}

/// Numeric rank with the same relative threshold convention as [`null_space`].
pub fn rank(a: &RMatrix, tol: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let svd = a.clone().svd(false, false);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol * sigma_max.max(1.0);
    svd.singular_values.iter().filter(|&&s| s > cutoff).count()
}

/// Modified Gram-Schmidt with re-orthogonalization against the inner
/// product `gram` (identity when `None`). Vectors whose residual norm falls
/// below `tol` are dropped.
pub fn orthonormalize(
    vectors: &[DVector<f64>],
    gram: Option<&RMatrix>,
    tol: f64,
) -> Vec<DVector<f64>> {
    let inner = |x: &DVector<f64>, y: &DVector<f64>| match gram {
        Some(g) => (x.transpose() * g * y)[(0, 0)],
        None => x.dot(y),
    };
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = inner(b, &w);
                w -= b * c;
            }
        }
        let norm = inner(&w, &w).max(0.0).sqrt();
        if norm > tol {
            basis.push(w / norm);
        }
    }
    basis
}

/// Inverse of a real square matrix, failing on (numerically) singular input.
pub fn inverse(a: &RMatrix) -> Result<RMatrix> {
    if rank(a, 1e-12) < a.nrows() {
        return Err(Error::Singular);
    }
    a.clone().try_inverse().ok_or(Error::Singular)
}

/// Inverse of a complex square matrix.
pub fn complex_inverse(a: &CMatrix) -> Result<CMatrix> {
    a.clone().try_inverse().ok_or(Error::Singular)
}

/// Largest absolute entry.
pub fn sup_norm(a: &RMatrix) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Determinant of the square submatrix of `a` picked by `rows` and `cols`.
pub fn minor(a: &RMatrix, rows: &[usize], cols: &[usize]) -> f64 {
    let k = rows.len();
    if k == 0 {
        return 1.0;
    }
    let sub = RMatrix::from_fn(k, k, |r, c| a[(rows[r], cols[c])]);
    sub.determinant()
}

pub fn to_complex(a: &RMatrix) -> CMatrix {
    a.map(|x| Complex64::new(x, 0.0))
}
