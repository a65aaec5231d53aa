use num_complex::Complex64;

use super::{masks_of_degree, Frame, InvariantForm, StructureEquations};
use crate::error::{Error, Result};
use crate::linalg::{self, RMatrix};

/// Rank threshold for Betti numbers.
pub const BETTI_TOL: f64 = 1e-9;

/// Matrix of `d` from degree `k` to degree `k + 1` in the monomial bases
/// (columns indexed by degree-`k` masks in increasing order).
pub fn differential_matrix(eq: &StructureEquations, k: usize) -> Result<RMatrix> {
    if eq.frame() != Frame::Real {
        return Err(Error::FrameMismatch(
            "cohomology is computed over the real coframe",
        ));
    }
    let m = eq.dim();
    let src = masks_of_degree(m, k);
    let dst = masks_of_degree(m, k + 1);
    let mut mat = RMatrix::zeros(dst.len(), src.len());
    for (col, &mask) in src.iter().enumerate() {
        let f = InvariantForm::from_mask(m, mask, Complex64::new(1.0, 0.0), Frame::Real);
        let df = eq.d(&f)?;
        for (row, &target) in dst.iter().enumerate() {
            mat[(row, col)] = df.coefficient_mask(target).re;
        }
    }
    Ok(mat)
}

fn rank_of_d(eq: &StructureEquations, k: usize) -> Result<usize> {
    if k >= eq.dim() {
        return Ok(0);
    }
    Ok(linalg::rank(&differential_matrix(eq, k)?, BETTI_TOL))
}

/// `dim H^k` of the Chevalley-Eilenberg complex.
pub fn betti(eq: &StructureEquations, k: usize) -> Result<usize> {
    let m = eq.dim();
    if k > m {
        return Ok(0);
    }
    let total = masks_of_degree(m, k).len();
    let out_rank = rank_of_d(eq, k)?;
    let in_rank = if k == 0 { 0 } else { rank_of_d(eq, k - 1)? };
    Ok(total - out_rank - in_rank)
}

pub fn betti_numbers(eq: &StructureEquations) -> Result<Vec<usize>> {
    (0..=eq.dim()).map(|k| betti(eq, k)).collect()
}
