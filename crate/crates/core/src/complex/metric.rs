use crate::complex::ComplexStructure;
use crate::error::{Error, Result};
use crate::linalg::{self, RMatrix};

/// Residual below which `(J, g)` counts as exactly compatible.
const EXACT_TOL: f64 = 1e-10;

/// Residual below which an incompatible metric is repaired by averaging.
const REPAIR_TOL: f64 = 1e-8;

/// A positive definite inner product compatible with a complex structure.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMetric {
    g: RMatrix,
}

impl HermitianMetric {
    /// Validate `g` against `j`. Metrics that are compatible up to `1e-8` are
    /// replaced by `(g + J^T g J) / 2` with a warning.
    pub fn new(g: RMatrix, j: &ComplexStructure) -> Result<Self> {
        let n = j.dim();
        if g.nrows() != n || g.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.nrows(),
            });
        }
        let asym = linalg::sup_norm(&(&g - g.transpose()));
        if asym > EXACT_TOL * g.amax().max(1.0) {
            return Err(Error::NotSymmetric { residual: asym });
        }
        let mut g = (&g + g.transpose()) * 0.5;
        let jm = j.matrix();
        let residual = linalg::sup_norm(&(jm.transpose() * &g * jm - &g));
        if residual > REPAIR_TOL {
            return Err(Error::Incompatible { residual });
        }
        if residual > EXACT_TOL {
            log::warn!(
                "metric is only approximately J-compatible (residual {residual:e}); averaging"
            );
            g = (&g + jm.transpose() * &g * jm) * 0.5;
        }
        let (lmin, _) = linalg::min_eigen(&g);
        if lmin <= 0.0 {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: lmin,
            });
        }
        Ok(Self { g })
    }

    pub fn identity(j: &ComplexStructure) -> Result<Self> {
        Self::new(RMatrix::identity(j.dim(), j.dim()), j)
    }

    /// The compatible metric `(Id + J^T J) / 2`.
    pub fn averaged_identity(j: &ComplexStructure) -> Self {
        let n = j.dim();
        let jm = j.matrix();
        let g = (RMatrix::identity(n, n) + jm.transpose() * jm) * 0.5;
        Self::new(g, j).expect("averaging yields a compatible metric")
    }

    pub fn gram(&self) -> &RMatrix {
        &self.g
    }
}
