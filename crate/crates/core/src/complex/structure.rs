use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::exterior::{Frame, InvariantForm};
use crate::lie::{LieAlgebra, Subspace};
use crate::linalg::{self, RMatrix, RANK_TOL};

/// Tolerance on `J^2 + Id`.
pub const ALMOST_COMPLEX_TOL: f64 = 1e-10;

/// Tolerance on the Nijenhuis tensor for integrability.
pub const INTEGRABLE_TOL: f64 = 1e-9;

/// A linear complex structure `J` on the underlying vector space of an algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexStructure {
    j: RMatrix,
}

impl ComplexStructure {
    pub fn new(j: RMatrix) -> Result<Self> {
        let n = j.nrows();
        if j.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: j.ncols(),
            });
        }
        if !n.is_multiple_of(2) {
            return Err(Error::NotAlmostComplex { residual: 1.0 });
        }
        let residual = linalg::sup_norm(&(&j * &j + RMatrix::identity(n, n)));
        if residual > ALMOST_COMPLEX_TOL {
            return Err(Error::NotAlmostComplex { residual });
        }
        Ok(Self { j })
    }

    /// `J e_{2k-1} = e_{2k}` for every `k`.
    pub fn standard(dim: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..dim / 2).map(|k| (2 * k, 2 * k + 1)).collect();
        Self::from_pairs(dim, &pairs).expect("standard pairs cover the space")
    }

    /// `J e_a = e_b` (hence `J e_b = -e_a`) for 0-based pairs covering every index once.
    pub fn from_pairs(dim: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut j = RMatrix::zeros(dim, dim);
        let mut seen = vec![false; dim];
        for &(a, b) in pairs {
            for i in [a, b] {
                if i >= dim {
                    return Err(Error::IndexOutOfRange { index: i, dim });
                }
                if seen[i] {
                    return Err(Error::InvalidParameter(format!(
                        "index {} paired twice",
                        i + 1
                    )));
                }
                seen[i] = true;
            }
            j[(b, a)] = 1.0;
            j[(a, b)] = -1.0;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidParameter(
                "pairs do not cover every basis vector".into(),
            ));
        }
        Self::new(j)
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.nrows()
    }

    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.j * v
    }

    fn check_dim(&self, alg: &LieAlgebra) -> Result<()> {
        if alg.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: self.dim(),
            });
        }
        Ok(())
    }

    /// Largest entry of `N(X, Y) = [X,Y] - [JX,JY] + J[JX,Y] + J[X,JY]` over basis pairs.
    pub fn nijenhuis_residual(&self, alg: &LieAlgebra) -> Result<f64> {
        self.check_dim(alg)?;
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            let x = unit(n, a);
            let jx = self.apply(&x);
            for b in (a + 1)..n {
                let y = unit(n, b);
                let jy = self.apply(&y);
                let t = alg.bracket(&x, &y)? - alg.bracket(&jx, &jy)?
                    + &self.j * (alg.bracket(&jx, &y)? + alg.bracket(&x, &jy)?);
                worst = worst.max(t.amax());
            }
        }
        Ok(worst)
    }

    pub fn is_integrable(&self, alg: &LieAlgebra) -> Result<bool> {
        Ok(self.nijenhuis_residual(alg)? <= INTEGRABLE_TOL)
    }

    /// `J a (X_1..X_r) = (-1)^r a(J X_1, .., J X_r)` on a real-frame form.
    pub fn act_on_form(&self, f: &InvariantForm) -> Result<InvariantForm> {
        if f.frame() != Frame::Real {
            return Err(Error::FrameMismatch("J acts on real-frame forms"));
        }
        let pulled = f.pullback(&self.j)?;
        Ok(if f.degree().is_multiple_of(2) {
            pulled
        } else {
            pulled.scale_real(-1.0)
        })
    }

    pub fn preserves(&self, s: &Subspace, tol: f64) -> bool {
        s.image(&self.j).approx_eq(s, tol)
    }

    /// The ascending series `g^J_0 = 0`,
    /// `g^J_l = {X : [X, g] and [JX, g] lie in g^J_{l-1}}`, until it stabilizes.
    /// The flag is true when the last term is the whole algebra.
    pub fn ascending_series(&self, alg: &LieAlgebra) -> Result<(Vec<Subspace>, bool)> {
        self.check_dim(alg)?;
        let n = self.dim();
        let mut terms = vec![Subspace::zero(n)];
        loop {
            let prev = terms.last().expect("nonempty");
            let q = RMatrix::identity(n, n) - prev.projector();
            // Rows indexed by (which, j, k), columns by the coordinates of X.
            let mut m = RMatrix::zeros(2 * n * n, n);
            for i in 0..n {
                let x = unit(n, i);
                let jx = self.apply(&x);
                for j in 0..n {
                    let y = unit(n, j);
                    let u = &q * alg.bracket(&x, &y)?;
                    let v = &q * alg.bracket(&jx, &y)?;
                    for k in 0..n {
                        m[(j * n + k, i)] = u[k];
                        m[(n * n + j * n + k, i)] = v[k];
                    }
                }
            }
            let next = Subspace::column_span(&linalg::null_space(&m, RANK_TOL));
            if next.dim() == prev.dim() {
                let nilpotent = prev.dim() == n;
                return Ok((terms, nilpotent));
            }
            let full = next.dim() == n;
            terms.push(next);
            if full {
                return Ok((terms, true));
            }
        }
    }

    /// A `g`-orthonormal basis of the form `b_1, J b_1, b_2, J b_2, ...` (as columns).
    ///
    /// When `leading` is given, its vectors come first; it has to be
    /// `J`-invariant. The remaining vectors are taken from the standard basis.
    pub fn adapted_basis(&self, gram: &RMatrix, leading: Option<&Subspace>) -> Result<RMatrix> {
        let n = self.dim();
        let mut basis: Vec<DVector<f64>> = Vec::with_capacity(n);
        let push_from = |cands: &[DVector<f64>], limit: usize, basis: &mut Vec<DVector<f64>>| {
            for v in cands {
                if basis.len() >= limit {
                    break;
                }
                let mut w = v.clone();
                for _ in 0..2 {
                    for b in basis.iter() {
                        let c = (b.transpose() * gram * &w)[(0, 0)];
                        w -= b * c;
                    }
                }
                let norm = (w.transpose() * gram * &w)[(0, 0)].max(0.0).sqrt();
                if norm > 1e-8 {
                    let b = w / norm;
                    let jb = self.apply(&b);
                    basis.push(b);
                    basis.push(jb);
                }
            }
        };
        if let Some(s) = leading {
            if !self.preserves(s, 1e-8) {
                return Err(Error::CenterNotInvariant);
            }
            push_from(s.basis(), s.dim(), &mut basis);
            if basis.len() != s.dim() {
                return Err(Error::CenterNotInvariant);
            }
        }
        let standard: Vec<_> = (0..n).map(|i| unit(n, i)).collect();
        push_from(&standard, n, &mut basis);
        if basis.len() != n {
            return Err(Error::Singular);
        }
        Ok(RMatrix::from_fn(n, n, |r, c| basis[c][r]))
    }
}

pub(crate) fn unit(n: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[i] = 1.0;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_on_one_forms_has_dual_sign() {
        let j = ComplexStructure::standard(2);
        let e1 = InvariantForm::basis(2, &[0], Frame::Real).unwrap();
        let je1 = j.act_on_form(&e1).unwrap();
        // (J e^1)(X) = -e^1(JX); J e_2 = -e_1 so (J e^1)(e_2) = 1.
        assert_eq!(je1.coefficient(&[1]).re, 1.0);
    }

    #[test]
    fn rejects_non_complex_structure() {
        let m = RMatrix::identity(2, 2);
        assert!(matches!(
            ComplexStructure::new(m),
            Err(Error::NotAlmostComplex { .. })
        ));
    }

    #[test]
    fn adapted_basis_is_identity_for_standard_data() {
        let j = ComplexStructure::standard(6);
        let b = j.adapted_basis(&RMatrix::identity(6, 6), None).unwrap();
        assert!(linalg::sup_norm(&(b - RMatrix::identity(6, 6))) < 1e-15);
    }
}
