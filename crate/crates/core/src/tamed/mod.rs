//! Taming symplectic forms, SKT searches and the structural obstructions.

mod feasibility;
mod search;

pub use feasibility::{FeasibilityProblem, SearchOptions, Solution};
pub(crate) use search::real_embedding;
pub use search::{
    form_of_hermitian, skt_find, skt_obstruction, tamed_find, tamed_search, Certificate,
    FeasibilityReport, Obstruction, ObstructionKind, Status,
};

use nalgebra::DVector;
use num_complex::Complex64;

use crate::complex::{ComplexStructure, Hermitian, HermitianMetric};
use crate::error::{Error, Result};
use crate::exterior::{Codifferential, Frame, InvariantForm};
use crate::lie::LieAlgebra;
use crate::linalg::{self, RMatrix};

/// Symmetric part `S(X, Y) = (Omega(X, JY) + Omega(Y, JX)) / 2` of a real 2-form.
pub fn taming_matrix(omega: &InvariantForm, j: &ComplexStructure) -> Result<RMatrix> {
    let w = omega.two_form_matrix()?;
    if w.nrows() != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: j.dim(),
            found: w.nrows(),
        });
    }
    let wj = w * j.matrix();
    Ok((&wj + wj.transpose()) * 0.5)
}

/// Whether `Omega(X, JX) > 0` for all `X != 0`, with the smallest eigenvalue of `S`.
pub fn tames(omega: &InvariantForm, j: &ComplexStructure) -> Result<(bool, f64)> {
    let s = taming_matrix(omega, j)?;
    let (lmin, _) = linalg::min_eigen(&s);
    Ok((lmin > 0.0, lmin))
}

/// Metric `g = W J` recovered from a real `J`-invariant 2-form with matrix `W`.
pub fn metric_from_form(omega: &InvariantForm, j: &ComplexStructure) -> Result<HermitianMetric> {
    let w = omega.two_form_matrix()?;
    let g = w * j.matrix();
    let g = (&g + g.transpose()) * 0.5;
    HermitianMetric::new(g, j)
}

/// Splitting `Omega = omega - beta - conj(beta)` of a closed real 2-form.
#[derive(Debug, Clone)]
pub struct HsDecomposition {
    /// `Omega^{1,1}`, in the real coframe.
    pub omega: InvariantForm,
    /// `-Omega^{2,0}`, in the unitary coframe.
    pub beta: InvariantForm,
    /// Largest coefficient of `del omega - delbar beta`.
    pub del_omega_minus_delbar_beta: f64,
    /// Largest coefficient of `del beta`.
    pub del_beta: f64,
}

pub fn hs_decompose(h: &Hermitian, big_omega: &InvariantForm, tol: f64) -> Result<HsDecomposition> {
    let closed = h.d(big_omega)?.sup_norm();
    if closed > tol {
        return Err(Error::NotClosed { residual: closed });
    }
    let parts = h.pq_components(big_omega)?;
    let dim = h.algebra().dim();
    let zero = InvariantForm::zero(dim, 2, Frame::Unitary);
    let omega_u = parts.get(&(1, 1)).cloned().unwrap_or_else(|| zero.clone());
    let beta = parts.get(&(2, 0)).cloned().unwrap_or(zero).scale_real(-1.0);
    let r1 = h.del(&omega_u)?.sub(&h.delbar(&beta)?)?.sup_norm();
    let r2 = h.del(&beta)?.sup_norm();
    let omega = h.to_real(&omega_u)?.real_part();
    Ok(HsDecomposition {
        omega,
        beta,
        del_omega_minus_delbar_beta: r1,
        del_beta: r2,
    })
}

/// Result of intersecting `J(center)` with the commutator.
#[derive(Debug, Clone, PartialEq)]
pub struct HsObstruction {
    pub blocked: bool,
    /// A nonzero `W` in `[g, g]` with `JW` central.
    pub witness: Option<DVector<f64>>,
}

pub fn hs_obstruction(alg: &LieAlgebra, j: &ComplexStructure) -> Result<HsObstruction> {
    if !j.is_integrable(alg)? {
        return Err(Error::NotIntegrable {
            residual: j.nijenhuis_residual(alg)?,
        });
    }
    let xi = alg.center();
    let jxi = xi.image(j.matrix());
    let meet = jxi.intersection(&alg.derived());
    let witness = meet.basis().first().cloned();
    Ok(HsObstruction {
        blocked: meet.dim() > 0,
        witness,
    })
}

/// Terms of the functional `eta -> (del* eta, Omega^{1,1})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FondFunctional {
    pub a: Complex64,
    pub b_norm: f64,
    pub beta_norm: f64,
}

impl FondFunctional {
    /// `|a| <= |delbar* eta| |beta|` up to `tol`.
    pub fn bound_holds(&self, tol: f64) -> bool {
        self.a.norm() <= self.b_norm * self.beta_norm + tol
    }
}

/// `eta` is a `(2,1)`-form (either coframe); `big_omega` a closed taming form.
pub fn fond_functional(
    h: &Hermitian,
    eta: &InvariantForm,
    big_omega: &InvariantForm,
    tol: f64,
) -> Result<FondFunctional> {
    let (ok, lmin) = tames(&h.to_real(big_omega)?.real_part(), h.complex_structure())?;
    if !ok {
        return Err(Error::NotTaming {
            min_eigenvalue: lmin,
        });
    }
    let dec = hs_decompose(h, big_omega, tol)?;
    let eta_u = h.to_unitary(eta)?;
    let del_star = h.codifferential(&eta_u, Codifferential::Del)?;
    let delbar_star = h.codifferential(&eta_u, Codifferential::DelBar)?;
    let omega_u = h.to_unitary(&dec.omega)?;
    let a = h.inner(&del_star, &omega_u)?;
    let b_norm = h.norm(&delbar_star)?;
    let beta_norm = h.norm(&dec.beta)?;
    Ok(FondFunctional {
        a,
        b_norm,
        beta_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_form_tames_and_negative_does_not() {
        let j = ComplexStructure::standard(4);
        let h = Hermitian::new(
            LieAlgebra::abelian(4),
            j.clone(),
            HermitianMetric::identity(&j).unwrap(),
        )
        .unwrap();
        let w = h.fundamental_form();
        let (ok, lmin) = tames(&w, &j).unwrap();
        assert!(ok);
        assert!((lmin - 1.0).abs() < 1e-12);
        assert!(!tames(&w.scale_real(-1.0), &j).unwrap().0);
    }

    #[test]
    fn torus_decomposition() {
        let j = ComplexStructure::standard(4);
        let h = Hermitian::new(
            LieAlgebra::abelian(4),
            j.clone(),
            HermitianMetric::identity(&j).unwrap(),
        )
        .unwrap();
        let a12 = InvariantForm::basis(4, &[0, 1], Frame::Unitary).unwrap();
        let re = a12.add(&a12.conj()).unwrap().scale_real(0.5 * 0.1);
        let big = h
            .fundamental_form()
            .add(&h.to_real(&re).unwrap())
            .unwrap()
            .real_part();
        let dec = hs_decompose(&h, &big, 1e-8).unwrap();
        assert!(dec.beta.sub(&a12.scale_real(-0.05)).unwrap().is_zero(1e-14));
        assert!(dec.omega.sub(&h.fundamental_form()).unwrap().is_zero(1e-14));
        assert!(tames(&big, &j).unwrap().0);
    }
}
