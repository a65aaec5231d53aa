use std::collections::BTreeMap;

use nalgebra::DVector;
use num_complex::Complex64;

use super::structure::{unit, INTEGRABLE_TOL};
use super::{ComplexStructure, HermitianMetric};
use crate::error::{Error, Result};
use crate::exterior::{
    masks_of_degree, Codifferential, Frame, Hodge, InvariantForm, StructureEquations,
};
use crate::lie::LieAlgebra;
use crate::linalg::{self, CMatrix, RMatrix};

/// Coefficient of `a^j ^ conj(a^j)` in the fundamental form of a unitary coframe.
///
/// With `omega(X, Y) = g(JX, Y)` and `a^j = f^{2j-1} + i f^{2j}` one gets
/// `f^{2j-1} ^ f^{2j} = (i/2) a^j ^ conj(a^j)`.
pub const OMEGA_UNITARY_FACTOR: Complex64 = Complex64::new(0.0, 0.5);

/// Tolerance on central vectors.
pub const CENTRAL_TOL: f64 = 1e-9;

/// Tolerance of the SKT predicate.
pub const SKT_TOL: f64 = 1e-8;

/// Residuals of the two equivalent SKT conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SktResidual {
    /// Largest coefficient of `del delbar omega` in the unitary coframe.
    pub ddbar: f64,
    /// Largest coefficient of `d c` in the unitary coframe.
    pub dc: f64,
}

impl SktResidual {
    pub fn value(&self) -> f64 {
        self.ddbar.max(self.dc)
    }

    pub fn is_skt(&self, tol: f64) -> bool {
        self.value() <= tol
    }
}

/// Quotient of a Hermitian Lie algebra by its center.
#[derive(Debug, Clone)]
pub enum QuotientStructure {
    /// The algebra is abelian, so the quotient is zero-dimensional.
    Trivial,
    Quotient {
        hermitian: Box<Hermitian>,
        /// Maps a vector of `g` to coordinates of its class in the quotient basis.
        projection: RMatrix,
    },
}

/// A Lie algebra with a complex structure and a compatible metric, together
/// with the metric-unitary coframe `a^j = f^{2j-1} + i f^{2j}` built from a
/// `g`-orthonormal `J`-adapted basis.
#[derive(Debug, Clone)]
pub struct Hermitian {
    algebra: LieAlgebra,
    j: ComplexStructure,
    metric: HermitianMetric,
    basis: RMatrix,
    // unitary generator a = sum_i coframe[(a, i)] e^i
    coframe: CMatrix,
    coframe_inv: CMatrix,
    unitary: StructureEquations,
    hodge: Hodge,
    nijenhuis: f64,
}

impl Hermitian {
    pub fn new(algebra: LieAlgebra, j: ComplexStructure, metric: HermitianMetric) -> Result<Self> {
        Self::build(algebra, j, metric, None)
    }

    /// As [`Hermitian::new`] with the adapted basis starting from a `J`-invariant subspace.
    pub fn with_leading(
        algebra: LieAlgebra,
        j: ComplexStructure,
        metric: HermitianMetric,
        leading: &crate::lie::Subspace,
    ) -> Result<Self> {
        Self::build(algebra, j, metric, Some(leading))
    }

    /// Use the metric `(Id + J^T J) / 2`; handy when only the coframe matters.
    pub fn with_reference_metric(algebra: LieAlgebra, j: ComplexStructure) -> Result<Self> {
        let metric = HermitianMetric::averaged_identity(&j);
        Self::new(algebra, j, metric)
    }

    fn build(
        algebra: LieAlgebra,
        j: ComplexStructure,
        metric: HermitianMetric,
        leading: Option<&crate::lie::Subspace>,
    ) -> Result<Self> {
        if algebra.dim() != j.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: j.dim(),
            });
        }
        let n = algebra.dim() / 2;
        let basis = j.adapted_basis(metric.gram(), leading)?;
        let m = linalg::inverse(&basis)?;
        let i = Complex64::new(0.0, 1.0);
        let coframe = CMatrix::from_fn(2 * n, 2 * n, |a, col| {
            let (k, s) = if a < n { (a, 1.0) } else { (a - n, -1.0) };
            m[(2 * k, col)] + i * s * m[(2 * k + 1, col)]
        });
        let coframe_inv = linalg::complex_inverse(&coframe)?;
        let unitary = algebra
            .equations()
            .change_coframe(&coframe_inv, &coframe, Frame::Unitary)?;
        let nijenhuis = j.nijenhuis_residual(&algebra)?;
        let omega = standard_omega(n);
        let hodge = Hodge::new(&omega)?;
        Ok(Self {
            algebra,
            j,
            metric,
            basis,
            coframe,
            coframe_inv,
            unitary,
            hodge,
            nijenhuis,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn complex_structure(&self) -> &ComplexStructure {
        &self.j
    }

    pub fn metric(&self) -> &HermitianMetric {
        &self.metric
    }

    pub fn complex_dim(&self) -> usize {
        self.algebra.dim() / 2
    }

    /// Columns `b_1, J b_1, ...` of the adapted orthonormal basis.
    pub fn adapted_basis(&self) -> &RMatrix {
        &self.basis
    }

    pub fn unitary_coframe(&self) -> &CMatrix {
        &self.coframe
    }

    pub fn unitary_equations(&self) -> &StructureEquations {
        &self.unitary
    }

    pub fn hodge(&self) -> &Hodge {
        &self.hodge
    }

    pub fn nijenhuis_residual(&self) -> f64 {
        self.nijenhuis
    }

    pub fn is_integrable(&self) -> bool {
        self.nijenhuis <= INTEGRABLE_TOL
    }

    fn require_integrable(&self) -> Result<()> {
        if self.is_integrable() {
            Ok(())
        } else {
            Err(Error::NotIntegrable {
                residual: self.nijenhuis,
            })
        }
    }

    pub fn to_unitary(&self, f: &InvariantForm) -> Result<InvariantForm> {
        match f.frame() {
            Frame::Unitary => Ok(f.clone()),
            Frame::Real => f.transform(&self.coframe_inv, Frame::Unitary),
        }
    }

    pub fn to_real(&self, f: &InvariantForm) -> Result<InvariantForm> {
        match f.frame() {
            Frame::Real => Ok(f.clone()),
            Frame::Unitary => f.transform(&self.coframe, Frame::Real),
        }
    }

    /// `d` in whichever coframe the form is written.
    pub fn d(&self, f: &InvariantForm) -> Result<InvariantForm> {
        match f.frame() {
            Frame::Real => self.algebra.d(f),
            Frame::Unitary => self.unitary.d(f),
        }
    }

    /// Type decomposition, written in the unitary coframe.
    pub fn pq_components(
        &self,
        f: &InvariantForm,
    ) -> Result<BTreeMap<(usize, usize), InvariantForm>> {
        Ok(self.to_unitary(f)?.split_types())
    }

    fn typed_d(&self, f: &InvariantForm, holomorphic: bool) -> Result<InvariantForm> {
        self.require_integrable()?;
        let fu = self.to_unitary(f)?;
        let mut out = InvariantForm::zero(fu.dim(), fu.degree() + 1, Frame::Unitary);
        for ((p, q), comp) in fu.split_types() {
            let dc = self.unitary.d(&comp)?;
            let part = if holomorphic {
                dc.type_component(p + 1, q)
            } else {
                dc.type_component(p, q + 1)
            };
            out.add_assign_scaled(&part, Complex64::new(1.0, 0.0))?;
        }
        Ok(out)
    }

    /// `del f`, in the unitary coframe.
    pub fn del(&self, f: &InvariantForm) -> Result<InvariantForm> {
        self.typed_d(f, true)
    }

    /// `delbar f`, in the unitary coframe.
    pub fn delbar(&self, f: &InvariantForm) -> Result<InvariantForm> {
        self.typed_d(f, false)
    }

    /// `omega(X, Y) = g(JX, Y)` in the real coframe.
    pub fn fundamental_form(&self) -> InvariantForm {
        let w = self.j.matrix().transpose() * self.metric.gram();
        InvariantForm::from_two_form_matrix(&w)
    }

    /// The fundamental form in the unitary coframe, `(i/2) sum_j a^j ^ conj(a^j)`.
    pub fn fundamental_form_unitary(&self) -> InvariantForm {
        standard_omega(self.complex_dim())
    }

    pub fn hodge_star(&self, f: &InvariantForm) -> Result<InvariantForm> {
        self.hodge.star(&self.to_unitary(f)?)
    }

    /// Pointwise Hermitian product of invariant forms (volume normalized to 1).
    pub fn inner(&self, a: &InvariantForm, b: &InvariantForm) -> Result<Complex64> {
        self.hodge.inner(&self.to_unitary(a)?, &self.to_unitary(b)?)
    }

    pub fn norm(&self, a: &InvariantForm) -> Result<f64> {
        Ok(self.inner(a, a)?.re.max(0.0).sqrt())
    }

    /// `del* = -* delbar *`, `delbar* = -* del *`, `d* = -* d *`, in the unitary coframe.
    pub fn codifferential(
        &self,
        f: &InvariantForm,
        which: Codifferential,
    ) -> Result<InvariantForm> {
        let fu = self.to_unitary(f)?;
        if fu.degree() == 0 {
            return Ok(InvariantForm::zero(fu.dim(), 0, Frame::Unitary));
        }
        let s = self.hodge.star(&fu)?;
        let inner = match which {
            Codifferential::Del => self.delbar(&s)?,
            Codifferential::DelBar => self.del(&s)?,
            Codifferential::D => self.unitary.d(&s)?,
        };
        let mut out = self.hodge.star(&inner)?.scale_real(-1.0);
        if out.is_empty() {
            out = InvariantForm::zero(fu.dim(), fu.degree() - 1, Frame::Unitary);
        }
        Ok(out)
    }

    fn g(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * self.metric.gram() * y)[(0, 0)]
    }

    fn br(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.algebra
            .bracket(x, y)
            .expect("dimensions checked at construction")
    }

    /// `c(X,Y,Z) = -g([JX,JY],Z) - g([JY,JZ],X) - g([JZ,JX],Y)`.
    pub fn torsion_value(&self, x: &DVector<f64>, y: &DVector<f64>, z: &DVector<f64>) -> f64 {
        let (jx, jy, jz) = (self.j.apply(x), self.j.apply(y), self.j.apply(z));
        -self.g(&self.br(&jx, &jy), z)
            - self.g(&self.br(&jy, &jz), x)
            - self.g(&self.br(&jz, &jx), y)
    }

    /// Torsion 3-form of the Bismut connection, in the real coframe.
    pub fn bismut_torsion(&self) -> Result<InvariantForm> {
        self.require_integrable()?;
        let m = self.algebra.dim();
        let mut c = InvariantForm::zero(m, 3, Frame::Real);
        for mask in masks_of_degree(m, 3) {
            let idx = crate::exterior::indices_of(mask);
            let v = self.torsion_value(&unit(m, idx[0]), &unit(m, idx[1]), &unit(m, idx[2]));
            let t = InvariantForm::basis(m, &idx, Frame::Real)?;
            c.add_assign_scaled(&t, Complex64::new(v, 0.0))?;
        }
        Ok(c)
    }

    /// `-J(d omega)`, which agrees with the Bismut torsion for integrable `J`.
    pub fn torsion_from_omega(&self) -> Result<InvariantForm> {
        let domega = self.algebra.d(&self.fundamental_form())?;
        Ok(self.j.act_on_form(&domega)?.scale_real(-1.0))
    }

    /// `nabla_X Y` for the Bismut connection.
    pub fn bismut_connection(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
        self.require_integrable()?;
        let m = self.algebra.dim();
        let (jx, jy) = (self.j.apply(x), self.j.apply(y));
        // Coefficients g(nabla_X Y, e_k), then raise the index.
        let mut low = DVector::zeros(m);
        for k in 0..m {
            let z = unit(m, k);
            let jz = self.j.apply(&z);
            low[k] = 0.5
                * (self.g(&(self.br(x, y) - self.br(&jx, &jy)), &z)
                    - self.g(&(self.br(y, &z) + self.br(&jy, &jz)), x)
                    + self.g(&(self.br(&z, x) - self.br(&jz, &jx)), y));
        }
        let ginv = linalg::inverse(self.metric.gram())?;
        Ok(ginv * low)
    }

    /// `(lhs, rhs)` of `dc(X, Y, JX, JY) = 2(|[Y,JX]|^2 - g([[JX,Y],JX],Y) - g([[Y,JY],JX],X))`
    /// for a central `X`.
    pub fn dc_center_identity(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<(f64, f64)> {
        let residual = self.algebra.central_residual(x)?;
        if residual > CENTRAL_TOL {
            return Err(Error::NotCentral { residual });
        }
        let c = self.bismut_torsion()?;
        let dc = self.algebra.d(&c)?;
        let (jx, jy) = (self.j.apply(x), self.j.apply(y));
        let lhs = dc
            .evaluate(&[x.as_slice(), y.as_slice(), jx.as_slice(), jy.as_slice()])?
            .re;
        let yjx = self.br(y, &jx);
        let rhs = 2.0
            * (self.g(&yjx, &yjx)
                - self.g(&self.br(&self.br(&jx, y), &jx), y)
                - self.g(&self.br(&self.br(y, &jy), &jx), x));
        Ok((lhs, rhs))
    }

    /// Both SKT residuals, measured in the unitary coframe.
    pub fn skt_residual(&self) -> Result<SktResidual> {
        let omega = self.fundamental_form_unitary();
        let ddbar = self.del(&self.delbar(&omega)?)?.sup_norm();
        let c = self.to_unitary(&self.bismut_torsion()?)?;
        let dc = self.unitary.d(&c)?.sup_norm();
        Ok(SktResidual { ddbar, dc })
    }

    pub fn is_skt(&self) -> Result<(bool, f64)> {
        let r = self.skt_residual()?;
        Ok((r.is_skt(SKT_TOL), r.value()))
    }

    /// Lee form `theta = J d* omega`, in the real coframe.
    pub fn lee_form(&self) -> Result<InvariantForm> {
        let dstar = self.codifferential(&self.fundamental_form_unitary(), Codifferential::D)?;
        let real = self.to_real(&dstar)?;
        self.j.act_on_form(&real)
    }

    /// Largest coefficient of `d* theta`.
    pub fn lee_coclosed_residual(&self) -> Result<f64> {
        let theta = self.lee_form()?;
        Ok(self.codifferential(&theta, Codifferential::D)?.sup_norm())
    }

    /// Quotient by the center with the induced complex structure and metric.
    pub fn induced_quotient(&self) -> Result<QuotientStructure> {
        let xi = self.algebra.center();
        let m = self.algebra.dim();
        if xi.dim() == m {
            return Ok(QuotientStructure::Trivial);
        }
        if !self.j.preserves(&xi, 1e-8) {
            return Err(Error::CenterNotInvariant);
        }
        let gram = self.metric.gram();
        let perp = xi.complement(Some(gram));
        let full = self.j.adapted_basis(gram, Some(&perp))?;
        let k = perp.dim();
        let basis = full.columns(0, k).into_owned();
        let projection = basis.transpose() * gram;
        let q = self.algebra.quotient_on_complement(&basis, &projection)?;
        let jq = ComplexStructure::new(&projection * self.j.matrix() * &basis)?;
        let gq = HermitianMetric::new(basis.transpose() * gram * &basis, &jq)?;
        let hermitian = Hermitian::new(q, jq, gq)?;
        Ok(QuotientStructure::Quotient {
            hermitian: Box::new(hermitian),
            projection,
        })
    }
}

/// `(i/2) sum_j a^j ^ conj(a^j)` in a unitary coframe of complex dimension `n`.
pub fn standard_omega(n: usize) -> InvariantForm {
    let mut w = InvariantForm::zero(2 * n, 2, Frame::Unitary);
    for j in 0..n {
        let t = InvariantForm::basis(2 * n, &[j, j + n], Frame::Unitary).expect("in range");
        w.add_assign_scaled(&t, OMEGA_UNITARY_FACTOR)
            .expect("same frame");
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kaehler_torus(n: usize) -> Hermitian {
        let j = ComplexStructure::standard(2 * n);
        let g = HermitianMetric::identity(&j).unwrap();
        Hermitian::new(LieAlgebra::abelian(2 * n), j, g).unwrap()
    }

    #[test]
    fn fundamental_form_of_standard_pair() {
        let h = kaehler_torus(2);
        let w = h.fundamental_form();
        assert_eq!(w.coefficient(&[0, 1]).re, 1.0);
        assert_eq!(w.coefficient(&[2, 3]).re, 1.0);
        assert!(h
            .to_unitary(&w)
            .unwrap()
            .sub(&h.fundamental_form_unitary())
            .unwrap()
            .is_zero(1e-14));
    }

    #[test]
    fn frame_round_trip() {
        let h = kaehler_torus(2);
        let f = InvariantForm::basis(4, &[0, 3], Frame::Real).unwrap();
        let back = h.to_real(&h.to_unitary(&f).unwrap()).unwrap();
        assert!(back.sub(&f).unwrap().is_zero(1e-14));
    }

    #[test]
    fn torus_is_kaehler() {
        let h = kaehler_torus(3);
        assert_eq!(h.skt_residual().unwrap().value(), 0.0);
        assert!(h.lee_form().unwrap().is_zero(1e-14));
        assert!(matches!(
            h.induced_quotient().unwrap(),
            QuotientStructure::Trivial
        ));
    }

    #[test]
    fn unit_coframe_norms() {
        let h = kaehler_torus(2);
        let a1 = InvariantForm::basis(4, &[0], Frame::Unitary).unwrap();
        let a2 = InvariantForm::basis(4, &[1], Frame::Unitary).unwrap();
        assert!((h.inner(&a1, &a1).unwrap().re - 2.0).abs() < 1e-15);
        assert_eq!(h.inner(&a1, &a2).unwrap(), Complex64::default());
        let e1 = InvariantForm::basis(4, &[0], Frame::Real).unwrap();
        assert!((h.norm(&e1).unwrap() - 1.0).abs() < 1e-15);
    }
}
