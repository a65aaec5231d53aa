//! Real Lie algebras given by coframe structure equations.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exterior::{indices_of, Frame, InvariantForm, StructureEquations};
use crate::linalg::{self, orthonormalize, RMatrix, RANK_TOL};

/// A finite-dimensional real Lie algebra.
///
/// Stored through `d e^k` for the coframe dual to a basis `e_1..e_n`; the
/// bracket table is derived once at construction through
/// `[e_i, e_j]^k = -(d e^k)(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    equations: StructureEquations,
    // brackets[i * dim + j] = [e_i, e_j]
    brackets: Vec<DVector<f64>>,
}

/// A linear subspace of `R^n` with a Euclidean-orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<DVector<f64>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| unit(ambient_dim, i)).collect();
        Self { ambient_dim, basis }
    }

    /// Span of arbitrary vectors (dependent ones are discarded).
    pub fn span(ambient_dim: usize, vectors: &[DVector<f64>]) -> Self {
        let scale = vectors.iter().map(|v| v.amax()).fold(1.0, f64::max);
        let basis = orthonormalize(vectors, None, RANK_TOL * scale);
        Self { ambient_dim, basis }
    }

    /// Span of standard basis vectors picked by 0-based indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let v: Vec<_> = indices.iter().map(|&i| unit(ambient_dim, i)).collect();
        Self::span(ambient_dim, &v)
    }

    /// Span of the columns of a matrix.
    pub fn column_span(m: &RMatrix) -> Self {
        let v: Vec<_> = m.column_iter().map(|c| c.into_owned()).collect();
        Self::span(m.nrows(), &v)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DVector<f64>] {
        &self.basis
    }

    /// Orthonormal basis as the columns of an `ambient x dim` matrix.
    pub fn matrix(&self) -> RMatrix {
        RMatrix::from_fn(self.ambient_dim, self.dim(), |r, c| self.basis[c][r])
    }

    /// Orthogonal projector onto the subspace.
    pub fn projector(&self) -> RMatrix {
        let b = self.matrix();
        &b * b.transpose()
    }

    /// Distance from `v` to the subspace.
    pub fn distance(&self, v: &DVector<f64>) -> f64 {
        (v - self.projector() * v).norm()
    }

    pub fn contains(&self, v: &DVector<f64>, tol: f64) -> bool {
        self.distance(v) <= tol * v.norm().max(1.0)
    }

    pub fn is_subspace_of(&self, other: &Subspace, tol: f64) -> bool {
        self.basis.iter().all(|v| other.contains(v, tol))
    }

    pub fn approx_eq(&self, other: &Subspace, tol: f64) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other, tol)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Self::span(self.ambient_dim, &v)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.dim() == 0 || other.dim() == 0 {
            return Self::zero(self.ambient_dim);
        }
        let a = self.matrix();
        let b = other.matrix();
        let mut stacked = RMatrix::zeros(self.ambient_dim, a.ncols() + b.ncols());
        stacked
            .view_mut((0, 0), (self.ambient_dim, a.ncols()))
            .copy_from(&a);
        stacked
            .view_mut((0, a.ncols()), (self.ambient_dim, b.ncols()))
            .copy_from(&(-&b));
        let ns = linalg::null_space(&stacked, RANK_TOL);
        let coeffs = ns.rows(0, a.ncols()).into_owned();
        Self::column_span(&(a * coeffs))
    }

    /// Image under a linear map.
    pub fn image(&self, m: &RMatrix) -> Subspace {
        let v: Vec<_> = self.basis.iter().map(|b| m * b).collect();
        Self::span(m.nrows(), &v)
    }

    /// Orthogonal complement with respect to the inner product `gram`
    /// (Euclidean when `None`), returned with a Euclidean-orthonormal basis.
    pub fn complement(&self, gram: Option<&RMatrix>) -> Subspace {
        let n = self.ambient_dim;
        if self.dim() == 0 {
            return Self::full(n);
        }
        let b = self.matrix();
        let constraints = match gram {
            Some(g) => b.transpose() * g,
            None => b.transpose(),
        };
        Self::column_span(&linalg::null_space(&constraints, RANK_TOL))
    }
}

fn unit(n: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[i] = 1.0;
    v
}

/// Outcome of the descending central series.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralSeries {
    /// `g^0 = g, g^1 = [g, g], ..., g^k = [g^{k-1}, g]` up to stabilization.
    pub terms: Vec<Subspace>,
    /// Smallest `s` with `g^s = 0`, `None` if the series stabilizes above zero.
    pub nil_step: Option<usize>,
}

impl LieAlgebra {
    /// Build from the differentials `d e^k` (real-frame 2-forms, real coefficients).
    pub fn new(differentials: Vec<InvariantForm>) -> Result<Self> {
        for f in &differentials {
            let im = f.max_imaginary();
            if im > 1e-12 {
                return Err(Error::ComplexValued { residual: im });
            }
        }
        let dim = differentials.len();
        let differentials = differentials.iter().map(|f| f.real_part()).collect();
        let equations = StructureEquations::new(differentials, Frame::Real)?;
        let labels = (1..=dim).map(|i| format!("e{i}")).collect();
        let mut out = Self {
            labels,
            equations,
            brackets: Vec::new(),
        };
        out.brackets = out.build_brackets();
        Ok(out)
    }

    /// Build from entries `(k, i, j, c)` meaning `d e^k += c e^i ^ e^j` (0-based).
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, f64)]) -> Result<Self> {
        let mut d = vec![InvariantForm::zero(dim, 2, Frame::Real); dim];
        for &(k, i, j, c) in entries {
            for idx in [k, i, j] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            if i == j {
                return Err(Error::InvalidParameter(format!(
                    "structure entry for d e^{} repeats index {}",
                    k + 1,
                    i + 1
                )));
            }
            let term = InvariantForm::basis(dim, &[i, j], Frame::Real)?;
            d[k].add_assign_scaled(&term, Complex64::new(c, 0.0))?;
        }
        Self::new(d)
    }

    /// Build from a full bracket table, `table[i][j] = [e_i, e_j]`.
    pub fn from_brackets(dim: usize, table: &[Vec<DVector<f64>>]) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, row) in table.iter().enumerate().take(dim) {
            for (j, bracket) in row.iter().enumerate().take(dim).skip(i + 1) {
                for (k, &v) in bracket.iter().enumerate() {
                    if v.abs() > 1e-15 {
                        entries.push((k, i, j, -v));
                    }
                }
            }
        }
        Self::from_entries(dim, &entries)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(vec![InvariantForm::zero(dim, 2, Frame::Real); dim]).expect("zero equations")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    fn build_brackets(&self) -> Vec<DVector<f64>> {
        let n = self.dim();
        let mut out = vec![DVector::zeros(n); n * n];
        for (k, dk) in self.equations.generators().iter().enumerate() {
            for (mask, c) in dk.terms() {
                let idx = indices_of(mask);
                let (i, j) = (idx[0], idx[1]);
                // (c e^i ^ e^j)(e_i, e_j) = c
                out[i * n + j][k] -= c.re;
                out[j * n + i][k] += c.re;
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.equations.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn equations(&self) -> &StructureEquations {
        &self.equations
    }

    /// `d e^k` for a 0-based index.
    pub fn differential(&self, k: usize) -> &InvariantForm {
        self.equations.generator(k)
    }

    /// Nonzero structure entries `(k, i, j, c)` with `i < j`, 0-based.
    pub fn entries(&self) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        for (k, dk) in self.equations.generators().iter().enumerate() {
            for (mask, c) in dk.terms() {
                let idx = indices_of(mask);
                out.push((k, idx[0], idx[1], c.re));
            }
        }
        out
    }

    pub fn is_abelian(&self, tol: f64) -> bool {
        self.equations.generators().iter().all(|f| f.is_zero(tol))
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &DVector<f64> {
        &self.brackets[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let mut out = DVector::zeros(n);
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0.0 || i == j {
                    continue;
                }
                out.axpy(x[i] * y[j], self.bracket_basis(i, j), 1.0);
            }
        }
        Ok(out)
    }

    /// Matrix of `ad_x`, columns being `[x, e_j]`.
    pub fn ad(&self, x: &DVector<f64>) -> Result<RMatrix> {
        let n = self.dim();
        let mut m = RMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.bracket(x, &unit(n, j))?;
            m.set_column(j, &col);
        }
        Ok(m)
    }

    /// Chevalley-Eilenberg differential of a real-frame form.
    pub fn d(&self, f: &InvariantForm) -> Result<InvariantForm> {
        self.equations.d(f)
    }

    /// Largest coefficient of `d(d e^k)`; zero exactly when the Jacobi identity holds.
    pub fn jacobi_residual(&self) -> f64 {
        self.equations
            .d_squared_residual()
            .expect("consistent dimensions")
    }

    /// `[A, B]` as a subspace.
    pub fn bracket_subspace(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut v = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                v.push(self.bracket(x, y).expect("ambient dimension"));
            }
        }
        Subspace::span(self.dim(), &v)
    }

    pub fn derived(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_subspace(&full, &full)
    }

    pub fn lower_central_series(&self) -> CentralSeries {
        let full = Subspace::full(self.dim());
        let mut terms = vec![full.clone()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.dim() == 0 {
                let s = terms.len() - 1;
                return CentralSeries {
                    terms,
                    nil_step: Some(s.max(1)),
                };
            }
            let next = self.bracket_subspace(last, &full);
            if next.dim() == last.dim() {
                return CentralSeries {
                    terms,
                    nil_step: None,
                };
            }
            terms.push(next);
        }
    }

    /// Nilpotency step, counting abelian algebras as 1-step.
    pub fn nil_step(&self) -> Option<usize> {
        self.lower_central_series().nil_step
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nil_step().is_some()
    }

    /// `{X : [X, g] = 0}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // Row (j, k), column i: [e_i, e_j]^k.
        let mut m = RMatrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                let b = self.bracket_basis(i, j);
                for k in 0..n {
                    m[(j * n + k, i)] = b[k];
                }
            }
        }
        Subspace::column_span(&linalg::null_space(&m, RANK_TOL))
    }

    /// Largest entry of `ad_x`.
    pub fn central_residual(&self, x: &DVector<f64>) -> Result<f64> {
        Ok(linalg::sup_norm(&self.ad(x)?))
    }

    /// Restrict to a complement `W` of an ideal `I`, realising `g / I` on `W`.
    ///
    /// `basis` holds a basis of `W` as columns and `projection` maps a vector
    /// of `g` to its coordinates in that basis after discarding the `I`
    /// component. The caller guarantees both are consistent.
    pub fn quotient_on_complement(
        &self,
        basis: &RMatrix,
        projection: &RMatrix,
    ) -> Result<LieAlgebra> {
        let m = basis.ncols();
        let cols: Vec<DVector<f64>> = basis.column_iter().map(|c| c.into_owned()).collect();
        let mut table = vec![vec![DVector::zeros(m); m]; m];
        for a in 0..m {
            for b in 0..m {
                if a != b {
                    table[a][b] = projection * self.bracket(&cols[a], &cols[b])?;
                }
            }
        }
        LieAlgebra::from_brackets(m, &table)
    }

    /// Quotient by the center, realised on the `g`-orthogonal complement.
    ///
    /// Returns the quotient algebra and the projection matrix `X -> X^perp`
    /// written in a `g`-orthonormal basis of the complement.
    pub fn quotient_by_center(&self, gram: &RMatrix) -> Result<(LieAlgebra, RMatrix)> {
        let xi = self.center();
        if xi.dim() == self.dim() {
            return Err(Error::DegenerateQuotient);
        }
        let comp = xi.complement(Some(gram));
        let ortho = orthonormalize(comp.basis(), Some(gram), RANK_TOL);
        let basis = RMatrix::from_fn(self.dim(), ortho.len(), |r, c| ortho[c][r]);
        let projection = basis.transpose() * gram;
        let q = self.quotient_on_complement(&basis, &projection)?;
        Ok((q, projection))
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim();
        let mut entries = self.entries();
        entries.extend(
            other
                .entries()
                .into_iter()
                .map(|(k, i, j, c)| (k + n, i + n, j + n, c)),
        );
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| format!("{l}'")));
        LieAlgebra::from_entries(n + other.dim(), &entries)
            .expect("block equations are valid")
            .with_labels(labels)
            .expect("label count")
    }

    /// Structure equations in a new basis `f_a = sum_i p[(i, a)] e_i`
    /// (the columns of `p` are the new basis vectors).
    pub fn change_basis(&self, p: &RMatrix) -> Result<LieAlgebra> {
        let n = self.dim();
        if p.nrows() != n || p.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.nrows(),
            });
        }
        let p_inv = linalg::inverse(p)?;
        // e^i = sum_a p[(i, a)] f^a and f^a = sum_i p_inv[(a, i)] e^i
        let eq = self.equations.change_coframe(
            &linalg::to_complex(p),
            &linalg::to_complex(&p_inv),
            Frame::Real,
        )?;
        LieAlgebra::new(eq.generators().to_vec())
    }

    /// Structure equations in a new coframe `f^a = sum_i q[(a, i)] e^i`.
    pub fn change_coframe(&self, q: &RMatrix) -> Result<LieAlgebra> {
        self.change_basis(&linalg::inverse(q)?)
    }

    /// Largest difference between structure entries of two algebras.
    pub fn distance(&self, other: &LieAlgebra) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.equations
            .generators()
            .iter()
            .zip(other.equations.generators())
            .map(|(a, b)| a.sub(b).map(|d| d.sup_norm()).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h3() -> LieAlgebra {
        LieAlgebra::from_entries(3, &[(2, 0, 1, 1.0)]).unwrap()
    }

    #[test]
    fn bracket_follows_sign_convention() {
        let g = h3();
        let b = g.bracket_basis(0, 1);
        assert_eq!(b[2], -1.0);
        assert_eq!(g.bracket_basis(1, 0)[2], 1.0);
        // d e^3 (e_1, e_2) = -e^3([e_1, e_2])
        let lhs = g
            .differential(2)
            .evaluate(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]])
            .unwrap();
        assert_eq!(lhs.re, -b[2]);
    }

    #[test]
    fn heisenberg_series_and_center() {
        let g = h3();
        let s = g.lower_central_series();
        assert_eq!(s.nil_step, Some(2));
        assert!(s.terms[1].approx_eq(&Subspace::coordinate(3, &[2]), 1e-12));
        assert!(g.center().approx_eq(&Subspace::coordinate(3, &[2]), 1e-12));
        assert_eq!(LieAlgebra::abelian(4).nil_step(), Some(1));
    }

    #[test]
    fn non_nilpotent_series_stabilizes() {
        // [e1, e2] = e2, i.e. d e^2 = -e^1 ^ e^2
        let g = LieAlgebra::from_entries(2, &[(1, 0, 1, -1.0)]).unwrap();
        assert_eq!(g.nil_step(), None);
        assert_eq!(g.jacobi_residual(), 0.0);
    }

    #[test]
    fn subspace_intersection_and_complement() {
        let a = Subspace::coordinate(4, &[0, 1]);
        let b = Subspace::span(
            4,
            &[
                DVector::from_vec(vec![1.0, 1.0, 1.0, 0.0]),
                DVector::from_vec(vec![0.0, 0.0, 1.0, 0.0]),
            ],
        );
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0]), 1e-12));
        assert_eq!(a.complement(None).dim(), 2);
    }

    #[test]
    fn change_basis_round_trip() {
        let g = h3().direct_sum(&LieAlgebra::abelian(1));
        let p = RMatrix::from_row_slice(
            4,
            4,
            &[
                1.0, 2.0, 0.0, 1.0, 0.0, 1.0, 3.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 2.0,
            ],
        );
        let h = g.change_basis(&p).unwrap();
        assert!(h.jacobi_residual() < 1e-12);
        let back = h.change_basis(&linalg::inverse(&p).unwrap()).unwrap();
        assert!(back.distance(&g) < 1e-10);
    }

    #[test]
    fn quotient_of_two_step_is_abelian() {
        let g = h3().direct_sum(&h3());
        let (q, proj) = g.quotient_by_center(&RMatrix::identity(6, 6)).unwrap();
        assert_eq!(q.dim(), 4);
        assert_eq!(proj.nrows(), 4);
        assert!(q.is_abelian(1e-12));
        assert_eq!(
            LieAlgebra::abelian(3).quotient_by_center(&RMatrix::identity(3, 3)),
            Err(Error::DegenerateQuotient)
        );
    }
}
