use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use super::feasibility::{FeasibilityProblem, SearchOptions, Solution};
use super::{hs_decompose, hs_obstruction, metric_from_form, tames};
use crate::complex::{ComplexStructure, Hermitian, OMEGA_UNITARY_FACTOR};
use crate::error::{Error, Result};
use crate::exterior::{differential_matrix, masks_of_degree, Frame, InvariantForm};
use crate::lie::LieAlgebra;
use crate::linalg::RMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Found,
    NotFound,
}

/// Structural reasons that rule out a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    /// `J(center)` meets `[g, g]`: no taming symplectic form.
    CenterMeetsCommutator,
    /// The center is not `J`-invariant: no SKT metric on a nilpotent algebra.
    CenterNotInvariant,
    /// The algebra is nilpotent of step at least 3: no SKT metric.
    StepTooLarge,
    /// Dimension 8 with one-dimensional commutator other than `h3 + R^5`: no SKT metric.
    CommutatorLine,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub reason: String,
    pub witness: Option<DVector<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// The fundamental form (SKT search) or the taming form, real coframe.
    pub form: InvariantForm,
    /// Gram matrix of the recovered metric.
    pub metric: RMatrix,
    pub constraint_residual: f64,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub status: Status,
    pub certificate: Option<Certificate>,
    /// Best unit-trace minimum eigenvalue reached; `None` when the search was skipped.
    pub best_min_eigenvalue: Option<f64>,
    pub best_trial: Option<usize>,
    pub iterations: usize,
    pub seed: u64,
    pub trials: usize,
    pub iterations_per_trial: usize,
    pub variables: usize,
    pub kernel_dim: usize,
    pub obstruction: Option<Obstruction>,
}

impl FeasibilityReport {
    pub fn found(&self) -> bool {
        self.status == Status::Found
    }

    /// Human-readable qualifier for the outcome.
    pub fn certainty(&self) -> &'static str {
        match (self.status, &self.obstruction) {
            (Status::Found, _) => "certificate found",
            (Status::NotFound, Some(_)) => "ruled out by a structural obstruction",
            (Status::NotFound, None) => "no certificate found (not a certificate of non-existence)",
        }
    }

    fn empty(opts: &SearchOptions, variables: usize) -> Self {
        Self {
            status: Status::NotFound,
            certificate: None,
            best_min_eigenvalue: None,
            best_trial: None,
            iterations: 0,
            seed: opts.seed,
            trials: opts.trials,
            iterations_per_trial: opts.iterations,
            variables,
            kernel_dim: 0,
            obstruction: None,
        }
    }

    fn record(&mut self, s: &Solution) {
        self.best_min_eigenvalue = Some(s.best_min_eigenvalue);
        self.best_trial = Some(s.best_trial);
        self.iterations = s.iterations;
        self.kernel_dim = s.kernel_dim;
    }
}

/// Structural reasons for a nilpotent algebra with complex structure to carry no SKT metric.
pub fn skt_obstruction(alg: &LieAlgebra, j: &ComplexStructure) -> Result<Option<Obstruction>> {
    let series = alg.lower_central_series();
    let Some(step) = series.nil_step else {
        return Ok(None);
    };
    let xi = alg.center();
    if !j.preserves(&xi, 1e-8) {
        return Ok(Some(Obstruction {
            kind: ObstructionKind::CenterNotInvariant,
            reason: "the center is not J-invariant".into(),
            witness: None,
        }));
    }
    if step >= 3 {
        return Ok(Some(Obstruction {
            kind: ObstructionKind::StepTooLarge,
            reason: format!("the algebra is {step}-step nilpotent"),
            witness: None,
        }));
    }
    let g1 = alg.derived().dim();
    if alg.dim() == 8 && g1 == 1 && xi.dim() != 6 {
        return Ok(Some(Obstruction {
            kind: ObstructionKind::CommutatorLine,
            reason: format!(
                "dim g^1 = 1 and not h3 + R^5 (center has dimension {})",
                xi.dim()
            ),
            witness: None,
        }));
    }
    Ok(None)
}

/// Hermitian matrix basis used by the SKT search: `n` diagonal entries then
/// real and imaginary parts of the entries above the diagonal.
fn hermitian_basis(n: usize) -> Vec<nalgebra::DMatrix<Complex64>> {
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        let mut m = nalgebra::DMatrix::zeros(n, n);
        m[(j, j)] = Complex64::new(1.0, 0.0);
        out.push(m);
    }
    for j in 0..n {
        for k in (j + 1)..n {
            let mut re = nalgebra::DMatrix::zeros(n, n);
            re[(j, k)] = Complex64::new(1.0, 0.0);
            re[(k, j)] = Complex64::new(1.0, 0.0);
            out.push(re);
            let mut im = nalgebra::DMatrix::zeros(n, n);
            im[(j, k)] = Complex64::new(0.0, 1.0);
            im[(k, j)] = Complex64::new(0.0, -1.0);
            out.push(im);
        }
    }
    out
}

/// `(i/2) sum H_jk a^j ^ conj(a^k)` in the unitary coframe.
pub fn form_of_hermitian(h: &nalgebra::DMatrix<Complex64>) -> InvariantForm {
    let n = h.nrows();
    let mut w = InvariantForm::zero(2 * n, 2, Frame::Unitary);
    for j in 0..n {
        for k in 0..n {
            let c = h[(j, k)];
            if c.norm() > 0.0 {
                let t = InvariantForm::basis(2 * n, &[j, k + n], Frame::Unitary).expect("in range");
                w.add_assign_scaled(&t, c * OMEGA_UNITARY_FACTOR)
                    .expect("same frame");
            }
        }
    }
    w
}

pub(crate) fn real_embedding(h: &nalgebra::DMatrix<Complex64>) -> RMatrix {
    let n = h.nrows();
    RMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let v = h[(r % n, c % n)];
        match (r < n, c < n) {
            (true, true) | (false, false) => v.re,
            (true, false) => -v.im,
            (false, true) => v.im,
        }
    })
}

/// Search for an SKT metric compatible with `j`.
pub fn skt_find(
    alg: &LieAlgebra,
    j: &ComplexStructure,
    opts: &SearchOptions,
) -> Result<FeasibilityReport> {
    let h = Hermitian::with_reference_metric(alg.clone(), j.clone())?;
    if !h.is_integrable() {
        return Err(Error::NotIntegrable {
            residual: h.nijenhuis_residual(),
        });
    }
    let n = h.complex_dim();
    let basis = hermitian_basis(n);
    let mut report = FeasibilityReport::empty(opts, basis.len());
    report.obstruction = skt_obstruction(alg, j)?;

    let targets = masks_of_degree(2 * n, 4);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut columns = Vec::with_capacity(basis.len());
    for b in &basis {
        let w = form_of_hermitian(b);
        columns.push(h.del(&h.delbar(&w)?)?);
    }
    for &mask in &targets {
        let vals: Vec<Complex64> = columns.iter().map(|c| c.coefficient_mask(mask)).collect();
        if vals.iter().any(|v| v.norm() > 0.0) {
            rows.push(vals.iter().map(|v| v.re).collect());
            rows.push(vals.iter().map(|v| v.im).collect());
        }
    }
    let a = RMatrix::from_fn(rows.len(), basis.len(), |r, c| rows[r][c]);
    let positivity = basis.iter().map(real_embedding).collect();
    let problem = FeasibilityProblem::new(basis.len(), a, positivity)?;
    let sol = problem.solve(opts);
    report.record(&sol);
    if sol.found && report.obstruction.is_none() {
        let mut hm = nalgebra::DMatrix::zeros(n, n);
        for (x, b) in sol.x.iter().zip(&basis) {
            hm += b * Complex64::new(*x, 0.0);
        }
        let form = h.to_real(&form_of_hermitian(&hm))?.real_part();
        let metric = metric_from_form(&form, j)?;
        let check = Hermitian::new(alg.clone(), j.clone(), metric.clone())?;
        let (is_skt, residual) = check.is_skt()?;
        if is_skt {
            report.status = Status::Found;
            report.certificate = Some(Certificate {
                form,
                metric: metric.gram().clone(),
                constraint_residual: residual,
                min_eigenvalue: sol.best_min_eigenvalue,
            });
        } else {
            log::warn!("SKT candidate failed verification (residual {residual:e})");
        }
    }
    Ok(report)
}

/// Search for a symplectic form taming `j`.
pub fn tamed_find(
    alg: &LieAlgebra,
    j: &ComplexStructure,
    opts: &SearchOptions,
) -> Result<FeasibilityReport> {
    let m = alg.dim();
    let pairs = masks_of_degree(m, 2);
    let mut report = FeasibilityReport::empty(opts, pairs.len());
    let obstruction = hs_obstruction(alg, j)?;
    if obstruction.blocked {
        report.obstruction = Some(Obstruction {
            kind: ObstructionKind::CenterMeetsCommutator,
            reason: "J(center) meets [g, g]".into(),
            witness: obstruction.witness,
        });
        return Ok(report);
    }
    tamed_search(alg, j, opts)
}

/// The numeric part of [`tamed_find`], run even when the structural test applies.
pub fn tamed_search(
    alg: &LieAlgebra,
    j: &ComplexStructure,
    opts: &SearchOptions,
) -> Result<FeasibilityReport> {
    if !j.is_integrable(alg)? {
        return Err(Error::NotIntegrable {
            residual: j.nijenhuis_residual(alg)?,
        });
    }
    let m = alg.dim();
    let pairs = masks_of_degree(m, 2);
    let mut report = FeasibilityReport::empty(opts, pairs.len());
    let a = differential_matrix(alg.equations(), 2)?;
    let positivity: Vec<RMatrix> = pairs
        .iter()
        .map(|&mask| {
            let f = InvariantForm::from_mask(m, mask, Complex64::new(1.0, 0.0), Frame::Real);
            super::taming_matrix(&f, j).expect("real 2-form")
        })
        .collect();
    let problem = FeasibilityProblem::new(pairs.len(), a, positivity)?;
    let sol = problem.solve(opts);
    report.record(&sol);
    if sol.found {
        let mut form = InvariantForm::zero(m, 2, Frame::Real);
        for (x, &mask) in sol.x.iter().zip(&pairs) {
            form.add_assign_scaled(
                &InvariantForm::from_mask(m, mask, Complex64::new(1.0, 0.0), Frame::Real),
                Complex64::new(*x, 0.0),
            )?;
        }
        let closed = alg.d(&form)?.sup_norm();
        let (ok, lmin) = tames(&form, j)?;
        let h = Hermitian::with_reference_metric(alg.clone(), j.clone())?;
        let dec = hs_decompose(&h, &form, opts.tol_eq)?;
        let metric = metric_from_form(&dec.omega, j)?;
        let verified = ok
            && closed <= opts.tol_eq
            && dec.del_omega_minus_delbar_beta <= opts.tol_eq
            && dec.del_beta <= opts.tol_eq;
        if verified {
            report.status = Status::Found;
            report.certificate = Some(Certificate {
                form,
                metric: metric.gram().clone(),
                constraint_residual: closed,
                min_eigenvalue: lmin,
            });
        } else {
            log::warn!("taming candidate failed verification");
        }
    }
    Ok(report)
}
