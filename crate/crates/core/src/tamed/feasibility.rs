//! Positive-definite feasibility over a linear subspace.
//!
//! Given linear equations `A x = 0` and a linear map `x -> S(x)` into
//! symmetric matrices, look for `x` in the kernel with `S(x)` positive
//! definite. The search maximizes `lambda_min(S(N y))` over the unit sphere
//! of kernel coordinates `y` by projected subgradient ascent from several
//! starting points.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, RMatrix};

/// Solver knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub trials: usize,
    pub iterations: usize,
    pub seed: u64,
    /// Equality tolerance for certificates.
    pub tol_eq: f64,
    /// Minimum unit-trace eigenvalue for a certificate.
    pub tol_pd: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            trials: 64,
            iterations: 500,
            seed: 0,
            tol_eq: crate::TOL_EQ,
            tol_pd: crate::TOL_PD,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityProblem {
    variable_dim: usize,
    constraints: RMatrix,
    positivity: Vec<RMatrix>,
}

/// Raw solver outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub found: bool,
    /// Best variable vector (unit trace of its positivity image when positive).
    pub x: DVector<f64>,
    /// `lambda_min / trace` of the best point, or `lambda_min` when the trace is not positive.
    pub best_min_eigenvalue: f64,
    pub best_trial: usize,
    pub iterations: usize,
    pub kernel_dim: usize,
}

impl FeasibilityProblem {
    /// `positivity[i]` is the symmetric matrix multiplying variable `i`.
    pub fn new(
        variable_dim: usize,
        constraints: RMatrix,
        positivity: Vec<RMatrix>,
    ) -> Result<Self> {
        if constraints.ncols() != variable_dim && constraints.nrows() != 0 {
            return Err(Error::DimensionMismatch {
                expected: variable_dim,
                found: constraints.ncols(),
            });
        }
        if positivity.len() != variable_dim {
            return Err(Error::DimensionMismatch {
                expected: variable_dim,
                found: positivity.len(),
            });
        }
        if constraints.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "non-finite constraint entry".into(),
            ));
        }
        let size = positivity.first().map(|m| m.nrows()).unwrap_or(0);
        for m in &positivity {
            if m.nrows() != size || m.ncols() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: m.nrows(),
                });
            }
        }
        let positivity = positivity
            .into_iter()
            .map(|m| (&m + m.transpose()) * 0.5)
            .collect();
        Ok(Self {
            variable_dim,
            constraints,
            positivity,
        })
    }

    pub fn variable_dim(&self) -> usize {
        self.variable_dim
    }

    pub fn constraints(&self) -> &RMatrix {
        &self.constraints
    }

    pub fn image(&self, x: &DVector<f64>) -> RMatrix {
        let size = self.positivity.first().map(|m| m.nrows()).unwrap_or(0);
        let mut s = RMatrix::zeros(size, size);
        for (xi, m) in x.iter().zip(&self.positivity) {
            if *xi != 0.0 {
                s += m * *xi;
            }
        }
        s
    }

    pub fn constraint_residual(&self, x: &DVector<f64>) -> f64 {
        if self.constraints.nrows() == 0 {
            return 0.0;
        }
        (&self.constraints * x).amax()
    }

    pub fn solve(&self, opts: &SearchOptions) -> Solution {
        let kernel = if self.constraints.nrows() == 0 {
            RMatrix::identity(self.variable_dim, self.variable_dim)
        } else {
            linalg::null_space(&self.constraints, 1e-10)
        };
        let k = kernel.ncols();
        if k == 0 {
            return Solution {
                found: false,
                x: DVector::zeros(self.variable_dim),
                best_min_eigenvalue: f64::NEG_INFINITY,
                best_trial: 0,
                iterations: 0,
                kernel_dim: 0,
            };
        }
        let reduced: Vec<RMatrix> = (0..k)
            .map(|c| self.image(&kernel.column(c).into_owned()))
            .collect();
        let warm = least_squares_identity(&reduced);
        let trials = opts.trials.max(1);
        let results: Vec<(f64, usize, DVector<f64>, usize)> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let start = if t == 0 {
                    warm.clone()
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(t as u64));
                    DVector::from_fn(k, |_, _| StandardNormal.sample(&mut rng))
                };
                let (score, y, it) = ascend(&reduced, start, opts.iterations, opts.tol_pd);
                (score, t, y, it)
            })
            .collect();
        // Deterministic merge: best score, then lowest trial index.
        let best = results
            .into_iter()
            .reduce(|a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            })
            .expect("at least one trial");
        let (score, trial, y, iterations) = best;
        let mut x = &kernel * &y;
        let trace = self.image(&x).trace();
        if trace > 0.0 {
            x /= trace;
        }
        let found = score >= opts.tol_pd && self.constraint_residual(&x) <= opts.tol_eq;
        Solution {
            found,
            x,
            best_min_eigenvalue: score,
            best_trial: trial,
            iterations,
            kernel_dim: k,
        }
    }
}

fn image_of(reduced: &[RMatrix], y: &DVector<f64>) -> RMatrix {
    let size = reduced[0].nrows();
    let mut s = RMatrix::zeros(size, size);
    for (yi, m) in y.iter().zip(reduced) {
        s += m * *yi;
    }
    s
}

fn evaluate(reduced: &[RMatrix], y: &DVector<f64>) -> (f64, f64, DVector<f64>) {
    let s = image_of(reduced, y);
    let (lmin, v) = linalg::min_eigen(&s);
    let tr = s.trace();
    let value = if tr > 0.0 { lmin / tr } else { lmin };
    (value, lmin, v)
}

/// Kernel coordinates closest (least squares) to mapping onto the identity.
fn least_squares_identity(reduced: &[RMatrix]) -> DVector<f64> {
    let k = reduced.len();
    let size = reduced[0].nrows();
    let mut a = RMatrix::zeros(size * size, k);
    for (c, m) in reduced.iter().enumerate() {
        for (r, v) in m.iter().enumerate() {
            a[(r, c)] = *v;
        }
    }
    let target = DVector::from_iterator(size * size, RMatrix::identity(size, size).iter().cloned());
    let svd = a.svd(true, true);
    let y = svd
        .solve(&target, 1e-12)
        .unwrap_or_else(|_| DVector::zeros(k));
    if y.norm() > 0.0 {
        y
    } else {
        let mut e = DVector::zeros(k);
        e[0] = 1.0;
        e
    }
}

/// Projected subgradient ascent of `lambda_min` on the unit sphere.
fn ascend(
    reduced: &[RMatrix],
    start: DVector<f64>,
    iterations: usize,
    target: f64,
) -> (f64, DVector<f64>, usize) {
    let mut y = normalize(start);
    let (mut best, _, mut v) = evaluate(reduced, &y);
    let mut best_y = y.clone();
    if best >= target {
        return (best, best_y, 0);
    }
    for it in 1..=iterations {
        let grad = DVector::from_iterator(
            reduced.len(),
            reduced.iter().map(|m| (v.transpose() * m * &v)[(0, 0)]),
        );
        // Tangential component keeps the step on the sphere to first order.
        let tangent = &grad - &y * y.dot(&grad);
        let g = if tangent.norm() > 1e-300 {
            tangent.normalize()
        } else {
            grad.clone()
        };
        y = normalize(&y + g * (0.1 / (it as f64).sqrt()));
        let (value, _, next_v) = evaluate(reduced, &y);
        v = next_v;
        if value > best {
            best = value;
            best_y = y.clone();
            if best >= target {
                return (best, best_y, it);
            }
        }
    }
    (best, best_y, iterations)
}

fn normalize(y: DVector<f64>) -> DVector<f64> {
    let n = y.norm();
    if n > 0.0 {
        y / n
    } else {
        y
    }
}
