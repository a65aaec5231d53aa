use num_complex::Complex64;

use super::{indices_of, Frame, InvariantForm};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Exterior derivatives of the generators of a coframe.
///
/// Extending `d` to all degrees uses the graded Leibniz rule
/// `d(x^{i_0} ^ ... ^ x^{i_r}) = sum_p (-1)^p x^{i_0} ^ .. d x^{i_p} .. ^ x^{i_r}`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureEquations {
    frame: Frame,
    generators: Vec<InvariantForm>,
}

impl StructureEquations {
    pub fn new(generators: Vec<InvariantForm>, frame: Frame) -> Result<Self> {
        let dim = generators.len();
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            if g.frame() != frame {
                return Err(Error::FrameMismatch(
                    "generator differential in the wrong coframe",
                ));
            }
            if !g.is_empty() && g.degree() != 2 {
                return Err(Error::DegreeMismatch {
                    left: 2,
                    right: g.degree(),
                });
            }
        }
        let generators = generators
            .into_iter()
            .map(|g| {
                if g.is_empty() {
                    InvariantForm::zero(dim, 2, frame)
                } else {
                    g
                }
            })
            .collect();
        Ok(Self { frame, generators })
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn generator(&self, k: usize) -> &InvariantForm {
        &self.generators[k]
    }

    pub fn generators(&self) -> &[InvariantForm] {
        &self.generators
    }

    /// Exterior derivative of an arbitrary form in this coframe.
    pub fn d(&self, f: &InvariantForm) -> Result<InvariantForm> {
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: f.dim(),
            });
        }
        if f.frame() != self.frame {
            return Err(Error::FrameMismatch(
                "form and structure equations use different coframes",
            ));
        }
        let dim = self.dim();
        let mut out = InvariantForm::zero(dim, f.degree() + 1, self.frame);
        for (mask, c) in f.terms() {
            let idx = indices_of(mask);
            for (p, &i) in idx.iter().enumerate() {
                let dgen = &self.generators[i];
                if dgen.is_empty() {
                    continue;
                }
                let rest = mask & !(1 << i);
                // Move x^i to the front: (-1)^p, then replace it by d x^i.
                let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
                let tail =
                    InvariantForm::from_mask(dim, rest, Complex64::new(1.0, 0.0), self.frame);
                let piece = dgen.wedge(&tail)?;
                out.add_assign_scaled(&piece, c * sign)?;
            }
        }
        Ok(out)
    }

    /// Re-express the equations in a new coframe.
    ///
    /// `old_to_new[(i, a)]` writes old generator `i` as `sum_a old_to_new[(i, a)] y^a`
    /// and `new_to_old[(a, i)]` writes new generator `a` as `sum_i new_to_old[(a, i)] x^i`.
    pub fn change_coframe(
        &self,
        old_to_new: &CMatrix,
        new_to_old: &CMatrix,
        frame: Frame,
    ) -> Result<Self> {
        let dim = self.dim();
        if old_to_new.nrows() != dim || new_to_old.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: old_to_new.nrows(),
            });
        }
        let m = new_to_old.nrows();
        let transformed: Vec<InvariantForm> = self
            .generators
            .iter()
            .map(|g| g.transform(old_to_new, frame))
            .collect::<Result<_>>()?;
        let mut generators = Vec::with_capacity(m);
        for a in 0..m {
            let mut acc = InvariantForm::zero(m, 2, frame);
            for (i, t) in transformed.iter().enumerate() {
                let s = new_to_old[(a, i)];
                if s.norm() > 0.0 {
                    acc.add_assign_scaled(t, s)?;
                }
            }
            generators.push(acc);
        }
        Self::new(generators, frame)
    }

    /// Largest coefficient of `d(d x^k)` over all generators.
    pub fn d_squared_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for g in &self.generators {
            worst = worst.max(self.d(g)?.sup_norm());
        }
        Ok(worst)
    }
}
