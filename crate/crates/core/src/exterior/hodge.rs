use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{masks_of_degree, wedge_sign, Frame, InvariantForm, Mask};
use crate::error::{Error, Result};

/// Which formal adjoint to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Codifferential {
    Del,
    DelBar,
    D,
}

/// Hodge star and pointwise inner product in a metric-unitary coframe.
///
/// In a coframe `a^j = f^{2j-1} + i f^{2j}` built from a `g`-orthonormal
/// real coframe, the induced Hermitian product on forms satisfies
/// `<a^I, a^L> = 2^r delta_{IL}` for degree `r`. The star is the complex
/// linear operator with `u ^ *v = B(u, v) vol`, where `B` is the bilinear
/// extension of the metric and `vol = omega^n / n!`; it is solved term by
/// term from that relation, which is diagonal in this coframe.
#[derive(Debug, Clone)]
pub struct Hodge {
    n: usize,
    volume: Complex64,
    volume_mask: Mask,
}

impl Hodge {
    /// `omega` must be the fundamental form written in the unitary coframe.
    pub fn new(omega: &InvariantForm) -> Result<Self> {
        if omega.frame() != Frame::Unitary || omega.degree() != 2 {
            return Err(Error::FrameMismatch(
                "hodge star needs the fundamental form in a unitary coframe",
            ));
        }
        let dim = omega.dim();
        let n = dim / 2;
        let mut top = InvariantForm::constant(dim, Complex64::new(1.0, 0.0), Frame::Unitary);
        let mut factorial = 1.0;
        for k in 1..=n {
            top = top.wedge(omega)?;
            factorial *= k as f64;
        }
        let volume_mask: Mask = if dim == 0 { 0 } else { (1 << dim) - 1 };
        let volume = top.coefficient_mask(volume_mask) / factorial;
        if volume.norm() < 1e-12 {
            return Err(Error::Singular);
        }
        Ok(Self {
            n,
            volume,
            volume_mask,
        })
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// The volume form `omega^n / n!`.
    pub fn volume(&self) -> InvariantForm {
        InvariantForm::from_mask(self.dim(), self.volume_mask, self.volume, Frame::Unitary)
    }

    /// Mask and sign of the conjugate of a basis element.
    fn conj_mask(&self, mask: Mask) -> (Mask, f64) {
        let n = self.n;
        let idx: Vec<usize> = super::indices_of(mask)
            .into_iter()
            .map(|i| if i < n { i + n } else { i - n })
            .collect();
        super::sort_sign(&idx).expect("conjugation is a bijection")
    }

    fn check(&self, f: &InvariantForm) -> Result<()> {
        if f.frame() != Frame::Unitary {
            return Err(Error::FrameMismatch(
                "hodge star works in the unitary coframe",
            ));
        }
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: f.dim(),
            });
        }
        Ok(())
    }

    /// Complex-linear Hodge star.
    pub fn star(&self, f: &InvariantForm) -> Result<InvariantForm> {
        self.check(f)?;
        let r = f.degree();
        let dim = self.dim();
        let norm = 2f64.powi(r as i32);
        let mut out = InvariantForm::zero(dim, dim - r, Frame::Unitary);
        for (mask, c) in f.terms() {
            // B(a^L, a^I) is nonzero only for L = conj(I), where it equals 2^r times the
            // sign sorting conj(I); then a^L ^ x a^{L^c} = B(a^L, a^I) vol fixes x.
            let (l, sigma) = self.conj_mask(mask);
            let rest = self.volume_mask & !l;
            let eps = wedge_sign(l, rest).expect("complementary masks");
            out.add_term(rest, c * self.volume * (norm * sigma / eps));
        }
        Ok(out)
    }

    /// Pointwise Hermitian product `(a, b)` (linear in `a`, antilinear in `b`).
    pub fn inner(&self, a: &InvariantForm, b: &InvariantForm) -> Result<Complex64> {
        self.check(a)?;
        self.check(b)?;
        if a.is_empty() || b.is_empty() {
            return Ok(Complex64::default());
        }
        if a.degree() != b.degree() {
            return Err(Error::DegreeMismatch {
                left: a.degree(),
                right: b.degree(),
            });
        }
        let norm = 2f64.powi(a.degree() as i32);
        let mut total = Complex64::default();
        for (mask, x) in a.terms() {
            let y = b.coefficient_mask(mask);
            total += x * y.conj();
        }
        Ok(total * norm)
    }

    pub fn norm(&self, a: &InvariantForm) -> Result<f64> {
        Ok(self.inner(a, a)?.re.max(0.0).sqrt())
    }

    /// All basis elements of a given degree in the unitary coframe.
    pub fn basis(&self, degree: usize) -> Vec<InvariantForm> {
        masks_of_degree(self.dim(), degree)
            .into_iter()
            .map(|m| {
                InvariantForm::from_mask(self.dim(), m, Complex64::new(1.0, 0.0), Frame::Unitary)
            })
            .collect()
    }
}
