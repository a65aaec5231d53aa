//! Invariant exterior forms over a Lie algebra coframe.
//!
//! A form of degree `r` on a `dim`-dimensional algebra is stored sparsely as
//! a map from bitmasks (one bit per generator, increasing order) to complex
//! coefficients. The generators are either the real coframe `e^1..e^dim` or
//! a unitary coframe `a^1..a^n, conj(a^1)..conj(a^n)` ordered holomorphic
//! first; this ordering makes `a^i ^ conj(a^j)` a positively oriented basis
//! element, so the `a^{i jbar}` notation maps onto a single mask.

mod cohomology;
mod hodge;
mod structure;

pub use cohomology::{betti, betti_numbers, differential_matrix};
pub use hodge::{Codifferential, Hodge};
pub use structure::StructureEquations;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, RMatrix};

/// Coefficients below this modulus are pruned.
pub const PRUNE_TOL: f64 = 1e-14;

pub type Mask = u64;

const MAX_DIM: usize = 63;

/// Which coframe a form's indices refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Frame {
    Real,
    Unitary,
}

#[derive(Clone, PartialEq)]
pub struct InvariantForm {
    dim: usize,
    degree: usize,
    frame: Frame,
    coeffs: BTreeMap<Mask, Complex64>,
}

pub(crate) fn indices_of(mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(i);
        m &= m - 1;
    }
    out
}

/// Sign of `e^a ^ e^b` relative to `e^{a|b}`, or `None` when they overlap.
pub(crate) fn wedge_sign(a: Mask, b: Mask) -> Option<f64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut m = b;
    while m != 0 {
        let j = m.trailing_zeros();
        // Generators of `a` above `j` have to move past it.
        swaps += (a >> (j + 1)).count_ones();
        m &= m - 1;
    }
    Some(if swaps.is_multiple_of(2) { 1.0 } else { -1.0 })
}

/// Sign of the permutation sorting `indices`, with `None` on repeats.
pub(crate) fn sort_sign(indices: &[usize]) -> Option<(Mask, f64)> {
    let mut mask: Mask = 0;
    let mut sign = 1.0;
    for &i in indices {
        let bit = 1 << i;
        if mask & bit != 0 {
            return None;
        }
        if (mask >> (i + 1)).count_ones() % 2 == 1 {
            sign = -sign;
        }
        mask |= bit;
    }
    Some((mask, sign))
}

/// All masks with `k` bits set among the low `n` bits, in increasing order.
pub(crate) fn masks_of_degree(n: usize, k: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let mut m: Mask = (1 << k) - 1;
    let limit: Mask = 1 << n;
    while m < limit {
        out.push(m);
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

impl InvariantForm {
    pub fn zero(dim: usize, degree: usize, frame: Frame) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Self {
            dim,
            degree,
            frame,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, value: Complex64, frame: Frame) -> Self {
        let mut f = Self::zero(dim, 0, frame);
        f.add_term(0, value);
        f
    }

    /// The decomposable form `x^{i_1} ^ ... ^ x^{i_r}` for 0-based indices
    /// in any order (the sign of the sorting permutation is applied).
    pub fn basis(dim: usize, indices: &[usize], frame: Frame) -> Result<Self> {
        for &i in indices {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
        }
        let mut f = Self::zero(dim, indices.len(), frame);
        if let Some((mask, sign)) = sort_sign(indices) {
            f.add_term(mask, Complex64::new(sign, 0.0));
        }
        Ok(f)
    }

    pub(crate) fn from_mask(dim: usize, mask: Mask, c: Complex64, frame: Frame) -> Self {
        let mut f = Self::zero(dim, mask.count_ones() as usize, frame);
        f.add_term(mask, c);
        f
    }

    /// A 1-form from its coefficient vector.
    pub fn one_form(coeffs: &[Complex64], frame: Frame) -> Self {
        let mut f = Self::zero(coeffs.len(), 1, frame);
        for (i, &c) in coeffs.iter().enumerate() {
            f.add_term(1 << i, c);
        }
        f
    }

    pub fn from_terms<I>(dim: usize, degree: usize, frame: Frame, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Complex64)>,
    {
        let mut f = Self::zero(dim, degree, frame);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: idx.len(),
                });
            }
            let b = Self::basis(dim, &idx, frame)?;
            f.add_assign_scaled(&b, c)?;
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, Complex64)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient on the basis element picked by sorted or unsorted indices.
    pub fn coefficient(&self, indices: &[usize]) -> Complex64 {
        match sort_sign(indices) {
            Some((mask, sign)) => self.coeffs.get(&mask).copied().unwrap_or_default() * sign,
            None => Complex64::default(),
        }
    }

    pub(crate) fn coefficient_mask(&self, mask: Mask) -> Complex64 {
        self.coeffs.get(&mask).copied().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, mask: Mask, c: Complex64) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        let entry = self.coeffs.entry(mask).or_default();
        *entry += c;
        if entry.norm() < PRUNE_TOL {
            self.coeffs.remove(&mask);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.frame != other.frame {
            return Err(Error::FrameMismatch("forms live in different coframes"));
        }
        Ok(())
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: Complex64) -> Result<()> {
        self.check_compatible(other)?;
        if other.is_empty() {
            return Ok(());
        }
        if self.degree != other.degree {
            if self.is_empty() {
                self.degree = other.degree;
            } else {
                return Err(Error::DegreeMismatch {
                    left: self.degree,
                    right: other.degree,
                });
            }
        }
        for (&m, &v) in &other.coeffs {
            self.add_term(m, v * c);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign_scaled(other, Complex64::new(1.0, 0.0))?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign_scaled(other, Complex64::new(-1.0, 0.0))?;
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.dim, self.degree, self.frame);
        for (&m, &v) in &self.coeffs {
            out.add_term(m, v * c);
        }
        out
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.dim, self.degree + other.degree, self.frame);
        if out.degree > self.dim {
            return Ok(out);
        }
        for (&a, &x) in &self.coeffs {
            for (&b, &y) in &other.coeffs {
                if let Some(s) = wedge_sign(a, b) {
                    out.add_term(a | b, x * y * s);
                }
            }
        }
        Ok(out)
    }

    /// Complex conjugate. In the unitary frame this also swaps holomorphic
    /// and antiholomorphic generators.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.dim, self.degree, self.frame);
        match self.frame {
            Frame::Real => {
                for (&m, &v) in &self.coeffs {
                    out.add_term(m, v.conj());
                }
            }
            Frame::Unitary => {
                let n = self.dim / 2;
                for (&m, &v) in &self.coeffs {
                    let swapped: Vec<usize> = indices_of(m)
                        .into_iter()
                        .map(|i| if i < n { i + n } else { i - n })
                        .collect();
                    let (mask, sign) = sort_sign(&swapped).expect("swap is a bijection");
                    out.add_term(mask, v.conj() * sign);
                }
            }
        }
        out
    }

    /// Largest coefficient modulus.
    pub fn sup_norm(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.sup_norm() <= tol
    }

    /// Largest imaginary part of the coefficients (meaningful in the real frame).
    pub fn max_imaginary(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.im.abs()))
    }

    /// Split a unitary-frame form into its `(p, q)` type components.
    pub(crate) fn split_types(&self) -> BTreeMap<(usize, usize), InvariantForm> {
        debug_assert_eq!(self.frame, Frame::Unitary);
        let n = self.dim / 2;
        let low: Mask = (1 << n) - 1;
        let mut out: BTreeMap<(usize, usize), InvariantForm> = BTreeMap::new();
        for (&m, &v) in &self.coeffs {
            let p = (m & low).count_ones() as usize;
            let q = self.degree - p;
            out.entry((p, q))
                .or_insert_with(|| Self::zero(self.dim, self.degree, Frame::Unitary))
                .add_term(m, v);
        }
        out
    }

    /// The `(p, q)` component of a unitary-frame form.
    pub(crate) fn type_component(&self, p: usize, q: usize) -> InvariantForm {
        debug_assert_eq!(self.frame, Frame::Unitary);
        let n = self.dim / 2;
        let low: Mask = (1 << n) - 1;
        let mut out = Self::zero(self.dim, self.degree, Frame::Unitary);
        if p + q != self.degree {
            return out;
        }
        for (&m, &v) in &self.coeffs {
            if (m & low).count_ones() as usize == p {
                out.add_term(m, v);
            }
        }
        out
    }

    /// Substitute every generator by a linear combination of new generators:
    /// old generator `i` becomes `sum_a t[(i, a)] * new_a`.
    pub fn transform(&self, t: &CMatrix, frame: Frame) -> Result<Self> {
        if t.nrows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: t.nrows(),
            });
        }
        let new_dim = t.ncols();
        let images: Vec<InvariantForm> = (0..self.dim)
            .map(|i| {
                let row: Vec<Complex64> = (0..new_dim).map(|a| t[(i, a)]).collect();
                InvariantForm::one_form(&row, frame)
            })
            .collect();
        let mut out = Self::zero(new_dim, self.degree, frame);
        for (&m, &v) in &self.coeffs {
            let mut acc = InvariantForm::constant(new_dim, v, frame);
            for i in indices_of(m) {
                acc = acc.wedge(&images[i])?;
            }
            out.add_assign_scaled(&acc, Complex64::new(1.0, 0.0))?;
        }
        Ok(out)
    }

    /// Pullback along a real linear map `a` acting on vectors
    /// (`(a^* f)(X, ...) = f(aX, ...)`).
    pub fn pullback(&self, a: &RMatrix) -> Result<Self> {
        if self.frame != Frame::Real {
            return Err(Error::FrameMismatch("pullback needs a real-frame form"));
        }
        // e^i(aX) = sum_k a[i][k] X^k
        let t = CMatrix::from_fn(a.nrows(), a.ncols(), |i, k| Complex64::new(a[(i, k)], 0.0));
        self.transform(&t, Frame::Real)
    }

    /// Evaluate a real-frame form on `degree` vectors given as coordinate slices.
    pub fn evaluate(&self, vectors: &[&[f64]]) -> Result<Complex64> {
        if self.frame != Frame::Real {
            return Err(Error::FrameMismatch("evaluation needs a real-frame form"));
        }
        if vectors.len() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: vectors.len(),
            });
        }
        for v in vectors {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        let r = self.degree;
        let mut total = Complex64::default();
        for (&m, &c) in &self.coeffs {
            let idx = indices_of(m);
            let sub = RMatrix::from_fn(r, r, |row, col| vectors[col][idx[row]]);
            total += c * if r == 0 { 1.0 } else { sub.determinant() };
        }
        Ok(total)
    }

    /// Real part of every coefficient, as a form tagged with the same frame.
    pub fn real_part(&self) -> Self {
        let mut out = Self::zero(self.dim, self.degree, self.frame);
        for (&m, &v) in &self.coeffs {
            out.add_term(m, Complex64::new(v.re, 0.0));
        }
        out
    }

    /// Antisymmetric coefficient matrix of a real-frame 2-form:
    /// `mat[(i, j)] = f(e_i, e_j)`.
    pub fn two_form_matrix(&self) -> Result<RMatrix> {
        if self.degree != 2 || self.frame != Frame::Real {
            return Err(Error::DegreeMismatch {
                left: 2,
                right: self.degree,
            });
        }
        let im = self.max_imaginary();
        if im > 1e-12 {
            return Err(Error::ComplexValued { residual: im });
        }
        let mut w = RMatrix::zeros(self.dim, self.dim);
        for (m, c) in self.terms() {
            let idx = indices_of(m);
            w[(idx[0], idx[1])] += c.re;
            w[(idx[1], idx[0])] -= c.re;
        }
        Ok(w)
    }

    /// Real 2-form from an antisymmetric matrix (`w[(i, j)] = f(e_i, e_j)`).
    pub fn from_two_form_matrix(w: &RMatrix) -> Self {
        let n = w.nrows();
        let mut f = Self::zero(n, 2, Frame::Real);
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (w[(i, j)] - w[(j, i)]);
                f.add_term((1 << i) | (1 << j), Complex64::new(v, 0.0));
            }
        }
        f
    }
}

impl fmt::Debug for InvariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for InvariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let n = self.dim / 2;
        let mut first = true;
        for (&m, &c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            let names: Vec<String> = indices_of(m)
                .into_iter()
                .map(|i| match self.frame {
                    Frame::Real => format!("e{}", i + 1),
                    Frame::Unitary if i < n => format!("a{}", i + 1),
                    Frame::Unitary => format!("a{}b", i - n + 1),
                })
                .collect();
            if !names.is_empty() {
                write!(f, " {}", names.join("^"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn wedge_of_basis_elements() {
        let e12 = InvariantForm::basis(4, &[0, 1], Frame::Real).unwrap();
        let e3 = InvariantForm::basis(4, &[2], Frame::Real).unwrap();
        let w = e12.wedge(&e3).unwrap();
        assert_eq!(w.degree(), 3);
        assert_eq!(w.coefficient(&[0, 1, 2]), c(1.0));
        // e3 ^ e12 = e12 ^ e3 for even/odd
        let w2 = e3.wedge(&e12).unwrap();
        assert_eq!(w2.coefficient(&[0, 1, 2]), c(1.0));
        let e1 = InvariantForm::basis(4, &[0], Frame::Real).unwrap();
        let e2 = InvariantForm::basis(4, &[1], Frame::Real).unwrap();
        assert_eq!(e2.wedge(&e1).unwrap().coefficient(&[0, 1]), c(-1.0));
    }

    #[test]
    fn unitary_notation_alpha_i_jbar() {
        // dim 4: a1, a2, a1b, a2b
        let a1 = InvariantForm::basis(4, &[0], Frame::Unitary).unwrap();
        let a1b = InvariantForm::basis(4, &[2], Frame::Unitary).unwrap();
        let w = a1.wedge(&a1b).unwrap();
        assert_eq!(w.coefficient(&[0, 2]), c(1.0));
        assert_eq!(a1.conj(), a1b);
        // conj(a1 ^ a2b) = a1b ^ a2 = -a2 ^ a1b
        let a2b = InvariantForm::basis(4, &[3], Frame::Unitary).unwrap();
        let f = a1.wedge(&a2b).unwrap().conj();
        assert_eq!(f.coefficient(&[1, 2]), c(-1.0));
    }

    #[test]
    fn odd_form_squares_to_zero() {
        let f = InvariantForm::one_form(&[c(1.0), c(2.0), Complex64::new(0.0, 3.0)], Frame::Real);
        assert!(f.wedge(&f).unwrap().is_empty());
    }

    #[test]
    fn evaluation_uses_determinant_convention() {
        let e12 = InvariantForm::basis(3, &[0, 1], Frame::Real).unwrap();
        let x = [1.0, 0.0, 0.0];
        let y = [0.0, 1.0, 0.0];
        assert_eq!(e12.evaluate(&[&x, &y]).unwrap(), c(1.0));
        assert_eq!(e12.evaluate(&[&y, &x]).unwrap(), c(-1.0));
    }

    #[test]
    fn gosper_enumeration_counts() {
        assert_eq!(masks_of_degree(10, 5).len(), 252);
        assert_eq!(masks_of_degree(4, 0), vec![0]);
        assert!(masks_of_degree(3, 4).is_empty());
    }

    #[test]
    fn frame_mismatch_is_rejected() {
        let a = InvariantForm::basis(2, &[0], Frame::Real).unwrap();
        let b = InvariantForm::basis(2, &[1], Frame::Unitary).unwrap();
        assert!(matches!(a.wedge(&b), Err(Error::FrameMismatch(_))));
    }
}
