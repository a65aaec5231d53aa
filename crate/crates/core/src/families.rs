//! The two eight-dimensional families of nilpotent Lie algebras with SKT
//! metrics, their polynomial SKT systems, an eight-dimensional classifier,
//! and abelian hypercomplex / HKT checks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexStructure, Hermitian, HermitianMetric};
use crate::error::{Error, Result};
use crate::exterior::{Frame, InvariantForm};
use crate::lie::LieAlgebra;
use crate::linalg::{self, CMatrix, RMatrix};
use crate::tamed::{self, SearchOptions};

fn c0() -> Complex64 {
    Complex64::default()
}

/// Coefficients of `d a^3 = B1 a^{12} + B4 a^{1 1b} + B5 a^{1 2b} + C3 a^{2 1b} + C4 a^{2 2b}`
/// and `d a^4 = F1 a^{12} + F4 a^{1 1b} + F5 a^{1 2b} + G3 a^{2 1b} + G4 a^{2 2b}`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct Family1Params {
    pub B1: Complex64,
    pub B4: Complex64,
    pub B5: Complex64,
    pub C3: Complex64,
    pub C4: Complex64,
    pub F1: Complex64,
    pub F4: Complex64,
    pub F5: Complex64,
    pub G3: Complex64,
    pub G4: Complex64,
}

/// Coefficients of `d a^4` for the second family:
/// `F1 a^{12} + F2 a^{13} + F4 a^{1 1b} + F5 a^{1 2b} + F6 a^{1 3b} + G1 a^{23}
///  + G3 a^{2 1b} + G4 a^{2 2b} + G5 a^{2 3b} + H2 a^{3 1b} + H3 a^{3 2b} + H4 a^{3 3b}`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct Family2Params {
    pub F1: Complex64,
    pub F2: Complex64,
    pub F4: Complex64,
    pub F5: Complex64,
    pub F6: Complex64,
    pub G1: Complex64,
    pub G3: Complex64,
    pub G4: Complex64,
    pub G5: Complex64,
    pub H2: Complex64,
    pub H3: Complex64,
    pub H4: Complex64,
}

impl Family1Params {
    pub const NAMES: [&'static str; 10] =
        ["B1", "B4", "B5", "C3", "C4", "F1", "F4", "F5", "G3", "G4"];

    pub fn to_array(&self) -> [Complex64; 10] {
        [
            self.B1, self.B4, self.B5, self.C3, self.C4, self.F1, self.F4, self.F5, self.G3,
            self.G4,
        ]
    }

    pub fn from_array(a: [Complex64; 10]) -> Self {
        Self {
            B1: a[0],
            B4: a[1],
            B5: a[2],
            C3: a[3],
            C4: a[4],
            F1: a[5],
            F4: a[6],
            F5: a[7],
            G3: a[8],
            G4: a[9],
        }
    }

    /// Parse `name=value` pairs separated by commas, e.g. `B4=1,C4=1,F1=1.41`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut a = [c0(); 10];
        for (name, value) in parse_assignments(text)? {
            let i = Self::NAMES.iter().position(|n| *n == name).ok_or_else(|| {
                Error::InvalidParameter(format!("unknown family-1 parameter `{name}`"))
            })?;
            a[i] = value;
        }
        Ok(Self::from_array(a))
    }
}

impl Family2Params {
    pub const NAMES: [&'static str; 12] = [
        "F1", "F2", "F4", "F5", "F6", "G1", "G3", "G4", "G5", "H2", "H3", "H4",
    ];

    pub fn to_array(&self) -> [Complex64; 12] {
        [
            self.F1, self.F2, self.F4, self.F5, self.F6, self.G1, self.G3, self.G4, self.G5,
            self.H2, self.H3, self.H4,
        ]
    }

    pub fn from_array(a: [Complex64; 12]) -> Self {
        Self {
            F1: a[0],
            F2: a[1],
            F4: a[2],
            F5: a[3],
            F6: a[4],
            G1: a[5],
            G3: a[6],
            G4: a[7],
            G5: a[8],
            H2: a[9],
            H3: a[10],
            H4: a[11],
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut a = [c0(); 12];
        for (name, value) in parse_assignments(text)? {
            let i = Self::NAMES.iter().position(|n| *n == name).ok_or_else(|| {
                Error::InvalidParameter(format!("unknown family-2 parameter `{name}`"))
            })?;
            a[i] = value;
        }
        Ok(Self::from_array(a))
    }
}

fn parse_assignments(text: &str) -> Result<Vec<(String, Complex64)>> {
    let mut out = Vec::new();
    for piece in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = piece.split_once('=').ok_or_else(|| {
            Error::InvalidParameter(format!("expected name=value, got `{piece}`"))
        })?;
        out.push((name.trim().to_string(), parse_complex(value.trim())?));
    }
    Ok(out)
}

/// Parse `1.5`, `-2i`, `0.5+0.2i`, `i`, `sqrt2` style numbers.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let bad = || Error::InvalidParameter(format!("cannot parse complex number `{text}`"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let real = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => {
                let (sign, body) = match t.strip_prefix('-') {
                    Some(b) => (-1.0, b),
                    None => (1.0, t.strip_prefix('+').unwrap_or(t)),
                };
                if body == "sqrt2" {
                    Ok(sign * std::f64::consts::SQRT_2)
                } else {
                    body.parse::<f64>().map(|v| sign * v).map_err(|_| bad())
                }
            }
        }
    };
    if let Some(body) = s.strip_suffix('i') {
        // Split at the last sign that is not part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => Ok(Complex64::new(real(&body[..k])?, real(&body[k..])?)),
            None => Ok(Complex64::new(0.0, real(body)?)),
        }
    } else {
        Ok(Complex64::new(real(&s)?, 0.0))
    }
}

/// Index helpers for the unitary coframe of complex dimension `n`.
fn hol(j: usize) -> usize {
    j - 1
}

fn anti(n: usize, j: usize) -> usize {
    n + j - 1
}

/// `a^{ij}` and `a^{i jb}` terms (1-based labels).
fn term(n: usize, i: usize, j: usize, bar: bool) -> InvariantForm {
    let second = if bar { anti(n, j) } else { hol(j) };
    InvariantForm::basis(2 * n, &[hol(i), second], Frame::Unitary).expect("in range")
}

fn combo(n: usize, terms: &[(Complex64, usize, usize, bool)]) -> InvariantForm {
    let mut f = InvariantForm::zero(2 * n, 2, Frame::Unitary);
    for &(c, i, j, bar) in terms {
        f.add_assign_scaled(&term(n, i, j, bar), c)
            .expect("same frame");
    }
    f
}

/// Coframe matrix of `a^j = e^{2j-1} + i e^{2j}` over the real coframe.
pub fn standard_unitary_coframe(n: usize) -> CMatrix {
    let mut u = CMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        u[(j, 2 * j)] = Complex64::new(1.0, 0.0);
        u[(j, 2 * j + 1)] = Complex64::new(0.0, 1.0);
        u[(j + n, 2 * j)] = Complex64::new(1.0, 0.0);
        u[(j + n, 2 * j + 1)] = Complex64::new(0.0, -1.0);
    }
    u
}

/// Real algebra and complex structure realising complex structure equations
/// `d a^j` (unitary-frame 2-forms) through `a^j = e^{2j-1} + i e^{2j}`,
/// `J e_{2j-1} = e_{2j}`.
pub fn from_unitary_equations(dalpha: &[InvariantForm]) -> Result<(LieAlgebra, ComplexStructure)> {
    let n = dalpha.len();
    let u = standard_unitary_coframe(n);
    let mut d = Vec::with_capacity(2 * n);
    for f in dalpha {
        if f.frame() != Frame::Unitary || f.dim() != 2 * n {
            return Err(Error::FrameMismatch(
                "complex structure equations must be unitary-frame forms",
            ));
        }
        let real = f.transform(&u, Frame::Real)?;
        d.push(real.real_part());
        d.push(real.scale(Complex64::new(0.0, -1.0)).real_part());
    }
    let alg = LieAlgebra::new(d)?;
    let residual = alg.jacobi_residual();
    if residual > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "structure equations violate Jacobi (residual {residual:e})"
        )));
    }
    Ok((alg, ComplexStructure::standard(2 * n)))
}

pub fn family1_equations(p: &Family1Params) -> Vec<InvariantForm> {
    let n = 4;
    let z = InvariantForm::zero(8, 2, Frame::Unitary);
    let d3 = combo(
        n,
        &[
            (p.B1, 1, 2, false),
            (p.B4, 1, 1, true),
            (p.B5, 1, 2, true),
            (p.C3, 2, 1, true),
            (p.C4, 2, 2, true),
        ],
    );
    let d4 = combo(
        n,
        &[
            (p.F1, 1, 2, false),
            (p.F4, 1, 1, true),
            (p.F5, 1, 2, true),
            (p.G3, 2, 1, true),
            (p.G4, 2, 2, true),
        ],
    );
    vec![z.clone(), z, d3, d4]
}

pub fn family2_equations(p: &Family2Params) -> Vec<InvariantForm> {
    let n = 4;
    let z = InvariantForm::zero(8, 2, Frame::Unitary);
    let d4 = combo(
        n,
        &[
            (p.F1, 1, 2, false),
            (p.F2, 1, 3, false),
            (p.F4, 1, 1, true),
            (p.F5, 1, 2, true),
            (p.F6, 1, 3, true),
            (p.G1, 2, 3, false),
            (p.G3, 2, 1, true),
            (p.G4, 2, 2, true),
            (p.G5, 2, 3, true),
            (p.H2, 3, 1, true),
            (p.H3, 3, 2, true),
            (p.H4, 3, 3, true),
        ],
    );
    vec![z.clone(), z.clone(), z, d4]
}

pub fn build_family1(p: &Family1Params) -> Result<(LieAlgebra, ComplexStructure)> {
    from_unitary_equations(&family1_equations(p))
}

pub fn build_family2(p: &Family2Params) -> Result<(LieAlgebra, ComplexStructure)> {
    if p.H4.norm() == 0.0 {
        return Err(Error::InvalidParameter("H4 must be nonzero".into()));
    }
    from_unitary_equations(&family2_equations(p))
}

/// The identity metric on a realised family member; its unitary coframe is `a^1..a^4`.
pub fn standard_hermitian(alg: &LieAlgebra, j: &ComplexStructure) -> Result<Hermitian> {
    Hermitian::new(alg.clone(), j.clone(), HermitianMetric::identity(j)?)
}

fn sq(z: Complex64) -> f64 {
    z.norm_sqr()
}

/// `|B1|^2 + |F1|^2 + |G3|^2 + |B5|^2 + |C3|^2 + |F5|^2 - 2 Re(C4 conj(B4) + F4 conj(G4))`.
pub fn family1_skt_residual(p: &Family1Params) -> f64 {
    let lhs = sq(p.B1) + sq(p.F1) + sq(p.G3) + sq(p.B5) + sq(p.C3) + sq(p.F5);
    let rhs = 2.0 * (p.C4 * p.B4.conj() + p.F4 * p.G4.conj()).re;
    lhs - rhs
}

/// The same quantity assembled from norms and pairings of `d a^3, d a^4`
/// against `a^{1 1b}, a^{2 2b}` for the standard metric, with the `a^{ij}`
/// treated as orthonormal.
pub fn family1_coordinate_free(p: &Family1Params) -> Result<f64> {
    let (alg, j) = build_family1(p)?;
    let h = standard_hermitian(&alg, &j)?;
    let pair =
        |a: &InvariantForm, b: &InvariantForm| -> Result<Complex64> { Ok(h.inner(a, b)? / 4.0) };
    let a11 = term(4, 1, 1, true);
    let a22 = term(4, 2, 2, true);
    let mut total = 0.0;
    for k in 2..4 {
        let da = h.unitary_equations().generator(k).clone();
        let dab = da.conj();
        total += pair(&da, &da)?.re;
        total += 2.0 * (pair(&da, &a11)? * pair(&dab, &a22)?).re;
        total -= pair(&da, &a11)?.norm_sqr() + pair(&da, &a22)?.norm_sqr();
    }
    Ok(total)
}

/// The ten coefficients `a_1..a_10` of a general `J`-Hermitian fundamental form
/// `a1 a^{1 1b} + .. + a4 a^{4 4b} + a5 a^{1 2b} - conj(a5) a^{2 1b} + a6 a^{1 3b} - ..`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenericMetric {
    pub a: [Complex64; 10],
}

impl GenericMetric {
    /// Off-diagonal slots `(j, k)` of `a5..a10`, 0-based.
    const OFF: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

    /// The standard metric, with `omega = (i/2) sum a^{j jb}`.
    pub fn standard() -> Self {
        let mut a = [c0(); 10];
        for x in a.iter_mut().take(4) {
            *x = crate::complex::OMEGA_UNITARY_FACTOR;
        }
        Self { a }
    }

    /// Parse `a1=..,a10=..` assignments; coefficients not mentioned keep their standard values.
    pub fn parse(text: &str) -> Result<Self> {
        let mut m = Self::standard();
        for (name, value) in parse_assignments(text)? {
            let idx = name
                .strip_prefix('a')
                .and_then(|t| t.parse::<usize>().ok())
                .filter(|i| (1..=10).contains(i))
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("unknown metric coefficient `{name}`"))
                })?;
            m.a[idx - 1] = value;
        }
        Ok(m)
    }

    /// Coefficient matrix `W` with `omega = sum W_jk a^j ^ conj(a^k)`.
    pub fn coefficient_matrix(&self) -> DMatrix<Complex64> {
        let mut w = DMatrix::zeros(4, 4);
        for j in 0..4 {
            w[(j, j)] = self.a[j];
        }
        for (slot, &(j, k)) in Self::OFF.iter().enumerate() {
            let v = self.a[4 + slot];
            w[(j, k)] = v;
            w[(k, j)] = -v.conj();
        }
        w
    }

    pub fn from_coefficient_matrix(w: &DMatrix<Complex64>) -> Self {
        let mut a = [c0(); 10];
        for j in 0..4 {
            a[j] = w[(j, j)];
        }
        for (slot, &(j, k)) in Self::OFF.iter().enumerate() {
            a[4 + slot] = w[(j, k)];
        }
        Self { a }
    }

    /// Hermitian matrix `H = W / (i/2)`; positivity of the metric is positivity of `H`.
    pub fn hermitian_matrix(&self) -> DMatrix<Complex64> {
        self.coefficient_matrix() / crate::complex::OMEGA_UNITARY_FACTOR
    }

    /// Validate the reality conditions and positivity, returning the real metric.
    pub fn metric(&self, j: &ComplexStructure) -> Result<HermitianMetric> {
        for x in self.a.iter().take(4) {
            if x.re.abs() > 1e-12 {
                return Err(Error::InvalidParameter(
                    "diagonal coefficients a1..a4 must be imaginary".into(),
                ));
            }
        }
        let h = self.hermitian_matrix();
        let (lmin, _) = linalg::min_eigen(&tamed::real_embedding(&h));
        if lmin <= 0.0 {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: lmin,
            });
        }
        let form_u = tamed::form_of_hermitian(&h);
        let form = form_u
            .transform(&standard_unitary_coframe(4), Frame::Real)?
            .real_part();
        tamed::metric_from_form(&form, j)
    }
}

/// The SKT polynomial of the first family for a general Hermitian metric.
///
/// Only `a3, a4, a10` enter. It equals minus the `a^{1 2 1b 2b}` coefficient
/// of `del delbar omega`, so it vanishes exactly when the metric is SKT.
pub fn family1_generic_metric_polynomial(p: &Family1Params, m: &GenericMetric) -> Complex64 {
    let (a3, a4, a10) = (m.a[2], m.a[3], m.a[9]);
    let a10b = a10.conj();
    let c = |z: Complex64| z.conj();
    let s = |z: Complex64| Complex64::new(z.norm_sqr(), 0.0);
    -a3 * p.C4 * c(p.B4) - a10 * p.B4 * c(p.G4) - a3 * p.B4 * c(p.C4)
        + a10 * p.B1 * c(p.F1)
        + a3 * s(p.B1)
        - a10b * c(p.B1) * p.F1
        + a4 * s(p.F5)
        + a4 * s(p.F1)
        - a10b * p.G3 * c(p.C3)
        + a4 * s(p.G3)
        + a3 * s(p.B5)
        - a10b * c(p.B5) * p.F5
        - a4 * c(p.G4) * p.F4
        + a3 * s(p.C3)
        + a10b * c(p.C4) * p.F4
        + a10 * c(p.F5) * p.B5
        - a4 * c(p.F4) * p.G4
        + a10b * p.G4 * c(p.B4)
        + a10 * c(p.G3) * p.C3
        - a10 * p.C4 * c(p.F4)
}

/// The six residuals of the second family's SKT system (left minus right).
pub fn family2_skt_residuals(p: &Family2Params) -> Result<[Complex64; 6]> {
    if p.H4.norm() == 0.0 {
        return Err(Error::InvalidParameter("H4 must be nonzero".into()));
    }
    Ok(family2_residuals_unchecked(p))
}

pub(crate) fn family2_residuals_unchecked(p: &Family2Params) -> [Complex64; 6] {
    let c = |z: Complex64| z.conj();
    let r = |x: f64| Complex64::new(x, 0.0);
    [
        -p.H3 * c(p.F4) + p.H2 * c(p.G3) + p.F5 * c(p.F6) - p.F4 * c(p.G5) + p.F2 * c(p.F1),
        -p.H3 * c(p.F5) + p.G4 * c(p.F6) + p.H2 * c(p.G4) - p.G3 * c(p.G5) + p.G1 * c(p.F1),
        -p.H4 * c(p.F5) + p.G5 * c(p.F6) + p.H2 * c(p.H3) - p.G3 * c(p.H4) + p.G1 * c(p.F2),
        r(sq(p.F2) + sq(p.F6) + sq(p.H2) - 2.0 * (p.H4 * c(p.F4)).re),
        r(sq(p.F1) + sq(p.F5) + sq(p.G3) - 2.0 * (p.F4 * c(p.G4)).re),
        r(sq(p.G1) + sq(p.G5) + sq(p.H3) - 2.0 * (p.H4 * c(p.G4)).re),
    ]
}

pub fn max_modulus(v: &[Complex64]) -> f64 {
    v.iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Outcome of the eight-dimensional classifier.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Torus,
    Family1 {
        params: Family1Params,
        residual: f64,
    },
    Family2 {
        params: Family2Params,
        residuals: [Complex64; 6],
    },
    NoSkt {
        reason: String,
        certified: bool,
    },
}

/// Decide whether an eight-dimensional nilpotent algebra with complex
/// structure carries an SKT metric, and if so read off family parameters in
/// a unitary coframe adapted to the center.
pub fn classify8(alg: &LieAlgebra, j: &ComplexStructure, opts: &SearchOptions) -> Result<Verdict> {
    if alg.dim() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            found: alg.dim(),
        });
    }
    if !alg.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let nij = j.nijenhuis_residual(alg)?;
    if nij > crate::complex::INTEGRABLE_TOL {
        return Err(Error::NotIntegrable { residual: nij });
    }
    if alg.is_abelian(crate::TOL_CATALOGUE) {
        return Ok(Verdict::Torus);
    }
    if let Some(ob) = tamed::skt_obstruction(alg, j)? {
        return Ok(Verdict::NoSkt {
            reason: ob.reason,
            certified: true,
        });
    }
    let report = tamed::skt_find(alg, j, opts)?;
    let Some(cert) = report.certificate else {
        return Ok(Verdict::NoSkt {
            reason: "numeric search found no SKT metric (not a certificate of non-existence)"
                .into(),
            certified: false,
        });
    };
    let metric = HermitianMetric::new(cert.metric, j)?;
    let xi = alg.center();
    let perp = xi.complement(Some(metric.gram()));
    let h = Hermitian::with_leading(alg.clone(), j.clone(), metric, &perp)?;
    let p = perp.dim() / 2;
    let eq = h.unitary_equations();
    let n = 4;
    let coeff = |k: usize, i: usize, jj: usize, bar: bool| -> Complex64 {
        let second = if bar { anti(n, jj) } else { hol(jj) };
        eq.generator(k).coefficient(&[hol(i), second])
    };
    match p {
        1 => {
            // d a^l = c_l a^{1 1b} for l = 2, 3, 4; a unitary rotation of
            // a^2, a^3, a^4 moves the vector (c_l) onto its norm times a^3.
            let norm = (1..4).map(|k| coeff(k, 1, 1, true).norm_sqr()).sum::<f64>();
            let params = Family1Params {
                B4: Complex64::new(norm.sqrt(), 0.0),
                ..Default::default()
            };
            Ok(Verdict::Family1 {
                residual: family1_skt_residual(&params),
                params,
            })
        }
        2 => {
            let params = Family1Params {
                B1: coeff(2, 1, 2, false),
                B4: coeff(2, 1, 1, true),
                B5: coeff(2, 1, 2, true),
                C3: coeff(2, 2, 1, true),
                C4: coeff(2, 2, 2, true),
                F1: coeff(3, 1, 2, false),
                F4: coeff(3, 1, 1, true),
                F5: coeff(3, 1, 2, true),
                G3: coeff(3, 2, 1, true),
                G4: coeff(3, 2, 2, true),
            };
            Ok(Verdict::Family1 {
                residual: family1_skt_residual(&params),
                params,
            })
        }
        3 => {
            let params = Family2Params {
                F1: coeff(3, 1, 2, false),
                F2: coeff(3, 1, 3, false),
                F4: coeff(3, 1, 1, true),
                F5: coeff(3, 1, 2, true),
                F6: coeff(3, 1, 3, true),
                G1: coeff(3, 2, 3, false),
                G3: coeff(3, 2, 1, true),
                G4: coeff(3, 2, 2, true),
                G5: coeff(3, 2, 3, true),
                H2: coeff(3, 3, 1, true),
                H3: coeff(3, 3, 2, true),
                H4: coeff(3, 3, 3, true),
            };
            Ok(Verdict::Family2 {
                residuals: family2_residuals_unchecked(&params),
                params,
            })
        }
        _ => Err(Error::InvalidParameter(format!(
            "unexpected center dimension {}",
            8 - 2 * p
        ))),
    }
}

/// Result of the abelian hypercomplex test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypercomplexCheck {
    pub abelian: bool,
    /// Largest entry of `[J_l X, J_l Y] - [X, Y]` over basis pairs and `l`.
    pub residual: f64,
    /// Abelian on a non-abelian nilpotent algebra, which yields weak HKT structures.
    pub weak_hkt: bool,
}

fn check_quaternionic(
    j1: &ComplexStructure,
    j2: &ComplexStructure,
    j3: &ComplexStructure,
) -> Result<()> {
    let prod = j1.matrix() * j2.matrix();
    let residual = linalg::sup_norm(&(prod - j3.matrix()));
    if residual > 1e-9 {
        return Err(Error::QuaternionRelation { residual });
    }
    Ok(())
}

pub fn abelian_hypercomplex_check(
    alg: &LieAlgebra,
    j1: &ComplexStructure,
    j2: &ComplexStructure,
    j3: &ComplexStructure,
) -> Result<HypercomplexCheck> {
    check_quaternionic(j1, j2, j3)?;
    let m = alg.dim();
    let mut worst: f64 = 0.0;
    for jl in [j1, j2, j3] {
        if jl.dim() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: jl.dim(),
            });
        }
        for a in 0..m {
            for b in (a + 1)..m {
                let x = jl.matrix().column(a).into_owned();
                let y = jl.matrix().column(b).into_owned();
                let diff = alg.bracket(&x, &y)? - alg.bracket_basis(a, b);
                worst = worst.max(diff.amax());
            }
        }
    }
    let abelian = worst <= 1e-9;
    let weak_hkt = abelian && alg.is_nilpotent() && !alg.is_abelian(crate::TOL_CATALOGUE);
    Ok(HypercomplexCheck {
        abelian,
        residual: worst,
        weak_hkt,
    })
}

/// Comparison of the three torsion forms `J_l d omega_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct HktReport {
    /// Largest pairwise difference of `J_l d omega_l`; zero exactly for HKT.
    pub residual: f64,
    /// Largest coefficient of `d` of the common torsion form; zero for strong HKT.
    pub dc_norm: f64,
}

impl HktReport {
    pub fn is_hkt(&self, tol: f64) -> bool {
        self.residual <= tol
    }

    pub fn is_strong(&self, tol: f64) -> bool {
        self.is_hkt(tol) && self.dc_norm <= tol
    }
}

pub fn hkt_residual(
    alg: &LieAlgebra,
    j1: &ComplexStructure,
    j2: &ComplexStructure,
    j3: &ComplexStructure,
    g: &RMatrix,
) -> Result<HktReport> {
    check_quaternionic(j1, j2, j3)?;
    let mut forms = Vec::with_capacity(3);
    for jl in [j1, j2, j3] {
        let metric = HermitianMetric::new(g.clone(), jl)?;
        let w = jl.matrix().transpose() * metric.gram();
        let omega = InvariantForm::from_two_form_matrix(&w);
        forms.push(jl.act_on_form(&alg.d(&omega)?)?);
    }
    let mut residual: f64 = 0.0;
    for a in 0..3 {
        for b in (a + 1)..3 {
            residual = residual.max(forms[a].sub(&forms[b])?.sup_norm());
        }
    }
    let dc_norm = alg.d(&forms[0])?.sup_norm();
    Ok(HktReport { residual, dc_norm })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_complex_numbers() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex("-2i").unwrap(), Complex64::new(0.0, -2.0));
        assert_eq!(parse_complex("0.5+0.2i").unwrap(), Complex64::new(0.5, 0.2));
        assert_eq!(
            parse_complex("1e-3-1e-2i").unwrap(),
            Complex64::new(1e-3, -1e-2)
        );
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert!(parse_complex("abc").is_err());
        let p = Family1Params::parse("B4=1, C4=1,F1=sqrt2").unwrap();
        assert_eq!(p.F1.re, std::f64::consts::SQRT_2);
    }

    #[test]
    fn zero_parameters_give_the_torus() {
        let (alg, _) = build_family1(&Family1Params::default()).unwrap();
        assert!(alg.is_abelian(0.0));
    }

    #[test]
    fn realisation_reproduces_the_unitary_equations() {
        let p = Family1Params::parse("B1=0.3-0.2i,B4=1,C3=0.5i,F5=0.7,G4=-0.1+0.4i").unwrap();
        let (alg, j) = build_family1(&p).unwrap();
        let h = standard_hermitian(&alg, &j).unwrap();
        for (k, f) in family1_equations(&p).iter().enumerate() {
            assert!(h
                .unitary_equations()
                .generator(k)
                .sub(f)
                .unwrap()
                .is_zero(1e-14));
        }
    }
}
