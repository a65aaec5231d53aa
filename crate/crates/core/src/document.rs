//! JSON exchange format for Lie algebras with optional complex structure,
//! metric and hypercomplex triple.
//!
//! ```json
//! {
//!   "name": "h3R-R5",
//!   "dim": 8,
//!   "d": [[8, 1, 2, 1.0, 0.0]],
//!   "J": [0.0, -1.0, ...],
//!   "g": [1.0, 0.0, ...]
//! }
//! ```
//!
//! Each `d` entry `[k, i, j, re, im]` adds `(re + i im) e^i ^ e^j` to `d e^k`
//! (1-based). Structure constants of a real algebra must have `im = 0`.
//! Matrices are row-major.

use serde::{Deserialize, Serialize};

use crate::catalogue::Entry;
use crate::complex::{ComplexStructure, HermitianMetric};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::RMatrix;

/// One structure-equation entry `[k, i, j, re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DEntry(pub usize, pub usize, pub usize, pub f64, pub f64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub source: String,
    pub dim: usize,
    #[serde(default)]
    pub d: Vec<DEntry>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypercomplex: Option<[Vec<f64>; 3]>,
}

fn doc_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Document {
        location: location.into(),
        message: message.into(),
    }
}

/// Parse and validate a document.
pub fn parse_document(text: &str) -> Result<AlgebraDocument> {
    let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| {
        doc_err(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    doc.validate()?;
    Ok(doc)
}

fn matrix(field: &str, values: &[f64], dim: usize) -> Result<RMatrix> {
    if values.len() != dim * dim {
        return Err(doc_err(
            field,
            format!("expected {} entries, found {}", dim * dim, values.len()),
        ));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(doc_err(field, "non-finite entry"));
    }
    Ok(RMatrix::from_row_slice(dim, dim, values))
}

fn row_major(m: &RMatrix) -> Vec<f64> {
    let mut out = Vec::with_capacity(m.len());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            // Normalize -0.0 so exports are stable.
            let v = m[(r, c)];
            out.push(if v == 0.0 { 0.0 } else { v });
        }
    }
    out
}

fn structure(field: &str, values: &[f64], dim: usize) -> Result<ComplexStructure> {
    ComplexStructure::new(matrix(field, values, dim)?).map_err(|e| doc_err(field, e.to_string()))
}

impl AlgebraDocument {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(doc_err("dim", "dimension must be positive"));
        }
        for (n, &DEntry(k, i, j, re, im)) in self.d.iter().enumerate() {
            let loc = format!("d[{n}]");
            for idx in [k, i, j] {
                if idx == 0 || idx > self.dim {
                    return Err(doc_err(
                        &loc,
                        format!("index {idx} outside 1..={}", self.dim),
                    ));
                }
            }
            if i == j {
                return Err(doc_err(&loc, format!("repeated index {i}")));
            }
            if !re.is_finite() || !im.is_finite() {
                return Err(doc_err(&loc, "non-finite coefficient"));
            }
            if im != 0.0 {
                return Err(doc_err(
                    &loc,
                    "structure constants of a real algebra must be real",
                ));
            }
        }
        let j = match &self.j {
            Some(v) => Some(structure("J", v, self.dim)?),
            None => None,
        };
        if let Some(g) = &self.g {
            let gm = matrix("g", g, self.dim)?;
            match &j {
                Some(j) => {
                    HermitianMetric::new(gm, j).map_err(|e| doc_err("g", e.to_string()))?;
                }
                None => {
                    let (lmin, _) = crate::linalg::min_eigen(&((&gm + gm.transpose()) * 0.5));
                    if crate::linalg::sup_norm(&(&gm - gm.transpose())) > crate::TOL_EQ
                        || lmin <= 0.0
                    {
                        return Err(doc_err("g", "metric must be symmetric positive definite"));
                    }
                }
            }
        }
        if let Some(h) = &self.hypercomplex {
            for (l, m) in h.iter().enumerate() {
                structure(&format!("hypercomplex[{l}]"), m, self.dim)?;
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> Result<LieAlgebra> {
        let entries: Vec<_> = self
            .d
            .iter()
            .map(|e| (e.0 - 1, e.1 - 1, e.2 - 1, e.3))
            .collect();
        LieAlgebra::from_entries(self.dim, &entries)
    }

    pub fn complex_structure(&self) -> Result<Option<ComplexStructure>> {
        self.j
            .as_ref()
            .map(|v| structure("J", v, self.dim))
            .transpose()
    }

    pub fn metric(&self) -> Result<Option<RMatrix>> {
        self.g
            .as_ref()
            .map(|v| matrix("g", v, self.dim))
            .transpose()
    }

    pub fn hypercomplex(&self) -> Result<Option<[ComplexStructure; 3]>> {
        let Some(h) = &self.hypercomplex else {
            return Ok(None);
        };
        Ok(Some([
            structure("hypercomplex[0]", &h[0], self.dim)?,
            structure("hypercomplex[1]", &h[1], self.dim)?,
            structure("hypercomplex[2]", &h[2], self.dim)?,
        ]))
    }

    pub fn from_entry(e: &Entry) -> Self {
        let d = e
            .algebra
            .entries()
            .into_iter()
            .map(|(k, i, j, c)| DEntry(k + 1, i + 1, j + 1, c, 0.0))
            .collect();
        Self {
            name: e.name.clone(),
            source: e.source.clone(),
            dim: e.algebra.dim(),
            d,
            j: e.complex_structure.as_ref().map(|j| row_major(j.matrix())),
            g: e.metric.as_ref().map(row_major),
            hypercomplex: e.hypercomplex.as_ref().map(|h| {
                [
                    row_major(h[0].matrix()),
                    row_major(h[1].matrix()),
                    row_major(h[2].matrix()),
                ]
            }),
        }
    }

    pub fn to_entry(&self) -> Result<Entry> {
        Ok(Entry {
            name: self.name.clone(),
            source: self.source.clone(),
            algebra: self.algebra()?,
            complex_structure: self.complex_structure()?,
            metric: self.metric()?,
            hypercomplex: self.hypercomplex()?,
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;

    #[test]
    fn catalogue_exports_round_trip() {
        for name in catalogue::NAMES {
            let text = AlgebraDocument::from_entry(&catalogue::get(name).unwrap()).to_json();
            let doc = parse_document(&text).unwrap();
            let again = AlgebraDocument::from_entry(&doc.to_entry().unwrap()).to_json();
            assert_eq!(text, again, "{name}");
        }
    }

    #[test]
    fn empty_equations_give_a_torus() {
        let doc = parse_document(r#"{"name": "t", "dim": 8, "d": []}"#).unwrap();
        assert!(doc.algebra().unwrap().is_abelian(0.0));
    }

    #[test]
    fn bad_j_is_reported_by_name() {
        let text = r#"{"name": "x", "dim": 2, "d": [], "J": [1.0, 0.0, 0.0, 1.0]}"#;
        match parse_document(text) {
            Err(Error::Document { location, .. }) => assert_eq!(location, "J"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        match parse_document("{\n \"name\": \"x\",\n \"dim\": }") {
            Err(Error::Document { location, .. }) => assert!(location.starts_with("line 3")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn out_of_range_index() {
        let text = r#"{"name": "x", "dim": 2, "d": [[3, 1, 2, 1.0, 0.0]]}"#;
        assert!(matches!(parse_document(text), Err(Error::Document { .. })));
    }
}
