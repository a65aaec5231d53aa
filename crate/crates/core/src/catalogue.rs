//! Named Lie algebras with complex structures and metrics.
//!
//! Names: `torus-<2n>`, `h3R-R5`, `h3C-R2`, `h5-R3`, `h7Q-R`, `n6-3step`,
//! `example-3.9`, plus the parametric hooks `family1:<params>` and
//! `family2:<params>` (parameters as in [`Family1Params::parse`]).

use num_complex::Complex64;

use crate::complex::ComplexStructure;
use crate::error::{Error, Result};
use crate::exterior::{Frame, InvariantForm};
use crate::families::{self, Family1Params, Family2Params};
use crate::lie::LieAlgebra;
use crate::linalg::RMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub name: String,
    pub source: String,
    pub algebra: LieAlgebra,
    pub complex_structure: Option<ComplexStructure>,
    pub metric: Option<RMatrix>,
    pub hypercomplex: Option<[ComplexStructure; 3]>,
}

/// Fixed entries, in listing order.
pub const NAMES: [&str; 7] = [
    "torus-8",
    "h3R-R5",
    "h3C-R2",
    "h5-R3",
    "h7Q-R",
    "n6-3step",
    "example-3.9",
];

pub fn names() -> Vec<String> {
    NAMES.iter().map(|s| s.to_string()).collect()
}

pub fn get(name: &str) -> Result<Entry> {
    if let Some(rest) = name.strip_prefix("family1:") {
        let p = Family1Params::parse(rest)?;
        let (algebra, j) = families::build_family1(&p)?;
        return Ok(with_identity(
            name,
            "first 8-dimensional SKT family",
            algebra,
            j,
        ));
    }
    if let Some(rest) = name.strip_prefix("family2:") {
        let p = Family2Params::parse(rest)?;
        let (algebra, j) = families::build_family2(&p)?;
        return Ok(with_identity(
            name,
            "second 8-dimensional SKT family",
            algebra,
            j,
        ));
    }
    if let Some(n) = name.strip_prefix("torus-") {
        let dim: usize = n
            .parse()
            .map_err(|_| Error::UnknownCatalogue(name.into()))?;
        if dim == 0 || !dim.is_multiple_of(2) || dim > 20 {
            return Err(Error::UnknownCatalogue(name.into()));
        }
        let j = ComplexStructure::standard(dim);
        return Ok(with_identity(
            name,
            "abelian Lie algebra",
            LieAlgebra::abelian(dim),
            j,
        ));
    }
    let sqrt2 = Complex64::new(std::f64::consts::SQRT_2, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match name {
        "h3R-R5" => {
            let algebra = LieAlgebra::from_entries(8, &[(7, 0, 1, 1.0)])?;
            let j = ComplexStructure::standard(8);
            Ok(with_identity(
                name,
                "real Heisenberg algebra h3 plus R^5",
                algebra,
                j,
            ))
        }
        "h3C-R2" => {
            let p = Family1Params {
                B1: sqrt2,
                B4: one,
                C4: one,
                ..Default::default()
            };
            let (algebra, j) = families::build_family1(&p)?;
            Ok(with_identity(
                name,
                "complex Heisenberg algebra plus R^2, SKT complex structure",
                algebra,
                j,
            ))
        }
        "h5-R3" => {
            let algebra = LieAlgebra::from_entries(8, &[(4, 0, 1, 1.0), (4, 2, 3, 1.0)])?;
            let j1 = ComplexStructure::from_pairs(8, &[(0, 1), (3, 2), (4, 5), (7, 6)])?;
            let j2 = ComplexStructure::from_pairs(8, &[(0, 2), (1, 3), (4, 6), (5, 7)])?;
            let j3 = ComplexStructure::new(j1.matrix() * j2.matrix())?;
            let mut e = with_identity(
                name,
                "Heisenberg algebra h5 plus R^3, abelian hypercomplex",
                algebra,
                j1.clone(),
            );
            e.hypercomplex = Some([j1, j2, j3]);
            Ok(e)
        }
        "h7Q-R" => {
            let p = Family1Params {
                B4: one,
                C4: one,
                F1: sqrt2,
                ..Default::default()
            };
            let (algebra, j) = families::build_family1(&p)?;
            Ok(with_identity(
                name,
                "quaternionic Heisenberg algebra plus R",
                algebra,
                j,
            ))
        }
        "n6-3step" => {
            let t = |i: usize, k: usize| {
                InvariantForm::basis(6, &[i, k], Frame::Unitary).expect("in range")
            };
            let z = InvariantForm::zero(6, 2, Frame::Unitary);
            let d2 = t(0, 3);
            let d3 = t(0, 1).add(&t(1, 3))?;
            let (algebra, j) = families::from_unitary_equations(&[z, d2, d3])?;
            Ok(with_identity(
                name,
                "3-step nilpotent algebra with nilpotent complex structure",
                algebra,
                j,
            ))
        }
        "example-3.9" => {
            let entries: Vec<(usize, usize, usize, f64)> = [
                (8, 1, 5),
                (8, 1, 6),
                (8, 3, 5),
                (8, 3, 6),
                (9, 2, 5),
                (9, 2, 6),
                (9, 4, 5),
                (9, 4, 6),
                (10, 1, 8),
                (10, 3, 8),
                (10, 2, 9),
                (10, 4, 9),
            ]
            .iter()
            .map(|&(k, i, j)| (k - 1, i - 1, j - 1, 1.0))
            .collect();
            let algebra = LieAlgebra::from_entries(10, &entries)?;
            let j = ComplexStructure::from_pairs(10, &[(0, 1), (2, 3), (4, 6), (7, 8), (5, 9)])?;
            Ok(with_identity(
                name,
                "10-dimensional 3-step algebra with non-nilpotent complex structure",
                algebra,
                j,
            ))
        }
        _ => Err(Error::UnknownCatalogue(name.into())),
    }
}

fn with_identity(name: &str, source: &str, algebra: LieAlgebra, j: ComplexStructure) -> Entry {
    let dim = algebra.dim();
    Entry {
        name: name.to_string(),
        source: source.to_string(),
        algebra,
        complex_structure: Some(j),
        metric: Some(RMatrix::identity(dim, dim)),
        hypercomplex: None,
    }
}
