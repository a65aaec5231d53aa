//! Invariant Hermitian geometry on real Lie algebras.
//!
//! The crate works entirely at the Lie-algebra level: a Lie algebra is given
//! by the exterior derivatives of its coframe (`d e^k`), complex structures
//! and metrics are constant matrices, and every differential form is an
//! invariant form with constant coefficients. On top of this calculus it
//! provides the SKT (pluriclosed) condition, Bismut torsion, taming
//! symplectic forms, structural obstructions coming from the center and the
//! commutator, and a small positive-definite feasibility solver used to
//! search for SKT metrics and taming forms.
//!
//! Sign convention: `d a(X, Y) = -a([X, Y])` for every 1-form `a`, so the
//! structure constants are read off as `[e_i, e_j] = -sum_k c^k_ij e_k`
//! where `d e^k = sum_{i<j} c^k_ij e^i ^ e^j`.

pub mod catalogue;
pub mod complex;
pub mod document;
pub mod error;
pub mod exterior;
pub mod families;
pub mod lie;
pub mod linalg;
pub mod tamed;

pub use complex::{ComplexStructure, Hermitian, HermitianMetric};
pub use error::{Error, Result};
pub use exterior::{Frame, InvariantForm};
pub use lie::{LieAlgebra, Subspace};
pub use num_complex::Complex64;

/// Tolerance for exact identities on catalogue data.
pub const TOL_CATALOGUE: f64 = 1e-9;

/// Default tolerance for equalities on generic input.
pub const TOL_EQ: f64 = 1e-8;

/// Default positivity threshold for feasibility certificates.
pub const TOL_PD: f64 = 1e-6;
