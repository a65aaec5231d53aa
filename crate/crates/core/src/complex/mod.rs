//! Complex structures, compatible metrics and the Hermitian calculus built on them.

mod hermitian;
mod metric;
mod structure;

pub use hermitian::{
    standard_omega, Hermitian, QuotientStructure, SktResidual, CENTRAL_TOL, OMEGA_UNITARY_FACTOR,
    SKT_TOL,
};
pub use metric::HermitianMetric;
pub use structure::{ComplexStructure, ALMOST_COMPLEX_TOL, INTEGRABLE_TOL};
