//! Exact engine for A-superstatistics: the Fock representations `W(p, n)` of
//! the Lie superalgebra `gl(1|n)`, their operator identities, and the
//! grand-canonical thermodynamics of particles obeying the resulting
//! generalized Pauli principle.
//!
//! Thermodynamic quantities are available through three independent routes:
//! brute-force state enumeration ([`thermo::gpf_bruteforce`]), elementary
//! symmetric function recurrences ([`symfun`], [`thermo`]), and closed
//! hypergeometric / q-series forms ([`special`]). [`sampler`] adds a Monte
//! Carlo cross-check.

pub mod emit;
pub mod error;
pub mod fock;
pub mod sampler;
pub mod scalar;
pub mod special;
pub mod symfun;
pub mod thermo;

pub use error::{Error, Result};
pub use fock::verify::{SuiteSelection, VerificationReport};
pub use fock::{
    apply, build_operator, enumerate_basis, Amplitude, BasisState, FockSpec, OperatorKind,
    OperatorMatrix, StateVector,
};
pub use emit::{Emit, Format};
pub use sampler::{sample, Method, SampleEstimate, SamplerConfig};
pub use scalar::Scalar;
pub use special::{
    DegenerateParams, DegenerateRoute, EquidistantParams, EquidistantRoute, FigureSeries, Grid,
};
pub use symfun::{ElemSymTable, QArg, SeriesValue};
pub use thermo::{Route, ThermoParams, ThermoReport};
