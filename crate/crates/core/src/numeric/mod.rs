//! Numerical evaluation of atoms and symbols: Blaschke products, singular
//! inner functions, outer functions by Herglotz quadrature, boundary grids and
//! spectra of meromorphic inner functions.

mod blaschke;
mod eval;
mod outer;
mod singular;
mod spectrum;

use num_complex::Complex64;
use thiserror::Error;

pub use blaschke::{blaschke_condition, blaschke_eval, BlaschkeCondition, ZeroList, BLASCHKE_TAIL_TOL};
pub use eval::{atom_boundary_eval, symbol_boundary_eval, EvalGrid, GridKind};
pub use outer::{outer_eval, reconstruction_error, OuterQuadrature};
pub use singular::singular_inner_eval;
pub use spectrum::{spectrum_sigma, MifParams, SpectrumResult};

/// Default exclusion radius around poles and singular supports.
pub const EXCLUSION_RADIUS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("disk Blaschke zeros must be nonzero")]
    ZeroAtOrigin,
    #[error("evaluation point {0} lies within the exclusion radius of a Blaschke pole")]
    PoleHit(Complex64),
    #[error("evaluation point {0} lies within the exclusion radius of a singular point mass")]
    MassHit(Complex64),
    #[error("evaluation point {0} is outside the domain")]
    OutsideDomain(Complex64),
    #[error("log-modulus is not integrable: {0}")]
    NonIntegrableLogModulus(String),
    #[error("quadrature size {0} is not a power of two")]
    BadQuadratureSize(usize),
    #[error("not evaluable: {0}")]
    NotEvaluable(String),
    #[error("phase decreased near x = {0}; parameters do not describe an inner function")]
    PhaseNotMonotone(f64),
    #[error("bad interval [{0}, {1}]")]
    BadInterval(f64, f64),
    #[error("at grid index {index}: {source}")]
    AtGridIndex { index: usize, source: Box<EvalError> },
}
