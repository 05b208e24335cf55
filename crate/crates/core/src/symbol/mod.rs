//! Boundary symbols as formal products of atoms.
//!
//! A [`SymbolExpr`] is a unimodular constant times a product of atoms raised
//! to integer powers, each optionally conjugated. Symbols are read as a.e.
//! boundary functions, so `conj(u) = u⁻¹` for inner `u`.

mod atom;
mod classify;
mod expr;
mod outer_source;

use std::fmt;

use thiserror::Error;

pub use atom::{format_complex, Atom, AtomClass, BlaschkeZeros, MifRef, PointMass};
pub use classify::{
    in_conj_smirnov, inner_coprime, inner_outer_split, is_bounded, outer_families, outer_part_is_bounded_unit,
    ClassVerdict,
};
pub use expr::{Factor, SymbolExpr, ANGLE_TOL};
pub use outer_source::{LogModulusTable, NamedSource, OuterSource};

/// The ambient domain of a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Space {
    Disk,
    HalfPlane,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Disk => write!(f, "disk"),
            Space::HalfPlane => write!(f, "halfplane"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolError {
    #[error("cannot combine a {0} symbol with a {1} symbol")]
    MixedSpace(Space, Space),
    #[error("{0} is not available on the {1}")]
    WrongSpace(&'static str, Space),
    #[error("invalid atom: {0}")]
    InvalidAtom(String),
    #[error("symbol is not analytic: {0}")]
    NotAnalytic(String),
}
