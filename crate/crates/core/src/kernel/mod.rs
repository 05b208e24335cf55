//! Generalized Toeplitz kernels `ker T_g^{E₁,E₂}` described by symbols.
//!
//! With `E₂ = Θ₂H²` (disk) or `qH²₊` (half-plane) the generalized kernel
//! coincides with the classical kernel of `g·conj(Θ₂)`, which is what the
//! decision procedures below work with.

mod construct;
mod decide;
mod nontrivial;
mod verdict;

use std::fmt;

use thiserror::Error;

use crate::symbol::{is_bounded, AtomClass, ClassVerdict, Space, SymbolError, SymbolExpr};

pub use construct::{is_maximal_vector, maximal_vector, minimal_kernel_symbol};
pub use decide::{kernel_inclusion, multiplier_check, multiplier_space_nontrivial, same_kernel_up_to_units};
pub use nontrivial::{
    density_threshold_verdict, example4_dichotomy, kernel_dim_rational, kernel_nontrivial, threshold_verdict, DICHOTOMY_TOL,
};
pub use verdict::{KernelDim, Tri, TriVerdict};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error("{0} is not a purely outer symbol")]
    NotOuter(String),
    #[error("multiplier {0} is certified unbounded")]
    UnboundedMultiplier(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("kernel dimension is not available for {0}")]
    NotRational(String),
    #[error("unsupported space descriptor: {0}")]
    UnsupportedSpace(String),
    #[error("symbol {0} is certified unbounded")]
    UnboundedSymbol(String),
}

/// Closed subspaces used as domain or codomain.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceDescriptor {
    /// `H²` or `H²₊`.
    FullHardy,
    /// `ΘH²` for the given inner function.
    InvariantSubspace(SymbolExpr),
    /// `K_Θ = H² ⊖ ΘH²`.
    ModelSpace(SymbolExpr),
}

impl SpaceDescriptor {
    /// Checks that the carried symbol is purely inner and analytic.
    pub fn validate(&self, space: Space) -> Result<(), KernelError> {
        match self {
            SpaceDescriptor::FullHardy => Ok(()),
            SpaceDescriptor::InvariantSubspace(u) | SpaceDescriptor::ModelSpace(u) => {
                if u.space() != space {
                    return Err(SymbolError::MixedSpace(space, u.space()).into());
                }
                let u = u.normalize();
                let ok = u.factors().iter().all(|f| f.atom.class() == AtomClass::Inner && f.exponent > 0);
                if ok {
                    Ok(())
                } else {
                    Err(SymbolError::NotAnalytic(format!("{u} is not a purely inner analytic symbol")).into())
                }
            }
        }
    }

    /// The inner function `Θ₂` with `E₂ = Θ₂H²`.
    pub fn codomain_inner(&self, space: Space) -> Result<SymbolExpr, KernelError> {
        self.validate(space)?;
        match self {
            SpaceDescriptor::FullHardy => Ok(SymbolExpr::one(space)),
            SpaceDescriptor::InvariantSubspace(u) => Ok(u.normalize()),
            SpaceDescriptor::ModelSpace(u) => {
                Err(KernelError::UnsupportedSpace(format!("model space K_{u} is not simply invariant")))
            }
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::FullHardy => write!(f, "H2"),
            SpaceDescriptor::InvariantSubspace(u) => write!(f, "{u}*H2"),
            SpaceDescriptor::ModelSpace(u) => write!(f, "K[{u}]"),
        }
    }
}

/// `ker T_g^{E₁,E₂}`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelRef {
    pub symbol: SymbolExpr,
    pub domain: SpaceDescriptor,
    pub codomain: SpaceDescriptor,
}

impl KernelRef {
    pub fn new(symbol: SymbolExpr, domain: SpaceDescriptor, codomain: SpaceDescriptor) -> Result<Self, KernelError> {
        let space = symbol.space();
        domain.validate(space)?;
        codomain.validate(space)?;
        let symbol = symbol.normalize();
        if is_bounded(&symbol) == ClassVerdict::NotMember {
            return Err(KernelError::UnboundedSymbol(symbol.to_string()));
        }
        Ok(KernelRef { symbol, domain, codomain })
    }

    /// Kernel with `E₁ = E₂ = H²`.
    pub fn classical(symbol: SymbolExpr) -> Result<Self, KernelError> {
        Self::new(symbol, SpaceDescriptor::FullHardy, SpaceDescriptor::FullHardy)
    }

    pub fn space(&self) -> Space {
        self.symbol.space()
    }

    /// `g·conj(Θ₂)`, whose classical kernel is this kernel when `E₁ = H²`.
    pub fn effective_symbol(&self) -> Result<SymbolExpr, KernelError> {
        let theta2 = self.codomain.codomain_inner(self.space())?;
        Ok(self.symbol.mul(&theta2.conjugate())?.normalize())
    }
}

impl fmt::Display for KernelRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ker T[{}] : {} -> {}", self.symbol, self.domain, self.codomain)
    }
}
