use std::fmt;

use serde::Serialize;

use crate::symbol::{ClassVerdict, SymbolExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "YES",
            Tri::No => "NO",
            Tri::Unknown => "UNKNOWN",
        })
    }
}

/// Dimension of a kernel: finite or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KernelDim {
    Finite(u64),
    Infinite,
}

impl fmt::Display for KernelDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelDim::Finite(d) => write!(f, "{d}"),
            KernelDim::Infinite => write!(f, "inf"),
        }
    }
}

/// A three-valued answer with the rule that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct TriVerdict {
    pub value: Tri,
    /// Which rule fired (or why none did).
    pub rule: String,
    /// Symbol witnessing the decision, e.g. the reduced ratio.
    pub witness: Option<SymbolExpr>,
    /// Kernel dimension, when the rule computes one.
    pub dim: Option<KernelDim>,
    /// Set when the answer relies on kernels being nontrivial without a
    /// certificate for it.
    pub assumed_nontrivial: bool,
}

impl TriVerdict {
    fn new(value: Tri, rule: impl Into<String>) -> Self {
        TriVerdict { value, rule: rule.into(), witness: None, dim: None, assumed_nontrivial: false }
    }

    pub fn yes(rule: impl Into<String>) -> Self {
        Self::new(Tri::Yes, rule)
    }

    pub fn no(rule: impl Into<String>) -> Self {
        Self::new(Tri::No, rule)
    }

    pub fn unknown(rule: impl Into<String>) -> Self {
        Self::new(Tri::Unknown, rule)
    }

    pub fn with_witness(mut self, w: SymbolExpr) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_dim(mut self, d: KernelDim) -> Self {
        self.dim = Some(d);
        self
    }

    /// Member → Yes, NotMember → No.
    pub fn from_class(c: ClassVerdict, rule: impl Into<String>) -> Self {
        let value = match c {
            ClassVerdict::Member => Tri::Yes,
            ClassVerdict::NotMember => Tri::No,
            ClassVerdict::Unknown => Tri::Unknown,
        };
        Self::new(value, rule)
    }

    pub fn is_yes(&self) -> bool {
        self.value == Tri::Yes
    }

    pub fn is_no(&self) -> bool {
        self.value == Tri::No
    }
}

impl fmt::Display for TriVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.rule)?;
        if let Some(d) = self.dim {
            write!(f, " [dim {d}]")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " [witness {w}]")?;
        }
        if self.assumed_nontrivial {
            write!(f, " [assumes nontrivial kernels]")?;
        }
        Ok(())
    }
}
