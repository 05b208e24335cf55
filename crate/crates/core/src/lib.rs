//! Symbolic–numeric toolkit for generalized Toeplitz kernels.
//!
//! * [`symbol`]: boundary symbols as formal atom products, normalization and
//!   Smirnov-class decisions.
//! * [`kernel`]: minimal kernels, maximal vectors, inclusion, multipliers and
//!   kernel nontriviality.
//! * [`density`]: counting functions, strong regularity and Beurling–Malliavin
//!   density estimates.
//! * [`numeric`]: evaluation of atoms on grids, outer reconstruction and
//!   spectra of meromorphic inner functions.
//! * [`dsl`]: the symbol language, sequence/table loaders and report output.
//! * [`cli`]: the `tkl` command-line front end.

pub mod cli;
pub mod density;
pub mod dsl;
pub mod kernel;
pub mod numeric;
pub mod par;
pub mod symbol;
