//! Counting functions, strong regularity and density estimates for discrete
//! sequences.

mod counting;
mod estimate;
mod sequence;
mod star;
mod uniform;

use thiserror::Error;

pub use counting::{
    count_sorted, counting_function, default_schedule, deficit_on, deficit_sorted, is_strongly_a_regular,
    regularity_deficit, DIVERGENCE_SLOPE, REGULARITY_TOL,
};
pub use estimate::{
    arithmetic_padding, default_grid, exterior_density_estimate, greedy_thinning, grid_step, interior_density_estimate,
    SubsequenceStrategy, SupersequenceStrategy, DEFAULT_GRID_STEP,
};
pub use sequence::{
    Confidence, DensityKind, DensityReport, DensityWitness, PointSequence, SeqSpace, DEFAULT_EXTENT,
};
pub use star::{star_point, star_transform, StarTransform};
pub use uniform::{
    default_radii, density_kernel_threshold, is_separated, lower_uniform_density, min_gap, min_window_count,
    polya_verdict, SEPARATION_FLOOR,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DensityError {
    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("the a-grid is empty")]
    EmptyGrid,
    #[error("the a-grid must be increasing, finite and nonnegative")]
    BadGrid,
    #[error("radius {r} exceeds half the truncation span {span}")]
    WindowTooLarge { r: f64, span: f64 },
    #[error("sequence is not separated (smallest gap {0:.3e})")]
    NotSeparated(f64),
}
