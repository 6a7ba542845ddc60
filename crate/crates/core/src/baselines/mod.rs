//! Contour-integral eigensolvers used as comparison baselines.

mod beyn;
mod block_ss;
mod compare;
mod contour;

use num_complex::Complex64;

pub use beyn::beyn1;
pub use block_ss::{block_ss, block_ss_from_samples, MAX_HANKEL_BLOCKS, RANK_GAP_RATIO};
pub use compare::{
    algorithm1_contour, compare_convergence, comparison_from_csv, comparison_to_csv,
    contour_eigenvalues, secant_screen, CompareOptions, ComparisonRow, Method, Refinement,
    RowStatus, Solver,
};
pub use contour::{
    random_probes, resolvent_solves, trapezoid_moments, Contour, MomentData, DEFAULT_RANK_TOL,
    MIN_CONTOUR_POINTS,
};

/// Eigenvalues inside a contour together with the rank diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourEigenvalues {
    /// Sorted by real then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    /// Singular values of the matrix used for the rank test.
    pub singular_values: Vec<f64>,
    pub rank: usize,
    /// Number of moments used.
    pub moments: usize,
    pub warning: Option<String>,
}
