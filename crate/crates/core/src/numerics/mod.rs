//! Dense complex linear algebra and special functions.

pub mod bessel;
pub mod dense;
pub mod lu;
pub mod matrix;

pub use bessel::{bessel, BesselKind};
pub use dense::{
    eigenvalues, generalized_eigenpairs, generalized_eigenvalues, min_singular_vector, thin_svd,
    Svd, INFINITE_EIGENVALUE_TOL,
};
pub use lu::{lu_factor, lu_solve, nullspace_from_lu, LuFactorization};
pub use matrix::{dotc, vec_norm, ComplexMatrix};

/// Default relative pivot threshold for nullspace extraction.
pub const DEFAULT_PIVOT_TOL: f64 = 1e-10;
