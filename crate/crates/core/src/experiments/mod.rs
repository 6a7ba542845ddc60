//! Reference solutions and parameter studies built on the solver.

mod disk;
mod gap;

pub use disk::{disk_dirichlet_eigenvalues, DiskEigenvalue};
pub use gap::{
    fit_loglog, fit_semilogy, gap_study, GapMode, GapPoint, GapStudy, GapStudyOptions, SlopeFit,
    J1_FIRST_ZERO,
};
