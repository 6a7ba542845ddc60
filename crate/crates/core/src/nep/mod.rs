//! Eigenvalue search through poles of a scalarized resolvent.

pub mod function;
pub mod record;
pub mod refine;
pub mod region;
pub mod resolvent;
pub mod search;

pub use function::{diagonal_shift, FnMatrixFunction, MatrixFunction};
pub use record::{EigenvalueRecord, RecordJson, RecordStatus, ResultsDocument, SCHEMA_VERSION};
pub use refine::{
    eigenvector_residual, eigenvectors, local_aaa_refine, secant_fixed_steps, secant_refine,
    SecantOutcome, SecantStatus,
};
pub use region::{GuardBox, RegionKind, SearchRegion};
pub use resolvent::{sample_resolvent, SampleBatch, ScalarizedResolvent, SkippedSample};
pub use search::{
    adaptive_search, basic_search, basic_search_report, deduplicate, screen, BasicSearchOutcome,
    SearchLeaf, SearchOptions, SearchReport,
};
