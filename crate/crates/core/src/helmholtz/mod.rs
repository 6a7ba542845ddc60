//! Single-layer boundary-integral operators for the 2D Helmholtz equation.

mod field;
mod geometry;
mod operator;

pub use field::{field_eval, field_eval_with, FieldValue};
pub use geometry::{
    builtin_geometries, geometry_by_name, ClosedCurve, Geometry, OpenArc, Point, DEFAULT_APERTURE,
    DEFAULT_OPENING_FRACTION,
};
pub use operator::{
    closed_slp, default_resolution, make_nep, open_slp, Discretization, DiscretizedOperator,
    HelmholtzNep, ProblemKind,
};
