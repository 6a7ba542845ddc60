//! Matrix-polynomial eigenproblems and their linearization oracle.

mod butterfly;
mod format;
mod polynomial;

pub use butterfly::{butterfly, butterfly_with, BUTTERFLY_BLOCK, BUTTERFLY_COEFFICIENTS};
pub use format::{format_polynomial, load_polynomial, parse_polynomial, save_polynomial};
pub use polynomial::{
    as_matrix_function, polish_eigenvalue, polyeig_oracle, MatrixPolynomial, PolynomialSpectrum,
};
