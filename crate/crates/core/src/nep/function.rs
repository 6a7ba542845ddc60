use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// A map `k -> F_k` from a complex parameter to a dense `d x d` matrix.
pub trait MatrixFunction: Send + Sync {
    fn dim(&self) -> usize;

    fn eval(&self, k: Complex64) -> Result<ComplexMatrix>;

    /// Human-readable description of where `F` is analytic, if known.
    fn analyticity_domain(&self) -> Option<&str> {
        None
    }
}

/// [`MatrixFunction`] backed by a closure.
pub struct FnMatrixFunction<F> {
    dim: usize,
    f: F,
    domain: Option<String>,
}

impl<F> FnMatrixFunction<F>
where
    F: Fn(Complex64) -> ComplexMatrix + Send + Sync,
{
    pub fn new(dim: usize, f: F) -> Self {
        Self {
            dim,
            f,
            domain: None,
        }
    }

    pub fn with_domain(mut self, domain: impl Into<String>) -> Self {
        self.domain = Some(domain.into());
        self
    }
}

impl<F> MatrixFunction for FnMatrixFunction<F>
where
    F: Fn(Complex64) -> ComplexMatrix + Send + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, k: Complex64) -> Result<ComplexMatrix> {
        let m = (self.f)(k);
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Dimension(format!(
                "matrix function returned {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                self.dim,
                self.dim
            )));
        }
        Ok(m)
    }

    fn analyticity_domain(&self) -> Option<&str> {
        self.domain.as_deref()
    }
}

/// `F(k) = diag(k - a_1, ..., k - a_d)`, handy for tests and examples.
pub fn diagonal_shift(
    roots: &[Complex64],
) -> FnMatrixFunction<impl Fn(Complex64) -> ComplexMatrix + Send + Sync> {
    let roots = roots.to_vec();
    FnMatrixFunction::new(roots.len(), move |k| {
        let d: Vec<Complex64> = roots.iter().map(|a| k - a).collect();
        ComplexMatrix::from_diagonal(&d)
    })
}
