use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nep::MatrixFunction;
use crate::numerics::{
    dotc, generalized_eigenpairs, lu_factor, vec_norm, ComplexMatrix, INFINITE_EIGENVALUE_TOL,
};

/// `P(k) = Σ_{i=0}^{degree} kⁱ A_i` with square coefficients of equal size.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPolynomial {
    coeffs: Vec<ComplexMatrix>,
}

impl MatrixPolynomial {
    /// Coefficients in increasing order, `A_0` first.
    pub fn new(coeffs: Vec<ComplexMatrix>) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| {
            Error::InvalidInput("matrix polynomial needs at least one coefficient".into())
        })?;
        let d = first.rows();
        for (i, a) in coeffs.iter().enumerate() {
            if a.rows() != d || a.cols() != d {
                return Err(Error::Dimension(format!(
                    "coefficient {i} is {}x{}, expected {d}x{d}",
                    a.rows(),
                    a.cols()
                )));
            }
            if !a.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "coefficient {i} has non-finite entries"
                )));
            }
        }
        if coeffs.last().is_some_and(|a| a.max_abs() == 0.0) {
            return Err(Error::InvalidInput(
                "leading coefficient is identically zero".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn coefficients(&self) -> &[ComplexMatrix] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn evaluate(&self, k: Complex64) -> ComplexMatrix {
        let mut acc = self.coeffs[self.degree()].clone();
        for a in self.coeffs.iter().rev().skip(1) {
            acc = a.add_scaled(&acc, k);
        }
        acc
    }

    /// Horner evaluation of `P'(k)`.
    pub fn evaluate_derivative(&self, k: Complex64) -> ComplexMatrix {
        let g = self.degree();
        if g == 0 {
            return ComplexMatrix::zeros(self.dim(), self.dim());
        }
        let mut acc = self.coeffs[g].scale(Complex64::from(g as f64));
        for i in (1..g).rev() {
            acc = self.coeffs[i]
                .scale(Complex64::from(i as f64))
                .add_scaled(&acc, k);
        }
        acc
    }

    /// Direct power-sum evaluation, for cross-checking [`Self::evaluate`].
    pub fn evaluate_naive(&self, k: Complex64) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim(), self.dim());
        for (i, a) in self.coeffs.iter().enumerate() {
            acc = acc.add_scaled(a, k.powi(i as i32));
        }
        acc
    }
}

impl MatrixFunction for MatrixPolynomial {
    fn dim(&self) -> usize {
        MatrixPolynomial::dim(self)
    }

    fn eval(&self, k: Complex64) -> Result<ComplexMatrix> {
        if !(k.re.is_finite() && k.im.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite k = {k}")));
        }
        Ok(self.evaluate(k))
    }

    fn analyticity_domain(&self) -> Option<&str> {
        Some("entire")
    }
}

pub fn as_matrix_function(p: MatrixPolynomial) -> Arc<dyn MatrixFunction> {
    Arc::new(p)
}

/// Spectrum of a matrix polynomial from its companion linearization.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialSpectrum {
    /// Finite eigenvalues sorted by real then imaginary part.
    pub finite: Vec<Complex64>,
    /// Number of infinite eigenvalues (nonzero only for a singular leading coefficient).
    pub infinite: usize,
}

/// All eigenvalues of `p` via the first companion pencil
/// `E − λB`, `E = [[−A_{g−1} … −A_0], [I 0 …], …]`, `B = diag(A_g, I, …, I)`.
pub fn polyeig_oracle(p: &MatrixPolynomial) -> Result<PolynomialSpectrum> {
    let g = p.degree();
    if g == 0 {
        return Err(Error::InvalidInput(
            "polynomial eigenproblem needs degree >= 1".into(),
        ));
    }
    let d = p.dim();
    let n = g * d;
    let mut e = ComplexMatrix::zeros(n, n);
    let mut b = ComplexMatrix::identity(n);
    for blk in 0..g {
        let a = &p.coefficients()[g - 1 - blk];
        for i in 0..d {
            for j in 0..d {
                e[(i, blk * d + j)] = -a[(i, j)];
            }
        }
    }
    for i in d..n {
        e[(i, i - d)] = Complex64::new(1.0, 0.0);
    }
    let lead = &p.coefficients()[g];
    for i in 0..d {
        for j in 0..d {
            b[(i, j)] = lead[(i, j)];
        }
    }
    let pairs = generalized_eigenpairs(&e, &b)?;
    let mut finite = Vec::with_capacity(n);
    let mut infinite = 0;
    for (alpha, beta) in pairs {
        if beta.norm() > INFINITE_EIGENVALUE_TOL * alpha.norm() && beta.norm() > 0.0 {
            finite.push(alpha / beta);
        } else {
            infinite += 1;
        }
    }
    finite.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    if infinite > 0 {
        log::warn!("leading coefficient is singular: {infinite} infinite eigenvalues");
    }
    Ok(PolynomialSpectrum { finite, infinite })
}

/// Polishes an approximate eigenvalue of `p` by nonlinear inverse iteration:
/// `y = P(λ)⁻¹ P'(λ) x`, `λ ← λ − (c*x)/(c*y)`, `x ← y/‖y‖`, with the start
/// vector `x₀ = P(λ₀)⁻¹ 1` also serving as the normalization vector `c`.
pub fn polish_eigenvalue(
    p: &MatrixPolynomial,
    lambda0: Complex64,
    max_iters: usize,
) -> Result<Complex64> {
    let d = p.dim();
    let mut lambda = lambda0;
    let Ok(lu) = lu_factor(&p.evaluate(lambda)) else {
        return Ok(lambda);
    };
    let Ok(y) = lu.solve(&vec![Complex64::new(1.0, 0.0); d]) else {
        return Ok(lambda);
    };
    let ny = vec_norm(&y);
    let mut x: Vec<Complex64> = y.iter().map(|v| v / ny).collect();
    let c = x.clone();
    for _ in 0..max_iters {
        let Ok(lu) = lu_factor(&p.evaluate(lambda)) else {
            break;
        };
        let Ok(y) = lu.solve(&p.evaluate_derivative(lambda).mul_vec(&x)) else {
            break;
        };
        let delta = dotc(&c, &x) / dotc(&c, &y);
        if !(delta.re.is_finite() && delta.im.is_finite()) {
            break;
        }
        lambda -= delta;
        let ny = vec_norm(&y);
        x = y.iter().map(|v| v / ny).collect();
        if delta.norm() <= 4.0 * f64::EPSILON * lambda.norm().max(1.0) {
            break;
        }
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn diag(v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&v.iter().map(|x| c(*x)).collect::<Vec<_>>())
    }

    fn assert_set(got: &[Complex64], expected: &[f64]) {
        assert_eq!(got.len(), expected.len(), "{got:?}");
        for e in expected {
            assert!(
                got.iter().any(|g| (g - c(*e)).norm() < 1e-12),
                "{e} missing from {got:?}"
            );
        }
    }

    #[test]
    fn linear_oracle() {
        let p =
            MatrixPolynomial::new(vec![diag(&[-1.0, -2.0]), ComplexMatrix::identity(2)]).unwrap();
        let s = polyeig_oracle(&p).unwrap();
        assert_set(&s.finite, &[1.0, 2.0]);
        assert_eq!(s.infinite, 0);
    }

    #[test]
    fn quadratic_oracle() {
        let p = MatrixPolynomial::new(vec![
            diag(&[-1.0, -4.0]),
            diag(&[0.0, 0.0]),
            ComplexMatrix::identity(2),
        ])
        .unwrap();
        assert_set(&polyeig_oracle(&p).unwrap().finite, &[-2.0, -1.0, 1.0, 2.0]);
    }

    #[test]
    fn singular_leading_coefficient_reports_infinite_eigenvalues() {
        let p = MatrixPolynomial::new(vec![diag(&[-1.0, 1.0]), diag(&[1.0, 0.0])]).unwrap();
        let s = polyeig_oracle(&p).unwrap();
        assert_set(&s.finite, &[1.0]);
        assert_eq!(s.infinite, 1);
    }

    #[test]
    fn horner_endpoints() {
        let a0 = diag(&[1.0, 2.0]);
        let a1 = diag(&[3.0, -1.0]);
        let a2 = ComplexMatrix::from_fn(2, 2, |i, j| Complex64::new(i as f64, j as f64));
        let p = MatrixPolynomial::new(vec![a0.clone(), a1.clone(), a2.clone()]).unwrap();
        assert_eq!(p.evaluate(c(0.0)), a0);
        let sum = a0.add_scaled(&a1, c(1.0)).add_scaled(&a2, c(1.0));
        assert!((p.evaluate(c(1.0)).add_scaled(&sum, c(-1.0))).max_abs() < 1e-15);
        let k = Complex64::new(0.7, -1.3);
        let diff = p
            .evaluate(k)
            .add_scaled(&p.evaluate_naive(k), c(-1.0))
            .max_abs();
        assert!(diff < 1e-13 * p.evaluate_naive(k).max_abs());
    }

    #[test]
    fn derivative_matches_central_difference() {
        let a = |s: f64| {
            ComplexMatrix::from_fn(3, 3, |i, j| Complex64::new(s + i as f64, (j as f64) - s))
        };
        let p = MatrixPolynomial::new(vec![a(0.1), a(-0.4), a(0.9), a(0.3)]).unwrap();
        let k = Complex64::new(0.6, 0.2);
        let h = 1e-6;
        let fd = p
            .evaluate(k + h)
            .add_scaled(&p.evaluate(k - h), c(-1.0))
            .scale(c(0.5 / h));
        let diff = p.evaluate_derivative(k).add_scaled(&fd, c(-1.0)).max_abs();
        assert!(diff < 1e-7 * fd.max_abs(), "{diff:e}");
    }

    #[test]
    fn polishing_converges_to_nearby_eigenvalue() {
        // (k − 1)(k − 2) and (k + 1)(k − 3) on the diagonal plus a coupling
        let mut a0 = diag(&[2.0, -3.0]);
        a0[(0, 1)] = c(0.0);
        a0[(1, 0)] = c(0.5);
        let p = MatrixPolynomial::new(vec![a0, diag(&[-3.0, -2.0]), diag(&[1.0, 1.0])]).unwrap();
        for target in [1.0, 2.0, -1.0, 3.0] {
            let got = polish_eigenvalue(&p, c(target + 1e-3), 20).unwrap();
            assert!((got - target).norm() < 1e-14, "{target}: {got}");
        }
    }

    #[test]
    fn rejects_invalid_coefficients() {
        assert!(MatrixPolynomial::new(vec![]).is_err());
        assert!(MatrixPolynomial::new(vec![
            ComplexMatrix::identity(2),
            ComplexMatrix::identity(3)
        ])
        .is_err());
        assert!(MatrixPolynomial::new(vec![
            ComplexMatrix::identity(2),
            ComplexMatrix::zeros(2, 2)
        ])
        .is_err());
        let p = MatrixPolynomial::new(vec![ComplexMatrix::identity(2)]).unwrap();
        assert!(polyeig_oracle(&p).is_err());
    }
}
