//! Dense SVD and eigenvalue kernels, backed by `faer`.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::ComputeEigenvectors;
use faer::linalg::svd::ComputeSvdVectors;
use faer::{Par, Spec};
use num_complex::Complex64;

use super::matrix::{vec_norm, ComplexMatrix};
use crate::error::{Error, Result};

/// Threshold on `|beta| / |alpha|` below which a generalized eigenvalue is
/// treated as infinite.
pub const INFINITE_EIGENVALUE_TOL: f64 = 1e-14;

/// Thin singular value decomposition `A = U diag(s) V^H`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

pub fn thin_svd(a: &ComplexMatrix) -> Result<Svd> {
    let m = a.to_faer();
    let (r, c) = (a.rows(), a.cols());
    let k = r.min(c);
    let mut s = faer::diag::Diag::<Complex64>::zeros(k);
    let mut u = faer::Mat::<Complex64>::zeros(r, k);
    let mut v = faer::Mat::<Complex64>::zeros(c, k);
    faer::linalg::svd::svd(
        m.as_ref(),
        s.as_mut(),
        Some(u.as_mut()),
        Some(v.as_mut()),
        Par::Seq,
        MemStack::new(&mut MemBuffer::new(faer::linalg::svd::svd_scratch::<
            Complex64,
        >(
            r,
            c,
            ComputeSvdVectors::Thin,
            ComputeSvdVectors::Thin,
            Par::Seq,
            Spec::default(),
        ))),
        Spec::default(),
    )
    .map_err(|_| Error::NoConvergence)?;
    Ok(Svd {
        u: ComplexMatrix::from_faer(u.as_ref()),
        singular_values: s.column_vector().iter().map(|x| x.re).collect(),
        v: ComplexMatrix::from_faer(v.as_ref()),
    })
}

/// Unit vector `w` minimizing `‖A w‖`, together with the attained minimum
/// (the smallest singular value).
pub fn min_singular_vector(a: &ComplexMatrix) -> Result<(Vec<Complex64>, f64)> {
    if a.rows() < a.cols() {
        return Err(Error::Dimension(format!(
            "least-squares matrix must have rows >= cols, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let svd = thin_svd(a)?;
    let last = a.cols() - 1;
    let mut w = svd.v.column(last);
    // normalize again; the SVD returns unit vectors up to rounding
    let nrm = vec_norm(&w);
    w.iter_mut().for_each(|x| *x /= nrm);
    Ok((w, svd.singular_values[last]))
}

/// Eigenvalue pairs `(alpha, beta)` with `E v = (alpha / beta) B v`.
pub fn generalized_eigenpairs(
    e: &ComplexMatrix,
    b: &ComplexMatrix,
) -> Result<Vec<(Complex64, Complex64)>> {
    if !e.is_square() || !b.is_square() || e.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "pencil needs two square matrices of equal size, got {}x{} and {}x{}",
            e.rows(),
            e.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = e.rows();
    let mut a = e.to_faer();
    let mut bb = b.to_faer();
    let mut alpha = faer::diag::Diag::<Complex64>::zeros(n);
    let mut beta = faer::diag::Diag::<Complex64>::zeros(n);
    // the eigenvalue-only QZ path returns zero pairs for n > 2 in this faer
    // release; requesting right eigenvectors takes the working path
    let mut right = faer::Mat::<Complex64>::zeros(n, n);
    faer::linalg::gevd::gevd_cplx(
        a.as_mut(),
        bb.as_mut(),
        alpha.as_mut(),
        beta.as_mut(),
        None,
        Some(right.as_mut()),
        Par::Seq,
        MemStack::new(&mut MemBuffer::new(faer::linalg::gevd::gevd_scratch::<
            Complex64,
        >(
            n,
            ComputeEigenvectors::No,
            ComputeEigenvectors::Yes,
            Par::Seq,
            Spec::default(),
        ))),
        Spec::default(),
    )
    .map_err(|_| Error::NoConvergence)?;
    Ok(alpha
        .column_vector()
        .iter()
        .zip(beta.column_vector().iter())
        .map(|(a, b)| (*a, *b))
        .collect())
}

/// Finite generalized eigenvalues of the pencil `(E, B)`. Pairs with
/// `|beta| <= 1e-14 |alpha|` are infinite and dropped.
pub fn generalized_eigenvalues(e: &ComplexMatrix, b: &ComplexMatrix) -> Result<Vec<Complex64>> {
    Ok(generalized_eigenpairs(e, b)?
        .into_iter()
        .filter(|(a, b)| b.norm() > INFINITE_EIGENVALUE_TOL * a.norm() && b.norm() > 0.0)
        .map(|(a, b)| a / b)
        .collect())
}

/// Eigenvalues of a square matrix.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(Error::Dimension("eigenvalues need a square matrix".into()));
    }
    a.to_faer().eigenvalues().map_err(|_| Error::NoConvergence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        v
    }

    #[test]
    fn min_singular_vector_of_diagonal() {
        let a = ComplexMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 1.0]]).unwrap();
        let (w, s) = min_singular_vector(&a).unwrap();
        assert!((s - 1.0).abs() < 1e-14);
        assert!(w[0].norm() < 1e-14 && (w[1].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn min_singular_vector_of_zero_matrix() {
        let a = ComplexMatrix::zeros(3, 2);
        let (w, s) = min_singular_vector(&a).unwrap();
        assert_eq!(s, 0.0);
        assert!((vec_norm(&w) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn min_singular_vector_rejects_wide() {
        assert!(matches!(
            min_singular_vector(&ComplexMatrix::zeros(2, 3)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn min_singular_vector_is_optimal_against_random_probes() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let a = ComplexMatrix::from_fn(8, 3, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let (w, s) = min_singular_vector(&a).unwrap();
        let best = vec_norm(&a.mul_vec(&w));
        assert!((best - s).abs() < 1e-12);
        for _ in 0..1000 {
            let mut v: Vec<Complex64> = (0..3)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let n = vec_norm(&v);
            v.iter_mut().for_each(|x| *x /= n);
            let val = vec_norm(&a.mul_vec(&v));
            assert!(best * best <= val * val + 1e-12);
        }
    }

    #[test]
    fn generalized_eigenvalues_diagonal() {
        let e = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 6.0]]).unwrap();
        let ev = sorted_re(generalized_eigenvalues(&e, &ComplexMatrix::identity(2)).unwrap());
        assert!((ev[0] - c(2.0, 0.0)).norm() < 1e-14);
        assert!((ev[1] - c(6.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn generalized_eigenvalues_drops_infinite() {
        let e = ComplexMatrix::identity(2);
        let b = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        let ev = generalized_eigenvalues(&e, &b).unwrap();
        assert_eq!(ev.len(), 1);
        assert!((ev[0] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn companion_pencil_of_quadratic() {
        // λ² − 3λ + 2 = (λ − 1)(λ − 2), as the pencil [[3, -2],[1, 0]] − λ I
        let e = ComplexMatrix::from_real_rows(&[&[3.0, -2.0], &[1.0, 0.0]]).unwrap();
        let ev = sorted_re(generalized_eigenvalues(&e, &ComplexMatrix::identity(2)).unwrap());
        assert!((ev[0] - c(1.0, 0.0)).norm() < 1e-13);
        assert!((ev[1] - c(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn generalized_eigenvalues_dimension_mismatch() {
        let e = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(
            generalized_eigenvalues(&e, &b),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn similarity_pencil_recovers_spectrum() {
        // E = X D Y, B = X Y has eigenvalues D.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = ComplexMatrix::from_fn(5, 5, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let y = ComplexMatrix::from_fn(5, 5, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let d: Vec<Complex64> = (0..5).map(|i| c(i as f64 - 2.0, 0.5 * i as f64)).collect();
        let e = x.matmul(&ComplexMatrix::from_diagonal(&d)).matmul(&y);
        let b = x.matmul(&y);
        let ev = generalized_eigenvalues(&e, &b).unwrap();
        for target in &d {
            assert!(ev.iter().any(|z| (z - target).norm() < 1e-10));
        }
    }
}
