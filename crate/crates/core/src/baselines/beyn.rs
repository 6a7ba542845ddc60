use super::contour::{
    random_probes, rank_and_gap, reduced_pencil_eigenvalues, resolvent_solves, trapezoid_moments,
    Contour,
};
use super::ContourEigenvalues;
use crate::error::{Error, Result};
use crate::nep::MatrixFunction;
use crate::numerics::thin_svd;

/// Beyn's first integral method: moments `A_0`, `A_1` of `F(z)⁻¹V` for a
/// random `d x L` block `V`, an SVD rank test on `A_0` and the eigenvalues of
/// the compressed matrix that fall inside the contour.
///
/// Fails when `A_0` has full rank `L`, since then the contour may hold more
/// eigenvalues than the probe block can resolve.
pub fn beyn1(
    f: &dyn MatrixFunction,
    contour: &Contour,
    l: usize,
    rank_tol: f64,
    seed: u64,
) -> Result<ContourEigenvalues> {
    if l == 0 {
        return Err(Error::InvalidInput(
            "Beyn's method needs at least one probe column".into(),
        ));
    }
    if !(rank_tol > 0.0 && rank_tol < 1.0) {
        return Err(Error::InvalidInput(format!(
            "rank tolerance must lie in (0, 1), got {rank_tol}"
        )));
    }
    let (_, v) = random_probes(f.dim(), l, seed);
    let samples = resolvent_solves(f, contour, &v)?;
    let data = trapezoid_moments(contour, &samples, 2)?;
    let (a0, a1) = (&data.moments[0], &data.moments[1]);
    let (rank, _) = rank_and_gap(&thin_svd(a0)?.singular_values, rank_tol);
    if rank == l {
        return Err(Error::RankTest(format!(
            "A0 has full rank {l}; rerun with more probe columns (L > {l})"
        )));
    }
    let (eigenvalues, singular_values, rank) =
        reduced_pencil_eigenvalues(a0, a1, rank_tol, contour)?;
    Ok(ContourEigenvalues {
        eigenvalues,
        singular_values,
        rank,
        moments: 2,
        warning: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nep::{diagonal_shift, FnMatrixFunction};
    use crate::numerics::ComplexMatrix;
    use num_complex::Complex64;

    fn contour(n: usize) -> Contour {
        Contour::circle(Complex64::new(3.0, -1.5), 1.0, n).unwrap()
    }

    #[test]
    fn scaled_identity() {
        let c0 = Complex64::new(3.0, -1.5);
        let f = FnMatrixFunction::new(4, move |k| ComplexMatrix::identity(4).scale(k - c0));
        let out = beyn1(&f, &contour(32), 5, 1e-10, 1).unwrap();
        assert_eq!(out.rank, 4);
        for z in &out.eigenvalues {
            assert!((z - c0).norm() < 1e-12, "{z}");
        }
        // a four-fold eigenvalue saturates two probe columns
        assert!(matches!(
            beyn1(&f, &contour(32), 2, 1e-10, 1),
            Err(Error::RankTest(_))
        ));
    }

    #[test]
    fn only_interior_eigenvalues() {
        let a = Complex64::new(2.8, -1.2);
        let b = Complex64::new(5.0, 0.0);
        let f = diagonal_shift(&[a, b]);
        let out = beyn1(&f, &contour(32), 2, 1e-10, 3).unwrap();
        assert_eq!(out.eigenvalues.len(), 1);
        assert!((out.eigenvalues[0] - a).norm() < 1e-12);
    }

    #[test]
    fn rejects_bad_arguments() {
        let f = diagonal_shift(&[Complex64::new(3.0, -1.5)]);
        assert!(beyn1(&f, &contour(16), 0, 1e-10, 0).is_err());
        assert!(beyn1(&f, &contour(16), 1, 0.0, 0).is_err());
    }
}
