use super::contour::{
    random_probes, rank_and_gap, reduced_pencil_eigenvalues, resolvent_solves, trapezoid_moments,
    Contour,
};
use super::ContourEigenvalues;
use crate::error::{Error, Result};
use crate::nep::MatrixFunction;
use crate::numerics::{thin_svd, ComplexMatrix};

/// Upper bound on the number `P` of Hankel block rows.
pub const MAX_HANKEL_BLOCKS: usize = 16;

/// Minimum ratio between the last kept and first dropped singular value for
/// the rank decision to count as clear.
pub const RANK_GAP_RATIO: f64 = 1e3;

/// Block Sakurai–Sugiura method on `U^H F(z)⁻¹ V` with random `d x L` probes.
/// With `L = 1` and the same seed this uses exactly the samples of the
/// scalarized resolvent. `p = None` doubles `P` from 1 until the rank of the
/// Hankel matrix stops changing (at most [`MAX_HANKEL_BLOCKS`]).
pub fn block_ss(
    f: &dyn MatrixFunction,
    contour: &Contour,
    l: usize,
    p: Option<usize>,
    rank_tol: f64,
    seed: u64,
) -> Result<ContourEigenvalues> {
    if l == 0 {
        return Err(Error::InvalidInput(
            "block SS needs at least one probe column".into(),
        ));
    }
    let (u, v) = random_probes(f.dim(), l, seed);
    let uh = u.adjoint();
    let samples: Vec<ComplexMatrix> = resolvent_solves(f, contour, &v)?
        .iter()
        .map(|x| uh.matmul(x))
        .collect();
    block_ss_from_samples(contour, &samples, p, rank_tol)
}

/// Block SS from precomputed `L x L` samples at [`Contour::points`].
pub fn block_ss_from_samples(
    contour: &Contour,
    samples: &[ComplexMatrix],
    p: Option<usize>,
    rank_tol: f64,
) -> Result<ContourEigenvalues> {
    if !(rank_tol > 0.0 && rank_tol < 1.0) {
        return Err(Error::InvalidInput(format!(
            "rank tolerance must lie in (0, 1), got {rank_tol}"
        )));
    }
    let cap = MAX_HANKEL_BLOCKS.min(contour.n_points / 4).max(1);
    let (p, stabilized) = match p {
        Some(0) => return Err(Error::InvalidInput("block SS needs P >= 1".into())),
        Some(p) if 2 * p >= contour.n_points => {
            return Err(Error::InvalidInput(format!(
                "2P = {} moments need more than {} contour points",
                2 * p,
                contour.n_points
            )))
        }
        Some(p) => (p, true),
        None => choose_blocks(contour, samples, rank_tol, cap)?,
    };
    let data = trapezoid_moments(contour, samples, 2 * p)?;
    let (h0, h1) = hankel_pair(&data.moments, p);
    let (eigenvalues, singular_values, rank) =
        reduced_pencil_eigenvalues(&h0, &h1, rank_tol, contour)?;
    let l = data.probes;
    let (_, gap) = rank_and_gap(&singular_values, rank_tol);
    let warning = if rank == p * l {
        Some(format!(
            "Hankel matrix has full rank {rank} (P = {p}, L = {l}); the contour may hold more eigenvalues"
        ))
    } else if !stabilized {
        Some(format!("rank did not stabilize before P = {p}"))
    } else if gap < RANK_GAP_RATIO {
        Some(format!(
            "no clear singular-value gap at rank {rank} (ratio {gap:.2e})"
        ))
    } else {
        None
    };
    if let Some(w) = &warning {
        log::warn!("block SS: {w}");
    }
    Ok(ContourEigenvalues {
        eigenvalues,
        singular_values,
        rank,
        moments: 2 * p,
        warning,
    })
}

/// Doubles `P` until the Hankel rank repeats; returns the smaller `P` of the
/// agreeing pair unless its Hankel matrix has full rank.
fn choose_blocks(
    contour: &Contour,
    samples: &[ComplexMatrix],
    rank_tol: f64,
    cap: usize,
) -> Result<(usize, bool)> {
    let data = trapezoid_moments(contour, samples, 2 * cap)?;
    let mut prev: Option<(usize, usize)> = None;
    let mut p = 1;
    loop {
        let (h0, _) = hankel_pair(&data.moments[..2 * p], p);
        let (rank, _) = rank_and_gap(&thin_svd(&h0)?.singular_values, rank_tol);
        if let Some((pp, pr)) = prev {
            if pr == rank {
                let l = samples[0].rows();
                return Ok((if pr < pp * l { pp } else { p }, true));
            }
        }
        if 2 * p > cap {
            return Ok((p, false));
        }
        prev = Some((p, rank));
        p *= 2;
    }
}

/// Block Hankel matrices `H0 = [M_{i+j}]`, `H1 = [M_{i+j+1}]`, `0 <= i, j < p`.
fn hankel_pair(moments: &[ComplexMatrix], p: usize) -> (ComplexMatrix, ComplexMatrix) {
    let l = moments[0].rows();
    let build = |shift: usize| {
        ComplexMatrix::from_fn(p * l, p * l, |r, c| {
            moments[r / l + c / l + shift][(r % l, c % l)]
        })
    };
    (build(0), build(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nep::diagonal_shift;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar_samples(contour: &Contour, s: impl Fn(Complex64) -> Complex64) -> Vec<ComplexMatrix> {
        contour
            .points()
            .iter()
            .map(|z| ComplexMatrix::from_diagonal(&[s(*z)]))
            .collect()
    }

    #[test]
    fn single_pole() {
        let contour = Contour::circle(c(0.0, 0.0), 1.0, 32).unwrap();
        let a = c(0.2, 0.1);
        let out = block_ss_from_samples(
            &contour,
            &scalar_samples(&contour, |z| 2.0 / (z - a)),
            Some(1),
            1e-10,
        )
        .unwrap();
        assert_eq!(out.eigenvalues.len(), 1);
        assert!((out.eigenvalues[0] - a).norm() < 1e-13);
    }

    #[test]
    fn two_poles_from_a_scalar() {
        // the third pole lies outside and only contributes aliasing
        let contour = Contour::circle(c(3.0, -1.5), 1.0, 64).unwrap();
        let (a, b, far) = (c(2.6, -1.2), c(3.4, -1.9), c(6.0, 0.0));
        let s = move |z: Complex64| 1.5 / (z - a) + c(0.0, -0.7) / (z - b) + 1.0 / (z - far);
        let out =
            block_ss_from_samples(&contour, &scalar_samples(&contour, s), Some(2), 1e-10).unwrap();
        assert_eq!(out.eigenvalues.len(), 2, "{out:?}");
        assert!((out.eigenvalues[0] - a).norm() < 1e-10);
        assert!((out.eigenvalues[1] - b).norm() < 1e-10);
        let auto =
            block_ss_from_samples(&contour, &scalar_samples(&contour, s), None, 1e-10).unwrap();
        assert_eq!(auto.rank, 2);
        assert_eq!(auto.moments, 8);
        assert!(auto.warning.is_none(), "{:?}", auto.warning);
    }

    #[test]
    fn too_few_blocks_warns() {
        let contour = Contour::circle(c(0.0, 0.0), 1.0, 32).unwrap();
        let s = |z: Complex64| 1.0 / (z - 0.3) + 1.0 / (z + 0.4);
        let out =
            block_ss_from_samples(&contour, &scalar_samples(&contour, s), Some(1), 1e-10).unwrap();
        assert!(out.warning.is_some());
    }

    #[test]
    fn matrix_function_with_block_probes() {
        let contour = Contour::circle(c(3.0, -1.5), 1.0, 48).unwrap();
        let inside = [c(2.5, -1.5), c(3.2, -1.1), c(3.1, -2.0)];
        let f = diagonal_shift(&[inside[0], inside[1], inside[2], c(0.0, 0.0), c(6.0, 1.0)]);
        for l in [1, 2] {
            let out = block_ss(&f, &contour, l, None, 1e-10, 9).unwrap();
            assert_eq!(out.eigenvalues.len(), 3, "L = {l}: {out:?}");
            for z in inside {
                assert!(
                    out.eigenvalues.iter().any(|e| (e - z).norm() < 1e-9),
                    "L = {l}: {z}"
                );
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let contour = Contour::circle(c(0.0, 0.0), 1.0, 16).unwrap();
        let samples = scalar_samples(&contour, |z| 1.0 / z);
        assert!(block_ss_from_samples(&contour, &samples, Some(0), 1e-10).is_err());
        assert!(block_ss_from_samples(&contour, &samples, Some(8), 1e-10).is_err());
        assert!(block_ss_from_samples(&contour, &samples, Some(1), 2.0).is_err());
    }
}
