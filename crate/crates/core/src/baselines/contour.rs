use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nep::resolvent::complex_gaussian_vector;
use crate::nep::MatrixFunction;
use crate::numerics::{lu_factor, thin_svd, ComplexMatrix};

pub const MIN_CONTOUR_POINTS: usize = 8;

/// Default SVD rank threshold relative to the largest singular value.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Circle `|z − center| = radius` discretized by `n_points` equispaced nodes
/// for the trapezoidal rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub center: Complex64,
    pub radius: f64,
    pub n_points: usize,
}

impl Contour {
    pub fn circle(center: Complex64, radius: f64, n_points: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite())
            || !(center.re.is_finite() && center.im.is_finite())
        {
            return Err(Error::InvalidInput(format!(
                "contour needs a finite center and positive radius, got {center}, {radius}"
            )));
        }
        if n_points < MIN_CONTOUR_POINTS {
            return Err(Error::InvalidInput(format!(
                "contour needs at least {MIN_CONTOUR_POINTS} points, got {n_points}"
            )));
        }
        Ok(Self {
            center,
            radius,
            n_points,
        })
    }

    pub fn with_points(&self, n_points: usize) -> Result<Self> {
        Self::circle(self.center, self.radius, n_points)
    }

    /// Nodes `ζ_j = exp(2πij/N)` on the unit circle.
    pub fn unit_nodes(&self) -> Vec<Complex64> {
        (0..self.n_points)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / self.n_points as f64))
            .collect()
    }

    /// Nodes `z_j = center + radius ζ_j`.
    pub fn points(&self) -> Vec<Complex64> {
        self.unit_nodes()
            .into_iter()
            .map(|w| self.from_unit(w))
            .collect()
    }

    pub fn to_unit(&self, z: Complex64) -> Complex64 {
        (z - self.center) / self.radius
    }

    pub fn from_unit(&self, w: Complex64) -> Complex64 {
        self.center + self.radius * w
    }

    /// Strict interior test.
    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() < self.radius
    }
}

/// Trapezoidal moments `M_p = (1/2πi)∮ ζ^p X dζ` in the normalized variable
/// `ζ = (z − center)/radius`, for `p = 0..count`.
#[derive(Clone, Debug)]
pub struct MomentData {
    /// Number of probe columns.
    pub probes: usize,
    pub moments: Vec<ComplexMatrix>,
    pub contour: Contour,
}

/// Moments of the samples `X(z_j)` taken at [`Contour::points`].
pub fn trapezoid_moments(
    contour: &Contour,
    samples: &[ComplexMatrix],
    count: usize,
) -> Result<MomentData> {
    if samples.len() != contour.n_points {
        return Err(Error::Dimension(format!(
            "{} samples for a contour with {} points",
            samples.len(),
            contour.n_points
        )));
    }
    let (r, c) = (samples[0].rows(), samples[0].cols());
    let nodes = contour.unit_nodes();
    let inv_n = Complex64::new(1.0 / contour.n_points as f64, 0.0);
    let moments = (0..count)
        .map(|p| {
            let mut acc = ComplexMatrix::zeros(r, c);
            for (x, w) in samples.iter().zip(&nodes) {
                acc = acc.add_scaled(x, w.powu(p as u32 + 1) * inv_n);
            }
            acc
        })
        .collect();
    Ok(MomentData {
        probes: c,
        moments,
        contour: *contour,
    })
}

/// Probe blocks `U`, `V` (each `d x L`) drawn from a ChaCha8 stream: the
/// columns of `U` first, then those of `V`. For `L = 1` these are the vectors
/// of the scalarized resolvent with the same seed.
pub fn random_probes(d: usize, l: usize, seed: u64) -> (ComplexMatrix, ComplexMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        let cols: Vec<Vec<Complex64>> = (0..l)
            .map(|_| complex_gaussian_vector(&mut rng, d))
            .collect();
        ComplexMatrix::from_fn(d, l, |i, j| cols[j][i])
    };
    let u = draw();
    let v = draw();
    (u, v)
}

/// `F(z_j)⁻¹ V` at every contour point, solved concurrently.
pub fn resolvent_solves(
    f: &dyn MatrixFunction,
    contour: &Contour,
    v: &ComplexMatrix,
) -> Result<Vec<ComplexMatrix>> {
    if v.rows() != f.dim() {
        return Err(Error::Dimension(format!(
            "probe block has {} rows, expected {}",
            v.rows(),
            f.dim()
        )));
    }
    let cols: Vec<Vec<Complex64>> = (0..v.cols()).map(|j| v.column(j)).collect();
    contour
        .points()
        .par_iter()
        .map(|&z| {
            let lu = lu_factor(&f.eval(z)?)?;
            let x = cols
                .iter()
                .map(|b| lu.solve(b))
                .collect::<Result<Vec<_>>>()?;
            Ok(ComplexMatrix::from_fn(v.rows(), v.cols(), |i, j| x[j][i]))
        })
        .collect()
}

/// Numerical rank under a relative threshold, and the ratio between the last
/// kept and first dropped singular value (infinite when nothing is dropped).
pub(crate) fn rank_and_gap(singular_values: &[f64], rank_tol: f64) -> (usize, f64) {
    let top = singular_values.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return (0, f64::INFINITY);
    }
    let rank = singular_values
        .iter()
        .take_while(|s| **s > rank_tol * top)
        .count();
    let gap = match singular_values.get(rank) {
        Some(next) if rank > 0 => singular_values[rank - 1] / next,
        _ => f64::INFINITY,
    };
    (rank, gap)
}

/// Eigenvalues of the rank-`r` reduction `U_r^H H1 W_r Σ_r⁻¹` of the pencil
/// `(H1, H0)` with `H0 = U Σ W^H`, mapped back from the normalized variable
/// and restricted to the contour interior.
pub(crate) fn reduced_pencil_eigenvalues(
    h0: &ComplexMatrix,
    h1: &ComplexMatrix,
    rank_tol: f64,
    contour: &Contour,
) -> Result<(Vec<Complex64>, Vec<f64>, usize)> {
    let svd = thin_svd(h0)?;
    let (rank, _) = rank_and_gap(&svd.singular_values, rank_tol);
    if rank == 0 {
        return Ok((Vec::new(), svd.singular_values, 0));
    }
    let ur = ComplexMatrix::from_fn(svd.u.rows(), rank, |i, j| svd.u[(i, j)]);
    let wr = ComplexMatrix::from_fn(svd.v.rows(), rank, |i, j| svd.v[(i, j)]);
    let mut b = ur.adjoint().matmul(h1).matmul(&wr);
    for j in 0..rank {
        let s = 1.0 / svd.singular_values[j];
        for i in 0..rank {
            b[(i, j)] *= s;
        }
    }
    let mut inside: Vec<Complex64> = crate::numerics::eigenvalues(&b)?
        .into_iter()
        .map(|w| contour.from_unit(w))
        .filter(|z| contour.contains(*z))
        .collect();
    inside.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok((inside, svd.singular_values, rank))
}
