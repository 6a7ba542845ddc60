use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::geometry::{ClosedCurve, Geometry, OpenArc, Point};
use crate::error::{Error, Result};
use crate::nep::MatrixFunction;
use crate::numerics::bessel::{j0_y0, EULER_GAMMA};
use crate::numerics::ComplexMatrix;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which boundary-value problem a single-layer NEP is meant to solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    /// Dirichlet eigenvalues inside a closed curve (real poles).
    Interior,
    /// Scattering resonances outside a closed curve (poles with Im k < 0).
    Exterior,
    /// Resonances of a cavity with an aperture (poles with Im k < 0).
    OpenArc,
}

impl ProblemKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProblemKind::Interior => "interior",
            ProblemKind::Exterior => "exterior",
            ProblemKind::OpenArc => "open-arc",
        }
    }
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interior" => Ok(ProblemKind::Interior),
            "exterior" => Ok(ProblemKind::Exterior),
            "open-arc" | "open_arc" => Ok(ProblemKind::OpenArc),
            _ => Err(Error::InvalidInput(format!(
                "unknown problem kind '{s}' (expected interior, exterior or open-arc)"
            ))),
        }
    }
}

/// Nyström matrix of the single-layer operator at one wavenumber.
#[derive(Clone, Debug)]
pub struct DiscretizedOperator {
    pub geometry: Geometry,
    pub n: usize,
    pub k: Complex64,
    pub matrix: ComplexMatrix,
}

/// Geometry-dependent, `k`-independent part of a Nyström discretization.
///
/// Closed curves use nodes `t_j = 2πj/n`; open arcs use `t_j = cos σ_j`,
/// `σ_j = (2j+1)π/(2n)`, with unknowns the nodal values of the smooth factor
/// `φ = ψ·√(1−t²)`.
#[derive(Clone, Debug)]
pub struct Discretization {
    geometry: Geometry,
    n: usize,
    points: Vec<Point>,
    speeds: Vec<f64>,
    /// Pairwise node distances, row-major.
    distances: Vec<f64>,
    /// Log-singularity product weights, row-major.
    log_weights: Vec<f64>,
    /// The logarithm the kernel is split against, row-major (diagonal unused).
    log_factor: Vec<f64>,
    /// Weight of the smooth quadrature rule in the node parameter.
    smooth_weight: f64,
    /// Coefficient `a` in `M₁ = a·J₀(kR)·|r'|`.
    log_coefficient: f64,
}

fn validate_k(k: Complex64) -> Result<()> {
    if k == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidInput("wavenumber k must be nonzero".into()));
    }
    if !(k.re.is_finite() && k.im.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite wavenumber {k}")));
    }
    Ok(())
}

impl Discretization {
    pub fn new(geometry: &Geometry, n: usize) -> Result<Self> {
        match geometry {
            Geometry::Closed(c) => Self::closed(c, n),
            Geometry::Open(a) => Self::open(a, n),
        }
    }

    fn closed(curve: &ClosedCurve, n: usize) -> Result<Self> {
        if n < 8 || n % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "closed-curve discretization needs even n >= 8, got {n}"
            )));
        }
        let nodes: Vec<f64> = (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect();
        let points: Vec<Point> = nodes.iter().map(|&t| curve.point(t)).collect();
        let speeds: Vec<f64> = nodes.iter().map(|&t| curve.speed(t)).collect();
        let half = n / 2;
        let nf = n as f64;
        // weights of ∫ ln(4 sin²((t−τ)/2)) f(τ) dτ at offset d = i − j
        let by_offset: Vec<f64> = (0..n)
            .map(|d| {
                let x = 2.0 * PI * d as f64 / nf;
                let sum: f64 = (1..half).map(|m| (m as f64 * x).cos() / m as f64).sum();
                let alt = if d % 2 == 0 { 1.0 } else { -1.0 };
                -4.0 * PI / nf * sum - 4.0 * PI / (nf * nf) * alt
            })
            .collect();
        let log_by_offset: Vec<f64> = (0..n)
            .map(|d| {
                let s = (PI * d as f64 / nf).sin();
                (4.0 * s * s).ln()
            })
            .collect();
        let mut log_weights = vec![0.0; n * n];
        let mut log_factor = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let d = (i + n - j) % n;
                log_weights[i * n + j] = by_offset[d];
                log_factor[i * n + j] = log_by_offset[d];
            }
        }
        Ok(Self {
            geometry: Geometry::Closed(curve.clone()),
            n,
            distances: pairwise_distances(&points),
            points,
            speeds,
            log_weights,
            log_factor,
            smooth_weight: 2.0 * PI / nf,
            log_coefficient: -1.0 / (4.0 * PI),
        })
    }

    fn open(arc: &OpenArc, n: usize) -> Result<Self> {
        if n < 8 {
            return Err(Error::InvalidInput(format!(
                "open-arc discretization needs n >= 8, got {n}"
            )));
        }
        let nf = n as f64;
        let sigma: Vec<f64> = (0..n)
            .map(|j| (2 * j + 1) as f64 * PI / (2.0 * nf))
            .collect();
        let points: Vec<Point> = sigma.iter().map(|&s| arc.point(s.cos())).collect();
        let speeds: Vec<f64> = sigma.iter().map(|&s| arc.speed(s.cos())).collect();
        // cos(m σ_j) / √m, so that W = −(π/n)(ln 2 + 2 CᵀC)
        let mut c = vec![0.0; (n - 1) * n];
        for m in 1..n {
            let scale = 1.0 / (m as f64).sqrt();
            for (j, s) in sigma.iter().enumerate() {
                c[(m - 1) * n + j] = (m as f64 * s).cos() * scale;
            }
        }
        let mut log_weights = vec![0.0; n * n];
        let mut log_factor = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let dot: f64 = (0..n - 1).map(|m| c[m * n + i] * c[m * n + j]).sum();
                let w = -PI / nf * (LN_2 + 2.0 * dot);
                log_weights[i * n + j] = w;
                log_weights[j * n + i] = w;
                if i != j {
                    // cos a − cos b = −2 sin((a+b)/2) sin((a−b)/2)
                    let l = (2.0
                        * (0.5 * (sigma[i] + sigma[j])).sin()
                        * (0.5 * (sigma[i] - sigma[j])).sin())
                    .abs()
                    .ln();
                    log_factor[i * n + j] = l;
                    log_factor[j * n + i] = l;
                }
            }
        }
        Ok(Self {
            geometry: Geometry::Open(arc.clone()),
            n,
            distances: pairwise_distances(&points),
            points,
            speeds,
            log_weights,
            log_factor,
            smooth_weight: PI / nf,
            log_coefficient: -1.0 / (2.0 * PI),
        })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn speeds(&self) -> &[f64] {
        &self.speeds
    }

    /// Weights `q_j` such that `Σ q_j g(r_j) ψ_j` approximates `∫ g ψ ds`
    /// for smooth `g`.
    pub fn smooth_quadrature_weights(&self) -> Vec<f64> {
        self.speeds.iter().map(|s| s * self.smooth_weight).collect()
    }

    /// Nyström matrix at wavenumber `k`.
    pub fn assemble(&self, k: Complex64) -> Result<ComplexMatrix> {
        validate_k(k)?;
        let n = self.n;
        let a = self.log_coefficient;
        let w = self.smooth_weight;
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            let s = self.speeds[i];
            let diag_smooth =
                I * 0.25 - EULER_GAMMA / (2.0 * PI) - (k * (s / 2.0)).ln() / (2.0 * PI);
            m.row_mut(i)[i] = (self.log_weights[i * n + i] * a + diag_smooth * w) * s;
            for j in i + 1..n {
                let (j0, y0) = j0_y0(k * self.distances[i * n + j]);
                let hankel = j0 + I * y0;
                let m1 = j0 * a;
                let smooth = hankel * I * 0.25 - m1 * self.log_factor[i * n + j];
                let b = m1 * self.log_weights[i * n + j] + smooth * w;
                m.row_mut(i)[j] = b * self.speeds[j];
                m.row_mut(j)[i] = b * s;
            }
        }
        if !m.is_finite() {
            return Err(Error::InvalidInput(format!(
                "operator at k = {k} has non-finite entries"
            )));
        }
        Ok(m)
    }

    pub fn operator(&self, k: Complex64) -> Result<DiscretizedOperator> {
        Ok(DiscretizedOperator {
            geometry: self.geometry.clone(),
            n: self.n,
            k,
            matrix: self.assemble(k)?,
        })
    }
}

fn pairwise_distances(points: &[Point]) -> Vec<f64> {
    let n = points.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            d[i * n + j] = (points[i][0] - points[j][0]).hypot(points[i][1] - points[j][1]);
        }
    }
    d
}

/// Single-layer operator on a closed curve with `n` equispaced nodes.
pub fn closed_slp(curve: &ClosedCurve, k: Complex64, n: usize) -> Result<DiscretizedOperator> {
    validate_k(k)?;
    Discretization::closed(curve, n)?.operator(k)
}

/// Single-layer operator on an open arc with `n` Chebyshev-angle nodes.
pub fn open_slp(arc: &OpenArc, k: Complex64, n: usize) -> Result<DiscretizedOperator> {
    validate_k(k)?;
    Discretization::open(arc, n)?.operator(k)
}

/// Smallest discretization with at least 16 nodes per wavelength at `|k| = k_max`,
/// rounded up to a multiple of 8 and never below 64.
pub fn default_resolution(geometry: &Geometry, k_max: f64) -> usize {
    let n = (16.0 * geometry.length() * k_max.abs() / (2.0 * PI)).ceil() as usize;
    n.max(64).div_ceil(8) * 8
}

/// Single-layer boundary-integral NEP `k ↦ F_k`.
#[derive(Clone, Debug)]
pub struct HelmholtzNep {
    kind: ProblemKind,
    discretization: Discretization,
}

impl HelmholtzNep {
    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn discretization(&self) -> &Discretization {
        &self.discretization
    }

    pub fn geometry(&self) -> &Geometry {
        &self.discretization.geometry
    }

    /// Values of the single-layer potential at the nodes, `F_k ψ`.
    pub fn boundary_trace(&self, k: Complex64, density: &[Complex64]) -> Result<Vec<Complex64>> {
        if density.len() != self.discretization.n {
            return Err(Error::Dimension(format!(
                "density has length {}, expected {}",
                density.len(),
                self.discretization.n
            )));
        }
        Ok(self.discretization.assemble(k)?.mul_vec(density))
    }
}

impl MatrixFunction for HelmholtzNep {
    fn dim(&self) -> usize {
        self.discretization.n
    }

    fn eval(&self, k: Complex64) -> Result<ComplexMatrix> {
        self.discretization.assemble(k)
    }

    fn analyticity_domain(&self) -> Option<&str> {
        Some("C minus the non-positive real axis")
    }
}

/// Builds the single-layer NEP for `geometry`; closed curves pair with
/// interior or exterior problems, open arcs with the open-arc problem.
pub fn make_nep(geometry: &Geometry, kind: ProblemKind, n: usize) -> Result<HelmholtzNep> {
    match (geometry, kind) {
        (Geometry::Closed(_), ProblemKind::Interior | ProblemKind::Exterior)
        | (Geometry::Open(_), ProblemKind::OpenArc) => Ok(HelmholtzNep {
            kind,
            discretization: Discretization::new(geometry, n)?,
        }),
        _ => Err(Error::InvalidInput(format!(
            "geometry '{}' does not support a {kind:?} problem",
            geometry.name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::bessel::{hankel1, jn};
    use crate::numerics::lu_factor;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle_eigenvalue(m: i32, k: Complex64) -> Complex64 {
        let m = m.unsigned_abs();
        I * (PI / 2.0) * jn(m, k) * hankel1(m, k)
    }

    #[test]
    fn circle_diagonalization() {
        let n = 256;
        let disc = Discretization::new(&Geometry::Closed(ClosedCurve::unit_circle()), n).unwrap();
        for k in [
            c(0.5, 0.0),
            c(1.3, 0.0),
            c(6.7, 0.0),
            c(15.2, 0.0),
            c(20.0, 0.0),
            c(3.0, -1.5),
        ] {
            let a = disc.assemble(k).unwrap();
            for m in -10..=10 {
                let mode: Vec<Complex64> = (0..n)
                    .map(|j| Complex64::from_polar(1.0, m as f64 * 2.0 * PI * j as f64 / n as f64))
                    .collect();
                let lambda = circle_eigenvalue(m, k);
                let image = a.mul_vec(&mode);
                let err = image
                    .iter()
                    .zip(&mode)
                    .map(|(x, e)| (x - lambda * e).norm())
                    .fold(0.0, f64::max);
                assert!(err < 1e-10, "k = {k}, m = {m}: error {err:e}");
            }
        }
    }

    #[test]
    fn circle_diagonalization_small_n() {
        let n = 64;
        let op = closed_slp(&ClosedCurve::unit_circle(), c(1.3, 0.0), n).unwrap();
        for m in -10..=10 {
            let mode: Vec<Complex64> = (0..n)
                .map(|j| Complex64::from_polar(1.0, m as f64 * 2.0 * PI * j as f64 / n as f64))
                .collect();
            let lambda = circle_eigenvalue(m, c(1.3, 0.0));
            let image = op.matrix.mul_vec(&mode);
            let err = image
                .iter()
                .zip(&mode)
                .map(|(x, e)| (x - lambda * e).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-11, "m = {m}: {err:e}");
        }
    }

    #[test]
    fn reciprocity() {
        for g in [
            Geometry::Closed(ClosedCurve::Kite),
            Geometry::Open(OpenArc::open_circle(0.4).unwrap()),
        ] {
            let disc = Discretization::new(&g, 48).unwrap();
            let a = disc.assemble(c(2.3, -0.4)).unwrap();
            let s = disc.speeds();
            let scale = a.max_abs();
            for i in 0..48 {
                for j in 0..48 {
                    let lhs = a.row(i)[j] / s[j];
                    let rhs = a.row(j)[i] / s[i];
                    assert!((lhs - rhs).norm() < 1e-12 * scale);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let circle = ClosedCurve::unit_circle();
        assert!(closed_slp(&circle, c(1.0, 0.0), 63).is_err());
        assert!(closed_slp(&circle, c(1.0, 0.0), 6).is_err());
        assert!(closed_slp(&circle, c(0.0, 0.0), 64).is_err());
        let arc = OpenArc::open_circle(0.3).unwrap();
        assert!(open_slp(&arc, c(0.0, 0.0), 64).is_err());
        assert!(open_slp(&arc, c(1.0, 0.0), 4).is_err());
        assert!(make_nep(&Geometry::Open(arc), ProblemKind::Interior, 32).is_err());
        assert!(make_nep(&Geometry::Closed(circle), ProblemKind::OpenArc, 32).is_err());
    }

    #[test]
    fn slit_self_convergence() {
        let g = Geometry::Open(OpenArc::slit([-1.0, 0.0], [1.0, 0.0]).unwrap());
        let integrals: Vec<Complex64> = [16, 32, 64]
            .iter()
            .map(|&n| {
                let d = Discretization::new(&g, n).unwrap();
                let a = d.assemble(c(1.0, 0.0)).unwrap();
                let phi = lu_factor(&a).unwrap().solve(&vec![c(1.0, 0.0); n]).unwrap();
                let q = d.smooth_quadrature_weights();
                phi.iter().zip(&q).map(|(p, w)| p * w).sum()
            })
            .collect();
        assert!(
            (integrals[2] - integrals[1]).norm() < 1e-10,
            "{integrals:?}"
        );
    }

    #[test]
    fn closed_self_convergence() {
        let g = Geometry::Closed(ClosedCurve::Kite);
        let k = c(3.1, 0.0);
        let integrals: Vec<Complex64> = [32, 64, 128]
            .iter()
            .map(|&n| {
                let d = Discretization::new(&g, n).unwrap();
                let a = d.assemble(k).unwrap();
                let rhs: Vec<Complex64> = d.points().iter().map(|p| (I * k * p[0]).exp()).collect();
                let psi = lu_factor(&a).unwrap().solve(&rhs).unwrap();
                let q = d.smooth_quadrature_weights();
                psi.iter().zip(&q).map(|(p, w)| p * w).sum()
            })
            .collect();
        let e1 = (integrals[1] - integrals[0]).norm();
        let e2 = (integrals[2] - integrals[1]).norm();
        assert!(e2 < 1e-10, "{e1:e} {e2:e}");
    }

    #[test]
    fn default_resolution_scales_with_k() {
        let g = Geometry::Closed(ClosedCurve::unit_circle());
        assert_eq!(default_resolution(&g, 1.0), 64);
        assert_eq!(default_resolution(&g, 25.0), 400);
    }
}
