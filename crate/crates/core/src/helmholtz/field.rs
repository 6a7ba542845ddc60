use std::f64::consts::PI;

use num_complex::Complex64;

use super::geometry::{Geometry, Point};
use super::operator::Discretization;
use crate::error::{Error, Result};
use crate::numerics::bessel::hankel1_0;

/// Field value with a flag for points inside the near-curve exclusion band.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldValue {
    pub value: Complex64,
    pub low_accuracy: bool,
}

/// Evaluates the single-layer potential with density `density` (nodal values
/// in the convention of [`Discretization`]) at each grid point.
///
/// Points within one node spacing (measured in parameter-induced arclength)
/// of a node are flagged: plain quadrature loses accuracy there.
pub fn field_eval(
    geometry: &Geometry,
    k: Complex64,
    density: &[Complex64],
    grid: &[Point],
) -> Result<Vec<FieldValue>> {
    let disc = Discretization::new(geometry, density.len())?;
    field_eval_with(&disc, k, density, grid)
}

pub fn field_eval_with(
    disc: &Discretization,
    k: Complex64,
    density: &[Complex64],
    grid: &[Point],
) -> Result<Vec<FieldValue>> {
    if density.len() != disc.n() {
        return Err(Error::Dimension(format!(
            "density has length {}, expected {}",
            density.len(),
            disc.n()
        )));
    }
    if k == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidInput("wavenumber k must be nonzero".into()));
    }
    let n = disc.n() as f64;
    let max_speed = disc.speeds().iter().cloned().fold(0.0, f64::max);
    let band = 2.0 * PI / n * max_speed;
    let weighted: Vec<Complex64> = density
        .iter()
        .zip(disc.smooth_quadrature_weights())
        .map(|(d, q)| d * q * Complex64::new(0.0, 0.25))
        .collect();
    Ok(grid
        .iter()
        .map(|x| {
            let mut value = Complex64::new(0.0, 0.0);
            let mut nearest = f64::INFINITY;
            for (p, w) in disc.points().iter().zip(&weighted) {
                let r = (x[0] - p[0]).hypot(x[1] - p[1]);
                nearest = nearest.min(r);
                if r > 0.0 {
                    value += hankel1_0(k * r) * w;
                }
            }
            FieldValue {
                value,
                low_accuracy: nearest < band,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::helmholtz::geometry::ClosedCurve;
    use crate::numerics::bessel::j0;

    #[test]
    fn zero_density_gives_zero_field() {
        let g = Geometry::Closed(ClosedCurve::Kite);
        let out = field_eval(
            &g,
            Complex64::new(2.0, 0.0),
            &vec![Complex64::new(0.0, 0.0); 32],
            &[[3.0, 1.0]],
        )
        .unwrap();
        assert_eq!(out[0].value, Complex64::new(0.0, 0.0));
        assert!(!out[0].low_accuracy);
    }

    #[test]
    fn constant_density_on_circle() {
        let g = Geometry::Closed(ClosedCurve::unit_circle());
        let k = Complex64::new(3.7, 0.0);
        let grid = [[2.5, 0.0], [0.0, -4.0], [1.5, 1.5], [0.3, 0.1]];
        let out = field_eval(&g, k, &vec![Complex64::new(1.0, 0.0); 128], &grid).unwrap();
        for (x, f) in grid.iter().zip(&out) {
            let r = x[0].hypot(x[1]);
            let exact = if r > 1.0 {
                Complex64::new(0.0, PI / 2.0) * j0(k) * hankel1_0(k * r)
            } else {
                Complex64::new(0.0, PI / 2.0) * hankel1_0(k) * j0(k * r)
            };
            assert!(
                (f.value - exact).norm() < 1e-9,
                "{x:?}: {} vs {exact}",
                f.value
            );
            assert!(!f.low_accuracy);
        }
    }

    #[test]
    fn near_curve_points_are_flagged() {
        let g = Geometry::Closed(ClosedCurve::unit_circle());
        let out = field_eval(
            &g,
            Complex64::new(1.0, 0.0),
            &vec![Complex64::new(1.0, 0.0); 64],
            &[[1.01, 0.0]],
        )
        .unwrap();
        assert!(out[0].low_accuracy);
    }
}
