use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::function::MatrixFunction;
use super::region::GuardBox;
use super::resolvent::ScalarizedResolvent;
use crate::aaa::{aaa_fit, SamplePoint};
use crate::error::{Error, Result};
use crate::numerics::{lu_factor, nullspace_from_lu, vec_norm, LuFactorization};

pub const DEFAULT_SECANT_TOL: f64 = 1e-12;
pub const DEFAULT_SECANT_MAX_ITERS: usize = 50;
pub const DEFAULT_LOCAL_RADIUS: f64 = 1e-5;
pub const DEFAULT_LOCAL_POINTS: usize = 4;

/// Consecutive step increases that count as divergence.
const GROWTH_LIMIT: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SecantStatus {
    Converged,
    MaxIterations,
    Diverged,
    LeftGuardBox,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecantOutcome {
    pub k: Complex64,
    /// `|Δk|` of every step taken.
    pub history: Vec<f64>,
    pub status: SecantStatus,
}

impl SecantOutcome {
    pub fn converged(&self) -> bool {
        self.status == SecantStatus::Converged
    }

    /// Last step size, floored at the resolution of `k` since a step that
    /// rounds to zero only bounds the error by an ulp.
    pub fn error_estimate(&self) -> f64 {
        let last = self.history.last().copied().unwrap_or(f64::INFINITY);
        last.max(f64::EPSILON * self.k.norm().max(1.0))
    }
}

enum Reciprocal {
    Value(Complex64),
    /// `F_k` is exactly singular, so `k` is an eigenvalue.
    AtPole,
}

fn reciprocal(s: &ScalarizedResolvent, k: Complex64) -> Result<Reciprocal> {
    match s.eval(k) {
        Ok(v) => Ok(Reciprocal::Value(1.0 / v)),
        Err(Error::Singular { .. }) => Ok(Reciprocal::AtPole),
        Err(e) => Err(e),
    }
}

/// Secant iteration on `g(k) = 1/S(k)` from `k0` and `k0 (1 + 1e-7) + 1e-9`,
/// stopping when `|Δk| <= tol * max(1, |k|)`.
pub fn secant_refine(
    s: &ScalarizedResolvent,
    k0: Complex64,
    max_iters: usize,
    tol: f64,
    guard: Option<&GuardBox>,
) -> Result<SecantOutcome> {
    if !(k0.re.is_finite() && k0.im.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "secant start {k0} is not finite"
        )));
    }
    let done = |k: Complex64, history: Vec<f64>, status| Ok(SecantOutcome { k, history, status });

    let mut k_prev = k0;
    let mut g_prev = match reciprocal(s, k_prev)? {
        Reciprocal::Value(g) => g,
        Reciprocal::AtPole => return done(k0, vec![0.0], SecantStatus::Converged),
    };
    let mut k_cur = k0 * (1.0 + 1e-7) + 1e-9;
    let mut g_cur = match reciprocal(s, k_cur)? {
        Reciprocal::Value(g) => g,
        Reciprocal::AtPole => return done(k_cur, vec![0.0], SecantStatus::Converged),
    };

    let mut history: Vec<f64> = Vec::new();
    let mut growth = 0;
    for _ in 0..max_iters {
        let denom = g_cur - g_prev;
        if denom == Complex64::new(0.0, 0.0) {
            // both points give the same value: either converged to rounding
            // level or stuck on a flat stretch
            let status = if g_cur.norm() == 0.0 {
                SecantStatus::Converged
            } else {
                SecantStatus::Diverged
            };
            if history.is_empty() {
                history.push((k_cur - k_prev).norm());
            }
            return done(k_cur, history, status);
        }
        let k_next = k_cur - g_cur * (k_cur - k_prev) / denom;
        let step = (k_next - k_cur).norm();
        if !step.is_finite() || !(k_next.re.is_finite() && k_next.im.is_finite()) {
            history.push(f64::INFINITY);
            return done(k_cur, history, SecantStatus::Diverged);
        }
        if history.last().is_some_and(|&last| step > last) {
            growth += 1;
        } else {
            growth = 0;
        }
        history.push(step);
        if guard.is_some_and(|g| !g.contains(k_next)) {
            return done(k_next, history, SecantStatus::LeftGuardBox);
        }
        if step <= tol * k_next.norm().max(1.0) {
            return done(k_next, history, SecantStatus::Converged);
        }
        if growth >= GROWTH_LIMIT {
            return done(k_next, history, SecantStatus::Diverged);
        }
        k_prev = k_cur;
        g_prev = g_cur;
        k_cur = k_next;
        g_cur = match reciprocal(s, k_cur)? {
            Reciprocal::Value(g) => g,
            Reciprocal::AtPole => {
                history.push(0.0);
                return done(k_cur, history, SecantStatus::Converged);
            }
        };
    }
    done(k_cur, history, SecantStatus::MaxIterations)
}

/// Runs exactly `iters` secant steps (or fewer if the iterate lands on a
/// pole), as used in convergence comparisons.
pub fn secant_fixed_steps(
    s: &ScalarizedResolvent,
    k0: Complex64,
    iters: usize,
) -> Result<Complex64> {
    Ok(secant_refine(s, k0, iters, 0.0, None)?.k)
}

/// Fits a degree-1 rational to `n_points` samples of `S` on a circle of
/// `radius` about `k0` and returns its pole.
pub fn local_aaa_refine(
    s: &ScalarizedResolvent,
    k0: Complex64,
    radius: f64,
    n_points: usize,
) -> Result<Complex64> {
    if !(radius > 0.0) {
        return Err(Error::InvalidInput(
            "local AAA radius must be positive".into(),
        ));
    }
    if n_points < 3 {
        return Err(Error::InvalidInput(
            "local AAA needs at least 3 points".into(),
        ));
    }
    let samples: Vec<SamplePoint> = (0..n_points)
        .map(|j| {
            let z = k0 + Complex64::from_polar(radius, 2.0 * PI * j as f64 / n_points as f64);
            s.eval(z).map(|f| SamplePoint::new(z, f))
        })
        .collect::<Result<_>>()?;
    let fit = aaa_fit(&samples, f64::MIN_POSITIVE, 1)?;
    let poles = fit.rational.poles_and_residues()?;
    poles
        .iter()
        .map(|p| p.pole)
        .filter(|p| (p - k0).norm() <= 10.0 * radius)
        .min_by(|a, b| (a - k0).norm().total_cmp(&(b - k0).norm()))
        .ok_or_else(|| {
            Error::Refinement(format!(
                "local fit has no pole within {} of {k0}",
                10.0 * radius
            ))
        })
}

/// Null vectors of `F_k` from its LU factorization.
pub fn eigenvectors(
    f: &dyn MatrixFunction,
    k: Complex64,
    pivot_tol: f64,
) -> Result<Vec<Vec<Complex64>>> {
    let lu = lu_factor(&f.eval(k)?)?;
    Ok(eigenvectors_from_lu(&lu, k, pivot_tol))
}

pub fn eigenvectors_from_lu(
    lu: &LuFactorization,
    k: Complex64,
    pivot_tol: f64,
) -> Vec<Vec<Complex64>> {
    let vs = nullspace_from_lu(lu, pivot_tol);
    if vs.is_empty() {
        let smallest = lu
            .pivot_magnitudes()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        log::warn!(
            "no pivot below {pivot_tol:e} relative at k = {k} (smallest relative pivot {:e}); refine k further",
            smallest / lu.max_pivot()
        );
    }
    vs
}

/// `‖F_k w‖ / (‖F_k‖_F ‖w‖)`.
pub fn eigenvector_residual(f: &dyn MatrixFunction, k: Complex64, w: &[Complex64]) -> Result<f64> {
    let m = f.eval(k)?;
    Ok(vec_norm(&m.mul_vec(w)) / (m.frobenius_norm() * vec_norm(w)))
}
