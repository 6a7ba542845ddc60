use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::helmholtz::{make_nep, Geometry, OpenArc, ProblemKind};
use crate::nep::{
    adaptive_search, secant_refine, ScalarizedResolvent, SearchOptions, SearchRegion,
};
use crate::numerics::{nullspace_from_lu, vec_norm, DEFAULT_PIVOT_TOL};

/// First positive zero of `J_1`, the closed-circle limit of both tracked modes.
pub const J1_FIRST_ZERO: f64 = 3.831705970207512;

/// Which of the two modes splitting off the double eigenvalue `j_{1,1}` to follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapMode {
    /// Density even under reflection across the gap's symmetry axis: the
    /// field peaks at the gap.
    Generic,
    /// Density odd under that reflection: the nodal line runs through the gap.
    Aligned,
}

impl std::str::FromStr for GapMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(GapMode::Generic),
            "aligned" => Ok(GapMode::Aligned),
            _ => Err(Error::InvalidInput(format!(
                "unknown mode '{s}' (expected generic or aligned)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GapStudyOptions {
    /// Nodes of the open-arc discretization.
    pub n: usize,
    pub seed: u64,
    pub k_limit: f64,
    pub secant_tol: f64,
    pub secant_max_iters: usize,
    /// Samples per side of the initial search rectangle.
    pub samples_per_side: usize,
}

impl Default for GapStudyOptions {
    fn default() -> Self {
        Self {
            n: 256,
            seed: 0,
            k_limit: J1_FIRST_ZERO,
            secant_tol: 1e-14,
            secant_max_iters: 60,
            samples_per_side: 32,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapPoint {
    pub theta: f64,
    pub k_re: f64,
    pub k_im: f64,
    pub error_estimate: f64,
}

impl GapPoint {
    pub fn k(&self) -> Complex64 {
        Complex64::new(self.k_re, self.k_im)
    }
}

/// Least-squares line `log y = slope·log x + intercept`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapStudy {
    pub mode: GapMode,
    pub k_limit: f64,
    pub points: Vec<GapPoint>,
    /// Fit of `|Re k − k_limit|` against `θ`.
    pub re_fit: SlopeFit,
    /// Fit of `|Im k|` against `θ`.
    pub im_fit: SlopeFit,
}

/// Fits `log y` against `log x`.
pub fn fit_loglog(x: &[f64], y: &[f64]) -> Result<SlopeFit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::InvalidInput(
            "log-log fit needs at least two paired points".into(),
        ));
    }
    if x.iter().chain(y).any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidInput(
            "log-log fit needs positive finite data".into(),
        ));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    fit_line(&lx, &ly)
}

/// Fits `log y` against `x`.
pub fn fit_semilogy(x: &[f64], y: &[f64]) -> Result<SlopeFit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::InvalidInput(
            "semilog fit needs at least two paired points".into(),
        ));
    }
    if x.iter().any(|v| !v.is_finite()) || y.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidInput(
            "semilog fit needs finite data and positive ordinates".into(),
        ));
    }
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    fit_line(x, &ly)
}

/// Least-squares line through `(lx, ly)`.
fn fit_line(lx: &[f64], ly: &[f64]) -> Result<SlopeFit> {
    let m = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = ly.iter().map(|b| (b - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidInput("fit needs distinct abscissae".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(SlopeFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
    })
}

fn resolvent(theta: f64, opts: &GapStudyOptions) -> Result<ScalarizedResolvent> {
    let geometry = Geometry::Open(OpenArc::open_circle(theta)?);
    let nep = make_nep(&geometry, ProblemKind::OpenArc, opts.n)?;
    Ok(ScalarizedResolvent::new(Arc::new(nep), opts.seed))
}

/// Parity of the approximate null vector of `F_k` under the reflection that
/// swaps node `j` with node `n − 1 − j`.
fn mode_of(s: &ScalarizedResolvent, k: Complex64) -> Result<GapMode> {
    let lu = s.factor(k)?;
    let x = match lu.solve(s.v()) {
        Ok(x) => x,
        Err(_) => nullspace_from_lu(&lu, DEFAULT_PIVOT_TOL)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Refinement(format!("no null vector at k = {k}")))?,
    };
    let n = x.len();
    let even: Vec<Complex64> = (0..n).map(|j| x[j] + x[n - 1 - j]).collect();
    let odd: Vec<Complex64> = (0..n).map(|j| x[j] - x[n - 1 - j]).collect();
    Ok(if vec_norm(&even) >= vec_norm(&odd) {
        GapMode::Generic
    } else {
        GapMode::Aligned
    })
}

fn initial_pole(theta: f64, mode: GapMode, opts: &GapStudyOptions) -> Result<(Complex64, f64)> {
    let s = resolvent(theta, opts)?;
    let k = opts.k_limit;
    let lo = Complex64::new(k - 0.5 * theta * theta - 0.05, -0.1 * theta * theta - 0.01);
    let hi = Complex64::new(k + 0.05, 0.01);
    let region = SearchRegion::rectangle(lo, hi, opts.samples_per_side)?;
    let search_opts = SearchOptions {
        secant_tol: opts.secant_tol,
        secant_max_iters: opts.secant_max_iters,
        ..SearchOptions::default()
    };
    let report = adaptive_search(&s, &region, &search_opts)?;
    let mut best: Option<(Complex64, f64)> = None;
    for r in report.confirmed() {
        if mode_of(&s, r.value)? != mode {
            continue;
        }
        let d = (r.value - k).norm();
        if best.is_none_or(|(b, _)| d < (b - k).norm()) {
            best = Some((r.value, r.error_estimate));
        }
    }
    best.ok_or_else(|| {
        Error::Refinement(format!(
            "no {mode:?} mode found near k = {k} for aperture {theta} ({} candidates)",
            report.records.len()
        ))
    })
}

/// Follows one mode of the open circle as the aperture shrinks and fits the
/// rates at which it approaches `k_limit`.
///
/// Each step predicts the pole from a power law through the previous two
/// (a `θ²` law at the first step), corrects with the secant method and
/// checks the parity of the null vector.
pub fn gap_study(thetas: &[f64], mode: GapMode, opts: &GapStudyOptions) -> Result<GapStudy> {
    if thetas.len() < 2 {
        return Err(Error::InvalidInput(
            "gap study needs at least two apertures".into(),
        ));
    }
    if thetas.iter().any(|t| !(*t > 0.0 && *t <= FRAC_PI_2)) {
        return Err(Error::InvalidInput("apertures must lie in (0, π/2]".into()));
    }
    if thetas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidInput(
            "apertures must be strictly decreasing".into(),
        ));
    }
    let k_limit = Complex64::new(opts.k_limit, 0.0);
    let (k0, err0) = initial_pole(thetas[0], mode, opts)?;
    log::info!("theta = {}: {mode:?} mode at {k0}", thetas[0]);
    let mut points = vec![GapPoint {
        theta: thetas[0],
        k_re: k0.re,
        k_im: k0.im,
        error_estimate: err0,
    }];
    for &theta in &thetas[1..] {
        let last = points[points.len() - 1];
        let exponent = match points.len() {
            1 => 2.0,
            m => {
                let prev = points[m - 2];
                let ratio = (last.k() - k_limit).norm() / (prev.k() - k_limit).norm();
                (ratio.ln() / (last.theta / prev.theta).ln()).clamp(1.0, 10.0)
            }
        };
        let predicted = k_limit + (last.k() - k_limit) * (theta / last.theta).powf(exponent);
        let s = resolvent(theta, opts)?;
        let outcome = secant_refine(&s, predicted, opts.secant_max_iters, opts.secant_tol, None)?;
        let trend = (predicted - last.k()).norm();
        let jump = (outcome.k - last.k()).norm();
        if !outcome.converged() {
            return Err(Error::Refinement(format!(
                "mode tracking lost the pole at aperture {theta}: secant {:?} from {predicted}",
                outcome.status
            )));
        }
        if jump > 10.0 * trend {
            return Err(Error::Refinement(format!(
                "mode tracking lost the pole at aperture {theta}: jump {jump:.3e} exceeds 10x trend {trend:.3e}"
            )));
        }
        let found = mode_of(&s, outcome.k)?;
        if found != mode {
            return Err(Error::Refinement(format!(
                "mode tracking lost the pole at aperture {theta}: converged to a {found:?} mode at {}",
                outcome.k
            )));
        }
        log::info!("theta = {theta}: {mode:?} mode at {}", outcome.k);
        points.push(GapPoint {
            theta,
            k_re: outcome.k.re,
            k_im: outcome.k.im,
            error_estimate: outcome.error_estimate(),
        });
    }
    let theta: Vec<f64> = points.iter().map(|p| p.theta).collect();
    let re: Vec<f64> = points
        .iter()
        .map(|p| (p.k_re - opts.k_limit).abs())
        .collect();
    let im: Vec<f64> = points.iter().map(|p| p.k_im.abs()).collect();
    Ok(GapStudy {
        mode,
        k_limit: opts.k_limit,
        re_fit: fit_loglog(&theta, &re)?,
        im_fit: fit_loglog(&theta, &im)?,
        points,
    })
}
