use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::beyn::beyn1;
use super::block_ss::block_ss;
use super::contour::{Contour, DEFAULT_RANK_TOL};
use crate::aaa::{aaa_fit, filter_spurious_poles, DEFAULT_MAX_DEGREE, DEFAULT_RESIDUE_TOL};
use crate::error::{Error, Result};
use crate::nep::refine::{DEFAULT_LOCAL_POINTS, DEFAULT_LOCAL_RADIUS};
use crate::nep::{
    local_aaa_refine, sample_resolvent, secant_fixed_steps, secant_refine, MatrixFunction,
    ScalarizedResolvent,
};

const SCREEN_SECANT_ITERS: usize = 30;
const SCREEN_SECANT_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    /// AAA fit of the scalarized resolvent sampled on the contour.
    Algorithm1,
    Beyn1,
    BlockSs,
}

impl Solver {
    pub const ALL: [Solver; 3] = [Solver::Algorithm1, Solver::Beyn1, Solver::BlockSs];

    pub fn name(&self) -> &'static str {
        match self {
            Solver::Algorithm1 => "algorithm1",
            Solver::Beyn1 => "beyn1",
            Solver::BlockSs => "block_ss",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Refinement {
    None,
    /// A fixed number of secant steps on `1/S`.
    Secant(usize),
    /// Pole of a degree-1 AAA fit on a small circle.
    LocalAaa,
}

/// A solver together with the refinement applied to its output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Method {
    pub solver: Solver,
    pub refinement: Refinement,
}

impl Method {
    pub fn new(solver: Solver, refinement: Refinement) -> Self {
        Self { solver, refinement }
    }
}

/// Labels such as `beyn1`, `block_ss+secant4`, `algorithm1+local_aaa`.
impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.refinement {
            Refinement::None => write!(f, "{}", self.solver.name()),
            Refinement::Secant(n) => write!(f, "{}+secant{n}", self.solver.name()),
            Refinement::LocalAaa => write!(f, "{}+local_aaa", self.solver.name()),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = s.split_once('+').map_or((s, None), |(h, t)| (h, Some(t)));
        let solver = Solver::ALL
            .into_iter()
            .find(|m| m.name() == head)
            .ok_or_else(|| Error::InvalidInput(format!("unknown method '{head}'")))?;
        let refinement = match tail {
            None => Refinement::None,
            Some("local_aaa") => Refinement::LocalAaa,
            Some(t) => match t.strip_prefix("secant").map(str::parse::<usize>) {
                Some(Ok(n)) if n > 0 => Refinement::Secant(n),
                _ => return Err(Error::InvalidInput(format!("unknown refinement '{t}'"))),
            },
        };
        Ok(Self { solver, refinement })
    }
}

#[derive(Clone, Debug)]
pub struct CompareOptions {
    /// Probe columns for Beyn's method.
    pub beyn_probes: usize,
    /// Probe columns for block SS; 1 reuses the scalarized resolvent data.
    pub block_probes: usize,
    /// Hankel block rows for block SS; `None` selects by rank doubling.
    pub hankel_blocks: Option<usize>,
    pub rank_tol: f64,
    pub aaa_rel_tol: f64,
    pub residue_tol: f64,
    pub seed: u64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            beyn_probes: 4,
            block_probes: 1,
            hankel_blocks: None,
            rank_tol: DEFAULT_RANK_TOL,
            aaa_rel_tol: 1e-13,
            residue_tol: DEFAULT_RESIDUE_TOL,
            seed: 0,
        }
    }
}

/// Basic search on a circular contour: poles inside the circle of an AAA fit
/// to `S` at the contour points.
pub fn algorithm1_contour(
    s: &ScalarizedResolvent,
    contour: &Contour,
    rel_tol: f64,
    residue_tol: f64,
) -> Result<Vec<Complex64>> {
    let batch = sample_resolvent(s, &contour.points());
    if batch.samples.len() < 2 {
        return Err(Error::InvalidInput(
            "too few finite resolvent samples on the contour".into(),
        ));
    }
    let max_degree = DEFAULT_MAX_DEGREE.min((batch.samples.len() - 1) / 2);
    let fit = aaa_fit(&batch.samples, rel_tol, max_degree)?;
    let pairs = fit.rational.poles_and_residues()?;
    let kept = filter_spurious_poles(&pairs, |z| contour.contains(z), residue_tol, fit.scale).kept;
    let mut poles: Vec<Complex64> = kept.into_iter().map(|p| p.pole).collect();
    poles.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(poles)
}

/// Keeps the poles from which a secant run converges to a point inside
/// `contour` no farther than `max_move` away. Froissart doublets of a contour
/// fit fail this: the secant iteration leaves them.
pub fn secant_screen(
    s: &ScalarizedResolvent,
    contour: &Contour,
    poles: &[Complex64],
    max_move: f64,
) -> Result<Vec<Complex64>> {
    let mut kept = Vec::with_capacity(poles.len());
    for &p in poles {
        let out = secant_refine(s, p, SCREEN_SECANT_ITERS, SCREEN_SECANT_TOL, None)?;
        if out.converged() && contour.contains(out.k) && (out.k - p).norm() <= max_move {
            kept.push(p);
        }
    }
    Ok(kept)
}

/// Unrefined eigenvalues inside `contour` from one solver.
pub fn contour_eigenvalues(
    solver: Solver,
    f: &Arc<dyn MatrixFunction>,
    s: &ScalarizedResolvent,
    contour: &Contour,
    opts: &CompareOptions,
) -> Result<Vec<Complex64>> {
    match solver {
        Solver::Algorithm1 => algorithm1_contour(s, contour, opts.aaa_rel_tol, opts.residue_tol),
        Solver::Beyn1 => Ok(beyn1(
            f.as_ref(),
            contour,
            opts.beyn_probes,
            opts.rank_tol,
            opts.seed,
        )?
        .eigenvalues),
        Solver::BlockSs => Ok(block_ss(
            f.as_ref(),
            contour,
            opts.block_probes,
            opts.hankel_blocks,
            opts.rank_tol,
            opts.seed,
        )?
        .eigenvalues),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    Failed,
}

/// One CSV row; `error` is NaN for failed entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub method: String,
    pub n_points: usize,
    pub error: f64,
    pub status: RowStatus,
}

/// Error of each method against `reference` for each contour resolution:
/// the distance from the nearest returned eigenvalue (after refinement),
/// clamped below at machine epsilon. A method that errors or returns nothing
/// gives a failed row and the run continues.
pub fn compare_convergence(
    f: Arc<dyn MatrixFunction>,
    contour: &Contour,
    methods: &[Method],
    n_points_list: &[usize],
    reference: Complex64,
    opts: &CompareOptions,
) -> Result<Vec<ComparisonRow>> {
    if !(reference.re.is_finite() && reference.im.is_finite()) {
        return Err(Error::InvalidInput(
            "reference eigenvalue must be finite".into(),
        ));
    }
    let s = ScalarizedResolvent::new(f.clone(), opts.seed);
    let mut rows = Vec::new();
    for &n in n_points_list {
        let c = contour.with_points(n)?;
        let mut raw: Vec<(Solver, Option<Vec<Complex64>>)> = Vec::new();
        for m in methods {
            if raw.iter().any(|(sv, _)| *sv == m.solver) {
                continue;
            }
            let out = match contour_eigenvalues(m.solver, &f, &s, &c, opts) {
                Ok(v) if !v.is_empty() => Some(v),
                Ok(_) => {
                    log::warn!(
                        "{} returned no eigenvalues at n_points = {n}",
                        m.solver.name()
                    );
                    None
                }
                Err(e) => {
                    log::warn!("{} failed at n_points = {n}: {e}", m.solver.name());
                    None
                }
            };
            raw.push((m.solver, out));
        }
        for m in methods {
            let found = raw
                .iter()
                .find(|(sv, _)| *sv == m.solver)
                .and_then(|(_, v)| v.as_ref());
            let value = found
                .map(|v| nearest(v, reference))
                .map(|k| refine(&s, k, m.refinement));
            let row = match value {
                Some(Ok(k)) => ComparisonRow {
                    method: m.to_string(),
                    n_points: n,
                    error: (k - reference).norm().max(f64::EPSILON),
                    status: RowStatus::Ok,
                },
                other => {
                    if let Some(Err(e)) = other {
                        log::warn!("refinement for {m} failed at n_points = {n}: {e}");
                    }
                    ComparisonRow {
                        method: m.to_string(),
                        n_points: n,
                        error: f64::NAN,
                        status: RowStatus::Failed,
                    }
                }
            };
            rows.push(row);
        }
    }
    Ok(rows)
}

fn nearest(values: &[Complex64], target: Complex64) -> Complex64 {
    *values
        .iter()
        .min_by(|a, b| (*a - target).norm().total_cmp(&(*b - target).norm()))
        .expect("non-empty")
}

fn refine(s: &ScalarizedResolvent, k: Complex64, refinement: Refinement) -> Result<Complex64> {
    match refinement {
        Refinement::None => Ok(k),
        Refinement::Secant(n) => secant_fixed_steps(s, k, n),
        Refinement::LocalAaa => local_aaa_refine(s, k, DEFAULT_LOCAL_RADIUS, DEFAULT_LOCAL_POINTS),
    }
}

/// Writes rows as CSV with header `method,n_points,error,status`.
pub fn comparison_to_csv(rows: &[ComparisonRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(csv_error)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn comparison_from_csv(text: &str) -> Result<Vec<ComparisonRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(csv_error))
        .collect()
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::fit_semilogy;
    use crate::nep::diagonal_shift;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn all_methods() -> Vec<Method> {
        Solver::ALL
            .into_iter()
            .flat_map(|s| {
                [
                    Method::new(s, Refinement::None),
                    Method::new(s, Refinement::Secant(4)),
                ]
            })
            .collect()
    }

    #[test]
    fn method_labels_round_trip() {
        for m in all_methods()
            .into_iter()
            .chain([Method::new(Solver::BlockSs, Refinement::LocalAaa)])
        {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("beyn2".parse::<Method>().is_err());
        assert!("beyn1+secant0".parse::<Method>().is_err());
        assert!("beyn1+newton".parse::<Method>().is_err());
    }

    #[test]
    fn secant_screen_drops_candidates_away_from_poles() {
        let f: Arc<dyn MatrixFunction> = Arc::new(diagonal_shift(&[c(3.1, -1.4), c(2.6, -1.8)]));
        let s = ScalarizedResolvent::new(f, 3);
        let contour = Contour::circle(c(3.0, -1.5), 1.0, 32).unwrap();
        let candidates = [
            c(3.1, -1.4 + 1e-6),
            c(3.5, -1.2),
            c(2.6 + 1e-4, -1.8),
            c(4.5, -1.5),
        ];
        let kept = secant_screen(&s, &contour, &candidates, 1e-3).unwrap();
        assert_eq!(kept, vec![candidates[0], candidates[2]]);
    }

    #[test]
    fn degree_one_resolvent_is_exact() {
        let k0 = c(3.1, -1.4);
        let f: Arc<dyn MatrixFunction> = Arc::new(diagonal_shift(&[k0]));
        let contour = Contour::circle(c(3.0, -1.5), 1.0, 8).unwrap();
        let opts = CompareOptions {
            beyn_probes: 2,
            ..Default::default()
        };
        let rows =
            compare_convergence(f, &contour, &all_methods(), &[8, 16, 32], k0, &opts).unwrap();
        assert_eq!(rows.len(), 18);
        for r in &rows {
            assert_eq!(r.status, RowStatus::Ok, "{r:?}");
            assert!(r.error < 1e-14, "{r:?}");
        }
    }

    #[test]
    fn exponential_decay_for_nearby_outside_poles() {
        let k0 = c(3.2, -1.3);
        let roots = [
            k0,
            c(3.0, -0.2),
            c(1.6, -1.6),
            c(4.5, -1.5),
            c(3.1, -3.0),
            c(4.2, -0.4),
            c(1.8, -2.6),
            c(4.4, -2.7),
        ];
        let f: Arc<dyn MatrixFunction> = Arc::new(diagonal_shift(&roots));
        let contour = Contour::circle(c(3.0, -1.5), 1.0, 8).unwrap();
        let ns = [8, 12, 16, 20, 24, 28];
        let methods = Solver::ALL.map(|s| Method::new(s, Refinement::None));
        let opts = CompareOptions {
            beyn_probes: 3,
            ..Default::default()
        };
        let rows = compare_convergence(f, &contour, &methods, &ns, k0, &opts).unwrap();
        let errors = |m: &str| -> Vec<(f64, f64)> {
            rows.iter()
                .filter(|r| r.method == m && r.status == RowStatus::Ok)
                .map(|r| (r.n_points as f64, r.error))
                .collect()
        };
        let ss = errors("block_ss");
        assert_eq!(ss.len(), 6);
        for w in ss.windows(2) {
            assert!(w[1].1 <= 10.0 * w[0].1, "{ss:?}");
        }
        let (x, y): (Vec<f64>, Vec<f64>) = ss.into_iter().unzip();
        let fit = fit_semilogy(&x, &y).unwrap();
        assert!(fit.slope < 0.0 && fit.r_squared > 0.95, "{fit:?}");
        assert!(errors("algorithm1")
            .iter()
            .any(|(n, e)| *n == 24.0 && *e < 1e-13));
        // aliased outside poles keep A0 at full rank for three probes
        assert!(errors("beyn1").is_empty());
    }

    #[test]
    fn failures_are_marked_and_run_continues() {
        let f: Arc<dyn MatrixFunction> =
            Arc::new(diagonal_shift(&[c(3.0, -1.5), c(3.2, -1.5), c(2.8, -1.5)]));
        let contour = Contour::circle(c(3.0, -1.5), 1.0, 16).unwrap();
        let opts = CompareOptions {
            beyn_probes: 1,
            ..Default::default()
        };
        let methods = [
            Method::new(Solver::Beyn1, Refinement::None),
            Method::new(Solver::Algorithm1, Refinement::None),
        ];
        let rows =
            compare_convergence(f, &contour, &methods, &[16, 24], c(3.0, -1.5), &opts).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows
            .iter()
            .filter(|r| r.method == "beyn1")
            .all(|r| r.status == RowStatus::Failed));
        assert!(rows
            .iter()
            .filter(|r| r.method == "algorithm1")
            .all(|r| r.status == RowStatus::Ok));
    }

    #[test]
    fn csv_round_trip() {
        let rows = vec![
            ComparisonRow {
                method: "beyn1+secant4".into(),
                n_points: 24,
                error: 3.5e-13,
                status: RowStatus::Ok,
            },
            ComparisonRow {
                method: "block_ss".into(),
                n_points: 8,
                error: f64::NAN,
                status: RowStatus::Failed,
            },
        ];
        let text = comparison_to_csv(&rows).unwrap();
        assert!(text.starts_with("method,n_points,error,status\n"));
        let back = comparison_from_csv(&text).unwrap();
        assert_eq!(back[0], rows[0]);
        assert!(back[1].error.is_nan() && back[1].status == RowStatus::Failed);
        assert!(comparison_from_csv("method,n_points,error,status\nx,notanumber,1,ok\n").is_err());
    }
}
