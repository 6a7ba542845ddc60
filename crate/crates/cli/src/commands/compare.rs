use std::process::ExitCode;
use std::sync::Arc;

use aaanep::baselines::{
    compare_convergence, comparison_to_csv, contour_eigenvalues, secant_screen, CompareOptions,
    Contour, Method, RowStatus, Solver,
};
use aaanep::nep::{secant_refine, MatrixFunction, ScalarizedResolvent};
use aaanep::Complex64;

use crate::problem::{parse_list, PolySource, ProblemSpec};
use crate::{emit, set_threads, CompareArgs, UsageError};

/// Largest secant displacement, relative to the contour radius, for a pole to
/// count as confirmed in the summary.
const SCREEN_MOVE: f64 = 1e-3;

fn parse_complex(s: &str, what: &str) -> anyhow::Result<Complex64> {
    let v = parse_list(s, 2, what)?;
    Ok(Complex64::new(v[0], v[1]))
}

pub fn parse_points(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| {
            UsageError(format!(
                "--points expects comma-separated counts, got '{s}'"
            ))
            .into()
        })
}

pub fn parse_methods(s: &str) -> anyhow::Result<Vec<Method>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Method>()
                .map_err(|e| UsageError(e.to_string()).into())
        })
        .collect()
}

pub fn run(args: CompareArgs) -> anyhow::Result<ExitCode> {
    set_threads(args.threads)?;
    let problem = match &args.poly {
        Some(p) => ProblemSpec::Polynomial(PolySource::parse(p)),
        None => ProblemSpec::Helmholtz {
            geometry: args.geometry.clone(),
            kind: args
                .kind
                .parse()
                .map_err(|e: aaanep::Error| UsageError(e.to_string()))?,
            n: args.n,
            aperture: args.aperture,
            fraction: None,
        },
    };
    let f: Arc<dyn MatrixFunction> = problem.build()?;
    let points = parse_points(&args.points)?;
    let max_points = *points
        .iter()
        .max()
        .ok_or_else(|| UsageError("--points is empty".into()))?;
    let contour = Contour::circle(
        parse_complex(&args.center, "--center")?,
        args.radius,
        max_points,
    )
    .map_err(|e| UsageError(e.to_string()))?;
    let methods = parse_methods(&args.methods)?;
    let opts = CompareOptions {
        beyn_probes: args.beyn_probes,
        block_probes: args.block_probes,
        hankel_blocks: args.hankel_blocks,
        rank_tol: args.rank_tol,
        seed: args.seed,
        ..Default::default()
    };
    let s = ScalarizedResolvent::new(f.clone(), args.seed);
    let reference = match &args.reference {
        Some(r) => parse_complex(r, "--reference")?,
        None => {
            let out = secant_refine(&s, parse_complex(&args.guess, "--guess")?, 60, 1e-15, None)?;
            if !out.converged() {
                anyhow::bail!("reference secant run did not converge ({:?})", out.status);
            }
            out.k
        }
    };
    eprintln!("problem: {problem}");
    eprintln!(
        "reference eigenvalue: {:.15} {:+.15}i",
        reference.re, reference.im
    );
    let mut solvers: Vec<_> = methods.iter().map(|m| m.solver).collect();
    solvers.dedup();
    for solver in solvers {
        match contour_eigenvalues(solver, &f, &s, &contour, &opts) {
            Ok(v) => {
                let list: Vec<String> = v
                    .iter()
                    .map(|z| format!("{:.10}{:+.10}i", z.re, z.im))
                    .collect();
                eprintln!(
                    "{} at {max_points} points: {} inside [{}]",
                    solver.name(),
                    v.len(),
                    list.join(", ")
                );
                if solver == Solver::Algorithm1 {
                    let kept = secant_screen(&s, &contour, &v, SCREEN_MOVE * contour.radius)?;
                    eprintln!(
                        "  {} of them confirmed by secant runs, the rest are spurious",
                        kept.len()
                    );
                }
            }
            Err(e) => eprintln!("{} at {max_points} points: failed ({e})", solver.name()),
        }
    }
    let rows = compare_convergence(f, &contour, &methods, &points, reference, &opts)?;
    let failed = rows
        .iter()
        .filter(|r| r.status == RowStatus::Failed)
        .count();
    if failed > 0 {
        eprintln!("{failed} of {} entries failed", rows.len());
    }
    emit(args.output.as_deref(), &comparison_to_csv(&rows)?)?;
    Ok(ExitCode::SUCCESS)
}
