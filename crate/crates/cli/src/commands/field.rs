use std::fs;
use std::process::ExitCode;

use aaanep::helmholtz::{field_eval_with, Point};
use aaanep::nep::{eigenvectors, MatrixFunction, ResultsDocument};
use aaanep::numerics::{min_singular_vector, DEFAULT_PIVOT_TOL};
use aaanep::Complex64;
use serde::{Deserialize, Serialize};

use crate::problem::ProblemSpec;
use crate::{emit, FieldArgs, UsageError};

/// One grid point of a field CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldRow {
    pub x: f64,
    pub y: f64,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    /// 1 inside the near-boundary band where the quadrature is inaccurate.
    pub flag: u8,
}

/// Grid from `x0,x1,nx,y0,y1,ny`, row by row in `y`, `x` varying fastest.
pub fn parse_grid(spec: &str) -> anyhow::Result<Vec<Point>> {
    let bad = || UsageError(format!("--grid expects x0,x1,nx,y0,y1,ny, got '{spec}'"));
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err(bad().into());
    }
    let num = |i: usize| parts[i].parse::<f64>().map_err(|_| bad());
    let count = |i: usize| {
        parts[i]
            .parse::<usize>()
            .ok()
            .filter(|n| *n >= 1)
            .ok_or_else(bad)
    };
    let (x0, x1, nx, y0, y1, ny) = (num(0)?, num(1)?, count(2)?, num(3)?, num(4)?, count(5)?);
    let axis = |a: f64, b: f64, n: usize| -> Vec<f64> {
        if n == 1 {
            vec![a]
        } else {
            (0..n)
                .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                .collect()
        }
    };
    let xs = axis(x0, x1, nx);
    Ok(axis(y0, y1, ny)
        .into_iter()
        .flat_map(|y| xs.iter().map(move |&x| [x, y]))
        .collect())
}

/// Boundary density of a record: a null vector of `F(k)`, or the smallest
/// right singular vector when no pivot of the LU factorization is small.
pub fn eigen_density(
    f: &dyn MatrixFunction,
    k: Complex64,
    which: usize,
) -> anyhow::Result<Vec<Complex64>> {
    let mut vs = eigenvectors(f, k, DEFAULT_PIVOT_TOL)?;
    if vs.is_empty() {
        vs.push(min_singular_vector(&f.eval(k)?)?.0);
    }
    let count = vs.len();
    vs.into_iter().nth(which).ok_or_else(|| {
        UsageError(format!(
            "--vector {which} out of range: null space has dimension {count}"
        ))
        .into()
    })
}

pub fn run(args: FieldArgs) -> anyhow::Result<ExitCode> {
    let text = fs::read_to_string(&args.results)
        .map_err(|e| anyhow::anyhow!("reading {}: {e}", args.results.display()))?;
    let doc = ResultsDocument::from_json(&text)?;
    let record = doc.records.get(args.index).ok_or_else(|| {
        UsageError(format!(
            "--index {} out of range: results hold {} records",
            args.index,
            doc.records.len()
        ))
    })?;
    let problem: ProblemSpec = doc.problem.parse()?;
    let nep = problem.helmholtz()?;
    let k = record.value();
    let density = if args.zero_density {
        vec![Complex64::new(0.0, 0.0); nep.discretization().n()]
    } else {
        eigen_density(&nep, k, args.vector)?
    };
    let grid = parse_grid(&args.grid)?;
    let values = field_eval_with(nep.discretization(), k, &density, &grid)?;
    let rows: Vec<FieldRow> = grid
        .iter()
        .zip(values)
        .map(|(p, v)| FieldRow {
            x: p[0],
            y: p[1],
            re: v.value.re,
            im: v.value.im,
            abs: v.value.norm(),
            flag: v.low_accuracy as u8,
        })
        .collect();
    emit(args.output.as_deref(), &field_to_csv(&rows)?)?;
    Ok(ExitCode::SUCCESS)
}

pub fn field_to_csv(rows: &[FieldRow]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn field_from_csv(text: &str) -> anyhow::Result<Vec<FieldRow>> {
    Ok(csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()?)
}
