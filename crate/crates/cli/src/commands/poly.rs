use std::fmt::Write as _;
use std::process::ExitCode;

use aaanep::problems::{polyeig_oracle, save_polynomial};
use aaanep::Complex64;
use serde::{Deserialize, Serialize};

use crate::problem::PolySource;
use crate::{emit, PolyInfoArgs};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRow {
    pub re: f64,
    pub im: f64,
}

pub fn run(args: PolyInfoArgs) -> anyhow::Result<ExitCode> {
    let p = PolySource::parse(&args.poly).load()?;
    let mut info = String::new();
    let _ = writeln!(info, "degree {}, size {}x{}", p.degree(), p.dim(), p.dim());
    for (i, a) in p.coefficients().iter().enumerate() {
        let _ = writeln!(
            info,
            "  A_{i}: Frobenius norm {:.6e}, max |entry| {:.6e}",
            a.frobenius_norm(),
            a.max_abs()
        );
    }
    if let Some(path) = &args.export {
        save_polynomial(&p, path)?;
    }
    if args.eigenvalues {
        let spec = polyeig_oracle(&p)?;
        let _ = writeln!(
            info,
            "{} finite eigenvalues, {} infinite (companion linearization of size {})",
            spec.finite.len(),
            spec.infinite,
            p.degree() * p.dim()
        );
        eprint!("{info}");
        emit(args.output.as_deref(), &eigenvalues_to_csv(&spec.finite)?)?;
    } else {
        print!("{info}");
    }
    Ok(ExitCode::SUCCESS)
}

/// CSV with header `re,im`.
pub fn eigenvalues_to_csv(values: &[Complex64]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for z in values {
        w.serialize(EigenvalueRow { re: z.re, im: z.im })?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn eigenvalues_from_csv(text: &str) -> anyhow::Result<Vec<Complex64>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize::<EigenvalueRow>()
        .map(|r| Ok(r.map(|r| Complex64::new(r.re, r.im))?))
        .collect()
}
