use std::fs;
use std::process::ExitCode;

use aaanep::experiments::{gap_study, GapMode, GapPoint, GapStudyOptions};

use crate::{emit, set_threads, GapStudyArgs, UsageError};

pub fn parse_apertures(s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| {
            UsageError(format!(
                "--apertures expects comma-separated numbers, got '{s}'"
            ))
            .into()
        })
}

pub fn run(args: GapStudyArgs) -> anyhow::Result<ExitCode> {
    set_threads(args.threads)?;
    let mode: GapMode = args
        .mode
        .parse()
        .map_err(|e: aaanep::Error| UsageError(e.to_string()))?;
    let thetas = parse_apertures(&args.apertures)?;
    let opts = GapStudyOptions {
        n: args.n,
        seed: args.seed,
        ..Default::default()
    };
    let study = gap_study(&thetas, mode, &opts)?;
    emit(args.output.as_deref(), &points_to_csv(&study.points)?)?;
    if let Some(p) = &args.summary {
        fs::write(p, serde_json::to_string_pretty(&study)? + "\n")
            .map_err(|e| anyhow::anyhow!("writing {}: {e}", p.display()))?;
    }
    eprintln!(
        "{} mode, k_limit = {}: slope of |Re k - k_limit| = {:.3} (R^2 {:.4}), slope of |Im k| = {:.3} (R^2 {:.4})",
        args.mode, study.k_limit, study.re_fit.slope, study.re_fit.r_squared, study.im_fit.slope, study.im_fit.r_squared
    );
    Ok(ExitCode::SUCCESS)
}

/// CSV with header `theta,k_re,k_im,error_estimate`.
pub fn points_to_csv(points: &[GapPoint]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in points {
        w.serialize(p)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn points_from_csv(text: &str) -> anyhow::Result<Vec<GapPoint>> {
    Ok(csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()?)
}
