use std::process::ExitCode;

use aaanep::experiments::{disk_dirichlet_eigenvalues, DiskEigenvalue};

use crate::problem::parse_list;
use crate::{emit, OracleArgs, UsageError};

pub fn run(args: OracleArgs) -> anyhow::Result<ExitCode> {
    if args.kind != "disk-dirichlet" {
        return Err(UsageError(format!(
            "unknown oracle '{}' (expected disk-dirichlet)",
            args.kind
        ))
        .into());
    }
    let v = parse_list(&args.interval, 2, "--interval")?;
    let zeros = disk_dirichlet_eigenvalues(v[0], v[1]).map_err(|e| UsageError(e.to_string()))?;
    emit(args.output.as_deref(), &oracle_to_csv(&zeros)?)?;
    eprintln!(
        "{} distinct eigenvalues in [{}, {}]",
        zeros.len(),
        v[0],
        v[1]
    );
    Ok(ExitCode::SUCCESS)
}

/// CSV with header `k,order,index,multiplicity`.
pub fn oracle_to_csv(zeros: &[DiskEigenvalue]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for z in zeros {
        w.serialize(z)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn oracle_from_csv(text: &str) -> anyhow::Result<Vec<DiskEigenvalue>> {
    Ok(csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()?)
}
