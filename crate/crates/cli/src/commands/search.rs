use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use aaanep::nep::{
    adaptive_search, basic_search_report, RecordStatus, ResultsDocument, ScalarizedResolvent,
    SearchReport,
};

use crate::config::{resolve_search, SearchConfig};
use crate::{set_threads, SearchArgs, EXIT_UNCONVERGED};

pub const DEFAULT_OUTPUT: &str = "results.json";

pub fn run(args: SearchArgs) -> anyhow::Result<ExitCode> {
    let cfg = resolve_search(&args)?;
    set_threads(cfg.threads)?;
    let report = execute(&cfg)?;
    let doc = results_document(&cfg, &report);
    let path = cfg.output.clone().unwrap_or_else(|| DEFAULT_OUTPUT.into());
    fs::write(&path, doc.to_json()? + "\n")
        .map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display()))?;
    print!("{}", format_table(&report));
    if report.has_unconverged() {
        eprintln!(
            "some eigenvalue estimates did not converge; see {}",
            path.display()
        );
        return Ok(ExitCode::from(EXIT_UNCONVERGED));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn execute(cfg: &SearchConfig) -> anyhow::Result<SearchReport> {
    let f = cfg.problem.build()?;
    let region = cfg.region.build()?;
    let s = ScalarizedResolvent::new(f, cfg.seed);
    log::info!("searching {} over {}", cfg.problem, cfg.region);
    Ok(if cfg.adapt {
        adaptive_search(&s, &region, &cfg.options)?
    } else {
        basic_search_report(&s, &region, &cfg.options)?
    })
}

/// Records kept in the results file: confirmed eigenvalues inside the region
/// and every unconverged estimate.
pub fn results_document(cfg: &SearchConfig, report: &SearchReport) -> ResultsDocument {
    let kept: Vec<_> = report
        .records
        .iter()
        .filter(|r| (r.is_confirmed() && r.in_region) || r.status == RecordStatus::Unconverged)
        .cloned()
        .collect();
    ResultsDocument::new(
        cfg.seed,
        cfg.problem.to_string(),
        cfg.region.to_string(),
        &kept,
    )
}

pub fn format_table(report: &SearchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4}  {:>20}  {:>20}  {:>9}  {:<11}  {:>9}",
        "#", "Re k", "Im k", "error", "status", "|residue|"
    );
    let mut shown = 0;
    for r in &report.records {
        if r.status == RecordStatus::Spurious || (r.is_confirmed() && !r.in_region) {
            continue;
        }
        let status = match r.status {
            RecordStatus::Confirmed => "confirmed",
            RecordStatus::Unconverged => "unconverged",
            RecordStatus::Spurious => "spurious",
        };
        let _ = writeln!(
            out,
            "{shown:>4}  {:>20.15}  {:>20.15}  {:>9.1e}  {status:<11}  {:>9.1e}",
            r.value.re,
            r.value.im,
            r.error_estimate,
            r.residue.norm()
        );
        shown += 1;
    }
    let count = |st: RecordStatus| report.records.iter().filter(|r| r.status == st).count();
    let confirmed = report.eigenvalues().len();
    let per = if confirmed > 0 {
        format!(" ({:.3} s per eigenvalue)", report.seconds_per_eigenvalue())
    } else {
        String::new()
    };
    let _ = writeln!(
        out,
        "{confirmed} eigenvalues ({} spurious, {} unconverged, {} unresolved regions); {} samples; {:.2} s{per}",
        count(RecordStatus::Spurious),
        count(RecordStatus::Unconverged),
        report.unresolved_leaves().count(),
        report.samples_evaluated,
        report.elapsed_seconds,
    );
    out
}
