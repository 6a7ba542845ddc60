use std::fs;
use std::path::PathBuf;

use aaanep::helmholtz::{Geometry, ProblemKind};
use aaanep::nep::SearchOptions;
use serde::Deserialize;

use crate::problem::{auto_resolution, parse_list, PolySource, ProblemSpec, RegionSpec};
use crate::{SearchArgs, UsageError};

pub const DEFAULT_PER_SIDE: usize = 32;
pub const DEFAULT_INTERVAL_SAMPLES: usize = 64;

/// Search configuration file. Keys mirror the command-line flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchFile {
    pub geometry: Option<String>,
    pub kind: Option<String>,
    pub n: Option<usize>,
    pub aperture: Option<f64>,
    pub fraction: Option<f64>,
    pub poly: Option<String>,
    pub region: Option<[f64; 2]>,
    pub rect: Option<[f64; 4]>,
    pub strip: Option<[f64; 3]>,
    pub per_side: Option<usize>,
    pub samples: Option<usize>,
    pub rel_tol: Option<f64>,
    pub max_depth: Option<usize>,
    pub seed: Option<u64>,
    pub no_adapt: Option<bool>,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
}

impl SearchFile {
    pub fn load(path: &std::path::Path) -> anyhow::Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| anyhow::anyhow!("reading {}: {e}", path.display()))?;
        toml::from_str(&text)
            .map_err(|e| UsageError(format!("config {}: {e}", path.display())).into())
    }
}

/// Fully resolved search run.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub problem: ProblemSpec,
    pub region: RegionSpec,
    pub options: SearchOptions,
    pub seed: u64,
    pub adapt: bool,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
}

enum RawRegion {
    Interval([f64; 2]),
    Rect([f64; 4]),
    Strip([f64; 3]),
}

fn flag_region(args: &SearchArgs) -> anyhow::Result<Vec<RawRegion>> {
    let mut out = Vec::new();
    if let Some(s) = &args.region {
        let v = parse_list(s, 2, "--region")?;
        out.push(RawRegion::Interval([v[0], v[1]]));
    }
    if let Some(s) = &args.rect {
        let v = parse_list(s, 4, "--rect")?;
        out.push(RawRegion::Rect([v[0], v[1], v[2], v[3]]));
    }
    if let Some(s) = &args.strip {
        let v = parse_list(s, 3, "--strip")?;
        out.push(RawRegion::Strip([v[0], v[1], v[2]]));
    }
    Ok(out)
}

fn file_region(file: &SearchFile) -> Vec<RawRegion> {
    let mut out = Vec::new();
    if let Some(v) = file.region {
        out.push(RawRegion::Interval(v));
    }
    if let Some(v) = file.rect {
        out.push(RawRegion::Rect(v));
    }
    if let Some(v) = file.strip {
        out.push(RawRegion::Strip(v));
    }
    out
}

/// Merges flags over the optional configuration file and validates the
/// combination.
pub fn resolve_search(args: &SearchArgs) -> anyhow::Result<SearchConfig> {
    let file = match &args.config {
        Some(p) => SearchFile::load(p)?,
        None => SearchFile::default(),
    };

    // a problem or region given by flags replaces the file's entirely
    let (geometry, poly) = if args.geometry.is_some() || args.poly.is_some() {
        (args.geometry.clone(), args.poly.clone())
    } else {
        (file.geometry.clone(), file.poly.clone())
    };
    let flags = flag_region(args)?;
    let mut regions = if flags.is_empty() {
        file_region(&file)
    } else {
        flags
    };
    let raw = match regions.len() {
        0 => {
            return Err(
                UsageError("a region is required (--region, --rect or --strip)".into()).into(),
            )
        }
        1 => regions.pop().expect("one region"),
        _ => return Err(UsageError("give only one of --region, --rect, --strip".into()).into()),
    };
    let per_side = args.per_side.or(file.per_side).unwrap_or(DEFAULT_PER_SIDE);
    let samples = args
        .samples
        .or(file.samples)
        .unwrap_or(DEFAULT_INTERVAL_SAMPLES);
    let region = match raw {
        RawRegion::Interval([a, b]) => RegionSpec::Interval { a, b, samples },
        RawRegion::Rect([x0, y0, x1, y1]) => RegionSpec::Rect {
            x0,
            y0,
            x1,
            y1,
            per_side,
        },
        RawRegion::Strip([x0, x1, ymin]) => RegionSpec::strip(x0, x1, ymin, per_side)?,
    };
    region.build()?;

    let kind = args.kind.clone().or(file.kind.clone());
    let problem = match (geometry, poly) {
        (Some(_), Some(_)) => {
            return Err(UsageError("give either --geometry or --poly, not both".into()).into())
        }
        (None, None) => {
            return Err(UsageError("a problem is required (--geometry or --poly)".into()).into())
        }
        (None, Some(p)) => {
            if kind.is_some() {
                return Err(UsageError("--kind applies to geometries only".into()).into());
            }
            ProblemSpec::Polynomial(PolySource::parse(&p))
        }
        (Some(name), None) => {
            let aperture = args.aperture.or(file.aperture);
            let fraction = args.fraction.or(file.fraction);
            let probe = ProblemSpec::Helmholtz {
                geometry: name.clone(),
                kind: ProblemKind::Interior,
                n: 0,
                aperture,
                fraction,
            };
            let g = probe.geometry()?.expect("geometry");
            let kind = match &kind {
                Some(k) => k
                    .parse::<ProblemKind>()
                    .map_err(|e| UsageError(e.to_string()))?,
                None if matches!(g, Geometry::Closed(_)) => ProblemKind::Interior,
                None => ProblemKind::OpenArc,
            };
            if region.is_interval() && kind != ProblemKind::Interior {
                return Err(UsageError(format!(
                    "an interval region needs a real spectrum; use --rect or --strip for {kind} problems"
                ))
                .into());
            }
            let n = args
                .n
                .or(file.n)
                .unwrap_or_else(|| auto_resolution(&g, &region));
            let spec = ProblemSpec::Helmholtz {
                geometry: name,
                kind,
                n,
                aperture: if g.name() == "open-circle" {
                    aperture
                } else {
                    None
                },
                fraction: if g.name() == "open-rocket" {
                    fraction
                } else {
                    None
                },
            };
            spec.helmholtz()?;
            spec
        }
    };

    let mut options = SearchOptions::default();
    if let Some(t) = args.rel_tol.or(file.rel_tol) {
        if !(t > 0.0) {
            return Err(UsageError("--rel-tol must be positive".into()).into());
        }
        options.rel_tol = t;
    }
    if let Some(d) = args.max_depth.or(file.max_depth) {
        options.max_depth = d;
    }
    Ok(SearchConfig {
        problem,
        region,
        options,
        seed: args.seed.or(file.seed).unwrap_or(0),
        adapt: !(args.no_adapt || file.no_adapt.unwrap_or(false)),
        threads: args.threads.or(file.threads),
        output: args.output.clone().or(file.output),
    })
}
