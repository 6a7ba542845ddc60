use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use aaanep::helmholtz::{
    default_resolution, geometry_by_name, make_nep, Geometry, HelmholtzNep, ProblemKind,
};
use aaanep::nep::{MatrixFunction, SearchRegion};
use aaanep::problems::{as_matrix_function, butterfly, load_polynomial, MatrixPolynomial};
use aaanep::Complex64;

use crate::UsageError;

#[derive(Clone, Debug, PartialEq)]
pub enum PolySource {
    Butterfly,
    File(PathBuf),
}

impl PolySource {
    pub fn parse(s: &str) -> Self {
        if s == "butterfly" {
            PolySource::Butterfly
        } else {
            PolySource::File(PathBuf::from(s))
        }
    }

    pub fn load(&self) -> anyhow::Result<MatrixPolynomial> {
        match self {
            PolySource::Butterfly => Ok(butterfly()),
            PolySource::File(p) => Ok(load_polynomial(p)?),
        }
    }
}

/// The problem a run operates on. Its display form is stored in results
/// files and parsed back by `field`.
#[derive(Clone, Debug, PartialEq)]
pub enum ProblemSpec {
    Helmholtz {
        geometry: String,
        kind: ProblemKind,
        n: usize,
        aperture: Option<f64>,
        fraction: Option<f64>,
    },
    Polynomial(PolySource),
}

impl ProblemSpec {
    pub fn geometry(&self) -> anyhow::Result<Option<Geometry>> {
        match self {
            ProblemSpec::Helmholtz {
                geometry,
                aperture,
                fraction,
                ..
            } => Ok(Some(
                geometry_by_name(geometry, *aperture, *fraction)
                    .map_err(|e| UsageError(e.to_string()))?,
            )),
            ProblemSpec::Polynomial(_) => Ok(None),
        }
    }

    pub fn helmholtz(&self) -> anyhow::Result<HelmholtzNep> {
        match self {
            ProblemSpec::Helmholtz { kind, n, .. } => {
                let g = self.geometry()?.expect("helmholtz problem has a geometry");
                Ok(make_nep(&g, *kind, *n).map_err(|e| UsageError(e.to_string()))?)
            }
            ProblemSpec::Polynomial(_) => {
                Err(UsageError("a polynomial problem has no boundary geometry".into()).into())
            }
        }
    }

    pub fn build(&self) -> anyhow::Result<Arc<dyn MatrixFunction>> {
        match self {
            ProblemSpec::Helmholtz { .. } => Ok(Arc::new(self.helmholtz()?)),
            ProblemSpec::Polynomial(src) => Ok(as_matrix_function(src.load()?)),
        }
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemSpec::Helmholtz {
                geometry,
                kind,
                n,
                aperture,
                fraction,
            } => {
                write!(f, "helmholtz geometry={geometry} kind={kind} n={n}")?;
                if let Some(a) = aperture {
                    write!(f, " aperture={a}")?;
                }
                if let Some(x) = fraction {
                    write!(f, " fraction={x}")?;
                }
                Ok(())
            }
            ProblemSpec::Polynomial(PolySource::Butterfly) => write!(f, "polynomial butterfly"),
            ProblemSpec::Polynomial(PolySource::File(p)) => {
                write!(f, "polynomial file={}", p.display())
            }
        }
    }
}

impl FromStr for ProblemSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let bad = || UsageError(format!("unrecognized problem description '{s}'"));
        if let Some(rest) = s.strip_prefix("polynomial ") {
            return match rest.strip_prefix("file=") {
                Some(path) => Ok(ProblemSpec::Polynomial(PolySource::File(path.into()))),
                None if rest == "butterfly" => Ok(ProblemSpec::Polynomial(PolySource::Butterfly)),
                None => Err(bad().into()),
            };
        }
        let rest = s.strip_prefix("helmholtz ").ok_or_else(bad)?;
        let (mut geometry, mut kind, mut n, mut aperture, mut fraction) =
            (None, None, None, None, None);
        for token in rest.split_whitespace() {
            let (key, value) = token.split_once('=').ok_or_else(bad)?;
            match key {
                "geometry" => geometry = Some(value.to_string()),
                "kind" => kind = Some(value.parse::<ProblemKind>()?),
                "n" => n = Some(value.parse::<usize>()?),
                "aperture" => aperture = Some(value.parse::<f64>()?),
                "fraction" => fraction = Some(value.parse::<f64>()?),
                _ => return Err(bad().into()),
            }
        }
        Ok(ProblemSpec::Helmholtz {
            geometry: geometry.ok_or_else(bad)?,
            kind: kind.ok_or_else(bad)?,
            n: n.ok_or_else(bad)?,
            aperture,
            fraction,
        })
    }
}

/// Search region as given on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum RegionSpec {
    /// Real interval `[a, b]`.
    Interval { a: f64, b: f64, samples: usize },
    /// Rectangle with corners `(x0, y0)`, `(x1, y1)`.
    Rect {
        x0: f64,
        y0: f64,
        x1: f64,
        y1: f64,
        per_side: usize,
    },
}

impl RegionSpec {
    /// Strip `[x0, x1] x [ymin, 0]` below the real axis.
    pub fn strip(x0: f64, x1: f64, ymin: f64, per_side: usize) -> anyhow::Result<Self> {
        if !(ymin < 0.0) {
            return Err(UsageError(format!("strip depth must be negative, got {ymin}")).into());
        }
        Ok(RegionSpec::Rect {
            x0,
            y0: ymin,
            x1,
            y1: 0.0,
            per_side,
        })
    }

    pub fn build(&self) -> anyhow::Result<SearchRegion> {
        let r = match *self {
            RegionSpec::Interval { a, b, samples } => SearchRegion::interval(a, b, samples),
            RegionSpec::Rect {
                x0,
                y0,
                x1,
                y1,
                per_side,
            } => SearchRegion::rectangle(Complex64::new(x0, y0), Complex64::new(x1, y1), per_side),
        };
        r.map_err(|e| UsageError(e.to_string()).into())
    }

    pub fn is_interval(&self) -> bool {
        matches!(self, RegionSpec::Interval { .. })
    }

    /// Largest `|Re k|` in the region.
    pub fn max_abs_re(&self) -> f64 {
        match *self {
            RegionSpec::Interval { a, b, .. } => a.abs().max(b.abs()),
            RegionSpec::Rect { x0, x1, .. } => x0.abs().max(x1.abs()),
        }
    }
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionSpec::Interval { a, b, samples } => {
                write!(f, "interval {a},{b} samples={samples}")
            }
            RegionSpec::Rect {
                x0,
                y0,
                x1,
                y1,
                per_side,
            } => write!(f, "rect {x0},{y0},{x1},{y1} per_side={per_side}"),
        }
    }
}

/// Resolution for a Helmholtz problem when none is given.
pub fn auto_resolution(geometry: &Geometry, region: &RegionSpec) -> usize {
    default_resolution(geometry, region.max_abs_re().max(1.0))
}

/// Parses `a,b,...` into exactly `count` numbers.
pub fn parse_list(s: &str, count: usize, what: &str) -> anyhow::Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            UsageError(format!(
                "{what} expects {count} comma-separated numbers, got '{s}'"
            ))
        })?;
    if v.len() != count {
        return Err(UsageError(format!(
            "{what} expects {count} comma-separated numbers, got '{s}'"
        ))
        .into());
    }
    Ok(v)
}
