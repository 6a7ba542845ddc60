//! Greedy AAA rational approximation in barycentric form.
//!
//! The approximant is
//!
//! ```text
//!          Σ w_j f_j / (z − z_j)
//! r(z) = ─────────────────────────
//!           Σ w_j / (z − z_j)
//! ```
//!
//! with support points `z_j` picked greedily from the sample set and weights
//! `w` chosen as the unit vector minimizing the linearized residual over the
//! remaining samples.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{generalized_eigenvalues, min_singular_vector, ComplexMatrix};

/// Default cap on the approximant degree (`m − 1`).
pub const DEFAULT_MAX_DEGREE: usize = 99;

/// Default residue threshold, relative to the largest sampled magnitude.
pub const DEFAULT_RESIDUE_TOL: f64 = 1e-13;

const SUPPORT_MATCH_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub z: Complex64,
    pub f: Complex64,
}

impl SamplePoint {
    pub fn new(z: Complex64, f: Complex64) -> Self {
        Self { z, f }
    }

    pub fn is_finite(&self) -> bool {
        self.z.re.is_finite()
            && self.z.im.is_finite()
            && self.f.re.is_finite()
            && self.f.im.is_finite()
    }
}

/// Rational function in barycentric form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarycentricRational {
    support: Vec<Complex64>,
    values: Vec<Complex64>,
    weights: Vec<Complex64>,
}

impl BarycentricRational {
    /// Builds an approximant from its parts. Weights are rescaled to unit norm.
    pub fn new(
        support: Vec<Complex64>,
        values: Vec<Complex64>,
        mut weights: Vec<Complex64>,
    ) -> Result<Self> {
        let m = support.len();
        if m == 0 || values.len() != m || weights.len() != m {
            return Err(Error::Dimension(format!(
                "barycentric form needs equal, nonzero lengths (got {}, {}, {})",
                m,
                values.len(),
                weights.len()
            )));
        }
        for i in 0..m {
            for j in 0..i {
                if support[i] == support[j] {
                    return Err(Error::InvalidInput(format!(
                        "repeated support point {}",
                        support[i]
                    )));
                }
            }
        }
        let nrm = weights.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
        if !(nrm > 0.0 && nrm.is_finite()) {
            return Err(Error::InvalidInput(
                "weights must be finite and not all zero".into(),
            ));
        }
        weights.iter_mut().for_each(|w| *w /= nrm);
        Ok(Self {
            support,
            values,
            weights,
        })
    }

    pub fn support(&self) -> &[Complex64] {
        &self.support
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    /// Number of support points `m`; the type is `(m − 1, m − 1)`.
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.support.len() - 1
    }

    /// Evaluates `r(z)`. At a support point the stored value is returned.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        if self.support.len() == 1 {
            return self.values[0];
        }
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = Complex64::new(0.0, 0.0);
        for ((zj, fj), wj) in self.support.iter().zip(&self.values).zip(&self.weights) {
            let diff = z - zj;
            if diff.norm() <= SUPPORT_MATCH_TOL * zj.norm().max(1.0) {
                return *fj;
            }
            let c = wj / diff;
            num += c * fj;
            den += c;
        }
        num / den
    }

    /// Poles (finite eigenvalues of the arrowhead pencil) with residues
    /// `n(p) / d'(p)`.
    pub fn poles_and_residues(&self) -> Result<Vec<PoleResidue>> {
        let m = self.len();
        if m < 2 {
            return Ok(Vec::new());
        }
        let mut e = ComplexMatrix::zeros(m + 1, m + 1);
        let mut b = ComplexMatrix::zeros(m + 1, m + 1);
        for j in 0..m {
            e[(0, j + 1)] = self.weights[j];
            e[(j + 1, 0)] = Complex64::new(1.0, 0.0);
            e[(j + 1, j + 1)] = self.support[j];
            b[(j + 1, j + 1)] = Complex64::new(1.0, 0.0);
        }
        let poles = generalized_eigenvalues(&e, &b)?;
        Ok(poles
            .into_iter()
            .map(|p| PoleResidue {
                pole: p,
                residue: self.residue_at(p),
            })
            .collect())
    }

    fn residue_at(&self, p: Complex64) -> Complex64 {
        let mut num = Complex64::new(0.0, 0.0);
        let mut dprime = Complex64::new(0.0, 0.0);
        for ((zj, fj), wj) in self.support.iter().zip(&self.values).zip(&self.weights) {
            let inv = 1.0 / (p - zj);
            num += wj * fj * inv;
            dprime -= wj * inv * inv;
        }
        num / dprime
    }
}

/// Output of [`aaa_fit`].
#[derive(Clone, Debug)]
pub struct AaaFit {
    pub rational: BarycentricRational,
    /// Whether the relative tolerance was reached before the degree cap.
    pub converged: bool,
    /// Maximum sampled error relative to `scale`, one entry per step.
    pub error_history: Vec<f64>,
    /// `max |f|` over the samples.
    pub scale: f64,
}

impl AaaFit {
    pub fn final_error(&self) -> f64 {
        self.error_history.last().copied().unwrap_or(0.0)
    }
}

/// Greedy AAA fit of `samples`, stopping once the largest error relative to
/// `max |f|` is at most `rel_tol`, or after `max_degree + 1` support points.
pub fn aaa_fit(samples: &[SamplePoint], rel_tol: f64, max_degree: usize) -> Result<AaaFit> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "AAA needs at least 2 samples, got {n}"
        )));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidInput("rel_tol must be positive".into()));
    }
    if let Some(bad) = samples.iter().position(|s| !s.is_finite()) {
        return Err(Error::InvalidInput(format!("sample {bad} is not finite")));
    }
    check_distinct(samples)?;

    let z: Vec<Complex64> = samples.iter().map(|s| s.z).collect();
    let f: Vec<Complex64> = samples.iter().map(|s| s.f).collect();
    let scale = f.iter().map(|v| v.norm()).fold(0.0, f64::max);

    let mean = f.iter().sum::<Complex64>() / n as f64;
    let first = argmax(f.iter().map(|v| (v - mean).norm()));

    let mut in_support = vec![false; n];
    let mut support_idx: Vec<usize> = Vec::new();
    let mut weights = vec![Complex64::new(1.0, 0.0)];
    let mut history = Vec::new();
    let mut converged = false;
    // Cauchy columns 1/(z_i − z_j), one per support point
    let mut cauchy: Vec<Vec<Complex64>> = Vec::new();
    let mut next = first;

    loop {
        in_support[next] = true;
        support_idx.push(next);
        cauchy.push(z.iter().map(|zi| 1.0 / (zi - z[next])).collect());
        let m = support_idx.len();
        let rest: Vec<usize> = (0..n).filter(|&i| !in_support[i]).collect();
        if rest.is_empty() {
            converged = true;
            history.push(0.0);
            break;
        }

        if m == 1 {
            weights = vec![Complex64::new(1.0, 0.0)];
        } else if rest.len() >= m {
            let loewner = ComplexMatrix::from_fn(rest.len(), m, |r, c| {
                let i = rest[r];
                (f[i] - f[support_idx[c]]) * cauchy[c][i]
            });
            weights = min_singular_vector(&loewner)?.0;
        } else {
            // fewer remaining samples than unknowns; keep the previous fit
            in_support[next] = false;
            support_idx.pop();
            cauchy.pop();
            break;
        }

        let mut worst = 0.0;
        let mut worst_idx = rest[0];
        for &i in &rest {
            let mut num = Complex64::new(0.0, 0.0);
            let mut den = Complex64::new(0.0, 0.0);
            for (c, &j) in support_idx.iter().enumerate() {
                let t = weights[c] * cauchy[c][i];
                num += t * f[j];
                den += t;
            }
            let err = (f[i] - num / den).norm();
            let err = if err.is_nan() { f64::INFINITY } else { err };
            if err > worst {
                worst = err;
                worst_idx = i;
            }
        }
        let rel = if scale > 0.0 { worst / scale } else { 0.0 };
        history.push(rel);
        if rel <= rel_tol {
            converged = true;
            break;
        }
        if m > max_degree {
            break;
        }
        next = worst_idx;
    }

    let rational = BarycentricRational {
        support: support_idx.iter().map(|&i| z[i]).collect(),
        values: support_idx.iter().map(|&i| f[i]).collect(),
        weights,
    };
    Ok(AaaFit {
        rational,
        converged,
        error_history: history,
        scale,
    })
}

fn check_distinct(samples: &[SamplePoint]) -> Result<()> {
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| {
        let (za, zb) = (samples[a].z, samples[b].z);
        za.re.total_cmp(&zb.re).then(za.im.total_cmp(&zb.im))
    });
    for w in order.windows(2) {
        if samples[w[0]].z == samples[w[1]].z {
            return Err(Error::InvalidInput(format!(
                "duplicate sample location {} (indices {} and {})",
                samples[w[0]].z,
                w[0].min(w[1]),
                w[0].max(w[1])
            )));
        }
    }
    Ok(())
}

/// Index of the largest value; ties resolve to the lowest index.
fn argmax(values: impl Iterator<Item = f64>) -> usize {
    let mut best = f64::NEG_INFINITY;
    let mut idx = 0;
    for (i, v) in values.enumerate() {
        if v > best {
            best = v;
            idx = i;
        }
    }
    idx
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleResidue {
    pub pole: Complex64,
    pub residue: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscardReason {
    OutsideRegion,
    SmallResidue,
}

#[derive(Clone, Debug, Default)]
pub struct FilteredPoles {
    pub kept: Vec<PoleResidue>,
    pub discarded: Vec<(PoleResidue, DiscardReason)>,
}

/// Keeps poles for which `inside` holds and whose residue exceeds
/// `residue_tol * scale`, where `scale` is the largest sampled magnitude.
pub fn filter_spurious_poles(
    pairs: &[PoleResidue],
    inside: impl Fn(Complex64) -> bool,
    residue_tol: f64,
    scale: f64,
) -> FilteredPoles {
    let mut out = FilteredPoles::default();
    for p in pairs {
        if !inside(p.pole) {
            out.discarded.push((*p, DiscardReason::OutsideRegion));
        } else if !(p.residue.norm() > residue_tol * scale) {
            out.discarded.push((*p, DiscardReason::SmallResidue));
        } else {
            out.kept.push(*p);
        }
    }
    out
}
