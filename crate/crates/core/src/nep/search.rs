use std::collections::HashMap;
use std::sync::Mutex;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::record::{EigenvalueRecord, RecordStatus};
use super::refine::{
    eigenvectors_from_lu, secant_refine, SecantOutcome, SecantStatus, DEFAULT_SECANT_MAX_ITERS,
    DEFAULT_SECANT_TOL,
};
use super::region::SearchRegion;
use super::resolvent::{sample_resolvent, ScalarizedResolvent, SkippedSample};
use crate::aaa::{
    aaa_fit, filter_spurious_poles, DiscardReason, PoleResidue, SamplePoint, DEFAULT_MAX_DEGREE,
    DEFAULT_RESIDUE_TOL,
};
use crate::error::Result;
use crate::numerics::DEFAULT_PIVOT_TOL;

/// Relative width of the band around a child region inside which poles count
/// for that child. Poles in the band are counted by both neighbours, for
/// parent and child alike, so counts stay consistent across boundaries.
pub const COUNT_BAND: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// AAA stopping tolerance relative to `max |S|` on the samples.
    pub rel_tol: f64,
    pub max_degree: usize,
    pub residue_tol: f64,
    /// A child is accepted only if its fit error is at most this.
    pub accept_tol: f64,
    pub max_depth: usize,
    pub secant_tol: f64,
    pub secant_max_iters: usize,
    /// Confirmation threshold on `|1/S(k)|` relative to the sample median.
    pub screen_ratio: f64,
    /// Relative growth of the root region used when screening.
    pub screen_inflation: f64,
    pub compute_eigenvectors: bool,
    pub pivot_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_degree: DEFAULT_MAX_DEGREE,
            residue_tol: DEFAULT_RESIDUE_TOL,
            accept_tol: 1e-8,
            max_depth: 12,
            secant_tol: DEFAULT_SECANT_TOL,
            secant_max_iters: DEFAULT_SECANT_MAX_ITERS,
            screen_ratio: 1e-6,
            screen_inflation: 1e-2,
            compute_eigenvectors: false,
            pivot_tol: DEFAULT_PIVOT_TOL,
        }
    }
}

/// Result of a basic search on one region.
#[derive(Clone, Debug)]
pub struct BasicSearchOutcome {
    /// Poles inside the region (within the counting band) that survived the
    /// residue filter.
    pub poles: Vec<PoleResidue>,
    pub discarded: Vec<(PoleResidue, DiscardReason)>,
    pub converged: bool,
    pub fit_error: f64,
    pub support_points: usize,
    pub samples: Vec<SamplePoint>,
    pub skipped: Vec<SkippedSample>,
}

/// A sample exceeding both boundary neighbours by this factor is taken to sit
/// on a pole: it is left out of the fit and becomes a pole candidate itself.
pub const ON_POLE_RATIO: f64 = 1e6;

/// Caches resolvent samples (and failures) by exact location across regions.
#[derive(Default)]
struct SampleMemo {
    values: Mutex<HashMap<(u64, u64), std::result::Result<Complex64, String>>>,
}

impl SampleMemo {
    fn sample(
        &self,
        s: &ScalarizedResolvent,
        points: &[Complex64],
    ) -> (Vec<SamplePoint>, Vec<SkippedSample>) {
        let key = |z: &Complex64| (z.re.to_bits(), z.im.to_bits());
        let missing: Vec<Complex64> = {
            let map = self.values.lock().unwrap();
            points
                .iter()
                .filter(|z| !map.contains_key(&key(z)))
                .copied()
                .collect()
        };
        let batch = sample_resolvent(s, &missing);
        let mut map = self.values.lock().unwrap();
        for p in &batch.samples {
            map.insert(key(&p.z), Ok(p.f));
        }
        for p in &batch.skipped {
            map.insert(key(&p.z), Err(p.reason.clone()));
        }
        let mut samples = Vec::with_capacity(points.len());
        let mut skipped = Vec::new();
        for z in points {
            match map.get(&key(z)) {
                Some(Ok(f)) => samples.push(SamplePoint::new(*z, *f)),
                Some(Err(reason)) => skipped.push(SkippedSample {
                    z: *z,
                    reason: reason.clone(),
                }),
                None => {}
            }
        }
        (samples, skipped)
    }

    fn len(&self) -> usize {
        self.values.lock().unwrap().len()
    }
}

fn counting_band(region: &SearchRegion) -> f64 {
    COUNT_BAND * region.diameter()
}

/// Basic search: sample `S` on the region boundary (or interval), fit AAA and
/// return the poles inside.
pub fn basic_search(
    s: &ScalarizedResolvent,
    region: &SearchRegion,
    opts: &SearchOptions,
) -> Result<BasicSearchOutcome> {
    basic_search_memo(s, region, opts, &SampleMemo::default())
}

fn basic_search_memo(
    s: &ScalarizedResolvent,
    region: &SearchRegion,
    opts: &SearchOptions,
    memo: &SampleMemo,
) -> Result<BasicSearchOutcome> {
    let (samples, skipped) = memo.sample(s, &region.boundary_points());
    let closed = region.kind() == super::region::RegionKind::Rectangle;
    let (fit_samples, on_pole) = split_on_pole_samples(&samples, closed);
    let fit = aaa_fit(&fit_samples, opts.rel_tol, opts.max_degree)?;
    let pairs = fit.rational.poles_and_residues()?;
    let band = counting_band(region);
    let mut filtered = filter_spurious_poles(
        &pairs,
        |z| region.contains_inflated(z, band),
        opts.residue_tol,
        fit.scale,
    );
    // samples that hit a pole (exactly singular or numerically so)
    for z in skipped
        .iter()
        .map(|k| k.z)
        .chain(on_pole.iter().map(|p| p.z))
    {
        if region.contains_inflated(z, band)
            && !filtered.kept.iter().any(|p| (p.pole - z).norm() <= band)
        {
            log::debug!("sample at {z} sits on a pole");
            filtered.kept.push(PoleResidue {
                pole: z,
                residue: Complex64::new(0.0, 0.0),
            });
        }
    }
    filtered.kept.sort_by(|a, b| {
        a.pole
            .re
            .total_cmp(&b.pole.re)
            .then(a.pole.im.total_cmp(&b.pole.im))
    });
    Ok(BasicSearchOutcome {
        poles: filtered.kept,
        discarded: filtered.discarded,
        converged: fit.converged,
        fit_error: fit.final_error(),
        support_points: fit.rational.len(),
        samples,
        skipped,
    })
}

/// Separates samples that exceed both neighbours along the boundary by
/// [`ON_POLE_RATIO`]; `closed` treats the sequence as cyclic.
fn split_on_pole_samples(
    samples: &[SamplePoint],
    closed: bool,
) -> (Vec<SamplePoint>, Vec<SamplePoint>) {
    let n = samples.len();
    if n < 3 {
        return (samples.to_vec(), Vec::new());
    }
    let mut keep = Vec::with_capacity(n);
    let mut poles = Vec::new();
    for i in 0..n {
        let mag = samples[i].f.norm();
        let left = if i > 0 {
            Some(samples[i - 1].f.norm())
        } else if closed {
            Some(samples[n - 1].f.norm())
        } else {
            None
        };
        let right = if i + 1 < n {
            Some(samples[i + 1].f.norm())
        } else if closed {
            Some(samples[0].f.norm())
        } else {
            None
        };
        let neighbour = left.into_iter().chain(right).fold(0.0, f64::max);
        if mag > ON_POLE_RATIO * neighbour {
            poles.push(samples[i]);
        } else {
            keep.push(samples[i]);
        }
    }
    if keep.len() < 2 {
        return (samples.to_vec(), Vec::new());
    }
    (keep, poles)
}

/// Leaf of the subdivision tree.
#[derive(Clone, Debug)]
pub struct SearchLeaf {
    pub region: SearchRegion,
    pub path: Vec<u32>,
    /// Parent's pole count for this region.
    pub expected_count: usize,
    pub outcome: BasicSearchOutcome,
    /// False if the depth limit was hit before the counts agreed.
    pub resolved: bool,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    /// Deduplicated records sorted by real then imaginary part.
    pub records: Vec<EigenvalueRecord>,
    pub leaves: Vec<SearchLeaf>,
    pub samples_evaluated: usize,
    pub skipped: Vec<SkippedSample>,
    pub seed: u64,
    pub elapsed_seconds: f64,
}

impl SearchReport {
    pub fn confirmed(&self) -> impl Iterator<Item = &EigenvalueRecord> {
        self.records.iter().filter(|r| r.is_confirmed())
    }

    /// Confirmed eigenvalues inside the root region proper.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.confirmed()
            .filter(|r| r.in_region)
            .map(|r| r.value)
            .collect()
    }

    pub fn has_unconverged(&self) -> bool {
        self.records
            .iter()
            .any(|r| r.status == RecordStatus::Unconverged)
    }

    pub fn unresolved_leaves(&self) -> impl Iterator<Item = &SearchLeaf> {
        self.leaves.iter().filter(|l| !l.resolved)
    }

    pub fn seconds_per_eigenvalue(&self) -> f64 {
        let n = self.confirmed().count();
        if n == 0 {
            f64::NAN
        } else {
            self.elapsed_seconds / n as f64
        }
    }
}

/// Adaptive search: dyadic subdivision until every child's pole count matches
/// the parent's count of poles in it, then secant refinement and screening
/// of every pole found; the union over leaves is deduplicated.
pub fn adaptive_search(
    s: &ScalarizedResolvent,
    region: &SearchRegion,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    let start = Instant::now();
    let memo = SampleMemo::default();
    let root = basic_search_memo(s, region, opts, &memo)?;
    let mut skipped = root.skipped.clone();
    let leaves = subdivide(s, region, &root, 0, &[], opts, &memo)?;
    for leaf in &leaves {
        skipped.extend(leaf.outcome.skipped.iter().cloned());
    }
    skipped.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    skipped.dedup();

    let candidates: Vec<(usize, PoleResidue)> = leaves
        .iter()
        .enumerate()
        .flat_map(|(i, l)| l.outcome.poles.iter().map(move |p| (i, *p)))
        .collect();
    let mut records: Vec<EigenvalueRecord> = candidates
        .par_iter()
        .map(|&(i, p)| refine_candidate(s, region, &leaves[i], p, opts))
        .collect::<Result<_>>()?;

    records = deduplicate(records);
    if opts.compute_eigenvectors {
        attach_eigenvectors(s, &mut records, opts)?;
    }
    Ok(SearchReport {
        records,
        leaves,
        samples_evaluated: memo.len(),
        skipped,
        seed: s.seed(),
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Basic search on `region` alone (no subdivision), followed by the same
/// refinement, screening and deduplication as [`adaptive_search`].
pub fn basic_search_report(
    s: &ScalarizedResolvent,
    region: &SearchRegion,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    let start = Instant::now();
    let memo = SampleMemo::default();
    let root = basic_search_memo(s, region, opts, &memo)?;
    let leaf = SearchLeaf {
        region: region.clone(),
        path: Vec::new(),
        expected_count: root.poles.len(),
        outcome: root,
        resolved: true,
    };
    let records: Vec<EigenvalueRecord> = leaf
        .outcome
        .poles
        .par_iter()
        .map(|p| refine_candidate(s, region, &leaf, *p, opts))
        .collect::<Result<_>>()?;
    let mut records = deduplicate(records);
    if opts.compute_eigenvectors {
        attach_eigenvectors(s, &mut records, opts)?;
    }
    Ok(SearchReport {
        records,
        skipped: leaf.outcome.skipped.clone(),
        leaves: vec![leaf],
        samples_evaluated: memo.len(),
        seed: s.seed(),
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

fn attach_eigenvectors(
    s: &ScalarizedResolvent,
    records: &mut [EigenvalueRecord],
    opts: &SearchOptions,
) -> Result<()> {
    records.par_iter_mut().try_for_each(|r| -> Result<()> {
        if r.is_confirmed() {
            let lu = s.factor(r.value)?;
            r.nullvectors = Some(eigenvectors_from_lu(&lu, r.value, opts.pivot_tol));
        }
        Ok(())
    })
}

fn subdivide(
    s: &ScalarizedResolvent,
    region: &SearchRegion,
    outcome: &BasicSearchOutcome,
    depth: usize,
    path: &[u32],
    opts: &SearchOptions,
    memo: &SampleMemo,
) -> Result<Vec<SearchLeaf>> {
    let children = region.children();
    let nested: Vec<Vec<SearchLeaf>> = children
        .par_iter()
        .enumerate()
        .map(|(i, child)| -> Result<Vec<SearchLeaf>> {
            let band = counting_band(child);
            let expected = outcome.poles.iter().filter(|p| child.contains_inflated(p.pole, band)).count();
            let co = basic_search_memo(s, child, opts, memo)?;
            let mut child_path = path.to_vec();
            child_path.push(i as u32);
            let fit_ok = co.converged || co.fit_error <= opts.accept_tol;
            if fit_ok && co.poles.len() == expected {
                log::debug!("accepted region {child_path:?} with {expected} poles");
                return Ok(vec![SearchLeaf {
                    region: child.clone(),
                    path: child_path,
                    expected_count: expected,
                    outcome: co,
                    resolved: true,
                }]);
            }
            if depth + 1 >= opts.max_depth {
                log::warn!(
                    "region {child_path:?} unresolved at depth {}: parent count {expected}, child count {}, fit error {:e}",
                    depth + 1,
                    co.poles.len(),
                    co.fit_error
                );
                return Ok(vec![SearchLeaf {
                    region: child.clone(),
                    path: child_path,
                    expected_count: expected,
                    outcome: co,
                    resolved: false,
                }]);
            }
            subdivide(s, child, &co, depth + 1, &child_path, opts, memo)
        })
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn refine_candidate(
    s: &ScalarizedResolvent,
    root: &SearchRegion,
    leaf: &SearchLeaf,
    pole: PoleResidue,
    opts: &SearchOptions,
) -> Result<EigenvalueRecord> {
    let guard = leaf.region.guard_box();
    let out = secant_refine(
        s,
        pole.pole,
        opts.secant_max_iters,
        opts.secant_tol,
        Some(&guard),
    )?;
    let mut record = record_from_secant(&out, pole.residue, leaf.path.clone(), root);
    record.unresolved_region = !leaf.resolved;
    screen(
        std::slice::from_mut(&mut record),
        s,
        root,
        &leaf.outcome.samples,
        opts,
    )?;
    Ok(record)
}

fn record_from_secant(
    out: &SecantOutcome,
    residue: Complex64,
    path: Vec<u32>,
    root: &SearchRegion,
) -> EigenvalueRecord {
    EigenvalueRecord {
        value: out.k,
        error_estimate: out.error_estimate(),
        residue,
        status: RecordStatus::Unconverged,
        region_path: path,
        nullvectors: None,
        in_region: root.contains(out.k),
        secant_status: out.status,
        secant_history: out.history.clone(),
        unresolved_region: false,
    }
}

/// Median of `|1/S|` over the samples.
pub fn median_reciprocal(samples: &[SamplePoint]) -> f64 {
    let mut v: Vec<f64> = samples
        .iter()
        .map(|p| 1.0 / p.f.norm())
        .filter(|x| !x.is_nan())
        .collect();
    if v.is_empty() {
        return f64::INFINITY;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Sets the status of each record: confirmed iff the secant converged, the
/// value lies in the slightly inflated region and `|1/S(k)|` is below
/// `screen_ratio` times the median of `|1/S|` over `samples`.
pub fn screen(
    records: &mut [EigenvalueRecord],
    s: &ScalarizedResolvent,
    region: &SearchRegion,
    samples: &[SamplePoint],
    opts: &SearchOptions,
) -> Result<()> {
    let median = median_reciprocal(samples);
    let grow = opts.screen_inflation * region.diameter();
    for r in records.iter_mut() {
        r.in_region = region.contains(r.value);
        r.status = match r.secant_status {
            SecantStatus::MaxIterations => RecordStatus::Unconverged,
            SecantStatus::Diverged | SecantStatus::LeftGuardBox => RecordStatus::Spurious,
            SecantStatus::Converged => {
                let recip = match s.eval(r.value) {
                    Ok(v) => 1.0 / v.norm(),
                    Err(crate::Error::Singular { .. }) => 0.0,
                    Err(e) => return Err(e),
                };
                let inside = region.contains_inflated(r.value, grow);
                if inside && recip < opts.screen_ratio * median {
                    if r.unresolved_region {
                        RecordStatus::Unconverged
                    } else {
                        RecordStatus::Confirmed
                    }
                } else {
                    RecordStatus::Spurious
                }
            }
        };
    }
    Ok(())
}

fn status_rank(s: RecordStatus) -> u8 {
    match s {
        RecordStatus::Confirmed => 0,
        RecordStatus::Unconverged => 1,
        RecordStatus::Spurious => 2,
    }
}

/// Merges records closer than ten times their larger error estimate (with a
/// rounding-level floor), keeping the best status and then the smallest
/// error estimate.
pub fn deduplicate(mut records: Vec<EigenvalueRecord>) -> Vec<EigenvalueRecord> {
    records.sort_by(|a, b| {
        status_rank(a.status)
            .cmp(&status_rank(b.status))
            .then(a.error_estimate.total_cmp(&b.error_estimate))
            .then(a.value.re.total_cmp(&b.value.re))
            .then(a.value.im.total_cmp(&b.value.im))
    });
    let mut kept: Vec<EigenvalueRecord> = Vec::new();
    for r in records {
        let dup = kept.iter().any(|k| {
            let tol = (10.0 * k.error_estimate.max(r.error_estimate))
                .max(64.0 * f64::EPSILON * k.value.norm().max(1.0));
            (k.value - r.value).norm() <= tol
        });
        if !dup {
            kept.push(r);
        }
    }
    kept.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nep::function::{diagonal_shift, FnMatrixFunction, MatrixFunction};
    use crate::numerics::ComplexMatrix;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn resolvent(f: impl MatrixFunction + 'static, seed: u64) -> ScalarizedResolvent {
        ScalarizedResolvent::new(Arc::new(f), seed)
    }

    #[test]
    fn basic_search_interval_single_pole() {
        let s = resolvent(
            FnMatrixFunction::new(3, |k| ComplexMatrix::identity(3).scale(k - 2.0)),
            1,
        );
        let r = SearchRegion::interval(0.0, 4.0, 50).unwrap();
        let out = basic_search(&s, &r, &SearchOptions::default()).unwrap();
        assert_eq!(out.poles.len(), 1);
        assert!((out.poles[0].pole - c(2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn basic_search_rectangle_two_poles() {
        let s = resolvent(diagonal_shift(&[c(1.0, 0.0), c(3.0, 0.0)]), 2);
        let r = SearchRegion::rectangle(c(0.0, -1.0), c(4.0, 1.0), 100).unwrap();
        let out = basic_search(&s, &r, &SearchOptions::default()).unwrap();
        let mut p: Vec<f64> = out.poles.iter().map(|p| p.pole.re).collect();
        p.sort_by(f64::total_cmp);
        assert_eq!(p.len(), 2);
        assert!((p[0] - 1.0).abs() < 1e-10 && (p[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn basic_report_refines_every_pole() {
        let s = resolvent(
            diagonal_shift(&[c(1.0, -0.2), c(2.5, -0.1), c(3.2, -0.4)]),
            7,
        );
        let r = SearchRegion::rectangle(c(0.0, -1.0), c(4.0, 0.5), 48).unwrap();
        let opts = SearchOptions {
            compute_eigenvectors: true,
            ..Default::default()
        };
        let report = basic_search_report(&s, &r, &opts).unwrap();
        assert_eq!(report.leaves.len(), 1);
        assert!(report.leaves[0].path.is_empty() && report.leaves[0].resolved);
        let e = report.eigenvalues();
        assert_eq!(e.len(), 3);
        for (got, want) in e.iter().zip([c(1.0, -0.2), c(2.5, -0.1), c(3.2, -0.4)]) {
            assert!((got - want).norm() < 1e-13, "{got}");
        }
        assert!(report
            .confirmed()
            .all(|r| r.nullvectors.as_ref().is_some_and(|v| v.len() == 1)));
    }

    #[test]
    fn adaptive_single_pole() {
        let s = resolvent(
            FnMatrixFunction::new(2, |k| ComplexMatrix::identity(2).scale(k - 2.0)),
            3,
        );
        let r = SearchRegion::interval(0.0, 16.0, 40).unwrap();
        let rep = adaptive_search(&s, &r, &SearchOptions::default()).unwrap();
        let confirmed: Vec<_> = rep.confirmed().collect();
        assert_eq!(confirmed.len(), 1, "{:?}", rep.records);
        assert!((confirmed[0].value - c(2.0, 0.0)).norm() < 1e-12);
        assert!(!rep.has_unconverged());
    }

    #[test]
    fn adaptive_many_poles_with_eigenvectors() {
        let roots: Vec<Complex64> = (0..12)
            .map(|j| c(0.3 + 0.7 * j as f64, -0.1 * (j % 3) as f64))
            .collect();
        let s = resolvent(diagonal_shift(&roots), 4);
        let r = SearchRegion::rectangle(c(0.0, -0.5), c(8.0, 0.5), 24).unwrap();
        let opts = SearchOptions {
            compute_eigenvectors: true,
            ..Default::default()
        };
        let rep = adaptive_search(&s, &r, &opts).unwrap();
        let found = rep.eigenvalues();
        assert_eq!(found.len(), roots.len(), "{:?}", rep.records);
        for root in &roots {
            assert!(found.iter().any(|z| (z - root).norm() < 1e-12));
        }
        for rec in rep.confirmed() {
            assert_eq!(rec.nullspace_dim(), Some(1));
        }
    }

    #[test]
    fn dedup_merges_close_records() {
        let mk = |v: f64, err: f64, status| EigenvalueRecord {
            value: c(v, 0.0),
            error_estimate: err,
            residue: c(1.0, 0.0),
            status,
            region_path: vec![],
            nullvectors: None,
            in_region: true,
            secant_status: SecantStatus::Converged,
            secant_history: vec![err],
            unresolved_region: false,
        };
        let out = deduplicate(vec![
            mk(2.0, 1e-13, RecordStatus::Confirmed),
            mk(2.0 + 5e-13, 1e-13, RecordStatus::Confirmed),
            mk(2.0 + 1e-14, 1e-15, RecordStatus::Spurious),
            mk(3.0, 1e-13, RecordStatus::Confirmed),
        ]);
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|r| r.is_confirmed()));
    }

    #[test]
    fn screen_rejects_froissart_pole() {
        // S = 1/(k-1) has one real pole; a fake candidate at 0.5 drifts to 1
        // or out of the guard box and must not be confirmed at 0.5.
        let s = resolvent(diagonal_shift(&[c(1.0, 0.0)]), 5);
        let r = SearchRegion::rectangle(c(0.0, -0.5), c(2.0, 0.5), 40).unwrap();
        let samples: Vec<_> = r
            .boundary_points()
            .iter()
            .map(|&z| SamplePoint::new(z, s.eval(z).unwrap()))
            .collect();
        let guard = r.guard_box();
        let out = secant_refine(&s, c(0.5, 0.3), 50, 1e-12, Some(&guard)).unwrap();
        let mut rec = vec![record_from_secant(&out, c(1e-14, 0.0), vec![], &r)];
        screen(&mut rec, &s, &r, &samples, &SearchOptions::default()).unwrap();
        assert!(!(rec[0].is_confirmed() && (rec[0].value - c(0.5, 0.3)).norm() < 0.1));
    }

    #[test]
    fn screen_flags_out_of_region_pole() {
        let s = resolvent(diagonal_shift(&[c(4.01, 0.0)]), 6);
        let r = SearchRegion::interval(0.0, 4.0, 50).unwrap();
        let samples: Vec<_> = r
            .boundary_points()
            .iter()
            .map(|&z| SamplePoint::new(z, s.eval(z).unwrap()))
            .collect();
        let out = secant_refine(&s, c(4.02, 0.0), 50, 1e-12, Some(&r.guard_box())).unwrap();
        let mut rec = vec![record_from_secant(&out, c(1.0, 0.0), vec![], &r)];
        screen(&mut rec, &s, &r, &samples, &SearchOptions::default()).unwrap();
        assert!(rec[0].is_confirmed());
        assert!(!rec[0].in_region);
    }
}
