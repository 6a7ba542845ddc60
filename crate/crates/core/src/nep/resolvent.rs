use std::collections::VecDeque;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::function::MatrixFunction;
use crate::aaa::SamplePoint;
use crate::error::{Error, Result};
use crate::numerics::{dotc, lu_factor, LuFactorization};

/// Default number of cached factorizations.
pub const DEFAULT_CACHE_CAPACITY: usize = 64;

/// Upper bound on the memory held by the factorization cache.
const CACHE_BYTE_BUDGET: usize = 256 << 20;

/// Draws `n` i.i.d. complex Gaussians with unit variance (`E|z|² = 1`).
pub fn complex_gaussian_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(s * re, s * im)
        })
        .collect()
}

type Key = (u64, u64);

fn key(k: Complex64) -> Key {
    (k.re.to_bits(), k.im.to_bits())
}

/// Small LRU map from exact `k` to its factorization.
struct FactorCache {
    capacity: usize,
    entries: VecDeque<(Key, Arc<LuFactorization>)>,
}

impl FactorCache {
    fn get(&mut self, k: Key) -> Option<Arc<LuFactorization>> {
        let pos = self.entries.iter().position(|(key, _)| *key == k)?;
        let entry = self.entries.remove(pos)?;
        let lu = entry.1.clone();
        self.entries.push_back(entry);
        Some(lu)
    }

    fn insert(&mut self, k: Key, lu: Arc<LuFactorization>) {
        if self.capacity == 0 {
            return;
        }
        if let Some(pos) = self.entries.iter().position(|(key, _)| *key == k) {
            self.entries.remove(pos);
        }
        while self.entries.len() >= self.capacity {
            self.entries.pop_front();
        }
        self.entries.push_back((k, lu));
    }
}

/// `S(k) = u* F_k⁻¹ v` for fixed random vectors `u`, `v`.
pub struct ScalarizedResolvent {
    nep: Arc<dyn MatrixFunction>,
    u: Vec<Complex64>,
    v: Vec<Complex64>,
    seed: u64,
    cache: Mutex<FactorCache>,
}

impl ScalarizedResolvent {
    /// Draws `u` then `v` from a ChaCha8 stream seeded with `seed`.
    pub fn new(nep: Arc<dyn MatrixFunction>, seed: u64) -> Self {
        let d = nep.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = complex_gaussian_vector(&mut rng, d);
        let v = complex_gaussian_vector(&mut rng, d);
        Self::build(nep, u, v, seed)
    }

    pub fn with_vectors(
        nep: Arc<dyn MatrixFunction>,
        u: Vec<Complex64>,
        v: Vec<Complex64>,
    ) -> Result<Self> {
        let d = nep.dim();
        if u.len() != d || v.len() != d {
            return Err(Error::Dimension(format!(
                "probe vectors must have length {d}, got {} and {}",
                u.len(),
                v.len()
            )));
        }
        let zero = Complex64::new(0.0, 0.0);
        if u.iter().all(|x| *x == zero) || v.iter().all(|x| *x == zero) {
            return Err(Error::InvalidInput("probe vectors must be nonzero".into()));
        }
        Ok(Self::build(nep, u, v, 0))
    }

    fn build(
        nep: Arc<dyn MatrixFunction>,
        u: Vec<Complex64>,
        v: Vec<Complex64>,
        seed: u64,
    ) -> Self {
        let d = nep.dim().max(1);
        let per_factor = 16 * d * d + 1;
        let capacity = DEFAULT_CACHE_CAPACITY.min((CACHE_BYTE_BUDGET / per_factor).max(1));
        Self {
            nep,
            u,
            v,
            seed,
            cache: Mutex::new(FactorCache {
                capacity,
                entries: VecDeque::new(),
            }),
        }
    }

    /// Changes the cache capacity; `0` disables caching.
    pub fn with_cache_capacity(self, capacity: usize) -> Self {
        {
            let mut c = self.cache.lock().unwrap();
            c.capacity = capacity;
            while c.entries.len() > capacity {
                c.entries.pop_front();
            }
        }
        self
    }

    pub fn nep(&self) -> &Arc<dyn MatrixFunction> {
        &self.nep
    }

    pub fn dim(&self) -> usize {
        self.nep.dim()
    }

    pub fn u(&self) -> &[Complex64] {
        &self.u
    }

    pub fn v(&self) -> &[Complex64] {
        &self.v
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// LU factorization of `F_k`, from the cache when available.
    pub fn factor(&self, k: Complex64) -> Result<Arc<LuFactorization>> {
        if !(k.re.is_finite() && k.im.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite k = {k}")));
        }
        if let Some(lu) = self.cache.lock().unwrap().get(key(k)) {
            return Ok(lu);
        }
        let lu = Arc::new(lu_factor(&self.nep.eval(k)?)?);
        self.cache.lock().unwrap().insert(key(k), lu.clone());
        Ok(lu)
    }

    pub fn eval(&self, k: Complex64) -> Result<Complex64> {
        let lu = self.factor(k)?;
        let x = lu.solve(&self.v)?;
        Ok(dotc(&self.u, &x))
    }

    pub fn cached_len(&self) -> usize {
        self.cache.lock().unwrap().entries.len()
    }
}

/// A sample point that could not be evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct SkippedSample {
    pub z: Complex64,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct SampleBatch {
    pub samples: Vec<SamplePoint>,
    pub skipped: Vec<SkippedSample>,
}

/// Evaluates `S` at each point; points where `F_k` is singular (or the value
/// overflows) are skipped and reported.
pub fn sample_resolvent(s: &ScalarizedResolvent, points: &[Complex64]) -> SampleBatch {
    let values: Vec<Result<Complex64>> = points.par_iter().map(|&k| s.eval(k)).collect();
    let mut out = SampleBatch::default();
    for (&z, v) in points.iter().zip(values) {
        match v {
            Ok(f) if f.re.is_finite() && f.im.is_finite() => {
                out.samples.push(SamplePoint::new(z, f))
            }
            Ok(f) => out.skipped.push(SkippedSample {
                z,
                reason: format!("non-finite value {f}"),
            }),
            Err(e) => out.skipped.push(SkippedSample {
                z,
                reason: e.to_string(),
            }),
        }
    }
    for s in &out.skipped {
        log::warn!("skipping sample at k = {}: {}", s.z, s.reason);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nep::function::{diagonal_shift, FnMatrixFunction};
    use crate::numerics::ComplexMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn e1(d: usize) -> Vec<Complex64> {
        let mut v = vec![c(0.0, 0.0); d];
        v[0] = c(1.0, 0.0);
        v
    }

    #[test]
    fn scalar_shift_resolvent() {
        let f = Arc::new(FnMatrixFunction::new(3, |k| {
            ComplexMatrix::identity(3).scale(k - 2.0)
        }));
        let s = ScalarizedResolvent::with_vectors(f, e1(3), e1(3)).unwrap();
        assert!((s.eval(c(3.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn symmetric_diagonal_resolvent_vanishes_midway() {
        let f = Arc::new(diagonal_shift(&[c(1.0, 0.0), c(3.0, 0.0)]));
        let h = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let s = ScalarizedResolvent::with_vectors(f, vec![h, h], vec![h, h]).unwrap();
        let batch = sample_resolvent(&s, &[c(2.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(batch.samples.len(), 1);
        assert!(batch.samples[0].f.norm() < 1e-15);
        assert_eq!(batch.skipped.len(), 1);
        assert_eq!(batch.skipped[0].z, c(1.0, 0.0));
    }

    #[test]
    fn seeded_vectors_are_reproducible() {
        let f: Arc<dyn MatrixFunction> = Arc::new(diagonal_shift(&[c(1.0, 0.0); 5]));
        let a = ScalarizedResolvent::new(f.clone(), 11);
        let b = ScalarizedResolvent::new(f.clone(), 11);
        let other = ScalarizedResolvent::new(f, 12);
        assert_eq!(a.u(), b.u());
        assert_eq!(a.v(), b.v());
        assert_ne!(a.u(), other.u());
    }

    #[test]
    fn gaussian_vectors_have_unit_variance() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = complex_gaussian_vector(&mut rng, 20000);
        let var = v.iter().map(|z| z.norm_sqr()).sum::<f64>() / v.len() as f64;
        assert!((var - 1.0).abs() < 0.05);
    }

    #[test]
    fn rejects_zero_probe() {
        let f = Arc::new(diagonal_shift(&[c(1.0, 0.0); 2]));
        assert!(ScalarizedResolvent::with_vectors(f, vec![c(0.0, 0.0); 2], e1(2)).is_err());
    }

    #[test]
    fn cache_is_bounded_lru() {
        let f = Arc::new(diagonal_shift(&[c(1.0, 0.0); 2]));
        let s = ScalarizedResolvent::with_vectors(f, e1(2), e1(2))
            .unwrap()
            .with_cache_capacity(3);
        for j in 0..5 {
            s.eval(c(2.0 + j as f64, 0.0)).unwrap();
        }
        assert_eq!(s.cached_len(), 3);
        let a = s.factor(c(6.0, 0.0)).unwrap();
        let b = s.factor(c(6.0, 0.0)).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
