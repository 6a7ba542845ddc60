use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::bessel::{jn, jn_sequence};

/// A Dirichlet eigenvalue `k = j_{n,m}` of the unit disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskEigenvalue {
    pub k: f64,
    /// Bessel order `n`.
    pub order: u32,
    /// Zero index `m` (1-based).
    pub index: u32,
    /// 1 for `n = 0`, 2 otherwise.
    pub multiplicity: u32,
}

const SCAN_START: f64 = 0.25;
const SCAN_STEP: f64 = 0.05;

fn bessel_real(n: u32, x: f64) -> f64 {
    jn(n, Complex64::new(x, 0.0)).re
}

fn bisect(n: u32, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = bessel_real(n, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = bessel_real(n, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All distinct zeros `j_{n,m}` of `J_n` in `[a, b]`, sorted, by sign-change
/// bracketing on a fixed grid followed by bisection.
pub fn disk_dirichlet_eigenvalues(a: f64, b: f64) -> Result<Vec<DiskEigenvalue>> {
    if !(a >= 0.5 && b <= 200.0 && a < b) {
        return Err(Error::InvalidInput(format!(
            "disk oracle interval must satisfy 0.5 <= a < b <= 200, got [{a}, {b}]"
        )));
    }
    // j_{n,1} > n, so orders above b contribute nothing
    let nmax = b.ceil() as usize;
    let steps = ((b - SCAN_START) / SCAN_STEP).ceil() as usize + 1;
    let grid: Vec<f64> = (0..=steps)
        .map(|i| SCAN_START + i as f64 * SCAN_STEP)
        .collect();
    let values: Vec<Vec<f64>> = grid
        .iter()
        .map(|&x| {
            jn_sequence(nmax, Complex64::new(x, 0.0))
                .iter()
                .map(|v| v.re)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for n in 0..=nmax {
        let mut index = 0;
        for i in 0..steps {
            let (f0, f1) = (values[i][n], values[i + 1][n]);
            if (f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0) || (f1 == 0.0 && f0 != 0.0) {
                index += 1;
                let k = if f1 == 0.0 {
                    grid[i + 1]
                } else {
                    bisect(n as u32, grid[i], grid[i + 1])
                };
                if k >= a && k <= b {
                    out.push(DiskEigenvalue {
                        k,
                        order: n as u32,
                        index,
                        multiplicity: if n == 0 { 1 } else { 2 },
                    });
                }
            }
        }
    }
    out.sort_by(|x, y| x.k.total_cmp(&y.k));
    out.dedup_by(|x, y| (x.k - y.k).abs() <= 1e-12 * x.k);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zero_of_j0() {
        let z = disk_dirichlet_eigenvalues(2.0, 3.0).unwrap();
        assert_eq!(z.len(), 1);
        assert!((z[0].k - 2.404825557695773).abs() < 1e-14);
        assert_eq!((z[0].order, z[0].index, z[0].multiplicity), (0, 1, 1));
    }

    #[test]
    fn known_zeros() {
        let z = disk_dirichlet_eigenvalues(1.0, 6.0).unwrap();
        let ks: Vec<f64> = z.iter().map(|e| e.k).collect();
        let expected = [
            2.404825557695773,
            3.831705970207512,
            5.135622301840683,
            5.520078110286311,
        ];
        assert_eq!(ks.len(), expected.len());
        for (a, b) in ks.iter().zip(expected) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn count_on_one_to_hundred() {
        assert_eq!(disk_dirichlet_eigenvalues(1.0, 100.0).unwrap().len(), 1244);
    }

    #[test]
    fn matches_dense_scan() {
        let z = disk_dirichlet_eigenvalues(1.0, 10.0).unwrap();
        let mut count = 0;
        for n in 0..=15u32 {
            let mut prev = bessel_real(n, 1.0);
            let mut x = 1.0;
            while x < 10.0 {
                x += 1e-4;
                let cur = bessel_real(n, x);
                if (prev < 0.0) != (cur < 0.0) {
                    count += 1;
                }
                prev = cur;
            }
        }
        assert_eq!(z.len(), count);
    }

    #[test]
    fn rejects_out_of_range_interval() {
        assert!(disk_dirichlet_eigenvalues(0.1, 3.0).is_err());
        assert!(disk_dirichlet_eigenvalues(5.0, 250.0).is_err());
        assert!(disk_dirichlet_eigenvalues(5.0, 4.0).is_err());
    }
}
