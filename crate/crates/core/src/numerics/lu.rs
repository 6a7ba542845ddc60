//! Gaussian elimination with partial pivoting, and the LU-based nullspace
//! construction used to extract eigenvectors at converged eigenvalues.

use num_complex::Complex64;

use super::matrix::{vec_norm, ComplexMatrix};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Packed factorization `P A = L U`.
///
/// `factors` holds `U` on and above the diagonal and the unit-lower factor
/// `L` strictly below it, row-major. Row `i` of the packed array corresponds to
/// row `permutation[i]` of the original matrix.
#[derive(Clone, Debug)]
pub struct LuFactorization {
    n: usize,
    factors: Vec<Complex64>,
    permutation: Vec<usize>,
    pivot_magnitudes: Vec<f64>,
}

/// Factors a square matrix with row pivoting on the largest-magnitude entry
/// of each column. Exact zero pivots are recorded, not rejected.
pub fn lu_factor(a: &ComplexMatrix) -> Result<LuFactorization> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "LU needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let n = a.rows();
    let mut lu = a.as_slice().to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::with_capacity(n);

    for k in 0..n {
        let mut p = k;
        let mut best = lu[k * n + k].norm_sqr();
        for i in k + 1..n {
            let v = lu[i * n + k].norm_sqr();
            if v > best {
                best = v;
                p = i;
            }
        }
        if p != k {
            for j in 0..n {
                lu.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
        }
        let pivot = lu[k * n + k];
        pivots.push(pivot.norm());
        if pivot == ZERO {
            // column already eliminated; leave multipliers at zero
            continue;
        }
        let inv = ONE / pivot;
        let (head, tail) = lu.split_at_mut((k + 1) * n);
        let pivot_row = &head[k * n + k + 1..(k + 1) * n];
        for row in tail.chunks_exact_mut(n) {
            let l = row[k] * inv;
            row[k] = l;
            if l == ZERO {
                continue;
            }
            for (x, u) in row[k + 1..].iter_mut().zip(pivot_row) {
                *x -= l * u;
            }
        }
    }

    Ok(LuFactorization {
        n,
        factors: lu,
        permutation: perm,
        pivot_magnitudes: pivots,
    })
}

/// Solves `A x = b` using a factorization of `A`.
pub fn lu_solve(f: &LuFactorization, b: &[Complex64]) -> Result<Vec<Complex64>> {
    f.solve(b)
}

impl LuFactorization {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// `|U_kk|` in elimination order.
    pub fn pivot_magnitudes(&self) -> &[f64] {
        &self.pivot_magnitudes
    }

    pub fn max_pivot(&self) -> f64 {
        self.pivot_magnitudes.iter().copied().fold(0.0, f64::max)
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.factors[i * self.n + j]
    }

    pub fn lower(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, self.n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.at(i, j),
            std::cmp::Ordering::Equal => ONE,
            std::cmp::Ordering::Less => ZERO,
        })
    }

    pub fn upper(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(
            self.n,
            self.n,
            |i, j| if i <= j { self.at(i, j) } else { ZERO },
        )
    }

    /// Applies the row permutation: returns `P A`.
    pub fn permute_rows(&self, a: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, self.n, |i, j| a[(self.permutation[i], j)])
    }

    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {n}",
                b.len()
            )));
        }
        if let Some(step) = self.pivot_magnitudes.iter().position(|&p| p == 0.0) {
            return Err(Error::Singular { step });
        }
        let mut x: Vec<Complex64> = self.permutation.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let row = &self.factors[i * n..i * n + i];
            let s: Complex64 = row.iter().zip(&x[..i]).map(|(l, y)| l * y).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = &self.factors[i * n + i + 1..(i + 1) * n];
            let s: Complex64 = row.iter().zip(&x[i + 1..]).map(|(u, y)| u * y).sum();
            x[i] = (x[i] - s) / self.at(i, i);
        }
        Ok(x)
    }

    /// Solves `A^H x = b`, used for left null vectors and adjoint solves.
    pub fn solve_adjoint(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {n}",
                b.len()
            )));
        }
        if let Some(step) = self.pivot_magnitudes.iter().position(|&p| p == 0.0) {
            return Err(Error::Singular { step });
        }
        // A^H = U^H L^H P, so solve U^H y = b, L^H z = y, x = P^T z.
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.at(k, i).conj() * y[k];
            }
            y[i] = s / self.at(i, i).conj();
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= self.at(k, i).conj() * y[k];
            }
            y[i] = s;
        }
        let mut x = vec![ZERO; n];
        for (i, &p) in self.permutation.iter().enumerate() {
            x[p] = y[i];
        }
        Ok(x)
    }

    /// Indices of pivots with `|U_kk| <= pivot_tol * max |U_jj|`.
    pub fn small_pivots(&self, pivot_tol: f64) -> Vec<usize> {
        let thresh = pivot_tol * self.max_pivot();
        self.pivot_magnitudes
            .iter()
            .enumerate()
            .filter(|(_, &p)| p <= thresh)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Null vectors from the `U` factor, one per near-zero pivot.
///
/// For each flagged pivot column `c` the vector is `e_c` on the flagged
/// coordinates, completed on the remaining coordinates by back substitution in
/// the triangular system obtained from `U` after deleting every flagged row and
/// column, with right-hand side `-U[R, c]`. Vectors are returned with unit
/// Euclidean norm.
pub fn nullspace_from_lu(f: &LuFactorization, pivot_tol: f64) -> Vec<Vec<Complex64>> {
    let n = f.n;
    let flagged = f.small_pivots(pivot_tol);
    if flagged.is_empty() {
        return Vec::new();
    }
    let mut is_flagged = vec![false; n];
    for &c in &flagged {
        is_flagged[c] = true;
    }
    let kept: Vec<usize> = (0..n).filter(|&i| !is_flagged[i]).collect();

    flagged
        .iter()
        .map(|&c| {
            let mut v = vec![ZERO; n];
            v[c] = ONE;
            // U restricted to kept rows/cols is upper triangular in the kept order.
            for (pos, &i) in kept.iter().enumerate().rev() {
                let mut s = -f.at(i, c);
                for &j in &kept[pos + 1..] {
                    s -= f.at(i, j) * v[j];
                }
                v[i] = s / f.at(i, i);
            }
            let norm = vec_norm(&v);
            v.iter_mut().for_each(|x| *x /= norm);
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, cl: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(r, cl, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn reconstruction_error(a: &ComplexMatrix, f: &LuFactorization) -> f64 {
        let pa = f.permute_rows(a);
        let lu = f.lower().matmul(&f.upper());
        pa.add_scaled(&lu, c(-1.0, 0.0)).max_abs()
    }

    #[test]
    fn scalar_factorization() {
        let a = ComplexMatrix::from_real_rows(&[&[2.0]]).unwrap();
        let f = lu_factor(&a).unwrap();
        assert_eq!(f.lower()[(0, 0)], ONE);
        assert_eq!(f.upper()[(0, 0)], c(2.0, 0.0));
        assert_eq!(f.permutation(), &[0]);
    }

    #[test]
    fn permutation_matrix_swaps_rows() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let f = lu_factor(&a).unwrap();
        assert_eq!(f.permutation(), &[1, 0]);
        assert_eq!(f.upper(), ComplexMatrix::identity(2));
    }

    #[test]
    fn random_three_by_three_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 3, 3);
        let f = lu_factor(&a).unwrap();
        assert!(reconstruction_error(&a, &f) < 1e-14);
    }

    #[test]
    fn reconstruction_over_many_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let d = rng.gen_range(1..=50);
            let a = random_matrix(&mut rng, d, d);
            let f = lu_factor(&a).unwrap();
            assert!(reconstruction_error(&a, &f) < 1e-12 * a.max_abs());
            let mut seen = vec![false; d];
            f.permutation().iter().for_each(|&p| seen[p] = true);
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn errors_on_bad_input() {
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(lu_factor(&rect), Err(Error::Dimension(_))));
        let mut a = ComplexMatrix::identity(2);
        a[(0, 1)] = c(f64::INFINITY, 0.0);
        assert!(matches!(lu_factor(&a), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn zero_pivots_are_recorded_and_solve_rejects_them() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        let f = lu_factor(&a).unwrap();
        assert_eq!(f.pivot_magnitudes(), &[1.0, 0.0]);
        assert!(matches!(
            f.solve(&[ONE, ONE]),
            Err(Error::Singular { step: 1 })
        ));
    }

    #[test]
    fn solve_identity_and_diagonal() {
        let f = lu_factor(&ComplexMatrix::identity(3)).unwrap();
        let b = vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 7.0)];
        assert_eq!(lu_solve(&f, &b).unwrap(), b);

        let d = ComplexMatrix::from_diagonal(&[c(2.0, 0.0), c(0.0, 4.0)]);
        let x = lu_solve(&lu_factor(&d).unwrap(), &[c(2.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!((x[0] - ONE).norm() < 1e-15 && (x[1] - ONE).norm() < 1e-15);
    }

    #[test]
    fn solve_recovers_known_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 5, 5);
        let x0: Vec<Complex64> = (0..5).map(|i| c(i as f64, 1.0 - i as f64)).collect();
        let b = a.mul_vec(&x0);
        let x = lu_solve(&lu_factor(&a).unwrap(), &b).unwrap();
        for (u, v) in x.iter().zip(&x0) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn adjoint_solve_matches_adjoint_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_matrix(&mut rng, 6, 6);
        let b: Vec<Complex64> = (0..6).map(|i| c(1.0, i as f64)).collect();
        let x = lu_factor(&a).unwrap().solve_adjoint(&b).unwrap();
        let r = a.adjoint().mul_vec(&x);
        for (u, v) in r.iter().zip(&b) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn nullspace_of_diagonal() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        let ns = nullspace_from_lu(&lu_factor(&a).unwrap(), 1e-10);
        assert_eq!(ns.len(), 1);
        assert!(ns[0][0].norm() < 1e-15 && (ns[0][1].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        let ns = nullspace_from_lu(&lu_factor(&a).unwrap(), 1e-10);
        assert_eq!(ns.len(), 1);
        // proportional to (-2, 1)
        let v = &ns[0];
        assert!((v[0] + 2.0 * v[1]).norm() < 1e-14);
    }

    #[test]
    fn nullspace_of_full_rank_is_empty() {
        let f = lu_factor(&ComplexMatrix::identity(4)).unwrap();
        assert!(nullspace_from_lu(&f, 1e-10).is_empty());
    }

    #[test]
    fn nullspace_from_projector_construction() {
        // A = B P with P the orthogonal projector onto the complement of span{q1, q2}.
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let b = random_matrix(&mut rng, 4, 4);
        let q = random_matrix(&mut rng, 4, 2);
        // Gram-Schmidt on the columns of q
        let mut q1 = q.column(0);
        let n1 = vec_norm(&q1);
        q1.iter_mut().for_each(|x| *x /= n1);
        let mut q2 = q.column(1);
        let proj: Complex64 = q1.iter().zip(&q2).map(|(a, b)| a.conj() * b).sum();
        q2.iter_mut().zip(&q1).for_each(|(x, y)| *x -= proj * y);
        let n2 = vec_norm(&q2);
        q2.iter_mut().for_each(|x| *x /= n2);
        let p = ComplexMatrix::from_fn(4, 4, |i, j| {
            let id = if i == j { ONE } else { ZERO };
            id - q1[i] * q1[j].conj() - q2[i] * q2[j].conj()
        });
        let a = b.matmul(&p);
        let f = lu_factor(&a).unwrap();
        let ns = nullspace_from_lu(&f, 1e-10);
        assert_eq!(ns.len(), 2);
        let norm_a = a.max_abs();
        for v in &ns {
            assert!(vec_norm(&a.mul_vec(v)) <= 1e-11 * norm_a);
        }
        // linear independence: Gram determinant bounded away from zero
        let g01: Complex64 = ns[0].iter().zip(&ns[1]).map(|(a, b)| a.conj() * b).sum();
        assert!(1.0 - g01.norm_sqr() > 1e-6);
    }
}
