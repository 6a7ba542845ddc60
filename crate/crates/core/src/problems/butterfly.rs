use num_complex::Complex64;

use super::polynomial::MatrixPolynomial;
use crate::numerics::ComplexMatrix;

/// Default coefficient vector `c` of the butterfly problem.
pub const BUTTERFLY_COEFFICIENTS: [f64; 10] = [0.6, 1.3, 1.3, 0.1, 0.1, 1.2, 1.0, 1.0, 1.2, 1.0];

/// Block size `m`; the polynomial has dimension `m²`.
pub const BUTTERFLY_BLOCK: usize = 8;

/// Quartic T-even butterfly problem of dimension 64 with the default coefficients.
pub fn butterfly() -> MatrixPolynomial {
    butterfly_with(BUTTERFLY_BLOCK, &BUTTERFLY_COEFFICIENTS)
}

/// `A_j = c[2j] (I ⊗ M_j) + c[2j+1] (M_j ⊗ I)` with `N` the `m × m` nilpotent
/// Jordan block and
/// `M_0 = 2I − N − Nᵀ`, `M_1 = M_3 = N − Nᵀ`, `M_2 = N + Nᵀ`, `M_4 = I`.
///
/// Even coefficients are symmetric and odd ones skew-symmetric, so
/// `P(−k)ᵀ = P(k)` and the spectrum is symmetric under `k → −k̄` and `k → k̄`.
pub fn butterfly_with(m: usize, c: &[f64; 10]) -> MatrixPolynomial {
    let re = |x: f64| Complex64::new(x, 0.0);
    let jordan = ComplexMatrix::from_fn(m, m, |i, j| if j == i + 1 { re(1.0) } else { re(0.0) });
    let jordan_t = jordan.transpose();
    let eye = ComplexMatrix::identity(m);
    let sym = jordan.add_scaled(&jordan_t, re(1.0));
    let skew = jordan.add_scaled(&jordan_t, re(-1.0));
    let blocks = [
        eye.scale(re(2.0)).add_scaled(&sym, re(-1.0)),
        skew.clone(),
        sym,
        skew,
        eye.clone(),
    ];
    let coeffs = blocks
        .iter()
        .enumerate()
        .map(|(j, mj)| {
            eye.kron(mj)
                .scale(re(c[2 * j]))
                .add_scaled(&mj.kron(&eye), re(c[2 * j + 1]))
        })
        .collect();
    MatrixPolynomial::new(coeffs).expect("butterfly coefficients are consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::polynomial::polyeig_oracle;

    #[test]
    fn shape_and_spectrum() {
        let p = butterfly();
        assert_eq!((p.dim(), p.degree()), (64, 4));
        let s = polyeig_oracle(&p).unwrap();
        assert_eq!(s.finite.len(), 256);
        assert_eq!(s.infinite, 0);
        for k in &s.finite {
            assert!(k.re.abs() < 2.0 && k.im.abs() < 2.0, "{k}");
            assert!(k.im.abs() > 0.1, "real eigenvalue {k}");
        }
        let dist = |z: Complex64| {
            s.finite
                .iter()
                .map(|w| (w - z).norm())
                .fold(f64::INFINITY, f64::min)
        };
        for k in &s.finite {
            assert!(dist(-k.conj()) < 1e-8);
            assert!(dist(k.conj()) < 1e-8);
        }
    }

    #[test]
    fn t_even_structure() {
        let p = butterfly();
        for (j, a) in p.coefficients().iter().enumerate() {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(a.transpose(), a.scale(Complex64::new(sign, 0.0)));
        }
    }
}
