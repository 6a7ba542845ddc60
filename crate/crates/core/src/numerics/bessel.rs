//! Integer-order Bessel functions of complex argument.
//!
//! Three regimes, selected on `|z|`:
//! * `|z| <= 8`: ascending power series;
//! * `8 < |z| < 25`: Miller backward recurrence for `J_n`, normalized with
//!   the generating-function identity `e^{±iz} = J_0 + 2 Σ (±i)^n J_n`, and
//!   Neumann series for `Y_0`, `Y_1`;
//! * `|z| >= 25`: Hankel asymptotic expansions, whose optimally truncated
//!   error is of order `e^{-2|z|}`.
//!
//! All branches use the principal branch of `ln z`, with the cut on the
//! negative real axis.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_RADIUS: f64 = 8.0;
const ASYMPTOTIC_RADIUS: f64 = 25.0;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Which Bessel function to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesselKind {
    J0,
    Y0,
    J1,
    Y1,
    Jn(u32),
    Yn(u32),
}

/// Evaluates the requested Bessel function; the second-kind functions are
/// rejected at `z = 0`.
pub fn bessel(kind: BesselKind, z: Complex64) -> Result<Complex64> {
    let needs_nonzero = matches!(kind, BesselKind::Y0 | BesselKind::Y1 | BesselKind::Yn(_));
    if needs_nonzero && z == ZERO {
        return Err(Error::SingularArgument);
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput("non-finite Bessel argument".into()));
    }
    Ok(match kind {
        BesselKind::J0 => j0(z),
        BesselKind::J1 => j1(z),
        BesselKind::Y0 => j0_y0(z).1,
        BesselKind::Y1 => j1_y1(z).1,
        BesselKind::Jn(n) => jn(n, z),
        BesselKind::Yn(n) => yn(n, z),
    })
}

pub fn j0(z: Complex64) -> Complex64 {
    orders01(z, false).0
}

pub fn j1(z: Complex64) -> Complex64 {
    orders01(z, false).2
}

/// `(J_0(z), Y_0(z))`.
pub fn j0_y0(z: Complex64) -> (Complex64, Complex64) {
    let (j0, y0, _, _) = orders01(z, true);
    (j0, y0)
}

/// `(J_1(z), Y_1(z))`.
pub fn j1_y1(z: Complex64) -> (Complex64, Complex64) {
    let (_, _, j1, y1) = orders01(z, true);
    (j1, y1)
}

/// `H^{(1)}_0(z) = J_0(z) + i Y_0(z)`.
pub fn hankel1_0(z: Complex64) -> Complex64 {
    let (j, y) = j0_y0(z);
    j + I * y
}

pub fn jn(n: u32, z: Complex64) -> Complex64 {
    match n {
        0 => j0(z),
        1 => j1(z),
        _ => jn_sequence(n as usize, z)[n as usize],
    }
}

pub fn yn(n: u32, z: Complex64) -> Complex64 {
    yn_sequence(n as usize, z)[n as usize]
}

/// `H^{(1)}_n(z)` for integer `n >= 0`.
pub fn hankel1(n: u32, z: Complex64) -> Complex64 {
    jn(n, z) + I * yn(n, z)
}

/// `[J_0(z), …, J_nmax(z)]`.
pub fn jn_sequence(nmax: usize, z: Complex64) -> Vec<Complex64> {
    if z == ZERO {
        let mut out = vec![ZERO; nmax + 1];
        out[0] = ONE;
        return out;
    }
    if z.norm() <= SERIES_RADIUS {
        (0..=nmax).map(|n| jn_series(n, z)).collect()
    } else {
        let (seq, _) = miller(z, nmax);
        seq
    }
}

/// `[Y_0(z), …, Y_nmax(z)]` by forward recurrence from `Y_0`, `Y_1`.
pub fn yn_sequence(nmax: usize, z: Complex64) -> Vec<Complex64> {
    let (_, y0, _, y1) = orders01(z, true);
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(y0);
    if nmax >= 1 {
        out.push(y1);
    }
    for n in 1..nmax {
        let next = (2.0 * n as f64) / z * out[n] - out[n - 1];
        out.push(next);
    }
    out
}

/// `(J_0, Y_0, J_1, Y_1)`; the `Y` entries are NaN at `z = 0` and skipped
/// when `want_y` is false.
fn orders01(z: Complex64, want_y: bool) -> (Complex64, Complex64, Complex64, Complex64) {
    let r = z.norm();
    if r <= SERIES_RADIUS {
        series01(z, want_y)
    } else if r < ASYMPTOTIC_RADIUS {
        miller01(z, want_y)
    } else if z.re >= 0.0 {
        asymptotic01(z)
    } else {
        // Reflect into the right half-plane: J_n(-w) = (-1)^n J_n(w) and
        // Y_n(w e^{±iπ}) = (-1)^n (Y_n(w) ± 2i J_n(w)).
        let w = -z;
        let (j0, y0, j1, y1) = asymptotic01(w);
        let s = if z.im >= 0.0 { 1.0 } else { -1.0 };
        (j0, y0 + s * 2.0 * I * j0, -j1, -(y1 + s * 2.0 * I * j1))
    }
}

fn series01(z: Complex64, want_y: bool) -> (Complex64, Complex64, Complex64, Complex64) {
    let q = -0.25 * z * z;
    // J0 = Σ q^k/(k!)², J1 = (z/2) Σ q^k/(k!(k+1)!)
    let mut t0 = ONE;
    let mut t1 = ONE;
    let mut s_j0 = ONE;
    let mut s_j1 = ONE;
    // Y0 harmonic sum: Σ_{k>=1} H_k q^k/(k!)² (with sign absorbed into q)
    let mut s_y0 = ZERO;
    // Y1 digamma sum: Σ (ψ(k+1)+ψ(k+2)) q^k/(k!(k+1)!)
    let mut harm = 0.0; // H_k
    let mut s_y1 = Complex64::new(-2.0 * EULER_GAMMA + 1.0, 0.0); // k = 0 term: ψ(1)+ψ(2)
    for k in 1..200 {
        let kf = k as f64;
        t0 *= q / (kf * kf);
        t1 *= q / (kf * (kf + 1.0));
        harm += 1.0 / kf;
        s_j0 += t0;
        s_j1 += t1;
        if want_y {
            s_y0 += harm * t0;
            let psi_sum = -2.0 * EULER_GAMMA + 2.0 * harm + 1.0 / (kf + 1.0);
            s_y1 += psi_sum * t1;
        }
        if t0.norm() < 1e-17 * s_j0.norm().max(1e-300)
            && t1.norm() < 1e-17 * s_j1.norm().max(1e-300)
            && k > 2
        {
            break;
        }
    }
    let j0 = s_j0;
    let j1 = 0.5 * z * s_j1;
    if !want_y {
        return (j0, ZERO, j1, ZERO);
    }
    if z == ZERO {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        return (j0, nan, j1, nan);
    }
    let log_term = (0.5 * z).ln();
    // Y0 = (2/π)(ln(z/2)+γ) J0 − (2/π) Σ_{k>=1} H_k q^k/(k!)²
    let y0 = (2.0 / PI) * ((log_term + EULER_GAMMA) * j0 - s_y0);
    // Y1 = −2/(πz) + (2/π) ln(z/2) J1 − (1/π)(z/2) Σ (ψ(k+1)+ψ(k+2)) q^k/(k!(k+1)!)
    let y1 = -2.0 / (PI * z) + (2.0 / PI) * log_term * j1 - (0.5 / PI) * z * s_y1;
    (j0, y0, j1, y1)
}

fn jn_series(n: usize, z: Complex64) -> Complex64 {
    let q = -0.25 * z * z;
    let mut lead = ONE;
    for m in 1..=n {
        lead *= 0.5 * z / m as f64;
    }
    let mut term = ONE;
    let mut sum = ONE;
    for k in 1..300 {
        term *= q / (k as f64 * (k + n) as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    lead * sum
}

/// Miller backward recurrence. Returns `J_0..J_nmax` and the full normalized
/// tail (indices up to the starting order) for use in Neumann series.
fn miller(z: Complex64, nmax: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let r = z.norm();
    let mut start = (r + 12.0 * r.cbrt() + 30.0).ceil() as usize;
    start = start.max(nmax + 20);
    if start % 2 == 1 {
        start += 1;
    }
    let mut f = vec![ZERO; start + 2];
    f[start] = Complex64::new(1e-30, 0.0);
    for n in (1..=start).rev() {
        f[n - 1] = (2.0 * n as f64) / z * f[n] - f[n + 1];
        if f[n - 1].norm() > 1e250 {
            for x in f.iter_mut().skip(n - 1) {
                *x *= 1e-250;
            }
        }
    }
    // e^{iz} = J0 + 2 Σ i^n J_n for Im z <= 0; e^{-iz} with (-i)^n otherwise.
    let (phase, target) = if z.im <= 0.0 {
        (I, (I * z).exp())
    } else {
        (-I, (-I * z).exp())
    };
    let mut norm = f[0];
    let mut p = ONE;
    for x in f.iter().take(start + 1).skip(1) {
        p *= phase;
        norm += 2.0 * p * x;
    }
    let scale = target / norm;
    let all: Vec<Complex64> = f[..=start].iter().map(|x| x * scale).collect();
    (all[..=nmax].to_vec(), all)
}

fn miller01(z: Complex64, want_y: bool) -> (Complex64, Complex64, Complex64, Complex64) {
    let (_, j) = miller(z, 1);
    if !want_y {
        return (j[0], ZERO, j[1], ZERO);
    }
    let c = (0.5 * z).ln() + EULER_GAMMA;
    // Y0 = (2/π)(ln(z/2)+γ)J0 − (4/π) Σ_{k>=1} (−1)^k J_{2k}/k
    // Y1 = (2/π)(ln(z/2)+γ)J1 − 2 J0/(πz) + (2/π) Σ_{k>=1} (−1)^k (J_{2k−1} − J_{2k+1})/k
    let mut s0 = ZERO;
    let mut s1 = ZERO;
    let mut sign = -1.0;
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        let kf = k as f64;
        s0 += sign * j[2 * k] / kf;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / kf;
        sign = -sign;
        k += 1;
    }
    let y0 = (2.0 / PI) * c * j[0] - (4.0 / PI) * s0;
    let y1 = (2.0 / PI) * c * j[1] - 2.0 * j[0] / (PI * z) + (2.0 / PI) * s1;
    (j[0], y0, j[1], y1)
}

/// Hankel expansions for `Re z >= 0`, `|z| >= 25`.
fn asymptotic01(z: Complex64) -> (Complex64, Complex64, Complex64, Complex64) {
    let (h1_0, h2_0) = hankel_pair(0.0, z);
    let (h1_1, h2_1) = hankel_pair(1.0, z);
    let j0 = 0.5 * (h1_0 + h2_0);
    let y0 = (h1_0 - h2_0) / (2.0 * I);
    let j1 = 0.5 * (h1_1 + h2_1);
    let y1 = (h1_1 - h2_1) / (2.0 * I);
    (j0, y0, j1, y1)
}

fn hankel_pair(nu: f64, z: Complex64) -> (Complex64, Complex64) {
    let mu = 4.0 * nu * nu;
    let mut a = ONE; // a_k(ν) / z^k
    let mut sum_p = ONE; // Σ i^k a_k / z^k
    let mut sum_m = ONE; // Σ (−i)^k a_k / z^k
    let mut ik = ONE;
    let mut prev = f64::INFINITY;
    for k in 1..80 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        a *= (mu - odd * odd) / (8.0 * kf * z);
        let mag = a.norm();
        if mag > prev {
            break;
        }
        prev = mag;
        ik *= I;
        sum_p += ik * a;
        sum_m += ik.conj() * a;
        if mag < 1e-17 {
            break;
        }
    }
    let pref = (2.0 / (PI * z)).sqrt();
    let phase = z - nu * FRAC_PI_2 - FRAC_PI_4;
    let h1 = pref * (I * phase).exp() * sum_p;
    let h2 = pref * (-I * phase).exp() * sum_m;
    (h1, h2)
}
