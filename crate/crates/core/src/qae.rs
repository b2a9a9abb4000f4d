//! Amplitude-estimation MSE analysis.
//!
//! A q-qubit probe register with real amplitudes alpha_k feeds a
//! phase-kickback circuit whose measurement outcome l produces the estimate
//! sin^2(l pi / 2^q) for the amplitude sin^2(theta). The mean squared error
//! of that estimator is a quadratic form alpha' W(theta) alpha + C(theta)
//! in the probe amplitudes; both the explicit outcome distribution and the
//! quadratic form live here, each computable independently so one can check
//! the other.

use crate::linalg::{jacobi_eigen, SymMatrix};
use crate::probe::ProbeState;
use crate::{domain, Result};

const PI: f64 = std::f64::consts::PI;

/// Probe size and target angle theta = arcsin(sqrt(a)) in [0, pi/2].
#[derive(Debug, Clone, Copy)]
pub struct QaeSpec {
    pub q: u32,
    pub theta: f64,
}

impl QaeSpec {
    /// q >= 3 keeps the four corner entries of W on distinct positions.
    pub fn new(q: u32, theta: f64) -> Result<QaeSpec> {
        if !(3..=12).contains(&q) {
            return domain(format!("QaeSpec requires 3 <= q <= 12, got q={q}"));
        }
        if !(0.0..=PI / 2.0 + 1e-15).contains(&theta) {
            return domain(format!("QaeSpec requires theta in [0, pi/2], got {theta}"));
        }
        Ok(QaeSpec { q, theta })
    }

    pub fn dim(&self) -> usize {
        1usize << self.q
    }
}

/// Outcome probabilities over l = 0..2^q-1.
#[derive(Debug, Clone)]
pub struct QaeDistribution {
    pub probs: Vec<f64>,
}

/// Band and corner coefficients of W(theta), plus the scalar C(theta).
#[derive(Debug, Clone, Copy)]
struct WCoeffs {
    a: f64,
    b: f64,
    a0: f64,
    b1: f64,
    c: f64,
}

fn cos_reduced(x: f64) -> f64 {
    x.rem_euclid(2.0 * PI).cos()
}

fn w_coeffs(spec: &QaeSpec) -> WCoeffs {
    let n = spec.dim() as f64;
    let th = spec.theta;
    WCoeffs {
        a: -0.25 * (2.0 * th).cos().powi(2),
        b: (4.0 * th).cos() / 16.0,
        a0: -0.25 * (2.0 * th).cos() * cos_reduced(2.0 * (n - 1.0) * th),
        b1: cos_reduced(2.0 * (n - 2.0) * th) / 16.0,
        c: 0.25 + 0.125 * (4.0 * th).cos(),
    }
}

fn w_entry(co: &WCoeffs, n: usize, i: usize, j: usize) -> f64 {
    let d = i.abs_diff(j);
    if d == 1 {
        co.a
    } else if d == 2 {
        co.b
    } else if d == n - 1 {
        co.a0
    } else if d == n - 2 && (i.min(j) == 0 || i.min(j) == 1) {
        co.b1
    } else {
        0.0
    }
}

/// The 2^q x 2^q MSE matrix W(theta) and the additive scalar C(theta).
pub fn w_matrix(spec: &QaeSpec) -> (SymMatrix, f64) {
    let n = spec.dim();
    let co = w_coeffs(spec);
    let w = SymMatrix::from_fn(n, |i, j| w_entry(&co, n, i, j))
        .expect("W entries are symmetric by construction");
    (w, co.c)
}

fn check_state(state: &ProbeState, spec: &QaeSpec) -> Result<()> {
    if state.len() != spec.dim() {
        return domain(format!(
            "probe state has {} amplitudes but the spec needs 2^{} = {}",
            state.len(),
            spec.q,
            spec.dim()
        ));
    }
    Ok(())
}

/// MSE as the quadratic form alpha' W alpha + C, evaluated from the band
/// structure in O(2^q) without materializing W.
pub fn quadform_mse(state: &ProbeState, spec: &QaeSpec) -> Result<f64> {
    check_state(state, spec)?;
    let al = &state.amplitudes;
    let n = al.len();
    let co = w_coeffs(spec);
    let s1: f64 = (0..n - 1).map(|k| al[k] * al[k + 1]).sum();
    let s2: f64 = (0..n - 2).map(|k| al[k] * al[k + 2]).sum();
    Ok(2.0 * co.a * s1
        + 2.0 * co.b * s2
        + 2.0 * co.a0 * al[0] * al[n - 1]
        + 2.0 * co.b1 * (al[0] * al[n - 2] + al[1] * al[n - 1])
        + co.c)
}

/// Measurement-outcome distribution by direct double summation.
pub fn qae_distribution(state: &ProbeState, spec: &QaeSpec) -> Result<QaeDistribution> {
    check_state(state, spec)?;
    let al = &state.amplitudes;
    let n = al.len();
    let nf = n as f64;
    let root = nf.sqrt();
    let mut probs = vec![0.0; n];
    for (l, prob) in probs.iter_mut().enumerate() {
        let mut total = 0.0;
        for sign in [1.0f64, -1.0] {
            // fractional frequency of the branch: +-theta/pi - l/2^q
            let u = sign * spec.theta / PI - l as f64 / nf;
            let (mut re, mut im) = (0.0, 0.0);
            for (k, &c) in al.iter().enumerate() {
                let ang = 2.0 * PI * (u * k as f64).fract();
                re += c * ang.cos() / root;
                im += c * ang.sin() / root;
            }
            total += 0.5 * (re * re + im * im);
        }
        *prob = total;
    }
    Ok(QaeDistribution { probs })
}

/// Closed-form E[cos(2 s theta_hat)] for s = 1, 2: nearest- and
/// next-nearest-neighbour amplitude products plus the wrap-around terms.
pub fn expected_cosine(state: &ProbeState, spec: &QaeSpec, order: u8) -> Result<f64> {
    check_state(state, spec)?;
    let al = &state.amplitudes;
    let n = al.len();
    let nf = n as f64;
    let th = spec.theta;
    match order {
        1 => {
            let adj: f64 = (0..n - 1).map(|k| al[k + 1] * al[k]).sum();
            Ok((2.0 * th).cos() * adj
                + al[0] * al[n - 1] * cos_reduced(2.0 * (nf - 1.0) * th))
        }
        2 => {
            let next: f64 = (0..n - 2).map(|k| al[k + 2] * al[k]).sum();
            Ok((4.0 * th).cos() * next
                + (al[0] * al[n - 2] + al[1] * al[n - 1]) * cos_reduced(2.0 * (nf - 2.0) * th))
        }
        other => domain(format!("expected_cosine order must be 1 or 2, got {other}")),
    }
}

/// MSE computed from the outcome distribution:
/// sum_l P_l (sin^2(l pi / 2^q) - sin^2 theta)^2.
pub fn mse_from_distribution(state: &ProbeState, spec: &QaeSpec) -> Result<f64> {
    let dist = qae_distribution(state, spec)?;
    let n = dist.probs.len() as f64;
    let target = spec.theta.sin().powi(2);
    Ok(dist
        .probs
        .iter()
        .enumerate()
        .map(|(l, p)| {
            let est = (l as f64 * PI / n).sin().powi(2);
            p * (est - target) * (est - target)
        })
        .sum())
}

/// Result of a max-MSE sweep over a theta grid.
#[derive(Debug, Clone)]
pub struct MseSweep {
    pub max: f64,
    pub argmax: f64,
    pub thetas: Vec<f64>,
    pub values: Vec<f64>,
}

/// Evaluates the quadratic form on the uniform grid
/// theta_i = lo + i (hi - lo) / points, i = 0..points (right-open).
pub fn max_mse(
    state: &ProbeState,
    q: u32,
    grid_points: usize,
    theta_lo: f64,
    theta_hi: f64,
) -> Result<MseSweep> {
    if grid_points == 0 {
        return domain("max_mse requires at least one grid point");
    }
    if !(0.0 <= theta_lo && theta_lo < theta_hi && theta_hi <= PI / 2.0 + 1e-15) {
        return domain(format!(
            "max_mse requires 0 <= theta_lo < theta_hi <= pi/2, got [{theta_lo}, {theta_hi}]"
        ));
    }
    let step = (theta_hi - theta_lo) / grid_points as f64;
    let mut thetas = Vec::with_capacity(grid_points);
    let mut values = Vec::with_capacity(grid_points);
    let mut max = f64::NEG_INFINITY;
    let mut argmax = theta_lo;
    for i in 0..grid_points {
        let th = theta_lo + i as f64 * step;
        let spec = QaeSpec::new(q, th)?;
        let v = quadform_mse(state, &spec)?;
        if v > max {
            max = v;
            argmax = th;
        }
        thetas.push(th);
        values.push(v);
    }
    Ok(MseSweep {
        max,
        argmax,
        thetas,
        values,
    })
}

/// W(theta) is centrosymmetric (invariant under simultaneous reversal of
/// rows and columns), so it splits exactly into two half-size blocks on the
/// mirror-symmetric and mirror-antisymmetric subspaces:
/// M+-[i][j] = W[i][j] +- W[i][n-1-j]. Eigenpairs of W are recovered as
/// (x, Jx)/sqrt(2) and (x, -Jx)/sqrt(2).
fn centro_halves(spec: &QaeSpec) -> (SymMatrix, SymMatrix) {
    let n = spec.dim();
    let h = n / 2;
    let co = w_coeffs(spec);
    let plus = SymMatrix::from_fn(h, |i, j| {
        w_entry(&co, n, i, j) + w_entry(&co, n, i, n - 1 - j)
    })
    .expect("centrosymmetric half is symmetric");
    let minus = SymMatrix::from_fn(h, |i, j| {
        w_entry(&co, n, i, j) - w_entry(&co, n, i, n - 1 - j)
    })
    .expect("centrosymmetric half is symmetric");
    (plus, minus)
}

/// Pentadiagonal bands of one centrosymmetric half: the mirror fold lands
/// every corner entry of W inside the band, so M+- has bandwidth 2 exactly.
/// Returns (diagonal, first band, second band).
fn half_bands(spec: &QaeSpec, sign: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = spec.dim();
    let h = n / 2;
    let co = w_coeffs(spec);
    let entry = |i: usize, j: usize| w_entry(&co, n, i, j) + sign * w_entry(&co, n, i, n - 1 - j);
    let diag: Vec<f64> = (0..h).map(|i| entry(i, i)).collect();
    let e1: Vec<f64> = (0..h - 1).map(|i| entry(i, i + 1)).collect();
    let e2: Vec<f64> = (0..h - 2).map(|i| entry(i, i + 2)).collect();
    (diag, e1, e2)
}

/// Number of eigenvalues of the pentadiagonal matrix below `shift`, by the
/// inertia of the banded LDL^T factorization. Near-zero pivots are nudged
/// to keep the recurrence finite; the standard bisection safeguard.
fn penta_count_below(diag: &[f64], e1: &[f64], e2: &[f64], shift: f64) -> usize {
    let h = diag.len();
    let tiny = 1e-300;
    let mut d = vec![0.0f64; h];
    let mut l1 = vec![0.0f64; h]; // L[k][k-1]
    let mut count = 0;
    for k in 0..h {
        let l2k = if k >= 2 { e2[k - 2] / d[k - 2] } else { 0.0 };
        let l1k = if k >= 1 {
            let num = e1[k - 1]
                - if k >= 2 {
                    l2k * d[k - 2] * l1[k - 1]
                } else {
                    0.0
                };
            num / d[k - 1]
        } else {
            0.0
        };
        let mut dk = diag[k] - shift;
        if k >= 1 {
            dk -= l1k * l1k * d[k - 1];
        }
        if k >= 2 {
            dk -= l2k * l2k * d[k - 2];
        }
        if dk == 0.0 || !dk.is_finite() {
            dk = -tiny;
        }
        if dk < 0.0 {
            count += 1;
        }
        d[k] = dk;
        l1[k] = l1k;
    }
    count
}

/// Smallest eigenvalue of a symmetric pentadiagonal matrix by inertia
/// bisection, to absolute tolerance ~1e-13.
fn penta_min_eigenvalue(diag: &[f64], e1: &[f64], e2: &[f64]) -> f64 {
    let h = diag.len();
    // Gershgorin bracket
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..h {
        let mut r = 0.0;
        if i >= 1 {
            r += e1[i - 1].abs();
        }
        if i + 1 < h {
            r += e1[i].abs();
        }
        if i >= 2 {
            r += e2[i - 2].abs();
        }
        if i + 2 < h {
            r += e2[i].abs();
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let tol = 1e-13 * (hi - lo).max(1.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if penta_count_below(diag, e1, e2, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Smallest eigenvalue of W(theta) plus C(theta): the optimal achievable
/// MSE at this theta. Uses the pentadiagonal inertia bisection on the two
/// centrosymmetric halves; [`optimal_probe`] goes through the dense Jacobi
/// path instead, and the two are cross-checked in tests.
pub fn min_quadform_mse(spec: &QaeSpec) -> f64 {
    let (dp, ep1, ep2) = half_bands(spec, 1.0);
    let (dm, em1, em2) = half_bands(spec, -1.0);
    let lam = penta_min_eigenvalue(&dp, &ep1, &ep2).min(penta_min_eigenvalue(&dm, &em1, &em2));
    lam + w_coeffs(spec).c
}

/// Minimum-eigenvalue probe state of W(theta) and its MSE lambda_min + C.
/// The returned amplitudes are sign-normalized so the largest-magnitude
/// entry is positive.
pub fn optimal_probe(spec: &QaeSpec) -> Result<(ProbeState, f64)> {
    if spec.q > 9 {
        return domain(format!("optimal_probe supports q <= 9, got q={}", spec.q));
    }
    let n = spec.dim();
    let (plus, minus) = centro_halves(spec);
    let ep = jacobi_eigen(&plus)?;
    let em = jacobi_eigen(&minus)?;
    let (half_vec, lam, symmetric) = if ep.values[0] <= em.values[0] {
        (&ep.vectors[0], ep.values[0], true)
    } else {
        (&em.vectors[0], em.values[0], false)
    };
    let h = n / 2;
    let inv = 0.5f64.sqrt();
    let mut full = vec![0.0; n];
    for i in 0..h {
        full[i] = half_vec[i] * inv;
        full[n - 1 - i] = if symmetric {
            half_vec[i] * inv
        } else {
            -half_vec[i] * inv
        };
    }
    // sign convention: largest-magnitude entry positive
    let lead = full
        .iter()
        .cloned()
        .fold(0.0f64, |acc, v| if v.abs() > acc.abs() { v } else { acc });
    if lead < 0.0 {
        for v in &mut full {
            *v = -*v;
        }
    }
    let norm = full.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut full {
        *v /= norm;
    }
    let state = ProbeState::explicit(spec.q, full)?;
    Ok((state, lam + w_coeffs(spec).c))
}

/// Total oracle uses of the expectation-estimation circuit: 2^q + 1.
pub fn qae_expectation_queries(q: u32) -> Result<u64> {
    if q == 0 || q > 62 {
        return domain(format!("qae_expectation_queries requires 1 <= q <= 62, got {q}"));
    }
    Ok((1u64 << q) + 1)
}
