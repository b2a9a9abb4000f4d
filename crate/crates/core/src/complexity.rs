//! Total query-complexity calculators for fermionic k-RDM estimation.
//!
//! Four strategies are costed in queries to the state-preparation unitary
//! and its inverse, all exact integer counts:
//!
//! - classical shadow sampling: ceil(eps^-2 C(2N,2k)/C(N,k));
//! - amplitude estimation per observable: C(N,k)^2 (2^q + 1) with
//!   q = ceil(log2(pi/eps));
//! - the symmetry-aware adaptive gradient estimator ("method 1"), which
//!   repeats a probe preparation R^(q) times per refinement round;
//! - its single-shot parallel variant ("method 2"), which absorbs the
//!   R^(q) repetitions into one wider register;
//!
//! plus a uniform-probe baseline ("wyy") reconstructing the earlier
//! adaptive scheme without symmetry reduction. Rounds are indexed by q with
//! failure budget delta^(q) = c / 8^(q_max - q); the simulation time per
//! round is t = 2^(p+q+1) sigma, where sigma is the concentration constant
//! of the randomly weighted observable sum on the relevant symmetry sector.

use num_bigint::BigUint;
use num_traits::{FromPrimitive, Zero};

use crate::hamsim::hs_degree;
use crate::numerics::{binomial_exact, log_binomial};
use crate::sampling::min_samples;
use crate::{domain, Result};

const PI: f64 = std::f64::consts::PI;

/// Probe register size per coordinate; fixed by the failure-probability
/// analysis of the cosine window.
pub const P_PROBE: u32 = 3;
/// Probe variance E[(2X)^2] of the cosine window at p = 3.
pub const V_COS1_P3: f64 = 0.16515;
/// Probe variance of the uniform window at p = 3 (exactly 21/64).
pub const V_UNIFORM_P3: f64 = 0.328125;
/// Concentration failure budget inside sigma for method 1 and the baseline.
pub const DELTA_PRIME_DEFAULT: f64 = 1.0 / 1024.0;
/// Polynomial accuracy for the time-evolution approximation in method 1
/// and the baseline.
pub const EPS_HS_DEFAULT: f64 = 1.0 / 16384.0;
/// Per-shot failure rate of method 1: window failure plus the probe
/// preparation error budget.
pub const MU_METHOD1: f64 = 0.011 + 1.0 / 12.0;
/// Per-shot failure rate of method 2 (the preparation budget moves into
/// the Euclidean-distance parameter instead).
pub const MU_METHOD2: f64 = 0.011;
/// Per-shot failure rate of the uniform-probe baseline.
pub const MU_WYY: f64 = 0.18 + 1.0 / 12.0;

/// Confidence constant c = 1 / (80 (1 + pi)^2).
pub fn confidence_c() -> f64 {
    1.0 / (80.0 * (1.0 + PI) * (1.0 + PI))
}

/// Number of refinement rounds minus one: ceil(log2(1/(sqrt(40/11) eps))).
pub fn q_max(eps: f64) -> Result<u32> {
    check_eps(eps)?;
    let raw = (1.0 / ((40.0f64 / 11.0).sqrt() * eps)).log2().ceil();
    Ok(if raw < 0.0 { 0 } else { raw as u32 })
}

fn check_eps(eps: f64) -> Result<()> {
    if !(0.0 < eps && eps < 1.0) {
        return domain(format!("target precision eps must lie in (0, 1), got {eps}"));
    }
    Ok(())
}

fn check_rdm_range(n: u64, eta: u64, k: u64) -> Result<()> {
    if k == 0 {
        return domain("RDM order k must be >= 1");
    }
    if !(k <= eta && eta + k <= n) {
        return domain(format!(
            "symmetry-aware methods require k <= eta <= N - k, got N={n} eta={eta} k={k}"
        ));
    }
    Ok(())
}

/// Binomial coefficient as f64: exact below 2^53, log-space beyond.
fn binom_f64(n: u64, k: u64) -> f64 {
    let exact = binomial_exact(n, k);
    if exact.bits() <= 53 {
        use num_traits::ToPrimitive;
        exact.to_f64().unwrap()
    } else {
        log_binomial(n, k).expect("k <= n").exp()
    }
}

/// ln(2 C(n, eta) / delta').
fn ln_sector_budget(n: u64, eta: u64, delta_prime: f64) -> Result<f64> {
    if !(0.0 < delta_prime && delta_prime < 1.0) {
        return domain(format!("delta' must lie in (0, 1), got {delta_prime}"));
    }
    Ok(2.0f64.ln() + log_binomial(n, eta)? - delta_prime.ln())
}

/// Classical-shadow sample count ceil(eps^-2 C(2N,2k)/C(N,k)). The ratio is
/// computed in log space; a half-ulp-scale guard (four ulps) is subtracted
/// before the ceiling so values landing a few ulps above an exact integer
/// do not round up spuriously.
pub fn shadow_queries(n: u64, k: u64, eps: f64) -> Result<BigUint> {
    check_eps(eps)?;
    if k == 0 || k > n {
        return domain(format!("shadow_queries requires 1 <= k <= N, got N={n} k={k}"));
    }
    let log_ratio = log_binomial(2 * n, 2 * k)? - log_binomial(n, k)? - 2.0 * eps.ln();
    let y = log_ratio.exp();
    let guarded = y - 4.0 * (y * f64::EPSILON);
    BigUint::from_f64(guarded.ceil())
        .ok_or_else(|| crate::Error::Domain(format!("shadow count overflow at N={n} k={k} eps={eps}")))
}

/// Amplitude-estimation total: C(N,k)^2 (2^q + 1) with q = ceil(log2(pi/eps)).
pub fn qae_queries(n: u64, k: u64, eps: f64) -> Result<BigUint> {
    check_eps(eps)?;
    if k == 0 || k > n {
        return domain(format!("qae_queries requires 1 <= k <= N, got N={n} k={k}"));
    }
    let q = (PI / eps).log2().ceil() as u32;
    let m = binomial_exact(n, k).pow(2);
    Ok(m * ((BigUint::from(1u32) << q) + BigUint::from(1u32)))
}

/// Per-observable probe size used by [`qae_queries`].
pub fn qae_probe_qubits(eps: f64) -> Result<u32> {
    check_eps(eps)?;
    Ok((PI / eps).log2().ceil() as u32)
}

/// Concentration constant of method 1:
/// ceil( sqrt(4v C(eta,k) C(N-eta+k,k) ln(2 C(N,eta)/delta'))
///       + (4/3) ln(2 C(N,eta)/delta') ).
pub fn sigma_method1(n: u64, eta: u64, k: u64, v: f64, delta_prime: f64) -> Result<u64> {
    check_rdm_range(n, eta, k)?;
    let lg = ln_sector_budget(n, eta, delta_prime)?;
    let norm = binom_f64(eta, k) * binom_f64(n - eta + k, k);
    let val = (4.0 * v * norm * lg).sqrt() + (4.0 / 3.0) * lg;
    Ok(val.ceil() as u64)
}

/// Concentration constant of method 2; the parallel repetition count R
/// multiplies the variance term only.
pub fn sigma_method2(n: u64, eta: u64, k: u64, v: f64, delta_prime: f64, r: u64) -> Result<u64> {
    check_rdm_range(n, eta, k)?;
    if r == 0 {
        return domain("sigma_method2 requires R >= 1");
    }
    let lg = ln_sector_budget(n, eta, delta_prime)?;
    let norm = binom_f64(eta, k) * binom_f64(n - eta + k, k);
    let val = (4.0 * v * r as f64 * norm * lg).sqrt() + (4.0 / 3.0) * lg;
    Ok(val.ceil() as u64)
}

/// One refinement round of an adaptive calculator.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    /// Round index, 0 ..= q_max.
    pub q: u32,
    /// Failure budget c / 8^(q_max - q).
    pub delta_q: f64,
    /// Median sample count R^(q).
    pub samples: u64,
    /// Concentration constant (sigma or its parallel variant) this round.
    pub sigma: u64,
    /// Simulation time t = 2^(p+q+1) sigma.
    pub t: u64,
    /// Polynomial degree of the time-evolution approximation.
    pub degree: u64,
    /// Running query total after this round.
    pub cumulative: BigUint,
}

fn ln_two_m(n: u64, k: u64) -> Result<f64> {
    // ln(2M) with M = C(N,k)^2
    Ok(2.0f64.ln() + 2.0 * log_binomial(n, k)?)
}

/// t = 2^(p+q+1) sigma, with an overflow guard for absurdly small eps.
fn simulation_time(q: u32, sigma: u64) -> Result<u64> {
    1u64.checked_shl(P_PROBE + q + 1)
        .and_then(|pow| pow.checked_mul(sigma))
        .filter(|&t| t < (1u64 << 53))
        .ok_or_else(|| {
            crate::Error::Domain(format!(
                "simulation time 2^({} + {q} + 1) * {sigma} exceeds the integer range \
                 this calculator supports; raise eps",
                P_PROBE
            ))
        })
}

/// Total queries of method 1 (symmetry-aware, R^(q) repetitions per round).
pub fn method1_queries(n: u64, eta: u64, k: u64, eps: f64) -> Result<(BigUint, Vec<IterationTrace>)> {
    check_eps(eps)?;
    check_rdm_range(n, eta, k)?;
    let qm = q_max(eps)?;
    let c = confidence_c();
    let sigma = sigma_method1(n, eta, k, V_COS1_P3, DELTA_PRIME_DEFAULT)?;
    let ln_2m = ln_two_m(n, k)?;
    let mut total = BigUint::zero();
    let mut trace = Vec::with_capacity(qm as usize + 1);
    for q in 0..=qm {
        let delta_q = c / 8f64.powi((qm - q) as i32);
        let samples = min_samples(MU_METHOD1, delta_q.ln() - ln_2m)?;
        let t = simulation_time(q, sigma)?;
        let degree = hs_degree(t as f64, EPS_HS_DEFAULT)?;
        total += BigUint::from(2 * degree) * BigUint::from(samples);
        trace.push(IterationTrace {
            q,
            delta_q,
            samples,
            sigma,
            t,
            degree,
            cumulative: total.clone(),
        });
    }
    Ok((total, trace))
}

/// Total queries of method 2 (parallel single-shot variant; one preparation
/// per round covers all R^(q) copies, so each round adds 2Q only).
pub fn method2_queries(n: u64, eta: u64, k: u64, eps: f64) -> Result<(BigUint, Vec<IterationTrace>)> {
    check_eps(eps)?;
    check_rdm_range(n, eta, k)?;
    let qm = q_max(eps)?;
    let c = confidence_c();
    let ln_2m = ln_two_m(n, k)?;
    let mut total = BigUint::zero();
    let mut trace = Vec::with_capacity(qm as usize + 1);
    for q in 0..=qm {
        let delta_q = c / 8f64.powi((qm - q) as i32);
        let samples = min_samples(MU_METHOD2, delta_q.ln() - ln_2m)?;
        let delta_prime = delta_q * delta_q / 80.0;
        let sigma = sigma_method2(n, eta, k, V_COS1_P3, delta_prime, samples)?;
        let t = simulation_time(q, sigma)?;
        let eps_hs = delta_q * delta_q / 64.0;
        let degree = hs_degree(t as f64, eps_hs)?;
        total += BigUint::from(2 * degree);
        trace.push(IterationTrace {
            q,
            delta_q,
            samples,
            sigma,
            t,
            degree,
            cumulative: total.clone(),
        });
    }
    Ok((total, trace))
}

/// Uniform-probe baseline without symmetry exploitation: norm bound M, full
/// dimension 2^N in the sector budget, uniform-window variance and failure
/// rate. Parameters mirror the published review symbols; they are a
/// reconstruction, not a quoted recipe.
pub fn wyy_queries(n: u64, k: u64, eps: f64) -> Result<(BigUint, Vec<IterationTrace>)> {
    check_eps(eps)?;
    if k == 0 || k > n {
        return domain(format!("wyy_queries requires 1 <= k <= N, got N={n} k={k}"));
    }
    let qm = q_max(eps)?;
    let c = confidence_c();
    let m = binom_f64(n, k).powi(2);
    let ln_m = 2.0 * log_binomial(n, k)?;
    // ln(2 * 2^N / delta')
    let lg = 2.0f64.ln() + n as f64 * 2.0f64.ln() - DELTA_PRIME_DEFAULT.ln();
    let sigma = ((2.0 * V_UNIFORM_P3 * m * lg).sqrt() + (4.0 / 3.0) * lg).ceil() as u64;
    let mut total = BigUint::zero();
    let mut trace = Vec::with_capacity(qm as usize + 1);
    for q in 0..=qm {
        let delta_q = c / 8f64.powi((qm - q) as i32);
        let samples = min_samples(MU_WYY, delta_q.ln() - ln_m)?;
        let t = simulation_time(q, sigma)?;
        let degree = hs_degree(t as f64, EPS_HS_DEFAULT)?;
        total += BigUint::from(2 * degree) * BigUint::from(samples);
        trace.push(IterationTrace {
            q,
            delta_q,
            samples,
            sigma,
            t,
            degree,
            cumulative: total.clone(),
        });
    }
    Ok((total, trace))
}

/// Calculator tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Shadow,
    Qae,
    Wyy,
    Method1,
    Method2,
}

impl Method {
    pub fn parse(s: &str) -> Result<Method> {
        match s {
            "shadow" => Ok(Method::Shadow),
            "qae" => Ok(Method::Qae),
            "wyy" => Ok(Method::Wyy),
            "method1" => Ok(Method::Method1),
            "method2" => Ok(Method::Method2),
            other => domain(format!(
                "unknown method '{other}' (expected shadow|qae|wyy|method1|method2)"
            )),
        }
    }

    pub const ALL: [Method; 5] = [
        Method::Shadow,
        Method::Qae,
        Method::Wyy,
        Method::Method1,
        Method::Method2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Shadow => "shadow",
            Method::Qae => "qae",
            Method::Wyy => "wyy",
            Method::Method1 => "method1",
            Method::Method2 => "method2",
        }
    }
}

/// Single-point dispatcher.
pub fn queries(method: Method, n: u64, eta: u64, k: u64, eps: f64) -> Result<BigUint> {
    match method {
        Method::Shadow => shadow_queries(n, k, eps),
        Method::Qae => qae_queries(n, k, eps),
        Method::Wyy => Ok(wyy_queries(n, k, eps)?.0),
        Method::Method1 => Ok(method1_queries(n, eta, k, eps)?.0),
        Method::Method2 => Ok(method2_queries(n, eta, k, eps)?.0),
    }
}

/// One sweep row: the axis value and one cell per method in the order
/// shadow, qae, wyy, method1, method2. Cells are None when that point
/// violates a per-method precondition.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub axis: f64,
    pub cells: [Option<BigUint>; 5],
}

fn sweep_point(n: u64, eta: u64, k: u64, eps: f64, axis: f64) -> SweepRow {
    let mut cells: [Option<BigUint>; 5] = Default::default();
    for (i, m) in Method::ALL.iter().enumerate() {
        cells[i] = queries(*m, n, eta, k, eps).ok();
    }
    SweepRow { axis, cells }
}

/// Precision sweep at fixed (N, eta, k).
pub fn sweep_eps(n: u64, eta: u64, k: u64, eps_values: &[f64]) -> Result<Vec<SweepRow>> {
    if eps_values.is_empty() {
        return domain("sweep requires a non-empty value list");
    }
    Ok(eps_values
        .iter()
        .map(|&eps| sweep_point(n, eta, k, eps, eps))
        .collect())
}

/// Mode-count sweep at fixed precision with 7/8 filling: eta = ceil(7N/8).
pub fn sweep_modes_hubbard(k: u64, n_values: &[u64], eps: f64) -> Result<Vec<SweepRow>> {
    if n_values.is_empty() {
        return domain("sweep requires a non-empty value list");
    }
    Ok(n_values
        .iter()
        .map(|&n| {
            let eta = (7 * n).div_ceil(8);
            sweep_point(n, eta, k, eps, n as f64)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn shadow_hand_and_scaling() {
        assert_eq!(shadow_queries(2, 1, 0.1).unwrap(), BigUint::from(300u32));
        // exact x4 per eps halving
        let a = shadow_queries(2, 1, 0.1).unwrap();
        let b = shadow_queries(2, 1, 0.05).unwrap();
        assert_eq!(b, a * 4u32);
        assert!(shadow_queries(2, 0, 0.1).is_err());
        assert!(shadow_queries(2, 3, 0.1).is_err());
        assert!(shadow_queries(2, 1, 0.0).is_err());
    }

    #[test]
    fn shadow_matches_exact_big_integer() {
        // frozen against exact rational arithmetic at the f64 value of 1e-3
        assert_eq!(
            shadow_queries(152, 2, 1e-3).unwrap(),
            big("30401000000")
        );
        assert_eq!(shadow_queries(152, 1, 1e-3).unwrap(), big("303000000"));
        assert_eq!(shadow_queries(152, 3, 1e-3).unwrap(), big("1817979800000"));
    }

    #[test]
    fn qae_hand_values() {
        assert_eq!(qae_queries(2, 1, 1e-3).unwrap(), BigUint::from(16388u32));
        assert_eq!(qae_probe_qubits(1e-3).unwrap(), 12);
        assert_eq!(qae_queries(152, 1, 1e-3).unwrap(), big("94657088"));
        // ceiling boundary: q jumps by exactly one across pi/eps = 2^12
        let eps_hi = PI / 4096.0 * (1.0 + 1e-9);
        let eps_lo = PI / 4096.0 * (1.0 - 1e-9);
        assert_eq!(qae_probe_qubits(eps_hi).unwrap(), 12);
        assert_eq!(qae_probe_qubits(eps_lo).unwrap(), 13);
    }

    #[test]
    fn sigma_hand_values() {
        // hand evaluation: norm term 4v*6 = 3.9636, ln(2*6*1024) = 9.4164,
        // sqrt(37.32) + 12.555 = 18.66 -> 19
        assert_eq!(sigma_method1(4, 2, 1, V_COS1_P3, DELTA_PRIME_DEFAULT).unwrap(), 19);
        assert_eq!(sigma_method1(152, 113, 1, V_COS1_P3, DELTA_PRIME_DEFAULT).unwrap(), 646);
        assert_eq!(
            sigma_method1(152, 113, 2, V_COS1_P3, DELTA_PRIME_DEFAULT).unwrap(),
            17840
        );
        assert_eq!(
            sigma_method1(152, 113, 3, V_COS1_P3, DELTA_PRIME_DEFAULT).unwrap(),
            403364
        );
        // monotone in log(1/delta')
        let base = sigma_method1(4, 2, 1, V_COS1_P3, DELTA_PRIME_DEFAULT).unwrap();
        let tighter = sigma_method1(4, 2, 1, V_COS1_P3, DELTA_PRIME_DEFAULT / 4.0).unwrap();
        assert!(tighter > base);
        assert!(sigma_method1(4, 3, 2, V_COS1_P3, 0.5).is_err());
    }

    #[test]
    fn sigma_method2_values() {
        // R = 1 with the same delta' reduces to sigma_method1
        assert_eq!(
            sigma_method2(4, 2, 1, V_COS1_P3, DELTA_PRIME_DEFAULT, 1).unwrap(),
            sigma_method1(4, 2, 1, V_COS1_P3, DELTA_PRIME_DEFAULT).unwrap()
        );
        // hand arithmetic: sqrt(27.7452 * 16.3004) + (4/3) 16.3004 = 43.0003 -> 44
        assert_eq!(sigma_method2(4, 2, 1, V_COS1_P3, 1e-6, 7).unwrap(), 44);
        // sqrt-scaling of the variance term
        let r1 = sigma_method2(6, 3, 1, V_COS1_P3, 1e-4, 10).unwrap();
        let r4 = sigma_method2(6, 3, 1, V_COS1_P3, 1e-4, 40).unwrap();
        assert!(r4 <= 2 * r1 + 2);
    }

    #[test]
    fn method1_frozen_trace() {
        // cross-checked by an independent implementation in another language
        let (total, trace) = method1_queries(4, 2, 1, 0.1).unwrap();
        assert_eq!(total, BigUint::from(223706u32));
        assert_eq!(trace.len(), 4); // q_max = 3
        let r: Vec<u64> = trace.iter().map(|t| t.samples).collect();
        assert_eq!(r, vec![27, 23, 19, 15]);
        let deg: Vec<u64> = trace.iter().map(|t| t.degree).collect();
        assert_eq!(deg, vec![422, 835, 1661, 3313]);
        let ts: Vec<u64> = trace.iter().map(|t| t.t).collect();
        assert_eq!(ts, vec![304, 608, 1216, 2432]);
        // cumulative strictly increasing
        for w in trace.windows(2) {
            assert!(w[0].cumulative < w[1].cumulative);
        }
    }

    #[test]
    fn method2_frozen_trace() {
        let (total, trace) = method2_queries(4, 2, 1, 0.1).unwrap();
        assert_eq!(total, BigUint::from(37674u32));
        let r: Vec<u64> = trace.iter().map(|t| t.samples).collect();
        assert_eq!(r, vec![9, 9, 7, 5]);
        let sg: Vec<u64> = trace.iter().map(|t| t.sigma).collect();
        assert_eq!(sg, vec![80, 73, 61, 49]);
        let deg: Vec<u64> = trace.iter().map(|t| t.degree).collect();
        assert_eq!(deg, vec![1769, 3200, 5327, 8541]);
    }

    #[test]
    fn wyy_frozen_value() {
        let (total, trace) = wyy_queries(4, 1, 0.1).unwrap();
        assert_eq!(total, BigUint::from(1189720u32));
        assert_eq!(trace.len(), 4);
        // baseline sigma exceeds the symmetry-aware sigma
        assert!(trace[0].sigma > sigma_method1(4, 2, 1, V_COS1_P3, DELTA_PRIME_DEFAULT).unwrap());
    }

    #[test]
    fn q_max_values() {
        assert_eq!(q_max(0.1).unwrap(), 3);
        assert_eq!(q_max(1e-3).unwrap(), 10);
        assert_eq!(q_max(1e-2).unwrap(), 6);
        assert_eq!(q_max(1e-4).unwrap(), 13);
    }

    #[test]
    fn delta_budget_telescopes() {
        let (_, trace) = method1_queries(4, 2, 1, 0.01).unwrap();
        let c = confidence_c();
        let sum: f64 = trace.iter().map(|t| t.delta_q).sum();
        assert!(sum <= c * 8.0 / 7.0 + 1e-15);
        // MSE budget from the proof expansion: (11/40) 2^(-2 q_max)
        let qm = q_max(0.01).unwrap();
        let mse_bound = 0.25f64.powi(qm as i32 + 1)
            + (1.0 + PI) * (1.0 + PI) * c * 2.0 * 0.25f64.powi(qm as i32);
        assert!(mse_bound <= 11.0 / 40.0 * 0.25f64.powi(qm as i32) + 1e-15);
        assert!(mse_bound <= 0.01 * 0.01);
    }

    #[test]
    fn femo_orderings_frozen() {
        // frozen totals at N=152, eta=113, eps=1e-3, all verified against an
        // independent implementation
        let cases: [(u64, &str, &str, &str); 3] = [
            (1, "1893153396", "186259510", "17018469944"),
            (2, "77594521170", "6996456138", "1752639118708"),
            (3, "2260543536330", "181902711876", "113907863767816"),
        ];
        for (k, m1, m2, wy) in cases {
            assert_eq!(method1_queries(152, 113, k, 1e-3).unwrap().0, big(m1), "m1 k={k}");
            assert_eq!(method2_queries(152, 113, k, 1e-3).unwrap().0, big(m2), "m2 k={k}");
            assert_eq!(wyy_queries(152, k, 1e-3).unwrap().0, big(wy), "wyy k={k}");
        }
    }

    #[test]
    fn eps_halving_ratios() {
        for k in [1u64, 2] {
            for eps in [1e-2, 1e-3] {
                let a = method1_queries(152, 113, k, eps).unwrap().0;
                let b = method1_queries(152, 113, k, eps / 2.0).unwrap().0;
                let ratio = b.to_string().parse::<f64>().unwrap() / a.to_string().parse::<f64>().unwrap();
                assert!((1.5..=3.0).contains(&ratio), "k={k} eps={eps} ratio {ratio}");
            }
        }
    }

    #[test]
    fn method2_rounds_cheaper_than_method1() {
        let (_, t1) = method1_queries(152, 113, 2, 1e-3).unwrap();
        let (_, t2) = method2_queries(152, 113, 2, 1e-3).unwrap();
        for (a, b) in t1.iter().zip(&t2) {
            assert!(2 * b.degree <= 2 * a.degree * a.samples, "q={}", a.q);
        }
    }

    #[test]
    fn sweep_single_value_matches_pointwise() {
        let rows = sweep_eps(8, 4, 1, &[1e-2]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].cells[0], Some(shadow_queries(8, 1, 1e-2).unwrap()));
        assert_eq!(rows[0].cells[4], Some(method2_queries(8, 4, 1, 1e-2).unwrap().0));
    }

    #[test]
    fn sweep_annotates_invalid_points_as_empty() {
        // at N=2 every method rejects k=3; at N=32 (eta=28) all are valid
        let rows = sweep_modes_hubbard(3, &[2, 32], 1e-2).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].cells.iter().all(|c| c.is_none()));
        assert!(rows[1].cells.iter().all(|c| c.is_some()));
        // 7/8 filling can push eta + k past N; those cells go empty too
        let rows = sweep_modes_hubbard(3, &[16], 1e-2).unwrap();
        assert!(rows[0].cells[3].is_none(), "method1 needs eta + k <= N");
        assert!(rows[0].cells[0].is_some(), "shadow has no filling constraint");
    }
}
