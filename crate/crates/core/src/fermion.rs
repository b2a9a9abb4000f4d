//! Dense Jordan-Wigner brute-force oracle.
//!
//! Ladder operators are realized on the occupation basis (bit i of the
//! basis index = occupation of mode i) with parity strings over the lower
//! modes. Every k-body observable maps basis states to signed basis states,
//! so operators are built by composing single-entry column maps and only
//! materialized densely at the end.
//!
//! The module exists to validate, by direct matrix arithmetic, the
//! symmetry-sector facts the query calculators assume: the square-sum of
//! all k-body observables restricted to the eta-particle sector is a
//! multiple of the sector identity with an exactly computable coefficient,
//! and randomly weighted observable sums concentrate below the sigma
//! constants of [`crate::complexity`].

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::linalg::{spectral_norm, HermMatrix};
use crate::numerics::binomial_exact;
use crate::probe::{phi, ProbeState};
use crate::{domain, Result, SplitMix64};

const MAX_MODES: usize = 8;

/// Observable flavour attached to an index pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdmKind {
    /// A(p,q) + A(q,p): twice the real part.
    Re,
    /// i (A(p,q) - A(q,p)): twice the imaginary part.
    Im,
    /// The diagonal operator A(p,p).
    Diag,
}

/// A k-body observable label: strictly increasing index tuples plus kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdmLabel {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub kind: RdmKind,
}

fn strictly_increasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// Deduplication order on tuples: 1-norm first, lexicographic on ties.
fn dedup_less(a: &[usize], b: &[usize]) -> bool {
    let (sa, sb) = (a.iter().sum::<usize>(), b.iter().sum::<usize>());
    sa < sb || (sa == sb && a < b)
}

impl RdmLabel {
    pub fn new(p: Vec<usize>, q: Vec<usize>, kind: RdmKind) -> Result<RdmLabel> {
        if p.is_empty() || p.len() != q.len() {
            return domain("RdmLabel requires non-empty index tuples of equal length");
        }
        if !strictly_increasing(&p) || !strictly_increasing(&q) {
            return domain("RdmLabel index tuples must be strictly increasing");
        }
        match kind {
            RdmKind::Diag => {
                if p != q {
                    return domain("Diag labels require p == q");
                }
            }
            RdmKind::Re | RdmKind::Im => {
                if !dedup_less(&q, &p) {
                    return domain(
                        "Re/Im labels require q below p in the (1-norm, lexicographic) order",
                    );
                }
            }
        }
        Ok(RdmLabel { p, q, kind })
    }

    pub fn order(&self) -> usize {
        self.p.len()
    }
}

/// Signed basis permutation: column b maps to sign * |target(b)> or to zero.
#[derive(Debug, Clone)]
struct ColumnMap {
    dim: usize,
    targets: Vec<Option<(usize, f64)>>,
}

impl ColumnMap {
    fn identity(dim: usize) -> ColumnMap {
        ColumnMap {
            dim,
            targets: (0..dim).map(|b| Some((b, 1.0))).collect(),
        }
    }

    /// Applies a single ladder factor on top of self (factor acts after).
    fn then_ladder(&self, mode: usize, dagger: bool) -> ColumnMap {
        let bit = 1usize << mode;
        let parity_mask = bit - 1;
        let targets = self
            .targets
            .iter()
            .map(|entry| {
                let (b, s) = (*entry)?;
                let occupied = b & bit != 0;
                if dagger == occupied {
                    return None; // creating on occupied / annihilating on empty
                }
                let sign = if ((b & parity_mask).count_ones()) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                Some((b ^ bit, s * sign))
            })
            .collect();
        ColumnMap {
            dim: self.dim,
            targets,
        }
    }
}

/// Column map of A(p,q) = a+(p1)..a+(pk) a(q1)..a(qk); rightmost factor
/// applies first.
fn amplitude_map(n_modes: usize, p: &[usize], q: &[usize]) -> ColumnMap {
    let mut m = ColumnMap::identity(1 << n_modes);
    for &mode in q.iter().rev() {
        m = m.then_ladder(mode, false);
    }
    for &mode in p.iter().rev() {
        m = m.then_ladder(mode, true);
    }
    m
}

fn check_modes(n_modes: usize, label: &RdmLabel) -> Result<()> {
    if n_modes > MAX_MODES {
        return domain(format!(
            "dense operators support at most {MAX_MODES} modes, got {n_modes}"
        ));
    }
    if label.p.iter().chain(&label.q).any(|&i| i >= n_modes) {
        return domain(format!("label indices must be < {n_modes}"));
    }
    Ok(())
}

/// Dense Hermitian matrix of the labelled observable. Re and Im kinds carry
/// the factor-2 normalization (A + A-dagger and i(A - A-dagger)).
pub fn jw_operator(n_modes: usize, label: &RdmLabel) -> Result<HermMatrix> {
    check_modes(n_modes, label)?;
    let dim = 1usize << n_modes;
    let fwd = amplitude_map(n_modes, &label.p, &label.q);
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    match label.kind {
        RdmKind::Diag => {
            for (b, entry) in fwd.targets.iter().enumerate() {
                if let Some((b2, s)) = entry {
                    data[b2 * dim + b] += Complex64::new(*s, 0.0);
                }
            }
        }
        RdmKind::Re => {
            for (b, entry) in fwd.targets.iter().enumerate() {
                if let Some((b2, s)) = entry {
                    data[b2 * dim + b] += Complex64::new(*s, 0.0);
                    data[b * dim + b2] += Complex64::new(*s, 0.0);
                }
            }
        }
        RdmKind::Im => {
            for (b, entry) in fwd.targets.iter().enumerate() {
                if let Some((b2, s)) = entry {
                    // i * A - i * A^T
                    data[b2 * dim + b] += Complex64::new(0.0, *s);
                    data[b * dim + b2] += Complex64::new(0.0, -*s);
                }
            }
        }
    }
    HermMatrix::new(dim, data)
}

/// Diagonal 0/1 projector onto Hamming weight eta.
pub fn particle_projector(n_modes: usize, eta: usize) -> Result<HermMatrix> {
    if n_modes > MAX_MODES {
        return domain(format!(
            "dense operators support at most {MAX_MODES} modes, got {n_modes}"
        ));
    }
    if eta > n_modes {
        return domain(format!("eta must satisfy 0 <= eta <= N, got eta={eta} N={n_modes}"));
    }
    let dim = 1usize << n_modes;
    HermMatrix::from_fn(dim, |i, j| {
        if i == j && i.count_ones() as usize == eta {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Basis indices of the eta-particle sector, ascending.
fn sector_basis(n_modes: usize, eta: usize) -> Vec<usize> {
    (0..1usize << n_modes)
        .filter(|b| b.count_ones() as usize == eta)
        .collect()
}

/// All k-body labels over n modes: every diagonal tuple plus one Re and one
/// Im label per deduplicated off-diagonal pair. The count is C(n,k)^2.
pub fn enumerate_labels(n_modes: usize, k: usize) -> Result<Vec<RdmLabel>> {
    if k == 0 || k > n_modes {
        return domain(format!("label order must satisfy 1 <= k <= N, got k={k} N={n_modes}"));
    }
    let tuples = k_subsets(n_modes, k);
    let mut labels = Vec::new();
    for p in &tuples {
        labels.push(RdmLabel::new(p.clone(), p.clone(), RdmKind::Diag)?);
    }
    for p in &tuples {
        for q in &tuples {
            if dedup_less(q, p) {
                labels.push(RdmLabel::new(p.clone(), q.clone(), RdmKind::Re)?);
                labels.push(RdmLabel::new(p.clone(), q.clone(), RdmKind::Im)?);
            }
        }
    }
    Ok(labels)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Brute-force versus closed-form sector norm of the square-sum of all
/// k-body observables.
#[derive(Debug, Clone)]
pub struct SectorNormReport {
    /// Spectral norm of the projected square-sum, computed densely.
    pub brute_norm: f64,
    /// Exact coefficient of the sector identity:
    /// C(N,eta)^-1 [ C(N,k) C(N-k,eta-k)
    ///   + 2 sum_{m=0}^{k-1} C(N,k) C(k,m) C(N-k,k-m) C(N-2k+m,eta-k) ].
    pub closed_coefficient: f64,
    /// 2 C(eta,k) C(N-eta+k,k).
    pub upper_bound: f64,
}

fn check_sector(n_modes: usize, eta: usize, k: usize) -> Result<()> {
    if k == 0 || !(k <= eta && eta + k <= n_modes) {
        return domain(format!(
            "sector routines require 1 <= k <= eta <= N - k, got N={n_modes} eta={eta} k={k}"
        ));
    }
    Ok(())
}

/// Applies the square of the observable described by `fwd`/kind to the
/// basis column b, accumulating into the dense matrix `acc`. The square of
/// a k-body observable is real (in fact diagonal); the imaginary parts of
/// the Im-kind coefficient products cancel exactly.
fn accumulate_square(acc: &mut [f64], dim: usize, fwd: &ColumnMap, kind: RdmKind) {
    let mut back = vec![None; dim];
    for (b, entry) in fwd.targets.iter().enumerate() {
        if let Some((b2, s)) = entry {
            back[*b2] = Some((b, *s));
        }
    }
    // entries of M |b> with their complex coefficients:
    // M = A (Diag), A + A^T (Re), or i A - i A^T (Im)
    let apply = |b: usize, buf: &mut Vec<(usize, Complex64)>| {
        buf.clear();
        match kind {
            RdmKind::Diag => {
                if let Some((b2, s)) = fwd.targets[b] {
                    buf.push((b2, Complex64::new(s, 0.0)));
                }
            }
            RdmKind::Re => {
                if let Some((b2, s)) = fwd.targets[b] {
                    buf.push((b2, Complex64::new(s, 0.0)));
                }
                if let Some((b2, s)) = back[b] {
                    buf.push((b2, Complex64::new(s, 0.0)));
                }
            }
            RdmKind::Im => {
                if let Some((b2, s)) = fwd.targets[b] {
                    buf.push((b2, Complex64::new(0.0, s)));
                }
                if let Some((b2, s)) = back[b] {
                    buf.push((b2, Complex64::new(0.0, -s)));
                }
            }
        }
    };
    let mut first = Vec::with_capacity(2);
    let mut second = Vec::with_capacity(2);
    for b in 0..dim {
        apply(b, &mut first);
        let entries: Vec<(usize, Complex64)> = first.clone();
        for (b1, c1) in entries {
            apply(b1, &mut second);
            for &(b2, c2) in second.iter() {
                let prod = c2 * c1;
                debug_assert!(prod.im.abs() < 1e-12);
                acc[b2 * dim + b] += prod.re;
            }
        }
    }
}

/// Dense validation of the sector-norm identity for all k-body observables
/// at once: brute spectral norm, exact closed coefficient, and the
/// concentration upper bound.
pub fn sector_norm_report(n_modes: usize, eta: usize, k: usize) -> Result<SectorNormReport> {
    check_sector(n_modes, eta, k)?;
    if n_modes > MAX_MODES {
        return domain(format!(
            "dense operators support at most {MAX_MODES} modes, got {n_modes}"
        ));
    }
    let dim = 1usize << n_modes;
    let mut acc = vec![0.0; dim * dim];
    for label in enumerate_labels(n_modes, k)? {
        let fwd = amplitude_map(n_modes, &label.p, &label.q);
        accumulate_square(&mut acc, dim, &fwd, label.kind);
    }
    // project onto the eta sector and take the spectral norm densely
    let basis = sector_basis(n_modes, eta);
    let sector = HermMatrix::from_fn(basis.len(), |i, j| {
        Complex64::new(acc[basis[i] * dim + basis[j]], 0.0)
    })?;
    let brute_norm = spectral_norm(&sector);

    let nb = n_modes as u64;
    let kb = k as u64;
    let eb = eta as u64;
    let mut numerator = binomial_exact(nb, kb) * binomial_exact(nb - kb, eb - kb);
    for m in 0..kb {
        numerator += BigUint::from(2u32)
            * binomial_exact(nb, kb)
            * binomial_exact(kb, m)
            * binomial_exact(nb - kb, kb - m)
            * binomial_exact(nb - 2 * kb + m, eb - kb);
    }
    let denominator = binomial_exact(nb, eb);
    let closed_coefficient = numerator.to_f64().unwrap() / denominator.to_f64().unwrap();
    let upper_bound = 2.0
        * binomial_exact(eb, kb).to_f64().unwrap()
        * binomial_exact(nb - eb + kb, kb).to_f64().unwrap();
    Ok(SectorNormReport {
        brute_norm,
        closed_coefficient,
        upper_bound,
    })
}

/// Exact combinatorial identity behind the closed coefficient:
/// sum_m C(N,k) C(N-k,k-m) C(k,m) C(N-(2k-m), eta-k) / C(N,eta)
/// equals C(eta,k) C(N-eta+k,k).
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    /// Left-hand numerator: the full sum before division by C(N, eta).
    pub lhs_numerator: BigUint,
    /// Left-hand denominator C(N, eta).
    pub denominator: BigUint,
    /// Right-hand side C(eta,k) C(N-eta+k,k).
    pub rhs: BigUint,
}

impl IdentityCheck {
    /// Exact equality of both sides.
    pub fn holds(&self) -> bool {
        self.lhs_numerator == &self.rhs * &self.denominator
    }
}

/// Evaluates both sides of the identity in exact integer arithmetic.
pub fn identity_check(n: u64, eta: u64, k: u64) -> Result<IdentityCheck> {
    if n > 200 {
        return domain(format!("identity_check supports N <= 200, got {n}"));
    }
    if !(k <= eta && eta + k <= n) {
        return domain(format!(
            "identity_check requires 0 <= k <= eta and eta + k <= N, got N={n} eta={eta} k={k}"
        ));
    }
    let mut lhs_numerator = BigUint::from(0u32);
    for m in 0..=k {
        lhs_numerator += binomial_exact(n, k)
            * binomial_exact(n - k, k - m)
            * binomial_exact(k, m)
            * binomial_exact(n - (2 * k - m), eta - k);
    }
    Ok(IdentityCheck {
        lhs_numerator,
        denominator: binomial_exact(n, eta),
        rhs: binomial_exact(eta, k) * binomial_exact(n - eta + k, k),
    })
}

/// Empirical tail of the randomly weighted observable sum on the sector:
/// draws i.i.d. coefficients 2X_j per observable from the probe
/// distribution Pr[X = x_mu] = c_mu^2, computes the sector spectral norm of
/// sum_j 2 X_j O_j per trial, and returns the fraction of trials exceeding
/// `threshold`.
///
/// Trial tau uses its own SplitMix64 stream seeded with
/// seed XOR mix64(tau + 1), where mix64 is the SplitMix64 finalizer; the
/// result is reproducible bit for bit for a given (seed, trials).
pub fn random_coefficient_norm_tail(
    n_modes: usize,
    eta: usize,
    k: usize,
    probe: &ProbeState,
    trials: u64,
    seed: u64,
    threshold: f64,
) -> Result<f64> {
    check_sector(n_modes, eta, k)?;
    if n_modes > 6 {
        return domain(format!(
            "random_coefficient_norm_tail supports at most 6 modes, got {n_modes}"
        ));
    }
    if trials < 100 {
        return domain(format!("need at least 100 trials, got {trials}"));
    }
    let labels = enumerate_labels(n_modes, k)?;
    let basis = sector_basis(n_modes, eta);
    let sdim = basis.len();
    // sector-projected dense observables, built once
    let mut sector_ops: Vec<Vec<Complex64>> = Vec::with_capacity(labels.len());
    for label in &labels {
        let full = jw_operator(n_modes, label)?;
        let mut m = vec![Complex64::new(0.0, 0.0); sdim * sdim];
        for i in 0..sdim {
            for j in 0..sdim {
                m[i * sdim + j] = full.get(basis[i], basis[j]);
            }
        }
        sector_ops.push(m);
    }
    // cumulative distribution over the grid labels
    let mut cum = Vec::with_capacity(probe.len());
    let mut acc = 0.0;
    for c in &probe.amplitudes {
        acc += c * c;
        cum.push(acc);
    }
    let points: Vec<f64> = (0..probe.len()).map(|mu| phi(mu, probe.p)).collect();

    let mut exceed = 0u64;
    let mut sum = vec![Complex64::new(0.0, 0.0); sdim * sdim];
    for trial in 0..trials {
        let mut rng = SplitMix64::new(seed ^ mix64(trial + 1));
        sum.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for op in &sector_ops {
            let u = rng.next_f64();
            let mu = cum.iter().position(|&c| u < c).unwrap_or(probe.len() - 1);
            let w = 2.0 * points[mu];
            for (s, o) in sum.iter_mut().zip(op) {
                *s += w * o;
            }
        }
        let h = HermMatrix::new(sdim, sum.clone())?;
        if spectral_norm(&h) > threshold {
            exceed += 1;
        }
    }
    Ok(exceed as f64 / trials as f64)
}

/// SplitMix64 finalizer, used to derive independent per-trial streams.
fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
