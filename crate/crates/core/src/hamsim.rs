//! Minimal polynomial degree for time-evolution approximation.
//!
//! The degree-Q truncation of the Jacobi-Anger expansion approximates
//! e^{ixt} once the factorial tail 4 t^l / (2^l l!) drops below eps/8; the
//! minimal such l, minus one, is the polynomial degree. Everything is
//! evaluated in log space: the calculators feed in t of order 10^5..10^10,
//! where l! overflows catastrophically in linear space.

use crate::numerics::ln_gamma;
use crate::{domain, Result};

/// Q = -1 + min { l : ln 4 + l ln(t/2) - ln l! <= ln(eps/8) }, located by
/// exponential bracketing followed by bisection.
pub fn hs_degree(t: f64, eps: f64) -> Result<u64> {
    if !(t > 0.0) {
        return domain(format!("hs_degree requires t > 0, got {t}"));
    }
    if !(0.0 < eps && eps < 1.0) {
        return domain(format!("hs_degree requires 0 < eps < 1, got {eps}"));
    }
    let target = (eps / 8.0).ln();
    let ln4 = 4.0f64.ln();
    let ln_half_t = (t / 2.0).ln();
    let satisfied = |l: u64| -> bool { ln4 + l as f64 * ln_half_t - ln_gamma(l as f64 + 1.0) <= target };

    // l = 0 never satisfies (4 > eps/8 for eps < 1), so the first satisfying
    // l is >= 1 and the predicate partitions cleanly: the tail term rises
    // until l ~ t/2 while staying above ln 4, then decreases monotonically.
    let mut hi = (t.ceil() as u64).max(2);
    while !satisfied(hi) {
        hi = hi.checked_mul(2).ok_or_else(|| {
            crate::Error::Domain(format!("hs_degree bracket overflow at t={t}, eps={eps}"))
        })?;
    }
    let mut lo = 0u64; // fails: ln 4 > ln(eps/8)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if satisfied(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi - 1)
}
