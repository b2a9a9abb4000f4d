//! Scalar special functions and numerically stable combinatorics.
//!
//! Everything downstream funnels through these: binomial coefficients of
//! order C(152, 113) enter the concentration constants only as logarithms,
//! Hamiltonian-simulation degrees need ln Γ at arguments beyond 10^10, and
//! the Kaiser window needs I₀.

use num_bigint::BigUint;

use crate::{domain, Result};

/// Lanczos coefficients for g = 7, n = 9 (Godfrey's set, ~15 significant
/// digits over the positive real axis).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for x > 0, via the Lanczos
/// approximation.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma requires x > 0");
    if x < 0.5 {
        // reflection keeps the series argument away from 0
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFF[0];
    for (i, c) in LANCZOS_COEFF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// ln C(n, k), exact to better than 1e-12 relative error for n ≤ 10^6.
///
/// Small min(k, n-k) is summed term by term (the ln-gamma difference
/// cancels catastrophically when ln C itself is small); large arguments go
/// through [`ln_gamma`], where the value is big enough for the rounding of
/// the individual terms to be negligible in relative terms.
pub fn log_binomial(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return domain(format!("log_binomial requires k <= n, got n={n} k={k}"));
    }
    let m = k.min(n - k);
    if m == 0 {
        return Ok(0.0);
    }
    if m <= 4096 {
        // Kahan-compensated sum of ln((n-m+i)/i), i = 1..m
        let mut sum = 0.0;
        let mut carry = 0.0;
        for i in 1..=m {
            let term = (((n - m + i) as f64) / (i as f64)).ln();
            let y = term - carry;
            let t = sum + y;
            carry = (t - sum) - y;
            sum = t;
        }
        Ok(sum)
    } else {
        Ok(ln_gamma((n + 1) as f64) - ln_gamma((k + 1) as f64) - ln_gamma((n - k + 1) as f64))
    }
}

/// Exact binomial coefficient as a big integer. Test oracle for
/// [`log_binomial`] and the exact-combinatorics routines; fine for any n
/// that fits the multiplication, intended range n ≤ 512.
pub fn binomial_exact(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let m = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 1..=m {
        acc = acc * BigUint::from(n - m + i) / BigUint::from(i);
    }
    acc
}

/// Modified Bessel function of the first kind, order zero, by its power
/// series Σ (x/2)^{2m} / (m!)², truncated once a term drops below 1e-16 of
/// the partial sum. Requires x ≥ 0.
pub fn bessel_i0(x: f64) -> f64 {
    debug_assert!(x >= 0.0, "bessel_i0 requires x >= 0");
    let half_sq = (x / 2.0) * (x / 2.0);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 1.0;
    loop {
        term *= half_sq / (m * m);
        sum += term;
        if term < 1e-16 * sum {
            return sum;
        }
        m += 1.0;
    }
}

/// ln Σ exp(t_i) without overflow, via max-shift.
pub fn log_sum_exp(terms: &[f64]) -> Result<f64> {
    if terms.is_empty() {
        return domain("log_sum_exp requires a non-empty list");
    }
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    let sum: f64 = terms.iter().map(|t| (t - max).exp()).sum();
    Ok(max + sum.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn ln_big(x: &BigUint) -> f64 {
        // exact big-integer log via bit split: x = m * 2^s with m in f64 range
        let bits = x.bits();
        if bits <= 52 {
            return x.to_f64().unwrap().ln();
        }
        let shift = bits - 52;
        let m = (x >> shift).to_f64().unwrap();
        m.ln() + (shift as f64) * std::f64::consts::LN_2
    }

    #[test]
    fn log_binomial_small_exact() {
        assert!((log_binomial(4, 2).unwrap() - 6f64.ln()).abs() < 1e-14);
        assert_eq!(log_binomial(123, 0).unwrap(), 0.0);
        assert_eq!(log_binomial(123, 123).unwrap(), 0.0);
        assert!(log_binomial(3, 4).is_err());
    }

    #[test]
    fn log_binomial_matches_big_integer_oracle() {
        // (152, 113): frozen against exact big-integer arithmetic
        let exact = ln_big(&binomial_exact(152, 113));
        let got = log_binomial(152, 113).unwrap();
        assert!(
            (got - exact).abs() <= 1e-12 * exact.abs(),
            "got {got}, exact {exact}"
        );
        // sweep of awkward shapes, n up to 512
        for &(n, k) in &[(512u64, 256u64), (512, 3), (400, 399), (333, 17), (512, 100)] {
            let exact = ln_big(&binomial_exact(n, k));
            let got = log_binomial(n, k).unwrap();
            assert!((got - exact).abs() <= 1e-12 * exact.abs().max(1.0), "C({n},{k})");
        }
        // contract edge: n = 10^6 stays within 1e-12 relative
        for &(n, k) in &[(1_000_000u64, 1u64), (1_000_000, 2000), (1_000_000, 4097)] {
            let exact = ln_big(&binomial_exact(n, k));
            let got = log_binomial(n, k).unwrap();
            assert!(
                (got - exact).abs() <= 1e-12 * exact.abs().max(1.0),
                "C({n},{k}): got {got} exact {exact}"
            );
        }
    }

    #[test]
    fn ln_gamma_matches_big_factorials() {
        // design check: Lanczos against exact factorials up to 200
        let mut fact = BigUint::from(1u32);
        for n in 1u64..=200 {
            fact *= BigUint::from(n);
            let exact = ln_big(&fact);
            let got = ln_gamma((n + 1) as f64);
            assert!(
                (got - exact).abs() <= 1e-12 * exact.max(1.0),
                "ln {n}! got {got} exact {exact}"
            );
        }
    }

    #[test]
    fn pascal_rule_holds() {
        for n in 2u64..=60 {
            for k in 1..n {
                let lhs = log_binomial(n, k).unwrap().exp();
                let rhs =
                    log_binomial(n - 1, k - 1).unwrap().exp() + log_binomial(n - 1, k).unwrap().exp();
                assert!((lhs - rhs).abs() <= 1e-10 * rhs, "Pascal at ({n},{k})");
            }
        }
    }

    #[test]
    fn bessel_known_values() {
        assert_eq!(bessel_i0(0.0), 1.0);
        // I0(1), 50-term series reference
        assert!((bessel_i0(1.0) - 1.266_065_877_752_008_3).abs() < 1e-13);
        // self-consistency at the Kaiser argument: two truncation depths
        let x = std::f64::consts::PI * 0.98;
        let deep = {
            let half_sq = (x / 2.0) * (x / 2.0);
            let mut term = 1.0f64;
            let mut sum = 1.0f64;
            for m in 1..200 {
                term *= half_sq / ((m * m) as f64);
                sum += term;
            }
            sum
        };
        assert!((bessel_i0(x) - deep).abs() <= 1e-12 * deep);
    }

    #[test]
    fn bessel_monotone_on_0_50() {
        let mut prev = bessel_i0(0.0);
        for i in 1..=500 {
            let cur = bessel_i0(i as f64 * 0.1);
            assert!(cur > prev);
            prev = cur;
        }
    }

    #[test]
    fn log_sum_exp_basics() {
        assert!((log_sum_exp(&[0.0, 0.0]).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((log_sum_exp(&[-1000.0, -1000.0]).unwrap() - (-1000.0 + 2f64.ln())).abs() < 1e-12);
        let one = log_sum_exp(&[0.25f64.ln(), 0.75f64.ln()]).unwrap();
        assert!(one.abs() < 1e-14);
        assert!(log_sum_exp(&[]).is_err());
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]).unwrap(), f64::NEG_INFINITY);
    }

    proptest! {
        #[test]
        fn log_sum_exp_shift_equivariant(
            xs in proptest::collection::vec(-50.0f64..50.0, 1..20),
            c in -100.0f64..100.0,
        ) {
            let base = log_sum_exp(&xs).unwrap();
            let shifted: Vec<f64> = xs.iter().map(|x| x + c).collect();
            let got = log_sum_exp(&shifted).unwrap();
            prop_assert!((got - (base + c)).abs() <= 1e-14 * (1.0 + base.abs() + c.abs()));
        }

        #[test]
        fn log_sum_exp_permutation_invariant(
            mut xs in proptest::collection::vec(-50.0f64..50.0, 2..20),
        ) {
            let a = log_sum_exp(&xs).unwrap();
            xs.reverse();
            let b = log_sum_exp(&xs).unwrap();
            prop_assert!((a - b).abs() <= 1e-13);
        }
    }
}
