//! Single-shot phase-estimation failure probabilities.
//!
//! For a probe state with grid-indexed amplitudes c_mu and a phase theta in
//! [0, 1), the outcome l occurs with probability
//! |(1/sqrt(2^p)) sum_mu c_mu e^{2 pi i (theta - l/2^p) mu}|^2, and the shot
//! fails when the estimate l/2^p misses theta by more than 1/(2 pi) on the
//! unit phase circle. Distances wrap: phases are defined mod 1, and the
//! failure maxima of the window families sit near the wrap point.

use crate::probe::{Family, ProbeState};
use crate::{domain, Result};

const PI: f64 = std::f64::consts::PI;

/// Failure probability as a function of theta, restricted to [0, 0.5] for
/// export (the other half mirrors it).
#[derive(Debug, Clone)]
pub struct FailureCurve {
    pub thetas: Vec<f64>,
    pub probs: Vec<f64>,
}

fn check_state(state: &ProbeState) -> Result<()> {
    if state.family == Family::SineQae {
        return domain(
            "qpe expects grid-indexed amplitudes; the sine_qae family is indexed by \
             computational label and is not valid here",
        );
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&theta) {
        return domain(format!("theta must lie in [0, 1), got {theta}"));
    }
    Ok(())
}

/// Outcome distribution P(l | theta) for l = 0..2^p-1.
pub fn qpe_distribution(state: &ProbeState, theta: f64) -> Result<Vec<f64>> {
    check_state(state)?;
    check_theta(theta)?;
    let n = state.len();
    let nf = n as f64;
    let root = nf.sqrt();
    let mut probs = vec![0.0; n];
    for (l, prob) in probs.iter_mut().enumerate() {
        let u = theta - l as f64 / nf;
        let (mut re, mut im) = (0.0, 0.0);
        for (mu, &c) in state.amplitudes.iter().enumerate() {
            let ang = 2.0 * PI * (u * mu as f64).fract();
            re += c * ang.cos() / root;
            im += c * ang.sin() / root;
        }
        *prob = re * re + im * im;
    }
    Ok(probs)
}

/// Distance on the unit phase circle.
fn wrap_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(1.0 - d)
}

/// Probability that the estimate l/2^p misses theta by more than 1/(2 pi),
/// with wrap-around distance.
pub fn failure_probability(state: &ProbeState, theta: f64) -> Result<f64> {
    let probs = qpe_distribution(state, theta)?;
    let n = probs.len() as f64;
    let threshold = 1.0 / (2.0 * PI);
    Ok(probs
        .iter()
        .enumerate()
        .filter(|(l, _)| wrap_distance(*l as f64 / n, theta) > threshold)
        .map(|(_, p)| p)
        .sum())
}

/// Maximum failure probability over a uniform theta grid on [0, 1)
/// (theta_i = i / grid_points), plus the curve restricted to [0, 0.5].
pub fn max_failure(state: &ProbeState, grid_points: usize) -> Result<(f64, FailureCurve)> {
    if grid_points < 2 {
        return domain("max_failure requires at least 2 grid points");
    }
    check_state(state)?;
    let n = state.len();
    let nf = n as f64;
    let root = nf.sqrt();
    let threshold = 1.0 / (2.0 * PI);
    let mut max = 0.0f64;
    let mut thetas = Vec::new();
    let mut probs_out = Vec::new();
    for i in 0..grid_points {
        let theta = i as f64 / grid_points as f64;
        // inline distribution evaluation; this loop runs 10^5+ times
        let mut fail = 0.0;
        for l in 0..n {
            if wrap_distance(l as f64 / nf, theta) <= threshold {
                continue;
            }
            let u = theta - l as f64 / nf;
            let (mut re, mut im) = (0.0, 0.0);
            for (mu, &c) in state.amplitudes.iter().enumerate() {
                let ang = 2.0 * PI * (u * mu as f64).fract();
                re += c * ang.cos() / root;
                im += c * ang.sin() / root;
            }
            fail += re * re + im * im;
        }
        if fail > max {
            max = fail;
        }
        if theta <= 0.5 {
            thetas.push(theta);
            probs_out.push(fail);
        }
    }
    Ok((
        max,
        FailureCurve {
            thetas,
            probs: probs_out,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe::{make_probe, Family};

    #[test]
    fn aligned_phases_hit_exactly() {
        let s = make_probe(Family::Uniform, 3, None).unwrap();
        let d = qpe_distribution(&s, 0.0).unwrap();
        assert!((d[0] - 1.0).abs() < 1e-12);
        for p in &d[1..] {
            assert!(p.abs() < 1e-12);
        }
        let d = qpe_distribution(&s, 0.125).unwrap();
        assert!((d[1] - 1.0).abs() < 1e-12);
        assert!(failure_probability(&s, 0.0).unwrap() < 1e-12);
    }

    #[test]
    fn distribution_normalized_every_theta() {
        for fam in [Family::Uniform, Family::Cos1, Family::Cos2] {
            let s = make_probe(fam, 3, None).unwrap();
            for i in 0..50 {
                let th = i as f64 / 50.0;
                let d = qpe_distribution(&s, th).unwrap();
                let sum: f64 = d.iter().sum();
                assert!((sum - 1.0).abs() <= 1e-12, "{fam:?} theta={th}");
            }
        }
    }

    #[test]
    fn failure_bounded_and_mirror_symmetric() {
        let s = make_probe(Family::Cos1, 3, None).unwrap();
        for i in 1..40 {
            let th = i as f64 / 40.0;
            let f = failure_probability(&s, th).unwrap();
            assert!((0.0..=1.0).contains(&f));
            if th < 1.0 - th {
                let g = failure_probability(&s, 1.0 - th).unwrap();
                assert!((f - g).abs() <= 1e-10, "theta={th}: {f} vs {g}");
            }
        }
    }

    #[test]
    fn coarse_grid_maxima_match_known_values() {
        // 2000 points is enough to land within 2e-3 of the fine-grid maxima;
        // the acceptance suite runs the full 1e5-point version
        let cases = [
            (Family::Uniform, None, 0.1789),
            (Family::Cos1, None, 0.0108),
            (Family::Cos2, None, 0.0139),
            (Family::Kaiser, Some(0.98), 0.0086),
        ];
        let mut maxima = Vec::new();
        for (fam, alpha, want) in cases {
            let s = make_probe(fam, 3, alpha).unwrap();
            let (max, curve) = max_failure(&s, 2000).unwrap();
            assert!((max - want).abs() <= 2e-3, "{fam:?}: {max} vs {want}");
            assert!(curve.thetas.iter().all(|&t| t <= 0.5));
            maxima.push(max);
        }
        // ordering kaiser < cos1 < cos2 < uniform
        assert!(maxima[3] < maxima[1]);
        assert!(maxima[1] < maxima[2]);
        assert!(maxima[2] < maxima[0]);
    }

    #[test]
    fn two_point_grid_is_max_of_two() {
        let s = make_probe(Family::Uniform, 3, None).unwrap();
        let (max, _) = max_failure(&s, 2).unwrap();
        let a = failure_probability(&s, 0.0).unwrap();
        let b = failure_probability(&s, 0.5).unwrap();
        assert!((max - a.max(b)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = make_probe(Family::Uniform, 3, None).unwrap();
        assert!(qpe_distribution(&s, 1.0).is_err());
        assert!(qpe_distribution(&s, -0.1).is_err());
        let sine = make_probe(Family::SineQae, 3, None).unwrap();
        assert!(qpe_distribution(&sine, 0.2).is_err());
        assert!(max_failure(&s, 1).is_err());
    }
}
