//! Measurement grid and probe-state families.
//!
//! The grid G_p holds the 2^p points x = mu/2^p - 1/2 + 1/2^(p+1), and the
//! window families (uniform, two cosine windows, Kaiser) are indexed over it
//! through phi(mu) = (2 mu - 2^p + 1) / 2^(p+1). The amplitude-estimation
//! sine state is deliberately a separate family: it is indexed by the
//! computational label k, not by the grid, and mixing the two conventions is
//! the classic mistake this split prevents.

use crate::numerics::bessel_i0;
use crate::{domain, Result};

/// The 2^p-point measurement grid.
#[derive(Debug, Clone)]
pub struct Grid {
    pub p: u32,
    pub points: Vec<f64>,
}

/// Builds G_p with points in mu-ascending order. Valid for 1 <= p <= 12.
pub fn make_grid(p: u32) -> Result<Grid> {
    if !(1..=12).contains(&p) {
        return domain(format!("make_grid requires 1 <= p <= 12, got {p}"));
    }
    let n = 1usize << p;
    let points = (0..n).map(|mu| phi(mu, p)).collect();
    Ok(Grid { p, points })
}

/// phi(mu) = (2 mu - 2^p + 1) / 2^(p+1); exact in binary floating point.
pub fn phi(mu: usize, p: u32) -> f64 {
    let n = 1i64 << p;
    (2 * mu as i64 - n + 1) as f64 / (2 * n) as f64
}

/// Probe-amplitude family tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Uniform,
    Cos1,
    Cos2,
    Kaiser,
    /// Amplitude-estimation sine state; indexed by computational label k,
    /// not by the grid.
    SineQae,
    Explicit,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "uniform" => Ok(Family::Uniform),
            "cos1" => Ok(Family::Cos1),
            "cos2" => Ok(Family::Cos2),
            "kaiser" => Ok(Family::Kaiser),
            "sine" | "sine_qae" => Ok(Family::SineQae),
            other => domain(format!(
                "unknown probe family '{other}' (expected uniform|cos1|cos2|kaiser|sine)"
            )),
        }
    }
}

/// Normalized real amplitude vector over 2^p basis labels.
#[derive(Debug, Clone)]
pub struct ProbeState {
    pub p: u32,
    pub family: Family,
    pub alpha: Option<f64>,
    pub amplitudes: Vec<f64>,
}

/// Builds a probe state of the given family. `alpha` is required exactly for
/// the Kaiser family (alpha >= 0) and rejected elsewhere.
pub fn make_probe(family: Family, p: u32, alpha: Option<f64>) -> Result<ProbeState> {
    if !(1..=12).contains(&p) {
        return domain(format!("make_probe requires 1 <= p <= 12, got {p}"));
    }
    if family == Family::Kaiser {
        match alpha {
            None => return domain("kaiser family requires alpha"),
            Some(a) if a < 0.0 => return domain("kaiser alpha must be >= 0"),
            _ => {}
        }
    } else if alpha.is_some() {
        return domain("alpha is only meaningful for the kaiser family");
    }
    let n = 1usize << p;
    let nf = n as f64;
    let pi = std::f64::consts::PI;
    let amplitudes: Vec<f64> = match family {
        Family::Uniform => vec![1.0 / nf.sqrt(); n],
        Family::Cos1 => (0..n)
            .map(|mu| (2.0 / (nf + 1.0)).sqrt() * (nf * phi(mu, p) * pi / (nf + 1.0)).cos())
            .collect(),
        Family::Cos2 => (0..n)
            .map(|mu| (2.0 / nf).sqrt() * (phi(mu, p) * pi).cos())
            .collect(),
        Family::Kaiser => {
            let a = alpha.unwrap();
            let denom = bessel_i0(pi * a);
            let raw: Vec<f64> = (0..n)
                .map(|mu| {
                    let x = 2.0 * phi(mu, p);
                    // window support is |x| <= 1; the grid keeps |2 phi| < 1
                    bessel_i0(pi * a * (1.0 - x * x).max(0.0).sqrt()) / denom
                })
                .collect();
            // the Kaiser form fixes amplitudes only up to proportionality
            let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
            raw.into_iter().map(|c| c / norm).collect()
        }
        Family::SineQae => (0..n)
            .map(|k| (2.0 / nf).sqrt() * (k as f64 * pi / nf).sin())
            .collect(),
        Family::Explicit => {
            return domain("explicit probe states are built with ProbeState::explicit")
        }
    };
    Ok(ProbeState {
        p,
        family,
        alpha,
        amplitudes,
    })
}

impl ProbeState {
    /// Wraps an explicit amplitude vector; must have length 2^p and unit
    /// norm to 1e-12.
    pub fn explicit(p: u32, amplitudes: Vec<f64>) -> Result<ProbeState> {
        if !(1..=12).contains(&p) {
            return domain(format!("explicit probe requires 1 <= p <= 12, got {p}"));
        }
        if amplitudes.len() != 1 << p {
            return domain(format!(
                "explicit probe expects {} amplitudes, got {}",
                1usize << p,
                amplitudes.len()
            ));
        }
        let norm2: f64 = amplitudes.iter().map(|c| c * c).sum();
        if (norm2 - 1.0).abs() > 1e-12 {
            return domain(format!("explicit probe must be normalized; sum c^2 = {norm2}"));
        }
        Ok(ProbeState {
            p,
            family: Family::Explicit,
            alpha: None,
            amplitudes,
        })
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }
}

/// v = E[(2X)^2] = sum over the grid of (2 x_mu)^2 c_mu^2.
pub fn probe_variance(state: &ProbeState) -> f64 {
    state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(mu, c)| {
            let x = 2.0 * phi(mu, state.p);
            x * x * c * c
        })
        .sum()
}
