//! Command-line surface of the estimation toolkit.
//!
//! Every subcommand is deterministic: identical argv produces byte-identical
//! output, including the seeded Monte-Carlo oracle. CSV uses '.' decimals,
//! LF line endings, and full-decimal big integers; structured outputs are
//! JSON.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use hlest::complexity::{self, Method};
use hlest::fermion;
use hlest::hamsim;
use hlest::probe::{make_probe, Family, ProbeState};
use hlest::qae::{self, QaeSpec};
use hlest::qpe;

#[derive(Parser)]
#[command(
    name = "hlest",
    about = "Probe-state analysis and query-complexity calculators for \
             Heisenberg-limited multi-observable estimation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutArg {
    /// Write output to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Amplitude-estimation MSE curves over a theta grid.
    ///
    /// Emits `theta,mse` (or the sine/uniform/eigen-optimal comparison
    /// columns with --compare). The default grid mirrors the standard
    /// near-optimality plots: 10000 points on [0.01, pi/2 - 0.01].
    QaeMse {
        /// Probe register size (3..=9 when --compare computes the optimum).
        #[arg(long)]
        q: u32,
        /// Probe family: uniform | cos1 | cos2 | kaiser | sine.
        #[arg(long, default_value = "sine")]
        probe: String,
        /// Kaiser shape parameter (required for --probe kaiser).
        #[arg(long)]
        alpha: Option<f64>,
        /// Number of grid points (right-open uniform grid).
        #[arg(long, default_value_t = 10000)]
        points: usize,
        /// Sweep the full interval [0, pi/2] instead of the clipped default.
        #[arg(long)]
        full_range: bool,
        /// Explicit lower grid edge (overrides the default).
        #[arg(long)]
        theta_lo: Option<f64>,
        /// Explicit upper grid edge (overrides the default).
        #[arg(long)]
        theta_hi: Option<f64>,
        /// Emit theta,mse_sine,mse_uniform,mse_optimal instead.
        #[arg(long)]
        compare: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Phase-estimation failure-probability curves for probe windows.
    ///
    /// Scans theta over [0, 1) and reports the curve on [0, 0.5] (the two
    /// halves mirror); --all compares the four built-in windows at once and
    /// --max-only reduces each curve to its maximum.
    ProbeFailure {
        /// Grid register size.
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// Probe family: uniform | cos1 | cos2 | kaiser.
        #[arg(long)]
        probe: Option<String>,
        /// Kaiser shape parameter.
        #[arg(long)]
        alpha: Option<f64>,
        /// Compare uniform, cos1, cos2, and kaiser(0.98).
        #[arg(long)]
        all: bool,
        /// Number of theta grid points on [0, 1).
        #[arg(long, default_value_t = 100_000)]
        grid: usize,
        /// Emit only `family,max_failure` lines.
        #[arg(long)]
        max_only: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Maximum failure probability of the Kaiser window as alpha varies.
    KaiserScan {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 0.0)]
        alpha_from: f64,
        #[arg(long, default_value_t = 30.0)]
        alpha_to: f64,
        /// Number of alpha samples (inclusive endpoints).
        #[arg(long, default_value_t = 61)]
        alphas: usize,
        /// Theta grid points per alpha.
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Total query count of one estimation strategy at one parameter point.
    Complexity {
        /// shadow | qae | wyy | method1 | method2.
        #[arg(long)]
        method: String,
        #[arg(long = "N", value_name = "N")]
        n: u64,
        /// Particle number (required for method1 and method2).
        #[arg(long)]
        eta: Option<u64>,
        #[arg(long)]
        k: u64,
        /// Target root-MSE in (0, 1).
        #[arg(long)]
        eps: f64,
        /// Emit the per-round trace as JSON.
        #[arg(long)]
        trace: bool,
        /// Emit JSON even without --trace.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Sweep all five calculators along a precision or system-size axis.
    ///
    /// Emits `axis,shadow,qae,wyy,method1,method2`; cells that violate a
    /// per-method precondition are left empty.
    Sweep {
        /// femo (N=152, eta=113 defaults) or hubbard (eta = ceil(7N/8)).
        #[arg(long)]
        mode: String,
        #[arg(long)]
        k: u64,
        /// eps (log-spaced) or N (linear integer grid).
        #[arg(long)]
        axis: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        points: usize,
        /// Fixed precision for axis=N sweeps.
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        /// Mode count override (femo mode or axis=eps hubbard sweeps).
        #[arg(long = "N", value_name = "N")]
        n: Option<u64>,
        /// Particle-number override (femo mode).
        #[arg(long)]
        eta: Option<u64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Minimal polynomial degree for eps-precise time evolution.
    HsDegree {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Dense brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Sector norm of the k-body square-sum: brute force vs closed form.
    FermionNorm {
        #[arg(long = "N", value_name = "N")]
        n: usize,
        #[arg(long)]
        eta: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Exhaustive exact check of the sector-counting identity.
    Identity {
        #[arg(long = "Nmax", value_name = "NMAX", default_value_t = 12)]
        nmax: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Seeded Monte-Carlo tail of the randomly weighted observable sum.
    Concentration {
        #[arg(long = "N", value_name = "N")]
        n: usize,
        #[arg(long)]
        eta: usize,
        #[arg(long)]
        k: usize,
        /// Coefficient distribution: uniform | cos1 | cos2 | kaiser.
        #[arg(long, default_value = "cos1")]
        probe: String,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 2026)]
        seed: u64,
        /// Norm threshold; defaults to the method-1 sigma at this point.
        #[arg(long)]
        threshold: Option<f64>,
        #[command(flatten)]
        out: OutArg,
    },
}

fn emit(out: &OutArg, text: &str) -> Result<(), String> {
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| format!("cannot write stdout: {e}"))
        }
    }
}

fn build_probe(name: &str, p: u32, alpha: Option<f64>) -> Result<ProbeState, hlest::Error> {
    let family = Family::parse(name)?;
    make_probe(family, p, alpha)
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::QaeMse {
            q,
            probe,
            alpha,
            points,
            full_range,
            theta_lo,
            theta_hi,
            compare,
            out,
        } => {
            let pi = std::f64::consts::PI;
            let (default_lo, default_hi) = if full_range {
                (0.0, pi / 2.0)
            } else {
                (0.01, pi / 2.0 - 0.01)
            };
            let lo = theta_lo.unwrap_or(default_lo);
            let hi = theta_hi.unwrap_or(default_hi);
            let mut text = String::new();
            if compare {
                let sine = make_probe(Family::SineQae, q, None).map_err(|e| e.to_string())?;
                let uniform = make_probe(Family::Uniform, q, None).map_err(|e| e.to_string())?;
                text.push_str("theta,mse_sine,mse_uniform,mse_optimal\n");
                if points == 0 {
                    return Err("points must be >= 1".into());
                }
                let step = (hi - lo) / points as f64;
                for i in 0..points {
                    let th = lo + i as f64 * step;
                    let spec = QaeSpec::new(q, th).map_err(|e| e.to_string())?;
                    let ms = qae::quadform_mse(&sine, &spec).map_err(|e| e.to_string())?;
                    let mu = qae::quadform_mse(&uniform, &spec).map_err(|e| e.to_string())?;
                    let mo = qae::min_quadform_mse(&spec);
                    text.push_str(&format!("{th},{ms},{mu},{mo}\n"));
                }
            } else {
                let state = build_probe(&probe, q, alpha).map_err(|e| e.to_string())?;
                let sweep = qae::max_mse(&state, q, points, lo, hi).map_err(|e| e.to_string())?;
                text.push_str("theta,mse\n");
                for (th, v) in sweep.thetas.iter().zip(&sweep.values) {
                    text.push_str(&format!("{th},{v}\n"));
                }
            }
            emit(&out, &text)
        }
        Command::ProbeFailure {
            p,
            probe,
            alpha,
            all,
            grid,
            max_only,
            out,
        } => {
            if all {
                let families = [
                    ("uniform", Family::Uniform, None),
                    ("cos1", Family::Cos1, None),
                    ("cos2", Family::Cos2, None),
                    ("kaiser", Family::Kaiser, Some(0.98)),
                ];
                let mut results = Vec::new();
                for (name, fam, a) in families {
                    let state = make_probe(fam, p, a).map_err(|e| e.to_string())?;
                    let (max, curve) = qpe::max_failure(&state, grid).map_err(|e| e.to_string())?;
                    results.push((name, max, curve));
                }
                let mut text = String::new();
                if max_only {
                    text.push_str("family,max_failure\n");
                    for (name, max, _) in &results {
                        text.push_str(&format!("{name},{max}\n"));
                    }
                } else {
                    text.push_str("theta,uniform,cos1,cos2,kaiser\n");
                    for i in 0..results[0].2.thetas.len() {
                        let th = results[0].2.thetas[i];
                        text.push_str(&format!(
                            "{th},{},{},{},{}\n",
                            results[0].2.probs[i],
                            results[1].2.probs[i],
                            results[2].2.probs[i],
                            results[3].2.probs[i]
                        ));
                    }
                }
                emit(&out, &text)
            } else {
                let name = probe.ok_or("either --probe or --all is required")?;
                let state = build_probe(&name, p, alpha).map_err(|e| e.to_string())?;
                let (max, curve) = qpe::max_failure(&state, grid).map_err(|e| e.to_string())?;
                let mut text = String::new();
                if max_only {
                    text.push_str("family,max_failure\n");
                    text.push_str(&format!("{name},{max}\n"));
                } else {
                    text.push_str("theta,failure_prob\n");
                    for (th, v) in curve.thetas.iter().zip(&curve.probs) {
                        text.push_str(&format!("{th},{v}\n"));
                    }
                }
                emit(&out, &text)
            }
        }
        Command::KaiserScan {
            p,
            alpha_from,
            alpha_to,
            alphas,
            grid,
            out,
        } => {
            if alphas < 1 || alpha_to < alpha_from {
                return Err("kaiser-scan requires alphas >= 1 and alpha_to >= alpha_from".into());
            }
            let mut text = String::from("alpha,max_failure\n");
            for i in 0..alphas {
                let a = if alphas == 1 {
                    alpha_from
                } else {
                    alpha_from + i as f64 * (alpha_to - alpha_from) / (alphas - 1) as f64
                };
                let state = make_probe(Family::Kaiser, p, Some(a)).map_err(|e| e.to_string())?;
                let (max, _) = qpe::max_failure(&state, grid).map_err(|e| e.to_string())?;
                text.push_str(&format!("{a},{max}\n"));
            }
            emit(&out, &text)
        }
        Command::Complexity {
            method,
            n,
            eta,
            k,
            eps,
            trace,
            json,
            out,
        } => {
            let method = Method::parse(&method).map_err(|e| e.to_string())?;
            let needs_eta = matches!(method, Method::Method1 | Method::Method2);
            let eta_v = match (eta, needs_eta) {
                (Some(e), _) => e,
                (None, false) => 0,
                (None, true) => return Err(format!("--eta is required for {}", method.name())),
            };
            let trace_rows = match method {
                Method::Method1 => Some(
                    complexity::method1_queries(n, eta_v, k, eps)
                        .map_err(|e| e.to_string())?
                        .1,
                ),
                Method::Method2 => Some(
                    complexity::method2_queries(n, eta_v, k, eps)
                        .map_err(|e| e.to_string())?
                        .1,
                ),
                Method::Wyy => Some(complexity::wyy_queries(n, k, eps).map_err(|e| e.to_string())?.1),
                _ => None,
            };
            let total = complexity::queries(method, n, eta_v, k, eps).map_err(|e| e.to_string())?;
            let text = if trace || json {
                let mut obj = json!({
                    "method": method.name(),
                    "N": n,
                    "k": k,
                    "eps": eps,
                    "L": total.to_string(),
                });
                if needs_eta {
                    obj["eta"] = json!(eta_v);
                }
                if trace {
                    let rows: Vec<serde_json::Value> = trace_rows
                        .unwrap_or_default()
                        .iter()
                        .map(|t| {
                            json!({
                                "q": t.q,
                                "delta_q": t.delta_q,
                                "R": t.samples,
                                "sigma": t.sigma,
                                "t": t.t,
                                "Q": t.degree,
                                "L_cum": t.cumulative.to_string(),
                            })
                        })
                        .collect();
                    obj["trace"] = json!(rows);
                }
                format!("{}\n", serde_json::to_string_pretty(&obj).unwrap())
            } else {
                format!("{total}\n")
            };
            emit(&out, &text)
        }
        Command::Sweep {
            mode,
            k,
            axis,
            from,
            to,
            points,
            eps,
            n,
            eta,
            out,
        } => {
            if points == 0 {
                return Err("sweep requires points >= 1".into());
            }
            let rows = match (mode.as_str(), axis.as_str()) {
                (m @ ("femo" | "hubbard"), "eps") => {
                    if from <= 0.0 || to <= 0.0 {
                        return Err("eps sweep endpoints must be positive".into());
                    }
                    let values: Vec<f64> = (0..points)
                        .map(|i| {
                            if points == 1 {
                                from
                            } else {
                                from * (to / from).powf(i as f64 / (points - 1) as f64)
                            }
                        })
                        .collect();
                    let n_fixed = n.unwrap_or(152);
                    let eta_fixed = match m {
                        "femo" => eta.unwrap_or(113),
                        _ => (7 * n_fixed).div_ceil(8),
                    };
                    complexity::sweep_eps(n_fixed, eta_fixed, k, &values).map_err(|e| e.to_string())?
                }
                ("hubbard", "N") => {
                    let mut values: Vec<u64> = (0..points)
                        .map(|i| {
                            if points == 1 {
                                from.round() as u64
                            } else {
                                (from + (to - from) * i as f64 / (points - 1) as f64).round() as u64
                            }
                        })
                        .collect();
                    values.dedup();
                    complexity::sweep_modes_hubbard(k, &values, eps).map_err(|e| e.to_string())?
                }
                ("femo", "N") => {
                    return Err("axis N is only meaningful with --mode hubbard".into())
                }
                (m, a) => return Err(format!("unknown sweep mode '{m}' or axis '{a}'")),
            };
            let mut text = String::from("axis,shadow,qae,wyy,method1,method2\n");
            for row in rows {
                text.push_str(&format!("{}", row.axis));
                for cell in &row.cells {
                    match cell {
                        Some(v) => text.push_str(&format!(",{v}")),
                        None => text.push(','),
                    }
                }
                text.push('\n');
            }
            emit(&out, &text)
        }
        Command::HsDegree { t, eps, out } => {
            let q = hamsim::hs_degree(t, eps).map_err(|e| e.to_string())?;
            emit(&out, &format!("{q}\n"))
        }
        Command::Oracle(oracle) => match oracle {
            OracleCommand::FermionNorm { n, eta, k, out } => {
                let report = fermion::sector_norm_report(n, eta, k).map_err(|e| e.to_string())?;
                let obj = json!({
                    "N": n,
                    "eta": eta,
                    "k": k,
                    "brute_norm": report.brute_norm,
                    "closed_coefficient": report.closed_coefficient,
                    "upper_bound": report.upper_bound,
                });
                emit(&out, &format!("{}\n", serde_json::to_string_pretty(&obj).unwrap()))
            }
            OracleCommand::Identity { nmax, out } => {
                let mut text = String::from("N,eta,k,holds\n");
                for n in 1..=nmax {
                    for k in 0..=n {
                        for eta in k..=n.saturating_sub(k) {
                            if eta < k {
                                continue;
                            }
                            let check =
                                fermion::identity_check(n, eta, k).map_err(|e| e.to_string())?;
                            text.push_str(&format!(
                                "{n},{eta},{k},{}\n",
                                if check.holds() { "pass" } else { "fail" }
                            ));
                        }
                    }
                }
                emit(&out, &text)
            }
            OracleCommand::Concentration {
                n,
                eta,
                k,
                probe,
                alpha,
                trials,
                seed,
                threshold,
                out,
            } => {
                let state = build_probe(&probe, complexity::P_PROBE, alpha).map_err(|e| e.to_string())?;
                let threshold = match threshold {
                    Some(t) => t,
                    None => complexity::sigma_method1(
                        n as u64,
                        eta as u64,
                        k as u64,
                        complexity::V_COS1_P3,
                        complexity::DELTA_PRIME_DEFAULT,
                    )
                    .map_err(|e| e.to_string())? as f64,
                };
                let rate =
                    fermion::random_coefficient_norm_tail(n, eta, k, &state, trials, seed, threshold)
                        .map_err(|e| e.to_string())?;
                let obj = json!({
                    "N": n,
                    "eta": eta,
                    "k": k,
                    "probe": probe,
                    "trials": trials,
                    "seed": seed,
                    "threshold": threshold,
                    "exceedance_rate": rate,
                });
                emit(&out, &format!("{}\n", serde_json::to_string_pretty(&obj).unwrap()))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
