//! Command-line front end: run an engine, cross-verify all of them, or
//! reproduce the 100-step histogram figure.
//!
//! Angle flags default to the flagship configuration (theta = pi/4, all
//! phases 0, p = 1/2), so `coinwalk run --engine exact` is the decoherent
//! Hadamard walk. Exit codes: 0 success, 1 verification failure, 2 usage
//! error, 3 numerical invariant violation.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{binomial_distribution, nonlocal_distribution, stats, tv_distance};
use crate::coinspace::{ChannelParams, CoinDensity, CoinParams};
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::lattice::{AmplitudeList, WalkDensity};
use crate::montecarlo::{classical_rw_mc, run_mc, McConfig};
use crate::svg::render_histogram;
use crate::verify::{run_all, VerifyOptions};

/// Drift beyond which the exact engine aborts with exit code 3.
const DRIFT_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(
    name = "coinwalk",
    version,
    about = "Discrete-time quantum walks on the line under coin-flip decoherence"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one engine and emit its position distribution and statistics.
    Run(RunArgs),
    /// Cross-validate all engines against each other and the analytic law.
    Verify(VerifyArgs),
    /// Reproduce the 100-step classical/quantum histogram pair.
    Figure1(Figure1Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineKind {
    /// Exact density-matrix evolution on the lattice.
    Exact,
    /// Monte-Carlo trajectory averaging.
    Mc,
    /// Classical random-walk sampler.
    Classical,
    /// Closed-form binomial / convex-mixture law.
    Analytic,
}

impl EngineKind {
    fn label(&self) -> &'static str {
        match self {
            EngineKind::Exact => "exact",
            EngineKind::Mc => "mc",
            EngineKind::Classical => "classical",
            EngineKind::Analytic => "analytic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatKind {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Engine to run.
    #[arg(long, value_enum)]
    engine: EngineKind,
    /// Coin angle theta (radians unless --degrees); default pi/4.
    #[arg(long)]
    theta: Option<f64>,
    /// Coin phase phi1; default 0.
    #[arg(long)]
    phi1: Option<f64>,
    /// Coin phase phi2; default 0.
    #[arg(long)]
    phi2: Option<f64>,
    /// Channel flip phase phi3; default 0.
    #[arg(long)]
    phi3: Option<f64>,
    /// Decoherence probability per step, in [0, 1].
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Number of walk steps.
    #[arg(long, default_value_t = 100)]
    steps: u32,
    /// Trial count (mc and classical engines).
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// RNG seed (mc and classical engines).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Start position for a local initial state (coin |R>).
    #[arg(long, default_value_t = 0)]
    x0: i64,
    /// JSON file with a non-local initial state:
    /// [{"x":0,"a":[re,im],"b":[re,im]}, ...].
    #[arg(long)]
    initial_file: Option<PathBuf>,
    /// Base path for output files (<out>.csv, <out>.json, optionally <out>.svg).
    /// Without it, the selected format is printed to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Artifacts to emit (repeatable or comma-separated).
    #[arg(long, value_enum, value_delimiter = ',')]
    format: Vec<FormatKind>,
    /// Interpret the angle flags in degrees.
    #[arg(long)]
    degrees: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Clamp the step sweeps of the slower checks.
    #[arg(long)]
    max_t: Option<u32>,
    /// Self-test: inject a sign fault into the superoperator transcription
    /// check, which must then fail.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug, Args)]
struct Figure1Args {
    /// Directory receiving the CSV and SVG panels.
    #[arg(long, default_value = "figure1")]
    out_dir: PathBuf,
    /// Trials per stochastic panel.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Walk length.
    #[arg(long, default_value_t = 100)]
    steps: u32,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A fully resolved experiment: engine, physics parameters, initial state,
/// and output destination.
#[derive(Debug)]
struct ExperimentConfig {
    engine: EngineKind,
    coin: CoinParams,
    chan: ChannelParams,
    steps: u32,
    trials: u64,
    seed: u64,
    x0: i64,
    initial: Option<AmplitudeList>,
    out: Option<PathBuf>,
    formats: Vec<FormatKind>,
}

#[derive(Debug, Serialize)]
struct StatsJson {
    engine: &'static str,
    steps: u32,
    mean: f64,
    sigma: f64,
    tv_vs_analytic: Option<f64>,
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
struct AmpEntry {
    x: i64,
    a: [f64; 2],
    b: [f64; 2],
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Figure1(args) => cmd_figure1(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::Normalization(_) | Error::InvalidState(_)
        | Error::Unsupported(_) => 2,
        Error::Invariant(_) => 3,
        Error::Io(_) => 1,
    }
}

fn angle(value: Option<f64>, default: f64, degrees: bool) -> f64 {
    match value {
        Some(v) if degrees => v * PI / 180.0,
        Some(v) => v,
        None => default,
    }
}

fn load_initial(path: &Path) -> Result<AmplitudeList> {
    let text = fs::read_to_string(path)?;
    let entries: Vec<AmpEntry> = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("cannot parse {}: {e}", path.display())))?;
    let amps = entries
        .into_iter()
        .map(|e| {
            (
                e.x,
                Complex64::new(e.a[0], e.a[1]),
                Complex64::new(e.b[0], e.b[1]),
            )
        })
        .collect();
    // a malformed user file is a usage error, not a library invariant failure
    AmplitudeList::new(amps).map_err(|e| Error::Config(e.to_string()))
}

fn resolve_config(args: RunArgs) -> Result<ExperimentConfig> {
    let coin = CoinParams::new(
        angle(args.theta, PI / 4.0, args.degrees),
        angle(args.phi1, 0.0, args.degrees),
        angle(args.phi2, 0.0, args.degrees),
    );
    let chan = ChannelParams::new(args.p, angle(args.phi3, 0.0, args.degrees))?;
    if args.initial_file.is_some() && args.engine == EngineKind::Classical {
        return Err(Error::Config(
            "the classical engine starts from a single site; use --x0".into(),
        ));
    }
    let initial = args.initial_file.as_deref().map(load_initial).transpose()?;
    let formats = if args.format.is_empty() {
        vec![FormatKind::Csv]
    } else {
        args.format.clone()
    };
    Ok(ExperimentConfig {
        engine: args.engine,
        coin,
        chan,
        steps: args.steps,
        trials: args.trials,
        seed: args.seed,
        x0: args.x0,
        initial,
        out: args.out,
        formats,
    })
}

/// The analytic law this configuration must reproduce, when one applies:
/// p = 1/2 with phi3 = phi1 (the classical point), or the classical engine.
fn analytic_reference(cfg: &ExperimentConfig) -> Option<Distribution> {
    let at_classical_point = (cfg.chan.p() - 0.5).abs() < 1e-12
        && (cfg.chan.phi3() - cfg.coin.phi1()).abs() < 1e-12;
    if cfg.engine != EngineKind::Classical && !at_classical_point {
        return None;
    }
    Some(match &cfg.initial {
        Some(amps) if cfg.engine != EngineKind::Classical => {
            nonlocal_distribution(amps, cfg.steps)
        }
        _ => binomial_distribution(cfg.x0, cfg.steps),
    })
}

fn run_engine(cfg: &ExperimentConfig) -> Result<(Distribution, Option<u64>)> {
    match cfg.engine {
        EngineKind::Exact => {
            let mut walk = match &cfg.initial {
                Some(amps) => WalkDensity::init_nonlocal(amps),
                None => WalkDensity::init_local(cfg.x0, &CoinDensity::basis_r()),
            };
            walk.evolve(&cfg.coin, &cfg.chan, cfg.steps);
            let drift = (walk.trace().re - 1.0).abs().max(walk.trace().im.abs());
            if drift > DRIFT_TOL {
                return Err(Error::Invariant(format!(
                    "trace drifted by {drift:.3e} after {} steps",
                    cfg.steps
                )));
            }
            if walk.hermiticity_deviation() > DRIFT_TOL {
                return Err(Error::Invariant(format!(
                    "Hermiticity deviation {:.3e} after {} steps",
                    walk.hermiticity_deviation(),
                    cfg.steps
                )));
            }
            Ok((walk.position_marginal()?, None))
        }
        EngineKind::Mc => {
            let initial = match &cfg.initial {
                Some(amps) => amps.clone(),
                None => AmplitudeList::local(
                    cfg.x0,
                    Complex64::new(1.0, 0.0),
                    Complex64::default(),
                )?,
            };
            let mc = McConfig::new(
                cfg.trials, cfg.seed, cfg.coin, cfg.chan, cfg.steps, initial,
            )?;
            Ok((run_mc(&mc)?.distribution, Some(cfg.seed)))
        }
        EngineKind::Classical => {
            let result = classical_rw_mc(cfg.trials, cfg.steps, cfg.seed)?;
            Ok((result.distribution.shifted(cfg.x0), Some(cfg.seed)))
        }
        EngineKind::Analytic => {
            let d = match &cfg.initial {
                Some(amps) => nonlocal_distribution(amps, cfg.steps),
                None => binomial_distribution(cfg.x0, cfg.steps),
            };
            Ok((d, None))
        }
    }
}

fn distribution_csv(d: &Distribution) -> String {
    let mut out = String::from("position,probability\n");
    for (x, p) in d.iter() {
        out.push_str(&format!("{x},{p}\n"));
    }
    out
}

fn cmd_run(args: RunArgs) -> Result<i32> {
    let cfg = resolve_config(args)?;
    let (dist, seed) = run_engine(&cfg)?;
    let s = stats(&dist);
    let reference = analytic_reference(&cfg);
    let tv = match (&reference, cfg.engine) {
        (_, EngineKind::Analytic) => None,
        (Some(r), _) => Some(tv_distance(&dist, r)),
        (None, _) => None,
    };
    let stats_json = StatsJson {
        engine: cfg.engine.label(),
        steps: cfg.steps,
        mean: s.mean,
        sigma: s.sigma,
        tv_vs_analytic: tv,
        seed,
    };
    let json = serde_json::to_string_pretty(&stats_json).expect("stats serialize");
    let csv = distribution_csv(&dist);
    let svg = || {
        let caption = format!(
            "{} engine, t = {}, sigma = {:.4}",
            cfg.engine.label(),
            cfg.steps,
            s.sigma
        );
        render_histogram(&dist, reference.as_ref(), &caption)
    };

    match &cfg.out {
        Some(base) => {
            if let Some(dir) = base.parent() {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir)?;
                }
            }
            fs::write(base.with_extension("csv"), &csv)?;
            fs::write(base.with_extension("json"), format!("{json}\n"))?;
            if cfg.formats.contains(&FormatKind::Svg) {
                fs::write(base.with_extension("svg"), svg())?;
            }
        }
        None => {
            for format in &cfg.formats {
                match format {
                    FormatKind::Csv => print!("{csv}"),
                    FormatKind::Json => println!("{json}"),
                    FormatKind::Svg => print!("{}", svg()),
                }
            }
        }
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let opts = VerifyOptions {
        max_t: args.max_t,
        inject_fault: args.inject_fault,
    };
    let outcomes = run_all(&opts);
    let mut all_passed = true;
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {} — {} ({:.2}s)", o.name, o.detail, o.seconds);
        all_passed &= o.passed;
    }
    if all_passed {
        println!("all {} checks passed", outcomes.len());
        Ok(0)
    } else {
        println!("verification failed");
        Ok(1)
    }
}

fn cmd_figure1(args: Figure1Args) -> Result<i32> {
    fs::create_dir_all(&args.out_dir)?;
    let theory = binomial_distribution(0, args.steps);
    let theory_sigma = stats(&theory).sigma;

    let classical = classical_rw_mc(args.trials, args.steps, args.seed)?;
    let quantum_cfg = McConfig::local(
        args.trials,
        args.seed,
        CoinParams::hadamard(),
        ChannelParams::new(0.5, 0.0)?,
        args.steps,
        0,
    )?;
    let quantum = run_mc(&quantum_cfg)?;

    let panels = [
        ("classical", &classical, "Classical random walk"),
        ("quantum", &quantum, "Decoherent quantum walk (p = 1/2)"),
    ];
    for (name, result, label) in panels {
        let csv_path = args.out_dir.join(format!("{name}.csv"));
        fs::write(&csv_path, distribution_csv(&result.distribution))?;
        let caption = format!(
            "{label}: t = {}, trials = {}, sigma = {:.4} (theory 10 at t = 100)",
            args.steps, args.trials, result.sigma
        );
        let svg = render_histogram(&result.distribution, Some(&theory), &caption);
        fs::write(args.out_dir.join(format!("{name}.svg")), svg)?;
    }
    fs::write(
        args.out_dir.join("theory.csv"),
        distribution_csv(&theory),
    )?;

    println!(
        "classical: sigma = {:.4}; quantum: sigma = {:.4}; theory: sigma = {:.4}",
        classical.sigma, quantum.sigma, theory_sigma
    );
    println!("wrote panels to {}", args.out_dir.display());
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_args(extra: &[&str]) -> RunArgs {
        let mut argv = vec!["coinwalk", "run"];
        argv.extend_from_slice(extra);
        match Cli::try_parse_from(argv).unwrap().command {
            Command::Run(args) => args,
            _ => unreachable!(),
        }
    }

    #[test]
    fn defaults_are_the_flagship_configuration() {
        let cfg = resolve_config(base_args(&["--engine", "exact"])).unwrap();
        assert!((cfg.coin.theta() - PI / 4.0).abs() < 1e-15);
        assert_eq!(cfg.coin.phi1(), 0.0);
        assert_eq!(cfg.chan.p(), 0.5);
        assert_eq!(cfg.steps, 100);
    }

    #[test]
    fn degrees_flag_converts_angles() {
        let cfg = resolve_config(base_args(&[
            "--engine", "exact", "--degrees", "--theta", "45", "--phi1", "90",
        ]))
        .unwrap();
        assert!((cfg.coin.theta() - PI / 4.0).abs() < 1e-12);
        assert!((cfg.coin.phi1() - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn bad_p_is_a_usage_error() {
        let err = resolve_config(base_args(&["--engine", "exact", "--p", "1.5"])).unwrap_err();
        assert_eq!(exit_code_for(&err), 2);
    }

    #[test]
    fn classical_engine_rejects_initial_file() {
        let mut args = base_args(&["--engine", "classical"]);
        args.initial_file = Some(PathBuf::from("whatever.json"));
        // rejected before the file is ever opened
        let err = resolve_config(args).unwrap_err();
        assert_eq!(exit_code_for(&err), 2);
    }

    #[test]
    fn csv_schema() {
        let d = Distribution::from_probs([(-1, 0.5), (1, 0.5)], 1).unwrap();
        assert_eq!(distribution_csv(&d), "position,probability\n-1,0.5\n1,0.5\n");
    }

    #[test]
    fn analytic_reference_requires_classical_point() {
        let mut cfg = resolve_config(base_args(&["--engine", "exact"])).unwrap();
        assert!(analytic_reference(&cfg).is_some());
        cfg.chan = ChannelParams::new(0.3, 0.0).unwrap();
        assert!(analytic_reference(&cfg).is_none());
        // the classical engine always has a reference law
        cfg.engine = EngineKind::Classical;
        assert!(analytic_reference(&cfg).is_some());
    }
}
