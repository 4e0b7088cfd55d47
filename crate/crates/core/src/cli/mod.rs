//! Command-line front end.
//!
//! Settings come from an optional JSON `--config` document; flags override
//! it. Numeric outputs use 12 significant digits.

mod format;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use format::{emit, fmt_num, round_json, to_json, SIG_DIGITS};

use crate::dmc::{dmc_maximize, DmcSpec, Objective, Region};
use crate::error::Error;
use crate::model::{
    validate_gdpc, ChannelParams, GdpcParams, InformedBothParams, OptimumParams, Scheme,
    ValidatedChannel,
};
use crate::optimize::{frontier, sweep_snr, GridSpec};
use crate::oracle::{
    build_cov_informed_both, build_cov_informed_source, gaussian_cmi, informed_both_terms,
    sample_mi_estimate, verify_gdpc, verify_remark3, verify_theorem1, CovarianceSystem, TermCheck,
    VerifyReport,
};
use crate::rates;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

/// Tolerance of the sampled-covariance cross-check, in bits.
pub const MONTE_CARLO_TOL: f64 = 0.01;

#[derive(Debug, Parser)]
#[command(
    name = "pcrbc",
    version,
    about = "Rate regions of the state-dependent partially-cooperative relay broadcast channel"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON configuration document; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Channel as p1,p2,q,n1,n2 (linear powers)
    #[arg(long, global = true, value_parser = parse_channel)]
    pub channel: Option<ChannelParams>,
    /// gdpc | dpc | informed-both | nostate-outer
    #[arg(long, global = true)]
    pub scheme: Option<Scheme>,
    /// Search grid as r,b,a2[,refines,shrink]
    #[arg(long, global = true, value_parser = parse_grid)]
    pub grid: Option<GridSpec>,
    /// Verification tolerance
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed of the Monte Carlo cross-check
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace the (R1, R0+R2) trade-off over a gamma grid
    Frontier {
        /// Evenly spaced grid a:b:n
        #[arg(long, value_parser = parse_gamma_grid, conflicts_with = "gamma")]
        gamma_grid: Option<Values>,
        /// Explicit comma-separated gamma values
        #[arg(long, value_delimiter = ',')]
        gamma: Option<Vec<f64>>,
    },
    /// Relay-channel rate over source SNRs 10 log10(p1/n1)
    SweepSnr {
        /// Range a:b:step or comma-separated list, in dB
        #[arg(long, value_parser = parse_snr)]
        snr_db: Option<Values>,
    },
    /// Cross-check closed forms against the covariance oracle
    Verify {
        /// Sample count of the Monte Carlo check
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Exhaustive search of a discrete channel
    Dmc {
        /// JSON channel description
        #[arg(long)]
        spec: Option<PathBuf>,
        /// informed-both | informed-source
        #[arg(long)]
        region: Option<Region>,
        /// Probability grid denominator: 4, 8 or 16
        #[arg(long)]
        denominator: Option<u32>,
        /// r02 | r1 | sum-rate | weighted:w1,w02
        #[arg(long, value_parser = parse_objective)]
        objective: Option<Objective>,
    },
    /// Print every intermediate quantity at one parameter tuple
    Point {
        /// gamma,rho,beta,alpha2
        #[arg(long, value_parser = parse_gdpc)]
        gdpc: Option<GdpcParams>,
    },
}

/// Contents of a `--config` document. Every field is optional.
#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub channel: Option<ChannelParams>,
    pub scheme: Option<Scheme>,
    pub gamma_grid: Option<Vec<f64>>,
    pub grid: Option<GridSpec>,
    pub tolerance: Option<f64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub snr_db: Option<Vec<f64>>,
    pub samples: Option<usize>,
    pub gdpc: Option<GdpcParams>,
    pub dmc_spec: Option<PathBuf>,
    pub region: Option<String>,
    pub denominator: Option<u32>,
    pub objective: Option<Objective>,
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub channel: ChannelParams,
    pub scheme: Scheme,
    pub gamma_grid: Vec<f64>,
    pub grid: GridSpec,
    pub tolerance: f64,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub snr_db: Vec<f64>,
    pub samples: usize,
    pub gdpc: GdpcParams,
    pub dmc_spec: Option<PathBuf>,
    pub region: Region,
    pub denominator: u32,
    pub objective: Objective,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            channel: ChannelParams::default(),
            scheme: Scheme::Gdpc,
            gamma_grid: linspace(0.0, 1.0, 21),
            grid: GridSpec::default(),
            tolerance: 1e-9,
            out: None,
            seed: 0,
            snr_db: vec![10.0, 15.0, 20.0, 25.0, 30.0],
            samples: 1_000_000,
            gdpc: GdpcParams::new(0.2, 0.3, 0.4, 0.5),
            dmc_spec: None,
            region: Region::InformedSource,
            denominator: 4,
            objective: Objective::default(),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Input(m) => write!(f, "input error: {m}"),
            Self::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn parse_list(s: &str, what: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("{what}: `{t}`: {e}"))
        })
        .collect()
}

fn parse_fixed<const N: usize>(s: &str, what: &str) -> std::result::Result<[f64; N], String> {
    let v = parse_list(s, what)?;
    v.try_into()
        .map_err(|v: Vec<f64>| format!("{what}: expected {N} values, got {}", v.len()))
}

fn parse_channel(s: &str) -> std::result::Result<ChannelParams, String> {
    let [p1, p2, q, n1, n2] = parse_fixed(s, "channel (p1,p2,q,n1,n2)")?;
    Ok(ChannelParams::new(p1, p2, q, n1, n2))
}

fn parse_gdpc(s: &str) -> std::result::Result<GdpcParams, String> {
    let [gamma, rho, beta, alpha2] = parse_fixed(s, "gdpc (gamma,rho,beta,alpha2)")?;
    Ok(GdpcParams::new(gamma, rho, beta, alpha2))
}

fn parse_count(t: &str, what: &str) -> std::result::Result<usize, String> {
    t.trim().parse().map_err(|e| format!("{what}: `{t}`: {e}"))
}

fn parse_grid(s: &str) -> std::result::Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if !(parts.len() == 3 || parts.len() == 5) {
        return Err(format!(
            "grid: expected r,b,a2[,refines,shrink], got {} values",
            parts.len()
        ));
    }
    let mut g = GridSpec {
        steps_rho: parse_count(parts[0], "grid steps_rho")?,
        steps_beta: parse_count(parts[1], "grid steps_beta")?,
        steps_alpha2: parse_count(parts[2], "grid steps_alpha2")?,
        ..GridSpec::default()
    };
    if parts.len() == 5 {
        g.refine_iters = parse_count(parts[3], "grid refine_iters")?;
        g.refine_shrink = parts[4]
            .trim()
            .parse()
            .map_err(|e| format!("grid refine_shrink: `{}`: {e}", parts[4]))?;
    }
    g.validate().map_err(|e| e.to_string())?;
    Ok(g)
}

/// `n` evenly spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| {
                if i + 1 == n {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// A parsed list of numbers given as a single flag value.
#[derive(Debug, Clone, PartialEq)]
pub struct Values(pub Vec<f64>);

fn parse_gamma_grid(s: &str) -> std::result::Result<Values, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(format!("gamma-grid: expected a:b:n, got `{s}`"));
    };
    let a: f64 = a
        .trim()
        .parse()
        .map_err(|e| format!("gamma-grid start: {e}"))?;
    let b: f64 = b
        .trim()
        .parse()
        .map_err(|e| format!("gamma-grid end: {e}"))?;
    let n = parse_count(n, "gamma-grid count")?;
    if n == 0 {
        return Err("gamma-grid count must be positive".into());
    }
    Ok(Values(linspace(a, b, n)))
}

fn parse_snr(s: &str) -> std::result::Result<Values, String> {
    if !s.contains(':') {
        return parse_list(s, "snr-db").map(Values);
    }
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, step] = parts[..] else {
        return Err(format!("snr-db: expected a:b:step, got `{s}`"));
    };
    let a: f64 = a.trim().parse().map_err(|e| format!("snr-db start: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("snr-db end: {e}"))?;
    let step: f64 = step
        .trim()
        .parse()
        .map_err(|e| format!("snr-db step: {e}"))?;
    if !(step > 0.0 && step.is_finite()) || b < a || a.is_nan() || b.is_nan() {
        return Err(format!("snr-db: need a <= b and step > 0, got `{s}`"));
    }
    let n = ((b - a) / step + 1e-9).floor() as usize + 1;
    Ok(Values((0..n).map(|i| a + step * i as f64).collect()))
}

fn parse_objective(s: &str) -> std::result::Result<Objective, String> {
    match s {
        "r02" => Ok(Objective::R02),
        "r1" => Ok(Objective::R1),
        "sum-rate" => Ok(Objective::SumRate),
        _ => {
            let weights = s.strip_prefix("weighted:").ok_or_else(|| {
                format!("objective: unknown `{s}` (r02|r1|sum-rate|weighted:w1,w02)")
            })?;
            let [w1, w02] = parse_fixed(weights, "objective weights")?;
            Ok(Objective::Weighted { w1, w02 })
        }
    }
}

fn load_config(path: &Path) -> CliResult<ConfigFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))
}

/// Merges defaults, the config document and the flags, in that order.
pub fn resolve(cli: &Cli) -> CliResult<RunConfig> {
    let file = match &cli.common.config {
        Some(p) => load_config(p)?,
        None => ConfigFile::default(),
    };
    let d = RunConfig::default();
    let c = &cli.common;
    let mut cfg = RunConfig {
        channel: c.channel.or(file.channel).unwrap_or(d.channel),
        scheme: c.scheme.or(file.scheme).unwrap_or(d.scheme),
        gamma_grid: file.gamma_grid.unwrap_or(d.gamma_grid),
        grid: c.grid.or(file.grid).unwrap_or(d.grid),
        tolerance: c.tol.or(file.tolerance).unwrap_or(d.tolerance),
        out: c.out.clone().or(file.out),
        seed: c.seed.or(file.seed).unwrap_or(d.seed),
        snr_db: file.snr_db.unwrap_or(d.snr_db),
        samples: file.samples.unwrap_or(d.samples),
        gdpc: file.gdpc.unwrap_or(d.gdpc),
        dmc_spec: file.dmc_spec,
        region: match file.region {
            Some(l) => l.parse()?,
            None => d.region,
        },
        denominator: file.denominator.unwrap_or(d.denominator),
        objective: file.objective.unwrap_or(d.objective),
    };
    match &cli.command {
        Command::Frontier { gamma_grid, gamma } => {
            if let Some(g) = gamma_grid.clone().map(|v| v.0).or(gamma.clone()) {
                cfg.gamma_grid = g;
            }
        }
        Command::SweepSnr { snr_db } => {
            if let Some(s) = snr_db {
                cfg.snr_db = s.0.clone();
            }
        }
        Command::Verify { samples } => {
            if let Some(n) = samples {
                cfg.samples = *n;
            }
        }
        Command::Dmc {
            spec,
            region,
            denominator,
            objective,
        } => {
            cfg.dmc_spec = spec.clone().or(cfg.dmc_spec);
            cfg.region = region.unwrap_or(cfg.region);
            cfg.denominator = denominator.unwrap_or(cfg.denominator);
            cfg.objective = objective.unwrap_or(cfg.objective);
        }
        Command::Point { gdpc } => {
            if let Some(g) = gdpc {
                cfg.gdpc = *g;
            }
        }
    }
    if !(cfg.tolerance > 0.0 && cfg.tolerance.is_finite()) {
        return Err(CliError::Input(format!(
            "tol must be positive, got {}",
            cfg.tolerance
        )));
    }
    grid_ok(&cfg.grid)?;
    Ok(cfg)
}

fn grid_ok(g: &GridSpec) -> CliResult<()> {
    g.validate().map_err(CliError::from)
}

fn opt_num(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

/// CSV of the trade-off frontier.
pub fn frontier_csv(cfg: &RunConfig) -> CliResult<String> {
    let c = cfg.channel.validate()?;
    let f = frontier(&c, cfg.scheme, &cfg.gamma_grid, &cfg.grid)?;
    let mut out = String::from("scheme,gamma,rho,beta,alpha2,r1,r02\n");
    for p in &f.points {
        let (rho, beta, alpha2) = match p.params {
            OptimumParams::Gdpc(g) => (Some(g.rho), Some(g.beta), Some(g.alpha2)),
            OptimumParams::NoState { beta } => (None, Some(beta), None),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            f.scheme,
            fmt_num(p.gamma),
            opt_num(rho),
            opt_num(beta),
            opt_num(alpha2),
            fmt_num(p.rate.r1),
            fmt_num(p.rate.r02)
        ));
    }
    Ok(out)
}

pub fn sweep_csv(cfg: &RunConfig) -> CliResult<String> {
    let rows = sweep_snr(cfg.channel, &cfg.snr_db, cfg.scheme, &cfg.grid)?;
    let mut out = String::from("scheme,snr_db,n1,rate,skipped\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            cfg.scheme,
            fmt_num(r.snr_db),
            fmt_num(r.n1),
            opt_num(r.rate),
            r.rate.is_none()
        ));
    }
    Ok(out)
}

const INFORMED_BOTH_POINTS: [(f64, f64); 4] = [(0.5, 0.5), (0.0, 0.36), (0.2, 1.0), (0.7, 0.1)];
/// `(gamma, rho as a fraction of its maximum, beta, alpha2)`
const GDPC_POINTS: [(f64, f64, f64, f64); 4] = [
    (0.2, 0.3, 0.4, 0.5),
    (0.0, 0.5, 0.6, 0.3),
    (0.5, 1.0, 0.0, 0.7),
    (0.9, 0.1, 0.9, 0.2),
];
const STATE_POWERS: [f64; 3] = [0.1, 1.0, 10.0];

fn named(mut r: VerifyReport, suffix: String) -> VerifyReport {
    r.name = format!("{} {suffix}", r.name);
    r
}

fn verify_zero_state(c: &ValidatedChannel, tol: f64) -> Vec<VerifyReport> {
    GDPC_POINTS
        .iter()
        .map(|&(gamma, _, beta, alpha2)| {
            const NAME: &str = "zero-state-reduction";
            let suffix = format!(
                "gamma={} beta={} alpha2={}",
                fmt_num(gamma),
                fmt_num(beta),
                fmt_num(alpha2)
            );
            let run = || -> crate::Result<VerifyReport> {
                let g = validate_gdpc(c, GdpcParams::new(gamma, 0.0, beta, alpha2))?;
                let r = rates::gdpc_rates(&g);
                let (relay, destination) = rates::nostate_terms(c, gamma, 1.0 - beta * beta);
                Ok(VerifyReport::from_terms(
                    NAME,
                    tol,
                    vec![
                        TermCheck::new("r1_sum vs relay term at beta'=1-beta^2", r.r1_sum, relay),
                        TermCheck::new(
                            "r2_sum vs destination term at beta'=1-beta^2",
                            r.r2_sum,
                            destination,
                        ),
                        TermCheck::new(
                            "r_private vs C(gamma p1/n1)",
                            r.r_private,
                            rates::c_of(gamma * c.p1 / c.n1),
                        ),
                    ],
                ))
            };
            named(
                run().unwrap_or_else(|e| VerifyReport::failed(NAME, tol, e.to_string())),
                suffix,
            )
        })
        .collect()
}

fn verify_state_independence(c: &ValidatedChannel, tol: f64) -> Vec<VerifyReport> {
    INFORMED_BOTH_POINTS
        .iter()
        .map(|&(gamma, beta)| {
            const NAME: &str = "state-power-independence";
            let p = InformedBothParams::new(gamma, beta);
            let run = || -> crate::Result<VerifyReport> {
                let base = informed_both_terms(&build_cov_informed_both(c, p)?)?;
                let mut details = Vec::new();
                for q in STATE_POWERS {
                    let cq = c.params().with_q(q).validate()?;
                    let t = informed_both_terms(&build_cov_informed_both(&cq, p)?)?;
                    let at = fmt_num(q);
                    details.push(TermCheck::new(
                        format!("private at q={at}"),
                        t.private,
                        base.private,
                    ));
                    details.push(TermCheck::new(
                        format!("relay at q={at}"),
                        t.relay,
                        base.relay,
                    ));
                    details.push(TermCheck::new(
                        format!("destination at q={at}"),
                        t.destination,
                        base.destination,
                    ));
                }
                Ok(VerifyReport::from_terms(NAME, tol, details))
            };
            let suffix = format!("gamma={} beta={}", fmt_num(gamma), fmt_num(beta));
            named(
                run().unwrap_or_else(|e| VerifyReport::failed(NAME, tol, e.to_string())),
                suffix,
            )
        })
        .collect()
}

/// `(name, A, B, C)` of one `I(A; B | C)` term.
type NamedTerm<'a> = (&'a str, &'a [&'a str], &'a [&'a str], &'a [&'a str]);

fn monte_carlo_terms(
    cov: &CovarianceSystem,
    terms: &[NamedTerm],
    samples: usize,
    seed: u64,
) -> crate::Result<Vec<TermCheck>> {
    terms
        .iter()
        .map(|&(name, a, b, c)| {
            Ok(TermCheck::new(
                name,
                gaussian_cmi(cov, a, b, c)?,
                sample_mi_estimate(cov, a, b, c, samples, seed)?,
            ))
        })
        .collect()
}

fn verify_monte_carlo(c: &ValidatedChannel, cfg: &RunConfig) -> VerifyReport {
    const NAME: &str = "monte-carlo";
    let run = || -> crate::Result<VerifyReport> {
        let cov = build_cov_informed_both(c, InformedBothParams::new(0.5, 0.5))?;
        let mut details = monte_carlo_terms(
            &cov,
            &[
                (
                    "informed-both I(U2;Y1|S,U1)",
                    &["U2"],
                    &["Y1"],
                    &["S", "U1"],
                ),
                ("informed-both I(U1U2;Y2)", &["U1", "U2"], &["Y2"], &[]),
            ],
            cfg.samples,
            cfg.seed,
        )?;
        if c.q > 0.0 {
            let (gamma, frac, beta, alpha2) = GDPC_POINTS[0];
            let g = validate_gdpc(
                c,
                GdpcParams::new(gamma, frac * c.rho_max(gamma), beta, alpha2),
            )?;
            let cov = build_cov_informed_source(&g)?;
            details.extend(monte_carlo_terms(
                &cov,
                &[
                    ("informed-source I(U2;Y1|X2)", &["U2"], &["Y1"], &["X2"]),
                    ("informed-source I(U2;S'|X2)", &["U2"], &["Sprime"], &["X2"]),
                ],
                cfg.samples,
                cfg.seed.wrapping_add(1),
            )?);
        }
        Ok(VerifyReport::from_terms(NAME, MONTE_CARLO_TOL, details)
            .with_note(format!("{} samples, seed {}", cfg.samples, cfg.seed)))
    };
    run().unwrap_or_else(|e| VerifyReport::failed(NAME, MONTE_CARLO_TOL, e.to_string()))
}

/// All oracle checks on the configured channel.
pub fn verify_reports(cfg: &RunConfig) -> CliResult<Vec<VerifyReport>> {
    let c = cfg.channel.validate()?;
    let tol = cfg.tolerance;
    let mut reports = Vec::new();
    for (i, &(gamma, beta)) in INFORMED_BOTH_POINTS.iter().enumerate() {
        let mut r = named(
            verify_theorem1(&c, InformedBothParams::new(gamma, beta), tol),
            format!("gamma={} beta={}", fmt_num(gamma), fmt_num(beta)),
        );
        if i == 0 {
            r = r.with_note("the channel is taken as physically degraded with n1 < n2; other orderings are rejected");
        }
        reports.push(r);
    }
    if c.q > 0.0 {
        for &(gamma, frac, beta, alpha2) in &GDPC_POINTS {
            let p = GdpcParams::new(gamma, frac * c.rho_max(gamma), beta, alpha2);
            let suffix = format!(
                "gamma={} rho={} beta={} alpha2={}",
                fmt_num(p.gamma),
                fmt_num(p.rho),
                fmt_num(p.beta),
                fmt_num(p.alpha2)
            );
            let r = match validate_gdpc(&c, p) {
                Ok(g) => verify_gdpc(&g, tol),
                Err(e) => VerifyReport::failed("gdpc-closed-form", tol, e.to_string()),
            };
            reports.push(named(r, suffix));
        }
    } else {
        reports.extend(verify_zero_state(&c, tol));
    }
    for &(gamma, beta) in &INFORMED_BOTH_POINTS {
        reports.push(named(
            verify_remark3(&c, InformedBothParams::new(gamma, beta), tol),
            format!("gamma={} beta={}", fmt_num(gamma), fmt_num(beta)),
        ));
    }
    reports.extend(verify_state_independence(&c, tol));
    reports.push(verify_monte_carlo(&c, cfg));
    Ok(reports)
}

#[derive(Serialize)]
struct DmcOutput<'a> {
    region: Region,
    denominator: u32,
    candidates: u64,
    objective: Objective,
    value: crate::model::RatePoint,
    best: &'a crate::dmc::AuxJoint,
}

pub fn dmc_json(cfg: &RunConfig) -> CliResult<String> {
    let path = cfg
        .dmc_spec
        .as_ref()
        .ok_or_else(|| CliError::Input("dmc requires --spec <path>".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("spec {}: {e}", path.display())))?;
    let spec: DmcSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("spec {}: {e}", path.display())))?;
    let opt = dmc_maximize(&spec, cfg.region, cfg.denominator, cfg.objective)?;
    to_json(&DmcOutput {
        region: cfg.region,
        denominator: cfg.denominator,
        candidates: opt.candidates,
        objective: opt.objective,
        value: opt.value,
        best: &opt.best,
    })
    .map_err(|e| CliError::Io(e.to_string()))
}

pub fn point_text(cfg: &RunConfig) -> CliResult<String> {
    let c = cfg.channel.validate()?;
    let g = validate_gdpc(&c, cfg.gdpc)?;
    let k = rates::gdpc_coeffs(&g);
    let r = rates::gdpc_rates(&g);
    let p = g.params();
    let rows = [
        ("gamma", p.gamma),
        ("rho", p.rho),
        ("beta", p.beta),
        ("alpha2", p.alpha2),
        ("qprime", k.qprime),
        ("a", k.a),
        ("b", k.b),
        ("c", k.c),
        ("d", k.d),
        ("r1_sum", r.r1_sum),
        ("r2_sum", r.r2_sum),
        ("r_private", r.r_private),
        ("r02", r.sum_rate()),
    ];
    Ok(rows
        .iter()
        .map(|(k, v)| format!("{k}={}\n", fmt_num(*v)))
        .collect())
}

fn write(cfg: &RunConfig, contents: &str) -> CliResult<()> {
    emit(cfg.out.as_deref(), contents).map_err(|e| CliError::Io(e.to_string()))
}

fn execute(cli: &Cli) -> CliResult<u8> {
    let cfg = resolve(cli)?;
    match cli.command {
        Command::Frontier { .. } => write(&cfg, &frontier_csv(&cfg)?)?,
        Command::SweepSnr { .. } => write(&cfg, &sweep_csv(&cfg)?)?,
        Command::Dmc { .. } => write(&cfg, &dmc_json(&cfg)?)?,
        Command::Point { .. } => write(&cfg, &point_text(&cfg)?)?,
        Command::Verify { .. } => {
            let reports = verify_reports(&cfg)?;
            write(
                &cfg,
                &to_json(&reports).map_err(|e| CliError::Io(e.to_string()))?,
            )?;
            let failed: Vec<&str> = reports
                .iter()
                .filter(|r| !r.pass)
                .map(|r| r.name.as_str())
                .collect();
            if !failed.is_empty() {
                eprintln!("verification failed: {}", failed.join("; "));
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command; returns the exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            EXIT_INPUT
        }
    }
}
