//! Command-line front end: argument and config-file parsing, validation and dispatch.
//!
//! Precedence is defaults < `--preset` < `--config` file < flags.

use crate::experiments::{
    emit_report, operator_derivs, plot_script, report_csv, report_json, run_rates, sig17, suboptimality_study,
    Operator,
};
use crate::fourier::expand;
use crate::quadrature::gauss_jacobi;
use crate::registry::registry;
use crate::sobolev::{derivative_errors, SobolevConfig, S_MAX};
use crate::special::{h_norm, jacobi_j, jacobi_p, Params, N_MAX};
use crate::verify::{self, Suite, VerifyOptions};
use clap::{Parser, Subcommand};
use serde::Deserialize;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "JACOBI_SOBOLEV_THREADS";

#[derive(Debug, Parser)]
#[command(name = "jacobi-sobolev", version, about = "Jacobi expansions and simultaneous approximation in weighted norms")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Flags,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Evaluate J_n and P_n at a point.
    Eval,
    /// Gauss-Jacobi nodes and weights as CSV.
    Quad,
    /// Jacobi coefficients of a test function as CSV.
    Expand,
    /// Derivative errors of one approximant at a single degree.
    Approx,
    /// Rate study over a degree grid.
    Rates,
    /// Derivative suboptimality of the plain partial sum.
    Suboptimal,
    /// Run invariant suites: all, core, connection, sobolev or duality.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Default, clap::Args)]
struct Flags {
    /// JSON file with any of the flag names as keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Named parameter set: k-gap or suboptimal.
    #[arg(long, global = true)]
    preset: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, global = true)]
    s: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Comma-separated point weights, one per derivative order below s.
    #[arg(long, global = true, value_delimiter = ',')]
    lambdas: Option<Vec<f64>>,
    /// Comma-separated degree grid.
    #[arg(long, global = true, value_delimiter = ',')]
    ns: Option<Vec<usize>>,
    /// Degree (eval, expand, approx) or rule order (quad).
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    x: Option<f64>,
    /// Norm exponent: a number ≥ 1 or `inf`.
    #[arg(long, global = true)]
    p: Option<String>,
    /// Test function id.
    #[arg(long = "fn", global = true)]
    fid: Option<String>,
    /// Operator: S, V, calS or calV.
    #[arg(long, global = true)]
    op: Option<String>,
    /// Highest derivative order for `suboptimal`.
    #[arg(long, global = true)]
    r: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    paper_literal_h: bool,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV (needs --out).
    #[arg(long, global = true)]
    plot_script: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Exponent {
    Num(f64),
    Text(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    preset: Option<String>,
    alpha: Option<f64>,
    beta: Option<f64>,
    s: Option<usize>,
    theta: Option<f64>,
    lambdas: Option<Vec<f64>>,
    ns: Option<Vec<usize>>,
    n: Option<usize>,
    x: Option<f64>,
    p: Option<Exponent>,
    #[serde(rename = "fn")]
    fid: Option<String>,
    op: Option<String>,
    r: Option<usize>,
    seed: Option<u64>,
    paper_literal_h: Option<bool>,
    out: Option<PathBuf>,
    plot_script: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Eval,
    Quad,
    Expand,
    Approx,
    Rates,
    Suboptimal,
    Verify(Vec<Suite>),
}

/// Fully resolved and validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: Params,
    pub s: usize,
    pub theta: f64,
    pub lambdas: Vec<f64>,
    pub ns: Vec<usize>,
    pub n: usize,
    pub x: f64,
    pub pexp: f64,
    pub fid: String,
    pub op: Operator,
    pub r: usize,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub paper_literal_h: bool,
    pub plot_script: bool,
    pub preset: Option<String>,
}

#[derive(Debug)]
pub enum UsageError {
    /// Rendered by clap itself (includes `--help` and `--version`).
    Clap(clap::Error),
    Invalid(String),
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UsageError::Clap(e) => write!(f, "{e}"),
            UsageError::Invalid(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for UsageError {}

fn parse_exponent(s: &str) -> Option<f64> {
    match s {
        "inf" | "infinity" | "Inf" => Some(f64::INFINITY),
        _ => s.parse().ok(),
    }
}

/// Preset values as a file-level layer.
fn preset_layer(name: &str) -> Option<FileConfig> {
    match name {
        "k-gap" => Some(FileConfig {
            alpha: Some(0.0),
            beta: Some(0.0),
            s: Some(1),
            theta: Some(-1.0),
            ns: Some(vec![8, 16, 32, 64, 128]),
            p: Some(Exponent::Num(2.0)),
            fid: Some("endpoint:3.75".into()),
            op: Some("calV".into()),
            ..Default::default()
        }),
        "suboptimal" => Some(FileConfig {
            alpha: Some(0.0),
            beta: Some(0.0),
            ns: Some(vec![8, 16, 32, 64, 128]),
            fid: Some("endpoint:2.25".into()),
            r: Some(1),
            ..Default::default()
        }),
        _ => None,
    }
}

macro_rules! pick {
    ($flag:expr, $file:expr, $preset:expr, $default:expr) => {
        $flag.or($file).or($preset).unwrap_or($default)
    };
}

/// Parses `argv` (including the program name) into a validated configuration.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(UsageError::Clap)?;
    let mut bad: Vec<String> = Vec::new();
    let fl = cli.opts;

    let file = match &fl.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => serde_json::from_str::<FileConfig>(&text).unwrap_or_else(|e| {
                bad.push(format!("config {}: {e}", path.display()));
                FileConfig::default()
            }),
            Err(e) => {
                bad.push(format!("config {}: {e}", path.display()));
                FileConfig::default()
            }
        },
        None => FileConfig::default(),
    };
    let preset_name = fl.preset.clone().or(file.preset.clone());
    let pre = match &preset_name {
        Some(name) => preset_layer(name).unwrap_or_else(|| {
            bad.push(format!("unknown preset `{name}` (expected k-gap or suboptimal)"));
            FileConfig::default()
        }),
        None => FileConfig::default(),
    };

    let command = match cli.command {
        Cmd::Eval => Command::Eval,
        Cmd::Quad => Command::Quad,
        Cmd::Expand => Command::Expand,
        Cmd::Approx => Command::Approx,
        Cmd::Rates => Command::Rates,
        Cmd::Suboptimal => Command::Suboptimal,
        Cmd::Verify { suite } => match Suite::parse(&suite) {
            Some(v) => Command::Verify(v),
            None => {
                bad.push(format!("unknown suite `{suite}` (expected all, core, connection, sobolev, duality)"));
                Command::Verify(vec![])
            }
        },
    };

    let alpha = pick!(fl.alpha, file.alpha, pre.alpha, 0.0);
    let beta = pick!(fl.beta, file.beta, pre.beta, 0.0);
    if !(alpha > -1.0) || !alpha.is_finite() {
        bad.push("alpha must exceed -1".into());
    }
    if !(beta > -1.0) || !beta.is_finite() {
        bad.push("beta must exceed -1".into());
    }
    let s = pick!(fl.s, file.s, pre.s, 1);
    if s == 0 || s > S_MAX {
        bad.push(format!("s must be in 1..={S_MAX}"));
    }
    let theta = pick!(fl.theta, file.theta, pre.theta, -1.0);
    if !(-1.0..=1.0).contains(&theta) {
        bad.push("theta must lie in [-1, 1]".into());
    }
    let lambdas = fl.lambdas.or(file.lambdas).or(pre.lambdas).unwrap_or_else(|| vec![1.0; s]);
    if lambdas.len() != s || lambdas.iter().any(|&l| !(l > 0.0)) {
        bad.push("lambdas must be s positive numbers".into());
    }
    let ns = pick!(fl.ns, file.ns, pre.ns, vec![8, 16, 32, 64, 128]);
    if ns.is_empty() {
        bad.push("ns must not be empty".into());
    }
    let n = pick!(fl.n, file.n, pre.n, 16);
    let x = pick!(fl.x, file.x, pre.x, 0.5);
    if !(-1.0..=1.0).contains(&x) {
        bad.push("x must lie in [-1, 1]".into());
    }
    let pexp = match fl.p.map(Exponent::Text).or(file.p).or(pre.p) {
        None => 2.0,
        Some(Exponent::Num(v)) => v,
        Some(Exponent::Text(t)) => parse_exponent(&t).unwrap_or(f64::NAN),
    };
    if !(pexp >= 1.0) {
        bad.push("p must be a number >= 1 or inf".into());
    }
    let fid = fl.fid.or(file.fid).or(pre.fid).unwrap_or_else(|| format!("endpoint:{}", s as f64 + 0.75));
    if registry(&fid).is_err() {
        bad.push(format!("unknown function id `{fid}`"));
    }
    let op_name = pick!(fl.op, file.op, pre.op, "calV".to_string());
    let op = op_name.parse::<Operator>().unwrap_or_else(|e| {
        bad.push(match e {
            crate::Error::InvalidParams(m) => m,
            other => other.to_string(),
        });
        Operator::CalV
    });
    let r = pick!(fl.r, file.r, pre.r, 1);
    let out = fl.out.or(file.out).or(pre.out);
    let plot = fl.plot_script || file.plot_script.unwrap_or(false);
    if plot && out.is_none() {
        bad.push("--plot-script requires --out".into());
    }

    let degree_cap = |m: usize, what: &str, bad: &mut Vec<String>| {
        if m > N_MAX {
            bad.push(format!("{what} must not exceed {N_MAX}"));
        }
    };
    match &command {
        Command::Eval | Command::Expand => degree_cap(n, "n", &mut bad),
        Command::Quad if n == 0 => bad.push("n must be at least 1 for quad".into()),
        Command::Approx => {
            if n == 0 {
                bad.push("n must be at least 1 for approx".into());
            }
            degree_cap(2 * n, "2n", &mut bad);
        }
        Command::Rates | Command::Suboptimal => {
            if ns.contains(&0) {
                bad.push("ns entries must be at least 1".into());
            }
            degree_cap(2 * ns.iter().copied().max().unwrap_or(0), "2·max(ns)", &mut bad);
        }
        _ => {}
    }

    if !bad.is_empty() {
        return Err(UsageError::Invalid(bad.join("; ")));
    }
    Ok(RunConfig {
        command,
        params: Params::raw(alpha, beta),
        s,
        theta,
        lambdas,
        ns,
        n,
        x,
        pexp,
        fid,
        op,
        r,
        out,
        seed: pick!(fl.seed, file.seed, pre.seed, 42),
        paper_literal_h: fl.paper_literal_h || file.paper_literal_h.unwrap_or(false),
        plot_script: plot,
        preset: preset_name,
    })
}

/// Sets the global rayon pool from [`THREADS_ENV`] when it holds a positive integer.
pub fn init_threads() {
    if let Some(t) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&t| t > 0) {
        // a pool already built by an earlier call is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
}

fn sobolev_config(cfg: &RunConfig) -> crate::Result<SobolevConfig> {
    SobolevConfig::new(cfg.s, cfg.theta, cfg.params)?.with_lambdas(cfg.lambdas.clone())
}

fn write_or_print(cfg: &RunConfig, body: &str, out: &mut dyn Write) -> crate::Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn emit(cfg: &RunConfig, rep: &crate::experiments::RateReport, out: &mut dyn Write) -> crate::Result<()> {
    match &cfg.out {
        Some(path) => {
            emit_report(rep, path)?;
            if cfg.plot_script {
                std::fs::write(path.with_extension("gp"), plot_script(rep, Path::new(path)))?;
            }
            writeln!(out, "{}", report_json(rep))?;
        }
        None => out.write_all(report_csv(rep).as_bytes())?,
    }
    Ok(())
}

/// Runs a subcommand; returns the process exit code (0 ok, 1 failure).
pub fn execute(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cfg, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(cfg: &RunConfig, out: &mut dyn Write) -> crate::Result<i32> {
    let p = cfg.params;
    match &cfg.command {
        Command::Eval => {
            let (j, pv) = (jacobi_j(cfg.n, p, cfg.x)?, jacobi_p(cfg.n, p, cfg.x)?);
            writeln!(out, "n,alpha,beta,x,J,P,h")?;
            writeln!(out, "{},{},{},{},{},{},{}", cfg.n, p.alpha, p.beta, cfg.x, sig17(j), sig17(pv), sig17(h_norm(cfg.n, p)))?;
        }
        Command::Quad => {
            let r = gauss_jacobi(cfg.n, p)?;
            let mut body = String::from("index,node,weight\n");
            for (i, (x, w)) in r.nodes.iter().zip(&r.weights).enumerate() {
                body.push_str(&format!("{i},{},{}\n", sig17(*x), sig17(*w)));
            }
            write_or_print(cfg, &body, out)?;
        }
        Command::Expand => {
            let f = registry(&cfg.fid)?.func;
            let c = expand(&f, cfg.n, p)?;
            let mut body = String::from("k,coeff,h_k,tail_energy\n");
            for k in 0..=c.n() {
                body.push_str(&format!("{k},{},{},{}\n", sig17(c.coeff(k)), sig17(c.h(k)), sig17(c.tail_energy(k))));
            }
            write_or_print(cfg, &body, out)?;
        }
        Command::Approx => {
            let f = registry(&cfg.fid)?.func;
            let sc = sobolev_config(cfg)?;
            let derivs = operator_derivs(&f, cfg.op, cfg.n, &sc)?;
            let errs = derivative_errors(&f, &derivs, cfg.pexp, p)?;
            let mut body = String::from("fn,operator,alpha,beta,s,theta,p,n,k,error\n");
            for (k, e) in errs.iter().enumerate() {
                body.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{k},{}\n",
                    cfg.fid,
                    cfg.op.name(),
                    p.alpha,
                    p.beta,
                    cfg.s,
                    cfg.theta,
                    cfg.pexp,
                    cfg.n,
                    sig17(*e)
                ));
            }
            write_or_print(cfg, &body, out)?;
        }
        Command::Rates => {
            let rep = run_rates(&cfg.fid, &sobolev_config(cfg)?, cfg.op, &cfg.ns, cfg.pexp)?;
            emit(cfg, &rep, out)?;
        }
        Command::Suboptimal => {
            let rep = suboptimality_study(&cfg.fid, p, cfg.r, &cfg.ns)?;
            emit(cfg, &rep, out)?;
        }
        Command::Verify(suites) => {
            let opts = VerifyOptions { seed: cfg.seed, paper_literal_h: cfg.paper_literal_h };
            let rows = verify::run(suites, &opts);
            out.write_all(verify::format_table(&rows).as_bytes())?;
            if let Some(path) = &cfg.out {
                std::fs::write(path, verify::format_csv(&rows))?;
            }
            return Ok(if verify::all_pass(&rows) { 0 } else { 1 });
        }
    }
    Ok(0)
}
