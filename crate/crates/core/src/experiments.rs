//! Convergence-rate studies, the suboptimality study for `S_n`, the sharpness
//! identity and log-log slope fitting.

use crate::error::{Error, Result};
use crate::fourier::{best_error_direct, best_error_surrogate, expand_with, expansion_order, series_poly, Eta};
use crate::poly::{check_grid, Poly};
use crate::quadrature::{combine_lp, lp_norm_with, Func, DEFAULT_ORDER};
use crate::registry::registry;
use crate::sobolev::{
    approximant_v_derivs, derivative_errors, partial_sum_derivs, sobolev_expand, sobolev_partial_sum_derivs,
    SobolevConfig,
};
use crate::special::{jacobi_j, jacobi_j_poly_extended, Params};
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Operator {
    /// Jacobi partial sum `S_n`.
    S,
    /// Smoothed sum `V_n`.
    V,
    /// Sobolev partial sum `𝒮_n`.
    CalS,
    /// Simultaneous approximant `𝒱_{n,θ}`.
    CalV,
}

impl Operator {
    pub fn name(&self) -> &'static str {
        match self {
            Operator::S => "S",
            Operator::V => "V",
            Operator::CalS => "calS",
            Operator::CalV => "calV",
        }
    }

    /// Degree whose best error is the natural reference for the operator.
    fn reference_degree(&self, n: usize, s: usize) -> usize {
        match self {
            Operator::S | Operator::CalS => n.saturating_sub(s),
            Operator::V | Operator::CalV => n,
        }
    }
}

impl std::str::FromStr for Operator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" => Ok(Operator::S),
            "V" => Ok(Operator::V),
            "calS" => Ok(Operator::CalS),
            "calV" => Ok(Operator::CalV),
            _ => Err(Error::InvalidParams(format!("unknown operator `{s}` (expected S, V, calS, calV)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Study {
    Rates,
    Suboptimality,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    pub label: String,
    pub fid: String,
    pub operator: String,
    pub study: Study,
    pub params: (f64, f64),
    pub s: usize,
    pub theta: f64,
    pub pexp: f64,
    pub ns: Vec<usize>,
    /// `errors[i][k] = ‖∂^k f − ∂^k A_n f‖`, `n = ns[i]`.
    pub errors: Vec<Vec<f64>>,
    pub reference: Vec<f64>,
    pub ratios: Vec<Vec<f64>>,
    /// `‖f − A_n f‖_{W_p^s} / reference` (rates) or `errors[·][1] / reference` (suboptimality).
    pub summary_ratio: Vec<f64>,
    pub slopes: Vec<f64>,
    pub stderrs: Vec<f64>,
    pub ratio_slope: f64,
    pub ratio_stderr: f64,
    pub pass: bool,
}

impl RateReport {
    pub fn empty(label: &str) -> Self {
        RateReport {
            label: label.to_string(),
            fid: String::new(),
            operator: String::new(),
            study: Study::Rates,
            params: (0.0, 0.0),
            s: 0,
            theta: -1.0,
            pexp: 2.0,
            ns: vec![],
            errors: vec![],
            reference: vec![],
            ratios: vec![],
            summary_ratio: vec![],
            slopes: vec![],
            stderrs: vec![],
            ratio_slope: f64::NAN,
            ratio_stderr: f64::NAN,
            pass: false,
        }
    }

    /// `slope_k − slope_0` for `k = 0..=s`.
    pub fn gaps(&self) -> Vec<f64> {
        self.slopes.iter().map(|s| s - self.slopes[0]).collect()
    }
}

/// Least-squares slope of `ln err` against `ln n`, with its standard error.
pub fn fit_slope(ns: &[usize], errs: &[f64]) -> Result<(f64, f64)> {
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .zip(errs)
        .filter(|(_, &e)| e > 0.0 && e.is_finite())
        .map(|(&n, &e)| ((n as f64).ln(), e.ln()))
        .collect();
    let m = pts.len();
    if m < 3 {
        return Err(Error::TooFewPoints(m));
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m as f64;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let sse: f64 = pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum();
    let stderr = if m > 2 { (sse / (m as f64 - 2.0) / sxx).sqrt() } else { f64::NAN };
    Ok((slope, stderr))
}

/// Longest contiguous run of errors above the noise floor `1e−14·scale`, then [`fit_slope`].
fn fit_run(ns: &[usize], errs: &[f64], scale: f64) -> (f64, f64) {
    let ok: Vec<bool> = errs.iter().map(|&e| e.is_finite() && e > 1e-14 * scale).collect();
    let (mut best, mut start) = ((0, 0), None);
    for i in 0..=ok.len() {
        match (i < ok.len() && ok[i], start) {
            (true, None) => start = Some(i),
            (false, Some(s0)) => {
                if i - s0 > best.1 - best.0 {
                    best = (s0, i);
                }
                start = None;
            }
            _ => {}
        }
    }
    fit_slope(&ns[best.0..best.1], &errs[best.0..best.1]).unwrap_or((f64::NAN, f64::NAN))
}

fn derivative_norms(f: &Func, s: usize, pexp: f64, p: Params) -> Result<Vec<f64>> {
    (0..=s)
        .map(|k| {
            let d = f.evaluator(k)?;
            lp_norm_with(|x| d(x), pexp, p, DEFAULT_ORDER)
        })
        .collect()
}

/// Derivative polynomials `∂^k A_n f`, `k = 0..=s`.
pub fn operator_derivs(f: &Func, op: Operator, n: usize, cfg: &SobolevConfig) -> Result<Vec<Poly>> {
    let (s, p) = (cfg.s, cfg.params);
    match op {
        Operator::S => partial_sum_derivs(f, n, s, p),
        Operator::V => {
            let c = expand_with(|x| f.eval(x), 2 * n, p, expansion_order(2 * n))?;
            let w: Vec<f64> =
                (0..=2 * n).map(|k| crate::fourier::eta_default(k as f64 / n as f64) * c.normalized()[k]).collect();
            let mut out = vec![series_poly(p, &w)];
            for _ in 0..s {
                let d = out.last().unwrap().derivative();
                out.push(d);
            }
            Ok(out)
        }
        Operator::CalS => sobolev_partial_sum_derivs(&sobolev_expand(f, n, cfg)?, n),
        Operator::CalV => approximant_v_derivs(f, n, cfg, &Eta::default()),
    }
}

/// `E_n(f)` surrogate: exact `L²` best error for `p = 2`, `‖f − V_n f‖_p` otherwise.
pub fn reference_error(f: &Func, n: usize, pexp: f64, p: Params) -> Result<f64> {
    if pexp == 2.0 {
        best_error_direct(f, n, p)
    } else {
        best_error_surrogate(f, n, pexp, p)
    }
}

pub fn run_rates(fid: &str, cfg: &SobolevConfig, op: Operator, ns: &[usize], pexp: f64) -> Result<RateReport> {
    cfg.validate()?;
    let f = registry(fid)?.func;
    let (s, p) = (cfg.s, cfg.params);
    let fs = f.derivative(s)?;
    let rows: Vec<(Vec<f64>, f64)> = ns
        .par_iter()
        .map(|&n| {
            let derivs = operator_derivs(&f, op, n, cfg)?;
            let errs = derivative_errors(&f, &derivs, pexp, p)?;
            let reference = reference_error(&fs, op.reference_degree(n, s), pexp, p)?;
            Ok((errs, reference))
        })
        .collect::<Result<_>>()?;
    let scales = derivative_norms(&f, s, pexp, p)?;
    let mut r = assemble(fid, op.name(), Study::Rates, cfg, pexp, ns, rows, &scales);
    r.summary_ratio = r
        .errors
        .iter()
        .zip(&r.reference)
        .map(|(e, &refv)| combine_lp(e, pexp) / refv)
        .collect();
    let (rs, re) = fit_slope(ns, &r.summary_ratio).unwrap_or((f64::NAN, f64::NAN));
    r.ratio_slope = rs;
    r.ratio_stderr = re;
    let bounded = (-0.2..=0.2).contains(&rs);
    let gap_preset = p.alpha == 0.0 || p.beta == 0.0;
    let gaps_ok = r.gaps().iter().enumerate().all(|(k, g)| (g - k as f64).abs() <= 0.3);
    r.pass = bounded && (!gap_preset || gaps_ok);
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    fid: &str,
    op: &str,
    study: Study,
    cfg: &SobolevConfig,
    pexp: f64,
    ns: &[usize],
    rows: Vec<(Vec<f64>, f64)>,
    scales: &[f64],
) -> RateReport {
    let p = cfg.params;
    let label = format!("{fid} {op} alpha={} beta={} s={} theta={} p={pexp}", p.alpha, p.beta, cfg.s, cfg.theta);
    let errors: Vec<Vec<f64>> = rows.iter().map(|r| r.0.clone()).collect();
    let reference: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let ratios = errors.iter().zip(&reference).map(|(e, &d)| e.iter().map(|v| v / d).collect()).collect();
    let kmax = errors.first().map_or(0, |e| e.len());
    let (mut slopes, mut stderrs) = (Vec::new(), Vec::new());
    for k in 0..kmax {
        let col: Vec<f64> = errors.iter().map(|e| e[k]).collect();
        let (sl, se) = fit_run(ns, &col, scales[k]);
        slopes.push(sl);
        stderrs.push(se);
    }
    RateReport {
        label,
        fid: fid.to_string(),
        operator: op.to_string(),
        study,
        params: (p.alpha, p.beta),
        s: cfg.s,
        theta: cfg.theta,
        pexp,
        ns: ns.to_vec(),
        errors,
        reference,
        ratios,
        summary_ratio: vec![],
        slopes,
        stderrs,
        ratio_slope: f64::NAN,
        ratio_stderr: f64::NAN,
        pass: false,
    }
}

/// `‖∂^k f − ∂^k S_n f‖_{L²(w)}` for `k = 0..=r`, referenced to `E_{n−1}(f′)`.
pub fn suboptimality_study(fid: &str, p: Params, r: usize, ns: &[usize]) -> Result<RateReport> {
    p.validate()?;
    let f = registry(fid)?.func;
    f.require(r.max(1))?;
    let fd = f.derivative(1)?;
    let cfg = SobolevConfig::new(r.max(1), -1.0, p)?;
    let rows: Vec<(Vec<f64>, f64)> = ns
        .par_iter()
        .map(|&n| {
            let derivs = partial_sum_derivs(&f, n, r, p)?;
            let errs = derivative_errors(&f, &derivs, 2.0, p)?;
            Ok((errs, best_error_direct(&fd, n - 1, p)?))
        })
        .collect::<Result<_>>()?;
    let scales = derivative_norms(&f, r, 2.0, p)?;
    let mut rep = assemble(fid, "S", Study::Suboptimality, &cfg, 2.0, ns, rows, &scales);
    rep.s = r;
    rep.summary_ratio = rep.ratios.iter().map(|row| row.get(1).copied().unwrap_or(f64::NAN)).collect();
    let (rs, re) = fit_slope(ns, &rep.summary_ratio).unwrap_or((f64::NAN, f64::NAN));
    rep.ratio_slope = rs;
    rep.ratio_stderr = re;
    rep.pass = rs >= 0.25;
    Ok(rep)
}

/// `‖∂f − ∂𝒱_{n,−1} f‖_{L²(w)} / E_{n−1}(f′)`: the simultaneous counterpart of the suboptimality ratio.
pub fn suboptimality_v(fid: &str, p: Params, ns: &[usize]) -> Result<RateReport> {
    p.validate()?;
    let f = registry(fid)?.func;
    let fd = f.derivative(1)?;
    let cfg = SobolevConfig::new(1, -1.0, p)?;
    let rows: Vec<(Vec<f64>, f64)> = ns
        .par_iter()
        .map(|&n| {
            let derivs = approximant_v_derivs(&f, n, &cfg, &Eta::default())?;
            let errs = derivative_errors(&f, &derivs, 2.0, p)?;
            Ok((errs, best_error_direct(&fd, n - 1, p)?))
        })
        .collect::<Result<_>>()?;
    let scales = derivative_norms(&f, 1, 2.0, p)?;
    let mut rep = assemble(fid, "calV", Study::Suboptimality, &cfg, 2.0, ns, rows, &scales);
    rep.summary_ratio = rep.ratios.iter().map(|row| row[1]).collect();
    let (rs, re) = fit_slope(ns, &rep.summary_ratio).unwrap_or((f64::NAN, f64::NAN));
    rep.ratio_slope = rs;
    rep.ratio_stderr = re;
    rep.pass = rs <= 0.1;
    Ok(rep)
}

/// Grid discrepancy and the size of the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discrepancy {
    pub abs: f64,
    pub scale: f64,
}

impl Discrepancy {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.abs
        } else {
            self.abs / self.scale
        }
    }
}

/// `∂^k g − ∂^k S_n g` against `J_{n+1−k}^{α+k,β+k}` for `g = J_{n+1}^{α−k,β−k}`.
pub fn sharpness_identity(n: usize, k: usize, p: Params) -> Result<Discrepancy> {
    p.validate()?;
    if n < k + 2 {
        return Err(Error::PreconditionViolated(format!("need n ≥ k+2 (n = {n}, k = {k})")));
    }
    let g = jacobi_j_poly_extended(n + 1, p.shifted(-(k as f64)))?;
    let c = expand_with(|x| g.eval(x), n, p, expansion_order(n))?;
    let lhs = g.sub(&series_poly(p, c.normalized())).derivative_n(k);
    let target = p.shifted(k as f64);
    let grid = check_grid(1001);
    let (mut abs, mut scale) = (0.0f64, 0.0f64);
    for &x in &grid {
        let r = jacobi_j(n + 1 - k, target, x)?;
        abs = abs.max((lhs.eval(x) - r).abs());
        scale = scale.max(r.abs());
    }
    Ok(Discrepancy { abs, scale })
}

pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV rows `fn,operator,alpha,beta,s,theta,p,n,k,error,ratio`.
pub fn report_csv(r: &RateReport) -> String {
    let mut out = String::from("fn,operator,alpha,beta,s,theta,p,n,k,error,ratio\n");
    for (i, &n) in r.ns.iter().enumerate() {
        for (k, e) in r.errors[i].iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                r.fid,
                r.operator,
                r.params.0,
                r.params.1,
                r.s,
                r.theta,
                r.pexp,
                n,
                k,
                sig17(*e),
                sig17(r.ratios[i][k])
            ));
        }
    }
    out
}

#[derive(Serialize)]
struct Summary<'a> {
    label: &'a str,
    slopes: Vec<Option<f64>>,
    stderrs: Vec<Option<f64>>,
    ratio_slope: Option<f64>,
    pass: bool,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

pub fn report_json(r: &RateReport) -> String {
    let summary = Summary {
        label: &r.label,
        slopes: r.slopes.iter().map(|&v| finite(v)).collect(),
        stderrs: r.stderrs.iter().map(|&v| finite(v)).collect(),
        ratio_slope: finite(r.ratio_slope),
        pass: r.pass,
    };
    serde_json::to_string_pretty(&summary).expect("serializable")
}

/// Writes the CSV to `path` and the JSON summary next to it (`.json` extension).
pub fn emit_report(r: &RateReport, path: &Path) -> Result<()> {
    std::fs::File::create(path)?.write_all(report_csv(r).as_bytes())?;
    std::fs::write(path.with_extension("json"), report_json(r) + "\n")?;
    Ok(())
}

/// Gnuplot script for a report CSV.
pub fn plot_script(r: &RateReport, csv: &Path) -> String {
    let mut s = format!(
        "set logscale xy\nset datafile separator ','\nset key left bottom\nset title '{}'\nplot ",
        r.label
    );
    let kmax = r.errors.first().map_or(0, |e| e.len());
    let name = csv.display();
    let lines: Vec<String> = (0..kmax)
        .map(|k| format!("'{name}' using 8:($9=={k}?$10:1/0) with linespoints title 'k={k}'"))
        .collect();
    s.push_str(&lines.join(", \\\n     "));
    s.push('\n');
    s
}
