//! Sobolev-orthogonal polynomials `𝒥_{n,θ}`, the inner product `⟨·,·⟩^{−s}`,
//! the Sobolev partial sum `𝒮_n` and the simultaneous approximant `𝒱_{n,θ}`.

use crate::error::{Error, Result};
use crate::fourier::{expand, expansion_order, expand_with, norm_order, series_poly, vallee_poussin, CoeffSeq, Eta};
use crate::poly::Poly;
use crate::quadrature::{lp_norm_with, rule, Func, DEFAULT_ORDER};
use crate::special::{jacobi_j_poly, Params, N_MAX};

pub const S_MAX: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct SobolevConfig {
    pub s: usize,
    pub theta: f64,
    pub params: Params,
    pub lambdas: Vec<f64>,
}

impl SobolevConfig {
    /// All `λ_k = 1`.
    pub fn new(s: usize, theta: f64, params: Params) -> Result<Self> {
        let cfg = SobolevConfig { s, theta, params, lambdas: vec![1.0; s] };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_lambdas(mut self, lambdas: Vec<f64>) -> Result<Self> {
        self.lambdas = lambdas;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let mut bad = Vec::new();
        if let Err(Error::InvalidParams(m)) = self.params.validate() {
            bad.push(m);
        }
        if self.s == 0 || self.s > S_MAX {
            bad.push(format!("s must be in 1..={S_MAX} (got {})", self.s));
        }
        if !(-1.0..=1.0).contains(&self.theta) {
            bad.push(format!("theta must lie in [-1, 1] (got {})", self.theta));
        }
        if self.lambdas.len() != self.s || self.lambdas.iter().any(|&l| !(l > 0.0)) {
            bad.push("lambdas must be s positive numbers".to_string());
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(bad.join("; ")))
        }
    }
}

/// `𝒥_n`: `(x−θ)^n/n!` for `n < s`, else the `s`-fold θ-anchored antiderivative of `J_{n−s}`.
pub fn cj(n: usize, cfg: &SobolevConfig) -> Result<Poly> {
    if n > N_MAX {
        return Err(Error::CapExceeded { n, cap: N_MAX });
    }
    if n < cfg.s {
        let mut d = vec![0.0; n + 1];
        d[n] = 1.0;
        return Ok(Poly::taylor(&d, cfg.theta));
    }
    Ok(jacobi_j_poly(n - cfg.s, cfg.params)?.antiderivative_n(cfg.s, cfg.theta))
}

/// `∫ f^{(s)} g^{(s)} w + Σ_k λ_k f^{(k)}(θ) g^{(k)}(θ)`.
pub fn sobolev_inner(f: &Func, g: &Func, cfg: &SobolevConfig) -> Result<f64> {
    let s = cfg.s;
    let (fs, gs) = (f.evaluator(s)?, g.evaluator(s)?);
    let r = rule(DEFAULT_ORDER, cfg.params)?;
    let mut total = r.integrate(|x| fs(x) * gs(x));
    for k in 0..s {
        total += cfg.lambdas[k] * f.deriv(k, cfg.theta)? * g.deriv(k, cfg.theta)?;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SobolevSeries {
    pub config: SobolevConfig,
    /// `f^{(k)}(θ)`, `k < s`.
    pub taylor: Vec<f64>,
    /// Coefficients of `f^{(s)}`.
    pub tail: CoeffSeq,
}

impl SobolevSeries {
    /// Coefficient against `𝒥_n`.
    pub fn coeff(&self, n: usize) -> f64 {
        if n < self.config.s {
            self.taylor[n]
        } else {
            self.tail.coeff(n - self.config.s)
        }
    }
}

pub fn sobolev_expand(f: &Func, n: usize, cfg: &SobolevConfig) -> Result<SobolevSeries> {
    if n > N_MAX {
        return Err(Error::CapExceeded { n, cap: N_MAX });
    }
    let s = cfg.s;
    let fs = f.derivative(s)?;
    let taylor = (0..s).map(|k| f.deriv(k, cfg.theta)).collect::<Result<Vec<_>>>()?;
    let tail = expand(&fs, n.saturating_sub(s), cfg.params)?;
    Ok(SobolevSeries { config: cfg.clone(), taylor, tail })
}

/// Derivatives `0..=s` of `Σ_{k<m} d_k (x−θ)^k/k! + ∫_θ^x (x−t)^{s−1}/(s−1)! q(t) dt`,
/// each built directly (Taylor shift plus `s−k` anchored antiderivatives of `q`).
fn assemble(taylor: &[f64], m: usize, q: Option<&Poly>, s: usize, theta: f64) -> Vec<Poly> {
    (0..=s)
        .map(|k| {
            let t = if k < m { Poly::taylor(&taylor[k..m], theta) } else { Poly::zero() };
            match q {
                Some(q) => t.add(&q.antiderivative_n(s - k, theta)),
                None => t,
            }
        })
        .collect()
}

/// `∂^k 𝒮_n f` for `k = 0..=s`.
pub fn sobolev_partial_sum_derivs(ser: &SobolevSeries, n: usize) -> Result<Vec<Poly>> {
    let s = ser.config.s;
    if n > s + ser.tail.n() {
        return Err(Error::IndexRange { index: n, max: s + ser.tail.n() });
    }
    let q = if n >= s { Some(crate::fourier::partial_sum(&ser.tail, n - s)?) } else { None };
    Ok(assemble(&ser.taylor, (n + 1).min(s), q.as_ref(), s, ser.config.theta))
}

pub fn sobolev_partial_sum(ser: &SobolevSeries, n: usize) -> Result<Poly> {
    Ok(sobolev_partial_sum_derivs(ser, n)?.swap_remove(0))
}

/// `∂^k 𝒱_{n,θ} f` for `k = 0..=s`. Requires `2n ≤ N_max`.
pub fn approximant_v_derivs(f: &Func, n: usize, cfg: &SobolevConfig, eta: &Eta) -> Result<Vec<Poly>> {
    if 2 * n > N_MAX {
        return Err(Error::CapExceeded { n: 2 * n, cap: N_MAX });
    }
    let s = cfg.s;
    let fs = f.evaluator(s)?;
    let taylor = (0..s).map(|k| f.deriv(k, cfg.theta)).collect::<Result<Vec<_>>>()?;
    let c = expand_with(|x| fs(x), 2 * n, cfg.params, expansion_order(2 * n))?;
    let v = vallee_poussin(&c, n, eta)?;
    Ok(assemble(&taylor, s, Some(&v), s, cfg.theta))
}

pub fn approximant_v(f: &Func, n: usize, cfg: &SobolevConfig, eta: &Eta) -> Result<Poly> {
    Ok(approximant_v_derivs(f, n, cfg, eta)?.swap_remove(0))
}

/// `∂^k` of the standard partial sum `S_n f`, `k = 0..=s`, by Chebyshev differentiation.
pub fn partial_sum_derivs(f: &Func, n: usize, s: usize, p: Params) -> Result<Vec<Poly>> {
    let c = expand_with(|x| f.eval(x), n, p, expansion_order(n))?;
    let mut out = vec![series_poly(p, c.normalized())];
    for _ in 0..s {
        let d = out.last().unwrap().derivative();
        out.push(d);
    }
    Ok(out)
}

/// `‖∂^k f − q_k‖_{L^p(w)}` for given derivative polynomials `q_0..q_s`.
pub fn derivative_errors(f: &Func, derivs: &[Poly], pexp: f64, p: Params) -> Result<Vec<f64>> {
    let deg = derivs.iter().map(|q| q.degree()).max().unwrap_or(0);
    let m = norm_order(deg);
    derivs
        .iter()
        .enumerate()
        .map(|(k, q)| {
            let d = f.evaluator(k)?;
            lp_norm_with(|x| d(x) - q.eval(x), pexp, p, m)
        })
        .collect()
}

/// `‖∂^k f − ∂^k q‖_{L^p(w)}`, `k = 0..=s`.
pub fn taylor_remainder_error(f: &Func, q: &Poly, cfg: &SobolevConfig, pexp: f64) -> Result<Vec<f64>> {
    f.require(cfg.s)?;
    let derivs: Vec<Poly> = (0..=cfg.s).map(|k| q.derivative_n(k)).collect();
    derivative_errors(f, &derivs, pexp, cfg.params)
}
