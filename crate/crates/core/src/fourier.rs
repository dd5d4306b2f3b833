//! Fourier–Jacobi coefficients, partial sums `S_n`, the cutoff `η` and the
//! smoothed operator `V_n`.

use crate::error::{Error, Result};
use crate::poly::{check_grid, Poly};
use crate::quadrature::{lp_norm_with, rule, Func, DEFAULT_ORDER};
use crate::special::{Params, Recurrence, N_MAX};
use std::sync::Arc;

/// Coefficients `f̂_k = ⟨f, J_k⟩/h_k`, `k = 0..=N`.
///
/// Stored as `c̃_k = f̂_k √h_k` (coefficients against the orthonormal family)
/// together with `ln √h_k`, since `h_k` leaves the `f64` range past `k ≈ 85`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    pub params: Params,
    normalized: Vec<f64>,
    ln_sqrt_h: Vec<f64>,
}

impl CoeffSeq {
    pub fn from_normalized(params: Params, normalized: Vec<f64>) -> Self {
        let n = normalized.len().saturating_sub(1);
        let ln_sqrt_h = Recurrence::new(params, n).ln_sqrt_h;
        CoeffSeq { params, normalized, ln_sqrt_h }
    }

    /// Highest index `N`.
    pub fn n(&self) -> usize {
        self.normalized.len() - 1
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.normalized[k] * (-self.ln_sqrt_h[k]).exp()
    }

    pub fn coeffs(&self) -> Vec<f64> {
        (0..=self.n()).map(|k| self.coeff(k)).collect()
    }

    pub fn normalized(&self) -> &[f64] {
        &self.normalized
    }

    pub fn ln_sqrt_h(&self, k: usize) -> f64 {
        self.ln_sqrt_h[k]
    }

    pub fn h(&self, k: usize) -> f64 {
        (2.0 * self.ln_sqrt_h[k]).exp()
    }

    /// `Σ_{k>n} f̂_k² h_k` over the stored tail.
    pub fn tail_energy(&self, n: usize) -> f64 {
        crate::poly::compensated_sum(self.normalized.iter().skip(n + 1).map(|c| c * c))
    }
}

/// Quadrature order used for an expansion to degree `n`.
pub fn expansion_order(n: usize) -> usize {
    DEFAULT_ORDER.max(4 * n + 64)
}

pub fn expand(f: &Func, n: usize, p: Params) -> Result<CoeffSeq> {
    if n > N_MAX {
        return Err(Error::CapExceeded { n, cap: N_MAX });
    }
    expand_with(|x| f.eval(x), n, p, expansion_order(n))
}

/// Expansion of a closure with a quadrature rule of order `m` (no degree cap).
pub fn expand_with(f: impl Fn(f64) -> f64, n: usize, p: Params, m: usize) -> Result<CoeffSeq> {
    p.validate()?;
    let r = rule(m, p)?;
    let rec = Recurrence::new(p, n);
    let mut acc = vec![Vec::with_capacity(m); n + 1];
    let mut q = vec![0.0; n + 1];
    for (&x, &w) in r.nodes.iter().zip(&r.weights) {
        let fx = w * f(x);
        rec.eval_all(x, &mut q);
        for k in 0..=n {
            acc[k].push(fx * q[k]);
        }
    }
    let normalized = acc.into_iter().map(crate::poly::compensated_sum).collect();
    Ok(CoeffSeq { params: p, normalized, ln_sqrt_h: rec.ln_sqrt_h })
}

/// `Σ c̃_k q_k` as a Poly of degree `c.len()-1`.
pub fn series_poly(p: Params, c: &[f64]) -> Poly {
    if c.is_empty() {
        return Poly::zero();
    }
    let deg = c.len() - 1;
    let rec = Recurrence::new(p, deg);
    Poly::interpolate(|x| rec.series(c, x), deg)
}

/// `S_n f = Σ_{k≤n} f̂_k J_k`.
pub fn partial_sum(c: &CoeffSeq, n: usize) -> Result<Poly> {
    if n > c.n() {
        return Err(Error::IndexRange { index: n, max: c.n() });
    }
    Ok(series_poly(c.params, &c.normalized[..=n]))
}

/// Admissible cutoff: 1 on `[0,1]`, 0 on `[2,∞)`, smooth in between.
#[derive(Clone)]
pub struct Eta(Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl Eta {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Eta(Arc::new(f))
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.0)(t)
    }
}

impl Default for Eta {
    fn default() -> Self {
        Eta::new(eta_default)
    }
}

impl std::fmt::Debug for Eta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Eta")
    }
}

fn bump(u: f64) -> f64 {
    if u > 0.0 {
        (-1.0 / u).exp()
    } else {
        0.0
    }
}

pub fn eta_default(t: f64) -> f64 {
    if t <= 1.0 {
        1.0
    } else if t >= 2.0 {
        0.0
    } else {
        let (a, b) = (bump(2.0 - t), bump(t - 1.0));
        a / (a + b)
    }
}

/// `V_n f = Σ_{k≤2n} η(k/n) f̂_k J_k`.
pub fn vallee_poussin(c: &CoeffSeq, n: usize, eta: &Eta) -> Result<Poly> {
    if 2 * n > c.n() {
        return Err(Error::IndexRange { index: 2 * n, max: c.n() });
    }
    if n == 0 {
        return Ok(Poly::constant(c.normalized[0] * Recurrence::new(c.params, 0).q0));
    }
    let w: Vec<f64> = (0..=2 * n).map(|k| eta.eval(k as f64 / n as f64) * c.normalized[k]).collect();
    Ok(series_poly(c.params, &w))
}

/// `E_n(f)_{L²(w)}` from the stored coefficient tail.
pub fn best_error_l2(c: &CoeffSeq, n: usize) -> Result<f64> {
    if n >= c.n() {
        return Err(Error::IndexRange { index: n + 1, max: c.n() });
    }
    let tail = c.tail_energy(n);
    let last = c.normalized[c.n()].powi(2);
    let total = c.tail_energy(0) + c.normalized[0].powi(2);
    if last > 1e-16 * tail + 1e-28 * total {
        return Err(Error::TailNotResolved(last / tail));
    }
    Ok(tail.sqrt())
}

/// [`best_error_l2`] with the default length `N = min(4n, N_max)`.
pub fn best_error_l2_of(f: &Func, n: usize, p: Params) -> Result<f64> {
    let big = (4 * n).min(N_MAX).max(n + 1);
    best_error_l2(&expand(f, big, p)?, n)
}

/// Quadrature order for norms of `f - q` with `deg q = deg`.
pub fn norm_order(deg: usize) -> usize {
    DEFAULT_ORDER.max(4 * deg + 64)
}

/// `‖f - S_n f‖_{L²(w)}` by direct quadrature; equals `E_n(f)` without needing a resolved tail.
pub fn best_error_direct(f: &Func, n: usize, p: Params) -> Result<f64> {
    let c = expand_with(|x| f.eval(x), n, p, expansion_order(n))?;
    let s = partial_sum(&c, n)?;
    lp_norm_with(|x| f.eval(x) - s.eval(x), 2.0, p, norm_order(n))
}

/// `‖f - V_n f‖_{L^p(w)}`, within a fixed constant of `E_n(f)_p`.
pub fn best_error_surrogate(f: &Func, n: usize, pexp: f64, p: Params) -> Result<f64> {
    let c = expand_with(|x| f.eval(x), 2 * n, p, expansion_order(2 * n))?;
    let v = vallee_poussin(&c, n, &Eta::default())?;
    lp_norm_with(|x| f.eval(x) - v.eval(x), pexp, p, norm_order(2 * n))
}

/// Max-grid discrepancy of `∂S_n^{α,β} f` against `S_{n-1}^{α+1,β+1} f'`.
pub fn commute_check(f: &Func, n: usize, p: Params) -> Result<f64> {
    f.require(1)?;
    if n == 0 {
        return Ok(0.0);
    }
    let lhs = partial_sum(&expand(f, n, p)?, n)?.derivative();
    let rhs = partial_sum(&expand(&f.derivative(1)?, n - 1, p.shifted(1.0))?, n - 1)?;
    Ok(lhs.sub(&rhs).max_abs_on(&check_grid(1001)))
}
