//! Connection coefficients between `J^{α,β}` and `J^{α+1,β+1}`, the promotion
//! relations, the tail sums Σ1/Σ2 and the main-lemma residual.
//!
//! With `J_n = 2^n/(n+α+β+1)_n · P_n` the coefficients carry powers of two:
//! `Ã_j = (α+β+2)_{2j} / ((α+1)_j 2^j)`, `B̃_n = 2^n (α+1)_{n+1} / (α+β+2)_{2n+1}`,
//! `D̃_j = 2(j+β+1)/((2j+α+β+2)(2j+α+β+3))`, and
//! `J_n^{α+1,β+1} = Σ_j C_{n,j} J_j^{α,β}` with
//! `C_{n,j} = (−1)^{j+n} Ã_j^{α,β} B̃_n^{α,β} + Ã_j^{β,α} B̃_n^{β,α}`.

use crate::error::{Error, Result};
use crate::fourier::{expand, partial_sum, series_poly, CoeffSeq};
use crate::poly::check_grid;
use crate::quadrature::Func;
use crate::special::{ln_pochhammer, tau_tilde, Params};
use std::f64::consts::LN_2;

/// `τ_n^{α,β} = (n+β)/((2n+α+β)(2n+α+β+1))` as printed in the classical relation.
pub fn tau(n: usize, p: Params) -> Result<f64> {
    Ok(0.5 * tau_tilde(n, p.alpha, p.beta)?)
}

/// The coefficient actually used in `J_n^{α,β} = J_n^{α+1,β} − τ̃ J_{n−1}^{α+1,β}`; equals `2τ`.
pub fn tau_normalized(n: usize, p: Params) -> Result<f64> {
    tau_tilde(n, p.alpha, p.beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Promote {
    Alpha,
    Beta,
}

/// Coefficients `(c0, c1)` with `J_n^{α,β} = c0·J_n^{p'} + c1·J_{n−1}^{p'}`,
/// `p' = (α+1,β)` or `(α,β+1)`.
pub fn promote(n: usize, p: Params, which: Promote) -> Result<(f64, f64)> {
    if n == 0 {
        return Ok((1.0, 0.0));
    }
    match which {
        Promote::Alpha => Ok((1.0, -tau_tilde(n, p.alpha, p.beta)?)),
        Promote::Beta => Ok((1.0, tau_tilde(n, p.beta, p.alpha)?)),
    }
}

/// `ln Ã_j^{α,β}`.
pub fn ln_a(j: usize, p: Params) -> f64 {
    ln_pochhammer(p.alpha + p.beta + 2.0, 2 * j).0 - ln_pochhammer(p.alpha + 1.0, j).0 - j as f64 * LN_2
}

/// `ln B̃_n^{α,β}`.
pub fn ln_b(n: usize, p: Params) -> f64 {
    n as f64 * LN_2 + ln_pochhammer(p.alpha + 1.0, n + 1).0 - ln_pochhammer(p.alpha + p.beta + 2.0, 2 * n + 1).0
}

pub fn a_coef(j: usize, p: Params) -> f64 {
    ln_a(j, p).exp()
}

pub fn b_coef(n: usize, p: Params) -> f64 {
    ln_b(n, p).exp()
}

/// `D̃_j^{α,β}`.
pub fn d_coef(j: usize, p: Params) -> f64 {
    let t = 2.0 * j as f64 + p.alpha + p.beta;
    2.0 * (j as f64 + p.beta + 1.0) / ((t + 2.0) * (t + 3.0))
}

/// The printed `A_j` (without the power of two).
pub fn a_printed(j: usize, p: Params) -> f64 {
    (ln_a(j, p) + j as f64 * LN_2).exp()
}

pub fn b_printed(n: usize, p: Params) -> f64 {
    (ln_b(n, p) - n as f64 * LN_2).exp()
}

pub fn d_printed(j: usize, p: Params) -> f64 {
    0.5 * d_coef(j, p)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConnCoeffs {
    pub params: Params,
    pub n: usize,
    /// `C_{n,0..=n}`.
    pub values: Vec<f64>,
    pub a: Vec<f64>,
    pub a_swapped: Vec<f64>,
    pub b: f64,
    pub b_swapped: f64,
    pub d: f64,
    pub d_swapped: f64,
}

pub fn conn_coeffs(n: usize, p: Params) -> Result<ConnCoeffs> {
    p.validate()?;
    let q = p.swapped();
    let a: Vec<f64> = (0..=n).map(|j| a_coef(j, p)).collect();
    let a_swapped: Vec<f64> = (0..=n).map(|j| a_coef(j, q)).collect();
    let (b, b_swapped) = (b_coef(n, p), b_coef(n, q));
    let values = (0..=n)
        .map(|j| {
            let sign = if (j + n) % 2 == 0 { 1.0 } else { -1.0 };
            sign * a[j] * b + a_swapped[j] * b_swapped
        })
        .collect();
    Ok(ConnCoeffs { params: p, n, values, a, a_swapped, b, b_swapped, d: d_coef(n, p), d_swapped: d_coef(n, q) })
}

/// `C_{n,j} √h_j / √h_n`: the connection row in orthonormal scaling, computed in logs.
fn scaled_row(n: usize, p: Params, d_factor: bool, ln_sqrt_h: &[f64]) -> Vec<f64> {
    let q = p.swapped();
    let (lb, lbs) = (ln_b(n, p), ln_b(n, q));
    let (dn, dns) = if d_factor { (d_coef(n, p), -d_coef(n, q)) } else { (1.0, 1.0) };
    (0..n)
        .map(|j| {
            let sign = if (j + n) % 2 == 0 { 1.0 } else { -1.0 };
            let scale = ln_sqrt_h[j] - ln_sqrt_h[n];
            sign * dn * (ln_a(j, p) + lb + scale).exp() + dns * (ln_a(j, q) + lbs + scale).exp()
        })
        .collect()
}

/// Relative size below which a tail term counts as settled; the quadrature noise
/// floor of the terms sits near `1e−15` of the peak.
const TAIL_QUIET: f64 = 1e-13;

/// Tail sums in orthonormal-free form:
/// `Σ1_j = Σ_{k≥j} (−1)^k f̂_{k+1} B̃_k^{α,β}`, `Σ2_j = Σ_{k≥j} f̂_{k+1} B̃_k^{β,α}`.
pub fn sigma_tails(c: &CoeffSeq, j: usize) -> Result<(f64, f64)> {
    let p = c.params;
    let q = p.swapped();
    let mut terms1 = Vec::new();
    let mut terms2 = Vec::new();
    let mut peak = 0.0f64;
    let mut quiet = 0;
    let mut converged = false;
    for k in j..c.n() {
        let ck = c.normalized()[k + 1];
        let base = ck.abs().ln() - c.ln_sqrt_h(k + 1);
        let (t1, t2) = if ck == 0.0 {
            (0.0, 0.0)
        } else {
            let sign = ck.signum() * if k % 2 == 0 { 1.0 } else { -1.0 };
            (sign * (base + ln_b(k, p)).exp(), ck.signum() * (base + ln_b(k, q)).exp())
        };
        let mag = t1.abs().max(t2.abs());
        peak = peak.max(mag);
        terms1.push(t1);
        terms2.push(t2);
        if mag <= TAIL_QUIET * peak {
            quiet += 1;
            if quiet >= 5 {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if !converged && peak > 0.0 {
        let last = terms1.last().copied().unwrap_or(0.0).abs().max(terms2.last().copied().unwrap_or(0.0).abs());
        if last > TAIL_QUIET * peak {
            return Err(Error::TailNotResolved(last / peak));
        }
    }
    // smallest terms first
    let s1 = crate::poly::compensated_sum(terms1.iter().rev().copied());
    let s2 = crate::poly::compensated_sum(terms2.iter().rev().copied());
    Ok((s1, s2))
}

/// Max-grid difference between `S_{n−1}(f′) − ∂S_n f` and the two-term expansion
/// `ĝ_n Σ_j C_{n,j} J_j − ĝ_{n+1} Σ_j ((−1)^{n+j} Ã_j B̃_n D̃_n − Ã'_j B̃'_n D̃'_n) J_j`,
/// `ĝ` the coefficients of `f′` at `(α, β)`.
pub fn main_lemma_residual(f: &Func, n: usize, p: Params) -> Result<f64> {
    f.require(1)?;
    if n == 0 {
        return Ok(0.0);
    }
    let big = (4 * n).max(n + 2);
    let cf = expand(f, big, p)?;
    let g = f.derivative(1)?;
    let cg = expand(&g, big, p)?;
    let lhs = partial_sum(&cg, n - 1)?.sub(&partial_sum(&cf, n)?.derivative());

    let lsh: Vec<f64> = (0..=n + 1).map(|k| cg.ln_sqrt_h(k)).collect();
    let row_c = scaled_row(n, p, false, &lsh);
    let row_d = scaled_row(n, p, true, &lsh);
    // ĝ_n √h_n = c̃_n; the (n+1) term needs √h_n/√h_{n+1}.
    let gn = cg.normalized()[n];
    let gn1 = cg.normalized()[n + 1] * (lsh[n] - lsh[n + 1]).exp();
    let coeffs: Vec<f64> = (0..n).map(|j| gn * row_c[j] - gn1 * row_d[j]).collect();
    let rhs = series_poly(p, &coeffs);
    Ok(lhs.sub(&rhs).max_abs_on(&check_grid(1001)))
}

/// `Σ_{k=j}^{n} (−1)^k (2k+α+β+2)/(α+β+2) · (α+1)_k/(β+2)_k`, directly.
pub fn finite_sum_direct(j: usize, n: usize, p: Params) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    (j..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let (la, sa) = ln_pochhammer(a + 1.0, k);
            let (lb, _) = ln_pochhammer(b + 2.0, k);
            sign * sa * (2.0 * k as f64 + a + b + 2.0) / (a + b + 2.0) * (la - lb).exp()
        })
        .sum()
}

/// Closed form of [`finite_sum_direct`]:
/// `(−1)^n (α+1)/(α+β+2) · (α+2)_n/(β+2)_n + (−1)^j (β+1)/(α+β+2) · (α+1)_j/(β+1)_j`.
pub fn finite_sum_closed(j: usize, n: usize, p: Params) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    let s = a + b + 2.0;
    let sign = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };
    let ratio = |x: f64, y: f64, k: usize| {
        let (lx, sx) = ln_pochhammer(x, k);
        let (ly, sy) = ln_pochhammer(y, k);
        sx * sy * (lx - ly).exp()
    };
    sign(n) * (a + 1.0) / s * ratio(a + 2.0, b + 2.0, n) + sign(j) * (b + 1.0) / s * ratio(a + 1.0, b + 1.0, j)
}
