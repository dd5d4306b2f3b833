//! Jacobi polynomials, the `J_n` normalization, norm constants and
//! Gamma/Pochhammer utilities.

use crate::error::{Error, Result};
use crate::poly::Poly;
use std::f64::consts::{LN_2, PI};

/// Degree cap for materialized polynomials.
pub const N_MAX: usize = 256;

/// Weight exponents of `w(x) = (1-x)^α (1+x)^β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub alpha: f64,
    pub beta: f64,
}

impl Params {
    /// Validated constructor: both exponents must exceed −1.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let p = Params { alpha, beta };
        p.validate()?;
        Ok(p)
    }

    /// No validation; for evaluation-only use with extended parameters.
    pub const fn raw(alpha: f64, beta: f64) -> Self {
        Params { alpha, beta }
    }

    pub fn validate(&self) -> Result<()> {
        let mut bad = Vec::new();
        if !(self.alpha > -1.0) || !self.alpha.is_finite() {
            bad.push(format!("alpha must exceed -1 (got {})", self.alpha));
        }
        if !(self.beta > -1.0) || !self.beta.is_finite() {
            bad.push(format!("beta must exceed -1 (got {})", self.beta));
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(bad.join("; ")))
        }
    }

    pub fn is_classical(&self) -> bool {
        self.alpha > -1.0 && self.beta > -1.0
    }

    pub fn swapped(&self) -> Self {
        Params::raw(self.beta, self.alpha)
    }

    /// `(α+k, β+k)`.
    pub fn shifted(&self, k: f64) -> Self {
        Params::raw(self.alpha + k, self.beta + k)
    }

    pub fn weight(&self, x: f64) -> f64 {
        (1.0 - x).powf(self.alpha) * (1.0 + x).powf(self.beta)
    }

    /// `ln ∫ w = ln(2^{α+β+1} B(α+1, β+1))`.
    pub fn ln_mass(&self) -> f64 {
        (self.alpha + self.beta + 1.0) * LN_2 + ln_beta(self.alpha + 1.0, self.beta + 1.0)
    }

    pub fn mass(&self) -> f64 {
        self.ln_mass().exp()
    }
}

/// Rising factorial `a(a+1)···(a+n-1)`.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// `(ln |(a)_n|, sign)`; the sign is 0 when the product vanishes.
pub fn ln_pochhammer(a: f64, n: usize) -> (f64, f64) {
    let mut ln = 0.0;
    let mut sign = 1.0;
    for i in 0..n {
        let t = a + i as f64;
        if t == 0.0 {
            return (f64::NEG_INFINITY, 0.0);
        }
        if t < 0.0 {
            sign = -sign;
        }
        ln += t.abs().ln();
    }
    (ln, sign)
}

const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// `ln |Γ(x)|`. Infinite at non-positive integers.
pub fn ln_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        // reflection
        let s = (PI * x).sin().abs();
        return (PI / s).ln() - ln_gamma(1.0 - x);
    }
    let mut z = x;
    let mut shift = 0.0;
    while z < 10.0 {
        shift += z.ln();
        z += 1.0;
    }
    let zi = 1.0 / z;
    let zi2 = zi * zi;
    let mut series = 0.0;
    let mut pow = zi;
    for c in STIRLING {
        series += c * pow;
        pow *= zi2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

/// Sign of `Γ(x)` (0 at poles).
pub fn gamma_sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x == x.floor() {
        0.0
    } else if (x.floor() as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Classical `P_n^{(α,β)}(x)` by the three-term recurrence.
pub fn jacobi_p(n: usize, p: Params, x: f64) -> Result<f64> {
    let (a, b) = (p.alpha, p.beta);
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 0.5 * ((a + b + 2.0) * x + a - b);
    for k in 1..n {
        let kf = k as f64;
        let c = 2.0 * kf + a + b;
        let den = 2.0 * (kf + 1.0) * (kf + a + b + 1.0) * c;
        if den == 0.0 {
            return Err(Error::DegenerateRecurrence { n: k + 1, alpha: a, beta: b });
        }
        let next = ((c + 1.0) * ((c + 2.0) * c * x + a * a - b * b) * cur
            - 2.0 * (kf + a) * (kf + b) * (c + 2.0) * prev)
            / den;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Monic recurrence coefficients: `x p_k = p_{k+1} + b_k p_k + a_k p_{k-1}`.
fn monic_b(k: usize, a: f64, b: f64) -> Option<f64> {
    if k == 0 {
        let den = a + b + 2.0;
        return (den != 0.0).then(|| (b - a) / den);
    }
    let t = 2.0 * k as f64 + a + b;
    let den = t * (t + 2.0);
    (den != 0.0).then(|| (b * b - a * a) / den)
}

fn monic_a(k: usize, a: f64, b: f64) -> Option<f64> {
    let kf = k as f64;
    let t = 2.0 * kf + a + b;
    if k == 1 {
        let den = t * t * (t + 1.0);
        return (den != 0.0).then(|| 4.0 * (1.0 + a) * (1.0 + b) / den);
    }
    let den = t * t * (t + 1.0) * (t - 1.0);
    (den != 0.0).then(|| 4.0 * kf * (kf + a) * (kf + b) * (kf + a + b) / den)
}

/// `J_n^{α,β}(x)`, leading coefficient `1/n!`.
pub fn jacobi_j(n: usize, p: Params, x: f64) -> Result<f64> {
    let (a, b) = (p.alpha, p.beta);
    let degenerate = |k| Error::DegenerateRecurrence { n: k, alpha: a, beta: b };
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = x - monic_b(0, a, b).ok_or_else(|| degenerate(1))?;
    for k in 1..n {
        let bk = monic_b(k, a, b).ok_or_else(|| degenerate(k + 1))?;
        let ak = monic_a(k, a, b).ok_or_else(|| degenerate(k + 1))?;
        let next = ((x - bk) * cur - ak / k as f64 * prev) / (k + 1) as f64;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `τ̃_n^{a,b} = 2(n+b)/((2n+a+b)(2n+a+b+1))`, the coefficient in
/// `J_n^{a,b} = J_n^{a+1,b} − τ̃ J_{n-1}^{a+1,b}`.
pub fn tau_tilde(n: usize, a: f64, b: f64) -> Result<f64> {
    let t = 2.0 * n as f64 + a + b;
    let den = t * (t + 1.0);
    if den == 0.0 {
        return Err(Error::DegenerateDenominator("tau"));
    }
    Ok(2.0 * (n as f64 + b) / den)
}

/// `J_n^{a,b}(x)` for arbitrary real parameters. Uses the recurrence when it is
/// non-degenerate, otherwise lifts the parameters above −1 with the promotion
/// identities.
pub fn jacobi_j_extended(n: usize, p: Params, x: f64) -> Result<f64> {
    if p.is_classical() {
        return jacobi_j(n, p, x);
    }
    match jacobi_j(n, p, x) {
        Ok(v) => Ok(v),
        Err(Error::DegenerateRecurrence { .. }) => lifted(n, p.alpha, p.beta, x),
        Err(e) => Err(e),
    }
}

fn lifted(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    if n == 0 {
        return Ok(1.0);
    }
    if a <= -1.0 {
        let t = tau_tilde(n, a, b)?;
        return Ok(lifted(n, a + 1.0, b, x)? - t * lifted(n - 1, a + 1.0, b, x)?);
    }
    if b <= -1.0 {
        let t = tau_tilde(n, b, a)?;
        return Ok(lifted(n, a, b + 1.0, x)? + t * lifted(n - 1, a, b + 1.0, x)?);
    }
    jacobi_j(n, Params::raw(a, b), x)
}

/// `J_n^{α,β}` as a Chebyshev-basis polynomial.
pub fn jacobi_j_poly(n: usize, p: Params) -> Result<Poly> {
    if n > N_MAX {
        return Err(Error::CapExceeded { n, cap: N_MAX });
    }
    jacobi_j(n, p, 0.0)?;
    jacobi_j(n, p, 1.0)?;
    Ok(Poly::interpolate(|x| jacobi_j(n, p, x).unwrap_or(f64::NAN), n))
}

/// As [`jacobi_j_poly`] for extended parameters.
pub fn jacobi_j_poly_extended(n: usize, p: Params) -> Result<Poly> {
    if n > N_MAX {
        return Err(Error::CapExceeded { n, cap: N_MAX });
    }
    jacobi_j_extended(n, p, 0.5)?;
    Ok(Poly::interpolate(|x| jacobi_j_extended(n, p, x).unwrap_or(f64::NAN), n))
}

/// `ln h_n`, `h_n = ⟨J_n, J_n⟩_{α,β}`:
/// `h_n = 2^{α+β+1} 4^n Γ(n+α+1)Γ(n+β+1)Γ(n+α+β+1) / (n! Γ(2n+α+β+1) Γ(2n+α+β+2))`.
pub fn ln_h_norm(n: usize, p: Params) -> f64 {
    ln_h_literal(n, p) + 2.0 * n as f64 * LN_2
}

pub fn h_norm(n: usize, p: Params) -> f64 {
    ln_h_norm(n, p).exp()
}

/// The closed form without the `4^n` factor; differs from the true norm by exactly `4^n`.
pub fn ln_h_literal(n: usize, p: Params) -> f64 {
    if n == 0 {
        return p.ln_mass();
    }
    let (a, b) = (p.alpha, p.beta);
    let nf = n as f64;
    (a + b + 1.0) * LN_2 + ln_gamma(nf + a + 1.0) + ln_gamma(nf + b + 1.0) + ln_gamma(nf + a + b + 1.0)
        - ln_factorial(n)
        - ln_gamma(2.0 * nf + a + b + 1.0)
        - ln_gamma(2.0 * nf + a + b + 2.0)
}

pub fn h_norm_literal(n: usize, p: Params) -> f64 {
    ln_h_literal(n, p).exp()
}

/// `ln` of the factor `2^n/(n+α+β+1)_n` relating `J_n` to `P_n`.
pub fn ln_j_scale(n: usize, p: Params) -> f64 {
    let lam = p.alpha + p.beta + 1.0;
    let nf = n as f64;
    nf * LN_2 - (0..n).map(|i| (nf + lam + i as f64).ln()).sum::<f64>()
}

/// Orthonormal three-term recurrence for classical parameters:
/// `x q_k = s_{k+1} q_{k+1} + b_k q_k + s_k q_{k-1}` with `q_k = J_k/√h_k`.
#[derive(Debug, Clone)]
pub struct Recurrence {
    pub params: Params,
    pub b: Vec<f64>,
    /// `s[k] = √a_k`, `s[0] = 0`.
    pub s: Vec<f64>,
    pub q0: f64,
    /// `ln √h_k` by the product route `h_k = a_k h_{k-1} / k²`.
    pub ln_sqrt_h: Vec<f64>,
}

impl Recurrence {
    /// Coefficients for degrees `0..=n` (and `s_{n+1}`).
    pub fn new(p: Params, n: usize) -> Self {
        let (a, b) = (p.alpha, p.beta);
        let mut bs = Vec::with_capacity(n + 1);
        let mut ss = Vec::with_capacity(n + 2);
        ss.push(0.0);
        for k in 0..=n {
            bs.push(monic_b(k, a, b).unwrap_or(0.0));
            ss.push(monic_a(k + 1, a, b).expect("classical parameters").sqrt());
        }
        let ln_mu = p.ln_mass();
        let mut ln_sqrt_h = Vec::with_capacity(n + 1);
        let mut acc = 0.5 * ln_mu;
        ln_sqrt_h.push(acc);
        for k in 1..=n {
            acc += ss[k].ln() - (k as f64).ln();
            ln_sqrt_h.push(acc);
        }
        Recurrence { params: p, b: bs, s: ss, q0: (-0.5 * ln_mu).exp(), ln_sqrt_h }
    }

    pub fn degree(&self) -> usize {
        self.b.len() - 1
    }

    /// Writes `q_0(x)..q_{out.len()-1}(x)`.
    pub fn eval_all(&self, x: f64, out: &mut [f64]) {
        if out.is_empty() {
            return;
        }
        out[0] = self.q0;
        if out.len() > 1 {
            out[1] = (x - self.b[0]) * self.q0 / self.s[1];
        }
        for k in 1..out.len().saturating_sub(1) {
            out[k + 1] = ((x - self.b[k]) * out[k] - self.s[k] * out[k - 1]) / self.s[k + 1];
        }
    }

    /// `(q_n(x), q_n'(x))`.
    pub fn eval_with_derivative(&self, n: usize, x: f64) -> (f64, f64) {
        let (mut q_prev, mut q) = (0.0, self.q0);
        let (mut d_prev, mut d) = (0.0, 0.0);
        for k in 0..n {
            let qn = ((x - self.b[k]) * q - self.s[k] * q_prev) / self.s[k + 1];
            let dn = ((x - self.b[k]) * d + q - self.s[k] * d_prev) / self.s[k + 1];
            q_prev = q;
            q = qn;
            d_prev = d;
            d = dn;
        }
        (q, d)
    }

    /// `Σ c_k q_k(x)` by Clenshaw.
    pub fn series(&self, c: &[f64], x: f64) -> f64 {
        let n = c.len();
        if n == 0 {
            return 0.0;
        }
        assert!(n <= self.b.len(), "series longer than recurrence table");
        let (mut u1, mut u2) = (0.0, 0.0);
        for k in (0..n).rev() {
            let mut u = c[k] + (x - self.b[k]) / self.s[k + 1] * u1;
            if k + 2 < n {
                u -= self.s[k + 1] / self.s[k + 2] * u2;
            }
            u2 = u1;
            u1 = u;
        }
        u1 * self.q0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_matches_factorials() {
        for n in 1..30usize {
            let exact = ln_factorial(n - 1);
            assert!((ln_gamma(n as f64) - exact).abs() <= 1e-13 * exact.abs().max(1.0));
        }
        assert!((ln_gamma(0.5) - 0.5 * PI.ln()).abs() < 1e-14);
        // Γ(-0.5) = -2√π
        assert!((ln_gamma(-0.5) - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
        assert_eq!(gamma_sign(-0.5), -1.0);
        assert_eq!(gamma_sign(-1.5), 1.0);
    }

    #[test]
    fn series_matches_eval_all() {
        let r = Recurrence::new(Params::raw(0.3, -0.4), 40);
        let c: Vec<f64> = (0..30).map(|k| ((k * 7) % 5) as f64 - 2.0).collect();
        let mut q = vec![0.0; 30];
        for &x in &[-0.97, -0.2, 0.0, 0.61, 1.0] {
            r.eval_all(x, &mut q);
            let direct: f64 = c.iter().zip(&q).map(|(a, b)| a * b).sum();
            assert!((r.series(&c, x) - direct).abs() < 1e-11 * direct.abs().max(1.0));
        }
    }
}
