//! The dual function `u_{g,k}`:
//! `u(x) = ∫_{−1}^x (x−t)^{s−1}/(s−1)! w(t)^{−1} ∫_t^1 (y−t)^{s−k−1}/(s−k−1)! g(y) w(y) dy dt`,
//! its boundary value problem, the pairing identity and the weighted bound ratio.
//!
//! With `G_m(t) = ∫_t^1 (y−t)^{m−1}/(m−1)! g w dy` one has `u^{(s)} = G_{s−k}/w` and
//! `d/dt G_m = −G_{m−1}` (`G_0 = g w`), which gives all higher derivatives by Leibniz.
//! Inner integrals use Gauss–Jacobi rules mapped to `[t,1]` (t > 0) or to `[−1,t]`
//! (t ≤ 0, by complement), so the weight singularities are integrated exactly.

use crate::error::{Error, Result};
use crate::poly::{check_grid, Poly};
use crate::quadrature::{integrate, lp_norm_with, rule, Func, QuadRule};
use crate::special::{pochhammer, Params};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualSpec {
    pub k: usize,
    pub s: usize,
    pub params: Params,
    pub anchor: Anchor,
}

impl DualSpec {
    pub fn new(k: usize, s: usize, params: Params, anchor: Anchor) -> Result<Self> {
        params.validate()?;
        if k >= s {
            return Err(Error::InvalidParams(format!("need k < s (got k = {k}, s = {s})")));
        }
        Ok(DualSpec { k, s, params, anchor })
    }

    fn m(&self) -> usize {
        self.s - self.k
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binom(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(x−t)^j / j!` (zero power is 1).
fn kernel(d: f64, j: usize) -> f64 {
    d.powi(j as i32) / factorial(j)
}

struct Solver {
    g: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    p: Params,
    s: usize,
    m: usize,
    full: Arc<QuadRule>,
    right: Arc<QuadRule>,
    left: Arc<QuadRule>,
    outer_sing: Option<Arc<QuadRule>>,
    outer: Arc<QuadRule>,
}

/// Inner data at a point: `G_1..G_m`, and for `t ≤ 0` the complement split
/// `G_j = T_j − (1+t)^{β+1} Λ_j`.
struct Inner {
    g: Vec<f64>,
    split: Option<(Vec<f64>, Vec<f64>)>,
}

impl Solver {
    /// Spec with anchor −1 (callers reflect for +1).
    fn new(g: Arc<dyn Fn(f64) -> f64 + Send + Sync>, p: Params, s: usize, k: usize, order: usize) -> Result<Self> {
        let outer_sing = if p.beta < 1.0 { Some(rule(order, Params::raw(0.0, -p.beta))?) } else { None };
        Ok(Solver {
            g,
            p,
            s,
            m: s - k,
            full: rule(order, p)?,
            right: rule(order, Params::raw(p.alpha, 0.0))?,
            left: rule(order, Params::raw(0.0, p.beta))?,
            outer_sing,
            outer: rule(order, Params::raw(0.0, 0.0))?,
        })
    }

    fn inner(&self, t: f64) -> Inner {
        let m = self.m;
        let (a, b) = (self.p.alpha, self.p.beta);
        let mut out = vec![0.0; m + 1];
        if t > 0.0 {
            let (ys, ws) = self.right.mapped(t, 1.0);
            for (&y, &w) in ys.iter().zip(&ws) {
                let f = w * (self.g)(y) * (1.0 + y).powf(b);
                for j in 1..=m {
                    out[j] += f * kernel(y - t, j - 1);
                }
            }
            return Inner { g: out, split: None };
        }
        let mut total = vec![0.0; m + 1];
        for (&y, &w) in self.full.nodes.iter().zip(&self.full.weights) {
            let f = w * (self.g)(y);
            for j in 1..=m {
                total[j] += f * kernel(y - t, j - 1);
            }
        }
        let h = 0.5 * (1.0 + t);
        let mut lam = vec![0.0; m + 1];
        for (&u, &w) in self.left.nodes.iter().zip(&self.left.weights) {
            let y = -1.0 + h * (1.0 + u);
            let f = w * (self.g)(y) * (1.0 - y).powf(a) * 2f64.powf(-b - 1.0);
            for j in 1..=m {
                lam[j] += f * kernel(y - t, j - 1);
            }
        }
        let scale = (1.0 + t).powf(b + 1.0);
        for j in 1..=m {
            out[j] = total[j] - scale * lam[j];
        }
        Inner { g: out, split: Some((total, lam)) }
    }

    /// `u^{(j)}(x)` for `j < s` by the outer integral with kernel power `s−1−j`.
    fn low(&self, j: usize, x: f64) -> Result<f64> {
        let a = self.p.alpha;
        let pw = self.s - 1 - j;
        if x <= -1.0 {
            return Ok(0.0);
        }
        let left_end = x.min(0.0);
        let mut acc = 0.0;
        let h = 0.5 * (left_end + 1.0);
        if h > 0.0 {
            let sing = self.outer_sing.as_ref().ok_or(Error::IntegralNotConverged(f64::INFINITY))?;
            let (ts, ws) = sing.mapped(-1.0, left_end);
            for (&t, &w) in ts.iter().zip(&ws) {
                let inn = self.inner(t);
                let (total, _) = inn.split.as_ref().expect("left branch");
                acc += w * kernel(x - t, pw) * (1.0 - t).powf(-a) * total[self.m];
            }
            let (ts, ws) = self.outer.mapped(-1.0, left_end);
            for (&t, &w) in ts.iter().zip(&ws) {
                let inn = self.inner(t);
                let (_, lam) = inn.split.as_ref().expect("left branch");
                acc -= w * kernel(x - t, pw) * (1.0 - t).powf(-a) * (1.0 + t) * lam[self.m];
            }
        }
        if x > 0.0 {
            let (ts, ws) = self.outer.mapped(0.0, x);
            for (&t, &w) in ts.iter().zip(&ws) {
                let inn = self.inner(t);
                acc += w * kernel(x - t, pw) * inn.g[self.m] / self.p.weight(t);
            }
        }
        Ok(acc)
    }

    /// `(w^{−1})^{(r)}(x)`.
    fn inv_weight_deriv(&self, r: usize, x: f64) -> f64 {
        let (a, b) = (self.p.alpha, self.p.beta);
        (0..=r)
            .map(|i| {
                let sign = if (r - i) % 2 == 0 { 1.0 } else { -1.0 };
                binom(r, i)
                    * pochhammer(a, i)
                    * (1.0 - x).powf(-a - i as f64)
                    * sign
                    * pochhammer(b, r - i)
                    * (1.0 + x).powf(-b - (r - i) as f64)
            })
            .sum()
    }

    /// `u^{(s+i)}(x)`, `0 ≤ i ≤ m`.
    fn high(&self, i: usize, x: f64) -> f64 {
        let inn = self.inner(x);
        let gval = |j: usize| if j == 0 { (self.g)(x) * self.p.weight(x) } else { inn.g[j] };
        (0..=i)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                if j == self.m {
                    // w^{-1} · G_0 = g exactly
                    return binom(i, j) * sign * (self.g)(x);
                }
                binom(i, j) * self.inv_weight_deriv(i - j, x) * sign * gval(self.m - j)
            })
            .sum()
    }

    fn deriv(&self, j: usize, x: f64) -> Result<f64> {
        if j < self.s {
            self.low(j, x)
        } else {
            Ok(self.high(j - self.s, x))
        }
    }
}

const ORDERS: [usize; 2] = [64, 96];

fn resolved(g: &Func, spec: &DualSpec) -> (Arc<dyn Fn(f64) -> f64 + Send + Sync>, Params, f64) {
    match spec.anchor {
        Anchor::Minus => {
            let e = g.evaluator(0).expect("order 0");
            (e, spec.params, 1.0)
        }
        Anchor::Plus => {
            let e = g.evaluator(0).expect("order 0");
            (Arc::new(move |y| e(-y)), spec.params.swapped(), -1.0)
        }
    }
}

/// `u_{g,k}^{(j)}(x)`, `0 ≤ j ≤ 2s−k`; for `j ≥ s` through the Leibniz expansion.
pub fn dual_u_derivative(g: &Func, spec: &DualSpec, j: usize, x: f64) -> Result<f64> {
    if j > 2 * spec.s - spec.k {
        return Err(Error::PreconditionViolated(format!("derivative order {j} exceeds 2s−k")));
    }
    let (ge, p, dir) = resolved(g, spec);
    let xr = dir * x;
    let sign = if dir < 0.0 && j % 2 == 1 { -1.0 } else { 1.0 };
    let mut vals = [0.0; 2];
    for (slot, &order) in ORDERS.iter().enumerate() {
        let solver = Solver::new(ge.clone(), p, spec.s, spec.k, order)?;
        vals[slot] = solver.deriv(j, xr)?;
    }
    let diff = (vals[0] - vals[1]).abs();
    if !vals[1].is_finite() || diff > 1e-8 * (vals[0].abs() + vals[1].abs()) + 1e-13 {
        return Err(Error::IntegralNotConverged(diff));
    }
    Ok(sign * vals[1])
}

pub fn dual_u(g: &Func, spec: &DualSpec, x: f64) -> Result<f64> {
    dual_u_derivative(g, spec, 0, x)
}

/// `(d/dx)^j (w u^{(s)})(x) = (−1)^j G_{s−k−j}(x)` for `j < s−k` (anchor −1 frame).
pub fn weighted_derivative(g: &Func, spec: &DualSpec, j: usize, x: f64) -> Result<f64> {
    if j >= spec.m() {
        return Err(Error::PreconditionViolated("need j < s−k".into()));
    }
    let (ge, p, dir) = resolved(g, spec);
    let solver = Solver::new(ge, p, spec.s, spec.k, ORDERS[1])?;
    let inn = solver.inner(dir * x);
    let odd = |n: usize| n % 2 == 1;
    let sign = if (dir > 0.0 && odd(j)) || (dir < 0.0 && odd(spec.s)) { -1.0 } else { 1.0 };
    Ok(sign * inn.g[spec.m() - j])
}

pub const DELTA: f64 = 1e-2;
const FIT_DEGREE: usize = 32;

/// Derivative `d/dx` of a fit in `ξ = x/(1−δ)`.
fn fit(vals: &[f64]) -> Poly {
    Poly::from_extrema_values(vals, FIT_DEGREE).trim()
}

/// Max over `grid` interior points of `|(−1)^{s−k} w^{−1} (d/dx)^{s−k}(w u^{(s)}) − g|`, with
/// derivatives of `u` taken from Chebyshev fits of `dual_u` samples on `[−1+δ, 1−δ]`.
pub fn bvp_residual(g: &Func, spec: &DualSpec, grid: usize) -> Result<f64> {
    let (g_eff, params) = match spec.anchor {
        Anchor::Minus => (g.clone(), spec.params),
        Anchor::Plus => (g.reflected(), spec.params.swapped()),
    };
    let local = DualSpec { anchor: Anchor::Minus, params, ..*spec };
    let half = 1.0 - DELTA;
    let xs: Vec<f64> = (0..=FIT_DEGREE)
        .map(|j| half * (std::f64::consts::PI * j as f64 / FIT_DEGREE as f64).cos())
        .collect();
    let u: Vec<f64> = xs.iter().map(|&x| dual_u(&g_eff, &local, x)).collect::<Result<_>>()?;
    let mut us = fit(&u);
    for _ in 0..spec.s {
        us = us.derivative().scale(1.0 / half);
    }
    let wu: Vec<f64> = xs.iter().map(|&x| params.weight(x) * us.eval(x / half)).collect();
    let mut v = fit(&wu);
    let m = spec.m();
    for _ in 0..m {
        v = v.derivative().scale(1.0 / half);
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let pts = grid.max(2);
    let res = (0..pts)
        .map(|i| {
            let x = half * (-1.0 + 2.0 * i as f64 / (pts - 1) as f64);
            (sign * v.eval(x / half) / params.weight(x) - g_eff.eval(x)).abs()
        })
        .fold(0.0f64, f64::max);
    Ok(res)
}

/// `(∫ u^{(s)} v^{(s−k)} w, ∫ g v w)`; for anchor +1 the right side carries `(−1)^k`.
pub fn pairing_check(g: &Func, v: &Func, spec: &DualSpec) -> Result<(f64, f64)> {
    let (s, m) = (spec.s, spec.m());
    v.require(m)?;
    let end = match spec.anchor {
        Anchor::Minus => -1.0,
        Anchor::Plus => 1.0,
    };
    for j in 0..m {
        let val = v.deriv(j, end)?;
        if val.abs() > 1e-8 {
            return Err(Error::PreconditionViolated(format!("v^({j})({end}) = {val:e} ≠ 0")));
        }
    }
    let (ge, p, dir) = resolved(g, spec);
    let solver = Solver::new(ge, p, s, spec.k, ORDERS[1])?;
    let vm = v.evaluator(m)?;
    // ∫ u^{(s)} v^{(m)} w dx = ∫ G_m v^{(m)} dx in the reflected frame
    let usign = if dir < 0.0 && s % 2 == 1 { -1.0 } else { 1.0 };
    let lhs = usign * integrate(|x| solver.inner(x).g[m] * vm(dir * x), -1.0, 1.0, 1e-12)?;
    let r = rule(crate::quadrature::DEFAULT_ORDER, spec.params)?;
    let ksign = if spec.anchor == Anchor::Plus && spec.k % 2 == 1 { -1.0 } else { 1.0 };
    let rhs = ksign * r.integrate(|x| g.eval(x) * v.eval(x));
    Ok((lhs, rhs))
}

/// `‖φ^{s−k} u^{(2s−k)}‖_{L^q(w)} / ‖g‖_{L^q(w)}`, `φ = √(1−x²)`.
pub fn ug_bound_ratio(g: &Func, spec: &DualSpec, qexp: f64) -> Result<f64> {
    let (ge, p, dir) = resolved(g, spec);
    let solver = Solver::new(ge, p, spec.s, spec.k, ORDERS[1])?;
    let m = spec.m();
    let top = |x: f64| {
        let xr = dir * x;
        let sign = if dir < 0.0 && (spec.s + m) % 2 == 1 { -1.0 } else { 1.0 };
        (1.0 - x * x).powf(0.5 * m as f64) * sign * solver.high(m, xr)
    };
    let num = if qexp.is_infinite() {
        let r = rule(128, spec.params)?;
        let grid = check_grid(crate::quadrature::DENSE_GRID);
        r.nodes
            .iter()
            .chain(grid[1..grid.len() - 1].iter())
            .fold(0.0f64, |a, &x| a.max(top(x).abs()))
    } else {
        let r = rule(128, spec.params)?;
        r.integrate(|x| top(x).abs().powf(qexp)).powf(1.0 / qexp)
    };
    let den = lp_norm_with(|x| g.eval(x), qexp, spec.params, 128)?;
    if den == 0.0 {
        return Ok(0.0);
    }
    if !num.is_finite() {
        return Err(Error::IntegralNotConverged(num));
    }
    Ok(num / den)
}
