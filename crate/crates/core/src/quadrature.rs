//! Gauss–Jacobi rules, weighted norms and adaptive Gauss–Kronrod panels.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::special::{Params, Recurrence};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub type Eval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function on `[-1, 1]` with exact derivatives up to [`Func::order`].
#[derive(Clone)]
pub struct Func {
    derivs: Vec<Eval>,
}

impl std::fmt::Debug for Func {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Func(order {})", self.order())
    }
}

impl Func {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Func { derivs: vec![Arc::new(f)] }
    }

    pub fn from_evals(derivs: Vec<Eval>) -> Self {
        assert!(!derivs.is_empty());
        Func { derivs }
    }

    /// Appends the next derivative.
    pub fn with_derivative(mut self, d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.derivs.push(Arc::new(d));
        self
    }

    /// A polynomial with all derivatives declared (zero beyond its degree, up to order 16).
    pub fn from_poly(p: &Poly) -> Self {
        let top = p.degree().max(16);
        let mut derivs: Vec<Eval> = Vec::with_capacity(top + 1);
        let mut q = p.clone();
        for _ in 0..=top {
            let c = q.clone();
            derivs.push(Arc::new(move |x| c.eval(x)));
            q = q.derivative();
        }
        Func { derivs }
    }

    pub fn zero() -> Self {
        Func::from_poly(&Poly::zero())
    }

    pub fn order(&self) -> usize {
        self.derivs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.derivs[0])(x)
    }

    pub fn require(&self, k: usize) -> Result<()> {
        if k > self.order() {
            Err(Error::MissingDerivative { order: k, declared: self.order() })
        } else {
            Ok(())
        }
    }

    pub fn deriv(&self, k: usize, x: f64) -> Result<f64> {
        self.require(k)?;
        Ok((self.derivs[k])(x))
    }

    pub fn evaluator(&self, k: usize) -> Result<Eval> {
        self.require(k)?;
        Ok(self.derivs[k].clone())
    }

    /// The `k`-th derivative as a function, carrying the remaining derivatives.
    pub fn derivative(&self, k: usize) -> Result<Func> {
        self.require(k)?;
        Ok(Func { derivs: self.derivs[k..].to_vec() })
    }

    /// `a·self + b·other`, with the common derivative order.
    pub fn combine(&self, a: f64, other: &Func, b: f64) -> Func {
        let m = self.order().min(other.order());
        let derivs = (0..=m)
            .map(|k| {
                let (f, g) = (self.derivs[k].clone(), other.derivs[k].clone());
                Arc::new(move |x| a * f(x) + b * g(x)) as Eval
            })
            .collect();
        Func { derivs }
    }

    /// `x ↦ self(−x)` with derivatives.
    pub fn reflected(&self) -> Func {
        let derivs = self
            .derivs
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let f = f.clone();
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                Arc::new(move |x: f64| sign * f(-x)) as Eval
            })
            .collect();
        Func { derivs }
    }
}

/// Gauss–Jacobi nodes (increasing) and weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub params: Params,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        crate::poly::compensated_sum(self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)))
    }

    /// `Σ_i w_i v(i)` for values already tabulated at the nodes.
    pub fn integrate_values(&self, v: impl Fn(usize) -> f64) -> f64 {
        crate::poly::compensated_sum(self.weights.iter().enumerate().map(|(i, &w)| w * v(i)))
    }

    /// Rule for `∫_a^b g(x) (b-x)^α (x-a)^β dx`, i.e. mapped with the weight rescaled.
    pub fn mapped(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let h = 0.5 * (b - a);
        let scale = h.powf(self.params.alpha + self.params.beta + 1.0);
        let x = self.nodes.iter().map(|&u| a + h * (1.0 + u)).collect();
        let w = self.weights.iter().map(|&w| w * scale).collect();
        (x, w)
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix (diagonal `d`, sub-diagonal `e[1..]`)
/// by implicit QL with Wilkinson shifts.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    if n > 0 {
        e[n - 1] = 0.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenFailure(n));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Golub–Welsch rule of order `m`, nodes Newton-polished, weights from the Christoffel function.
pub fn gauss_jacobi(m: usize, p: Params) -> Result<QuadRule> {
    p.validate()?;
    if m == 0 {
        return Err(Error::PreconditionViolated("quadrature order must be at least 1".into()));
    }
    let rec = Recurrence::new(p, m);
    let mut d: Vec<f64> = rec.b[..m].to_vec();
    let mut e: Vec<f64> = rec.s[..m].to_vec();
    tridiagonal_eigenvalues(&mut d, &mut e)?;
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for x in d.iter_mut() {
        for _ in 0..3 {
            let (q, dq) = rec.eval_with_derivative(m, *x);
            if dq == 0.0 || !dq.is_finite() {
                break;
            }
            let step = q / dq;
            let nx = *x - step;
            if !(nx > -1.0 && nx < 1.0) {
                break;
            }
            *x = nx;
            if step.abs() <= 1e-17 {
                break;
            }
        }
    }
    let mut q = vec![0.0; m];
    let weights = d
        .iter()
        .map(|&x| {
            rec.eval_all(x, &mut q);
            1.0 / crate::poly::compensated_sum(q.iter().map(|v| v * v))
        })
        .collect();
    Ok(QuadRule { params: p, nodes: d, weights })
}

fn cache() -> &'static Mutex<HashMap<(u64, u64, usize), Arc<QuadRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64, usize), Arc<QuadRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared, memoized [`gauss_jacobi`].
pub fn rule(m: usize, p: Params) -> Result<Arc<QuadRule>> {
    let key = (p.alpha.to_bits(), p.beta.to_bits(), m);
    if let Some(r) = cache().lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let r = Arc::new(gauss_jacobi(m, p)?);
    cache().lock().unwrap().insert(key, r.clone());
    Ok(r)
}

pub const DENSE_GRID: usize = 4096;

/// Default order for expansion and norm work.
pub const DEFAULT_ORDER: usize = crate::special::N_MAX + 16;

pub fn inner(f: &Func, g: &Func, p: Params, m: usize) -> Result<f64> {
    let r = rule(m, p)?;
    Ok(r.integrate(|x| f.eval(x) * g.eval(x)))
}

/// Weighted `L^p` norm of a closure; `pexp = ∞` samples nodes and a dense grid with ±1.
pub fn lp_norm_with(f: impl Fn(f64) -> f64, pexp: f64, p: Params, m: usize) -> Result<f64> {
    let r = rule(m, p)?;
    if pexp.is_infinite() {
        let grid = crate::poly::check_grid(DENSE_GRID);
        let mx = r.nodes.iter().chain(grid.iter()).fold(0.0f64, |a, &x| a.max(f(x).abs()));
        return Ok(mx);
    }
    if pexp == 2.0 {
        return Ok(r.integrate(|x| f(x).powi(2)).sqrt());
    }
    Ok(r.integrate(|x| f(x).abs().powf(pexp)).powf(1.0 / pexp))
}

pub fn lp_norm(f: &Func, pexp: f64, p: Params, m: usize) -> Result<f64> {
    lp_norm_with(|x| f.eval(x), pexp, p, m)
}

/// `(Σ_k ‖f^{(k)}‖^p)^{1/p}` over `k = 0..=s`; max for `p = ∞`.
pub fn wps_norm(f: &Func, s: usize, pexp: f64, p: Params) -> Result<f64> {
    f.require(s)?;
    let mut norms = Vec::with_capacity(s + 1);
    for k in 0..=s {
        let d = f.evaluator(k)?;
        norms.push(lp_norm_with(|x| d(x), pexp, p, DEFAULT_ORDER)?);
    }
    Ok(combine_lp(&norms, pexp))
}

pub fn combine_lp(norms: &[f64], pexp: f64) -> f64 {
    if pexp.is_infinite() {
        norms.iter().fold(0.0f64, |a, &v| a.max(v))
    } else {
        norms.iter().map(|v| v.powf(pexp)).sum::<f64>().powf(1.0 / pexp)
    }
}

/// Both sides of the weighted Hardy inequality:
/// `‖∫_{-1}^x |f|‖_{L^p(w)}` and `‖f‖_{L^p(w)}`.
pub fn hardy_check(f: &Func, pexp: f64, p: Params, m: usize) -> Result<(f64, f64)> {
    let r = rule(m, p)?;
    let mut cumulative = Vec::with_capacity(r.order());
    let (mut acc, mut left) = (0.0, -1.0);
    for &x in &r.nodes {
        acc += integrate(|t| f.eval(t).abs(), left, x, 1e-12)?;
        cumulative.push(acc);
        left = x;
    }
    let lhs = crate::poly::compensated_sum(
        cumulative.iter().zip(&r.weights).map(|(v, w)| w * v.abs().powf(pexp)),
    )
    .powf(1.0 / pexp);
    let rhs = lp_norm(f, pexp, p, m)?;
    Ok((lhs, rhs))
}

const GK_X: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GK_WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = GK_WK[7] * fc;
    let mut g = GK_WG[3] * fc;
    for i in 0..7 {
        let dx = h * GK_X[i];
        let s = f(c - dx) + f(c + dx);
        k += GK_WK[i] * s;
        if i % 2 == 1 {
            g += GK_WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Globally adaptive Gauss–Kronrod 7/15 on `[a, b]` with relative tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (v, e) = gk15(&f, a, b);
    let mut panels = vec![(a, b, v, e)];
    for _ in 0..4000 {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        let mass: f64 = panels.iter().map(|p| p.2.abs()).sum();
        if err <= tol * total.abs() || err <= 1e-14 * mass {
            return Ok(crate::poly::compensated_sum(panels.iter().map(|p| p.2)));
        }
        let (i, _) = panels
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, p)| if p.3 > best.1 { (i, p.3) } else { best });
        let (pa, pb, _, _) = panels.swap_remove(i);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            break;
        }
        let (v1, e1) = gk15(&f, pa, mid);
        let (v2, e2) = gk15(&f, mid, pb);
        panels.push((pa, mid, v1, e1));
        panels.push((mid, pb, v2, e2));
    }
    let total: f64 = panels.iter().map(|p| p.2).sum();
    let err: f64 = panels.iter().map(|p| p.3).sum();
    if err <= 1e3 * tol * total.abs().max(1e-300) {
        Ok(total)
    } else {
        Err(Error::IntegralNotConverged(err))
    }
}
