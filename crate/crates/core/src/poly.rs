//! Polynomials on `[-1, 1]` in the Chebyshev-T basis.

use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<f64>,
}

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for v in it {
        let t = s + v;
        if s.abs() >= v.abs() {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    s + c
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        if coeffs.is_empty() {
            return Poly::zero();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        Poly { coeffs: vec![c] }
    }

    pub fn identity() -> Self {
        Poly { coeffs: vec![0.0, 1.0] }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        let c = &self.coeffs;
        if c.len() == 1 {
            return c[0];
        }
        let (mut b1, mut b2) = (0.0, 0.0);
        for &ck in c[1..].iter().rev() {
            let b = ck + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b;
        }
        c[0] + x * b1 - b2
    }

    pub fn derivative(&self) -> Poly {
        let n = self.degree();
        if n == 0 {
            return Poly::zero();
        }
        let c = &self.coeffs;
        let mut d = vec![0.0; n + 2];
        for k in (1..=n).rev() {
            d[k - 1] = d[k + 1] + 2.0 * k as f64 * c[k];
        }
        d[0] *= 0.5;
        d.truncate(n);
        Poly { coeffs: d }
    }

    pub fn derivative_n(&self, k: usize) -> Poly {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative `F` with `F' = self` and `F(anchor) = 0`.
    pub fn antiderivative(&self, anchor: f64) -> Poly {
        let c = &self.coeffs;
        let n = c.len();
        let at = |k: usize| if k < n { c[k] } else { 0.0 };
        let mut out = vec![0.0; n + 1];
        out[1] = at(0) - 0.5 * at(2);
        for k in 2..=n {
            out[k] = (at(k - 1) - at(k + 1)) / (2.0 * k as f64);
        }
        let mut p = Poly { coeffs: out };
        p.coeffs[0] = -p.eval(anchor);
        p
    }

    /// `k`-fold antiderivative, each anchored at `anchor`.
    pub fn antiderivative_n(&self, k: usize, anchor: f64) -> Poly {
        (0..k).fold(self.clone(), |p, _| p.antiderivative(anchor))
    }

    /// `(x - θ)·p`.
    pub fn mul_linear(&self, theta: f64) -> Poly {
        let c = &self.coeffs;
        let n = c.len();
        let mut out = vec![0.0; n + 1];
        for (k, &ck) in c.iter().enumerate() {
            out[k] -= theta * ck;
            if k == 0 {
                out[1] += ck;
            } else {
                out[k + 1] += 0.5 * ck;
                out[k - 1] += 0.5 * ck;
            }
        }
        Poly { coeffs: out }
    }

    /// `Σ_k d_k (x-θ)^k / k!`.
    pub fn taylor(derivs: &[f64], theta: f64) -> Poly {
        let mut p = Poly::zero();
        for k in (0..derivs.len()).rev() {
            let fact: f64 = (1..=k).map(|i| i as f64).product();
            p = p.mul_linear(theta).add(&Poly::constant(derivs[k] / fact));
        }
        p.truncated(derivs.len().max(1) - 1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &Vec<f64>, k: usize| v.get(k).copied().unwrap_or(0.0);
        Poly { coeffs: (0..n).map(|k| get(&self.coeffs, k) + get(&other.coeffs, k)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, a: f64) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| a * c).collect() }
    }

    /// Keeps coefficients `0..=deg`.
    pub fn truncated(mut self, deg: usize) -> Poly {
        self.coeffs.truncate(deg + 1);
        self
    }

    /// Drops trailing coefficients below `1e-14·max|c|`.
    pub fn trim(&self) -> Poly {
        let m = self.coeffs.iter().fold(0.0f64, |a, c| a.max(c.abs()));
        let mut c = self.coeffs.clone();
        while c.len() > 1 && c.last().map_or(false, |v| v.abs() <= 1e-14 * m) {
            c.pop();
        }
        Poly { coeffs: c }
    }

    /// Interpolates `f` at the `M+1` Chebyshev extrema, `M = max(2n, 32)`,
    /// keeping the coefficients of degree `≤ n`.
    pub fn interpolate<F: Fn(f64) -> f64>(f: F, n: usize) -> Poly {
        let m = (2 * n).max(32);
        let vals: Vec<f64> = (0..=m).map(|j| f((PI * j as f64 / m as f64).cos())).collect();
        Poly::from_extrema_values(&vals, n)
    }

    /// Discrete cosine reconstruction from samples at `cos(πj/M)`, `j = 0..=M`.
    pub fn from_extrema_values(vals: &[f64], n: usize) -> Poly {
        let m = vals.len() - 1;
        let table: Vec<f64> = (0..2 * m).map(|i| (PI * i as f64 / m as f64).cos()).collect();
        let keep = n.min(m);
        let mut coeffs = Vec::with_capacity(keep + 1);
        for k in 0..=keep {
            let s = compensated_sum((0..=m).map(|j| {
                let w = if j == 0 || j == m { 0.5 } else { 1.0 };
                w * vals[j] * table[(j * k) % (2 * m)]
            }));
            let mut ck = 2.0 * s / m as f64;
            if k == 0 || k == m {
                ck *= 0.5;
            }
            coeffs.push(ck);
        }
        Poly { coeffs }
    }

    pub fn max_abs_on(&self, grid: &[f64]) -> f64 {
        grid.iter().fold(0.0f64, |a, &x| a.max(self.eval(x).abs()))
    }
}

/// Uniform check grid on `[-1, 1]` with endpoints.
pub fn check_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect()
}
