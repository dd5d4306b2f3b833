//! Named test functions with exact derivatives.
//!
//! Ids: `exp`, `runge` (or `runge:c` for `1/(1+c x²)`), `endpoint:γ` (`(1−x)^γ`),
//! `left:γ` (`(1+x)^γ`), `interior:γ:x0` (`|x−x0|^γ`), `jacobi:n:a:b` (`J_n^{a,b}`),
//! `sharp:n:a:b:k` (`J_{n+1}^{a−k,b−k}`).

use crate::error::{Error, Result};
use crate::quadrature::{Eval, Func};
use crate::special::{jacobi_j_poly_extended, Params};
use num_complex::Complex64;
use std::sync::Arc;

/// Number of derivatives declared for closed-form entries.
pub const ORDER: usize = 8;

#[derive(Debug, Clone)]
pub struct TestFn {
    pub id: String,
    pub func: Func,
    pub note: String,
}

/// `γ(γ−1)···(γ−k+1)`.
fn falling(g: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (g - i as f64))
}

fn num(s: &str, id: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|_| Error::UnknownId(id.to_string()))
}

fn nat(s: &str, id: &str) -> Result<usize> {
    s.parse::<usize>().map_err(|_| Error::UnknownId(id.to_string()))
}

fn build(f: impl Fn(usize) -> Eval) -> Func {
    Func::from_evals((0..=ORDER).map(f).collect())
}

/// `1/(1+c x²)`: `Re[(−1)^k k! (i a)^k (1+i a x)^{−k−1}]` with `a = √c`.
fn runge(c: f64) -> Func {
    let a = c.sqrt();
    build(move |k| {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let lead = Complex64::new(0.0, a).powu(k as u32) * (sign * fact);
        Arc::new(move |x| (lead * Complex64::new(1.0, a * x).powi(-(k as i32) - 1)).re)
    })
}

pub fn registry(id: &str) -> Result<TestFn> {
    let parts: Vec<&str> = id.split(':').collect();
    let unknown = || Error::UnknownId(id.to_string());
    let (func, note) = match parts.as_slice() {
        ["exp"] => (build(|_| Arc::new(f64::exp)), "entire".to_string()),
        ["runge"] => (runge(25.0), "analytic, poles at ±i/5".to_string()),
        ["runge", c] => {
            let c = num(c, id)?;
            (runge(c), format!("analytic, poles at ±i/√{c}"))
        }
        ["endpoint", g] => {
            let g = num(g, id)?;
            let f = build(move |k| {
                let (c, sign) = (falling(g, k), if k % 2 == 0 { 1.0 } else { -1.0 });
                Arc::new(move |x: f64| sign * c * (1.0 - x).powf(g - k as f64))
            });
            (f, format!("algebraic singularity of order {g} at x = 1"))
        }
        ["left", g] => {
            let g = num(g, id)?;
            let f = build(move |k| {
                let c = falling(g, k);
                Arc::new(move |x: f64| c * (1.0 + x).powf(g - k as f64))
            });
            (f, format!("algebraic singularity of order {g} at x = −1"))
        }
        ["interior", g, x0] => {
            let (g, x0) = (num(g, id)?, num(x0, id)?);
            let f = build(move |k| {
                let c = falling(g, k);
                Arc::new(move |x: f64| {
                    let d = x - x0;
                    let sign = if d < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
                    sign * c * d.abs().powf(g - k as f64)
                })
            });
            (f, format!("algebraic singularity of order {g} at x = {x0}"))
        }
        ["jacobi", n, a, b] => {
            let p = jacobi_j_poly_extended(nat(n, id)?, Params::raw(num(a, id)?, num(b, id)?))?;
            (Func::from_poly(&p), "polynomial".to_string())
        }
        ["sharp", n, a, b, k] => {
            let (n, k) = (nat(n, id)?, nat(k, id)?);
            let (a, b) = (num(a, id)?, num(b, id)?);
            let p = jacobi_j_poly_extended(n + 1, Params::raw(a - k as f64, b - k as f64))?;
            (Func::from_poly(&p), "polynomial, extended parameters".to_string())
        }
        _ => return Err(unknown()),
    };
    Ok(TestFn { id: id.to_string(), func, note })
}
