#![allow(dead_code)]

use jacobi_sobolev::poly::check_grid;

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Max over the check grid of `|f − g|`.
pub fn grid_diff(f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> f64 {
    check_grid(201).iter().fold(0.0f64, |m, &x| m.max((f(x) - g(x)).abs()))
}

pub fn grid_max(f: impl Fn(f64) -> f64) -> f64 {
    check_grid(201).iter().fold(0.0f64, |m, &x| m.max(f(x).abs()))
}

pub fn weight_grid() -> Vec<jacobi_sobolev::Params> {
    jacobi_sobolev::verify::weight_grid()
}
