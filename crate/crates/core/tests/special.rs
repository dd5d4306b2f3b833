mod common;

use common::{grid_diff, grid_max, rel};
use jacobi_sobolev::special::*;
use jacobi_sobolev::{Error, Poly};

const LEG: Params = Params::raw(0.0, 0.0);

#[test]
fn pochhammer_examples() {
    assert_eq!(pochhammer(3.7, 0), 1.0);
    assert_eq!(pochhammer(1.0, 4), 24.0);
    assert!((pochhammer(0.5, 2) - 0.75).abs() < 1e-15);
}

#[test]
fn ln_pochhammer_tracks_sign() {
    let (l, s) = ln_pochhammer(-2.5, 3);
    let direct = pochhammer(-2.5, 3);
    assert_eq!(s, direct.signum());
    assert!(rel(s * l.exp(), direct) < 1e-13);
}

#[test]
fn jacobi_p_examples() {
    assert_eq!(jacobi_p(0, Params::raw(0.4, -0.2), 0.3).unwrap(), 1.0);
    assert!(rel(jacobi_p(3, Params::raw(1.0, 0.0), 1.0).unwrap(), 4.0) < 1e-14);
    assert!((jacobi_p(2, LEG, 0.0).unwrap() + 0.5).abs() < 1e-15);
}

/// Terminating hypergeometric sum `(α+1)_n/n! · ₂F₁(−n, n+α+β+1; α+1; (1−x)/2)`, reflected
/// for `x < 0` so the argument stays in `[0, 1/2]`. Also returns `Σ|terms|` (its conditioning).
fn jacobi_p_hypergeometric(n: usize, p: Params, x: f64) -> (f64, f64) {
    if x < 0.0 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let (v, a) = jacobi_p_hypergeometric(n, p.swapped(), -x);
        return (sign * v, a);
    }
    let z = (1.0 - x) / 2.0;
    let (mut term, mut sum, mut abs) = (1.0, 1.0, 1.0);
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * (n as f64 + p.alpha + p.beta + 1.0 + kf) / ((p.alpha + 1.0 + kf) * (kf + 1.0)) * z;
        sum += term;
        abs += term.abs();
    }
    let lead = pochhammer(p.alpha + 1.0, n) / (1..=n).map(|i| i as f64).product::<f64>();
    (lead * sum, lead.abs() * abs)
}

#[test]
fn recurrence_matches_hypergeometric_sum() {
    let grid = jacobi_sobolev::poly::check_grid(201);
    for p in common::weight_grid() {
        for n in 0..=20 {
            let scale = grid.iter().fold(0.0f64, |m, &x| m.max(jacobi_p_hypergeometric(n, p, x).0.abs()));
            for &x in &grid {
                let (v, cond) = jacobi_p_hypergeometric(n, p, x);
                let d = (jacobi_p(n, p, x).unwrap() - v).abs();
                assert!(d <= 1e-12 * scale.max(cond), "n={n} {p:?} x={x}: {d:e}");
            }
        }
    }
}

#[test]
fn jacobi_j_examples() {
    assert_eq!(jacobi_j(0, Params::raw(0.7, 0.1), -0.7).unwrap(), 1.0);
    for x in [-0.9, -0.3, 0.0, 0.4, 0.8] {
        assert!((jacobi_j(1, LEG, x).unwrap() - x).abs() < 1e-15);
    }
    assert!(rel(jacobi_j(2, LEG, 1.0).unwrap(), 1.0 / 3.0) < 1e-14);
    for x in [-0.6, 0.25, 0.9] {
        assert!((jacobi_j(2, LEG, x).unwrap() - (x * x / 2.0 - 1.0 / 6.0)).abs() < 1e-15);
    }
}

#[test]
fn jacobi_j_poly_examples() {
    assert_eq!(jacobi_j_poly(0, LEG).unwrap().coeffs(), &[1.0]);
    let j1 = jacobi_j_poly(1, LEG).unwrap();
    assert!(j1.coeffs()[0].abs() < 1e-15 && (j1.coeffs()[1] - 1.0).abs() < 1e-15);
    // x²/2 − 1/6 = T_0/12 + T_2/4
    let j2 = jacobi_j_poly(2, LEG).unwrap();
    assert!((j2.coeffs()[0] - 1.0 / 12.0).abs() < 1e-15);
    assert!(j2.coeffs()[1].abs() < 1e-15);
    assert!((j2.coeffs()[2] - 0.25).abs() < 1e-15);
    assert!(matches!(jacobi_j_poly(N_MAX + 1, LEG), Err(Error::CapExceeded { .. })));
}

#[test]
fn jacobi_j_poly_matches_evaluation() {
    for p in common::weight_grid() {
        for n in [3, 17, 60, 150] {
            let q = jacobi_j_poly(n, p).unwrap();
            let scale = grid_max(|x| jacobi_j(n, p, x).unwrap());
            assert!(grid_diff(|x| q.eval(x), |x| jacobi_j(n, p, x).unwrap()) <= 1e-12 * scale);
        }
    }
}

#[test]
fn h_norm_examples() {
    assert!(rel(h_norm(0, LEG), 2.0) < 1e-15);
    assert!(rel(h_norm(1, LEG), 2.0 / 3.0) < 1e-14);
    assert!(rel(h_norm(0, Params::raw(1.0, 0.0)), 2.0) < 1e-14);
    let p = Params::raw(0.3, -0.4);
    let beta = (ln_gamma(1.3) + ln_gamma(0.6) - ln_gamma(1.9)).exp();
    assert!(rel(h_norm(0, p), 2f64.powf(0.9) * beta) < 1e-13);
}

#[test]
fn literal_h_differs_by_four_to_the_n() {
    for n in [1, 5, 20] {
        let ratio = h_norm(n, LEG) / h_norm_literal(n, LEG);
        assert!(rel(ratio, 4f64.powi(n as i32)) < 1e-12);
    }
    assert!(rel(h_norm_literal(1, LEG), 1.0 / 6.0) < 1e-14);
}

#[test]
fn deriv_poly_examples() {
    assert_eq!(Poly::constant(3.0).derivative().degree(), 0);
    assert_eq!(Poly::constant(3.0).derivative().eval(0.2), 0.0);
    assert_eq!(Poly::identity().derivative().eval(0.7), 1.0);
    let p = Params::raw(0.3, -0.2);
    let d = jacobi_j_poly(5, p).unwrap().derivative();
    let scale = grid_max(|x| jacobi_j(4, p.shifted(1.0), x).unwrap());
    assert!(grid_diff(|x| d.eval(x), |x| jacobi_j(4, p.shifted(1.0), x).unwrap()) <= 1e-12 * scale);
}

#[test]
fn value_at_one_and_symmetry() {
    for p in common::weight_grid() {
        for n in [1, 4, 9, 30] {
            let v = pochhammer(p.alpha + 1.0, n) / (1..=n).map(|i| i as f64).product::<f64>();
            assert!(rel(jacobi_p(n, p, 1.0).unwrap(), v) < 1e-12);
        }
    }
    let p = Params::raw(0.3, 0.3);
    for n in 0..12 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let d = grid_diff(|x| jacobi_j(n, p, -x).unwrap(), |x| sign * jacobi_j(n, p, x).unwrap());
        assert!(d < 1e-12);
    }
}

#[test]
fn n_fold_derivative_is_one() {
    for p in common::weight_grid() {
        for n in [1, 10, 30] {
            let d = jacobi_j_poly(n, p).unwrap().derivative_n(n);
            assert!((d.eval(0.3) - 1.0).abs() < 1e-9, "n={n} {p:?}");
        }
    }
}

#[test]
fn extended_parameters_raise_only_on_exact_zero() {
    // (n+α+β+1)_n vanishes for α = β = −1, n = 1
    assert!(jacobi_j_extended(21, Params::raw(-1.0, -1.0), 0.3).unwrap().is_finite());
    assert!(Params::new(-1.0, 0.0).is_err());
}
