mod common;

use common::{grid_diff, grid_max, rel};
use jacobi_sobolev::fourier::{expand, partial_sum, vallee_poussin, Eta};
use jacobi_sobolev::quadrature::Func;
use jacobi_sobolev::registry::registry;
use jacobi_sobolev::sobolev::*;
use jacobi_sobolev::special::{h_norm, jacobi_j, jacobi_j_poly, Params};
use jacobi_sobolev::{Error, Poly};

const LEG: Params = Params::raw(0.0, 0.0);

fn cfg(s: usize, theta: f64, p: Params) -> SobolevConfig {
    SobolevConfig::new(s, theta, p).unwrap()
}

#[test]
fn config_validation_aggregates() {
    let err = SobolevConfig::new(0, 2.0, Params::raw(-2.0, 0.0)).unwrap_err();
    let Error::InvalidParams(m) = err else { panic!() };
    assert!(m.contains("alpha") && m.contains("s must") && m.contains("theta"));
    assert!(cfg(2, 0.0, LEG).with_lambdas(vec![1.0, -1.0]).is_err());
}

#[test]
fn cj_examples() {
    let q = cj(2, &cfg(3, 0.0, LEG)).unwrap();
    assert!(grid_diff(|x| q.eval(x), |x| x * x / 2.0) < 1e-15);
    for p in [LEG, Params::raw(0.3, 0.7)] {
        for s in 1..=3 {
            let c = cfg(s, 0.4, p);
            for n in s..=40 {
                let d = cj(n, &c).unwrap().derivative_n(s);
                let j = |x: f64| jacobi_j(n - s, p, x).unwrap();
                assert!(grid_diff(|x| d.eval(x), j) <= 1e-10 * grid_max(j).max(1.0), "s={s} n={n}");
            }
        }
    }
    assert!(matches!(cj(300, &cfg(1, 0.0, LEG)), Err(Error::CapExceeded { .. })));
}

#[test]
fn theta_one_closed_form() {
    // 𝒥_n at θ = 1, α = 0 equals (−1)^s (n−s)!/n! (1−x)^s J_{n−s}^{s, β−s}
    let (s, n, beta) = (2usize, 5usize, 0.5);
    let q = cj(n, &cfg(s, 1.0, Params::raw(0.0, beta))).unwrap();
    let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    let closed = |x: f64| {
        fact(n - s) / fact(n) * (1.0 - x).powi(s as i32)
            * jacobi_sobolev::special::jacobi_j_extended(n - s, Params::raw(s as f64, beta - s as f64), x).unwrap()
    };
    assert!(grid_diff(|x| q.eval(x), closed) <= 1e-9 * grid_max(closed));
}

#[test]
fn anchor_conditions() {
    for theta in [-1.0, 0.0, 0.4, 1.0] {
        let c = cfg(3, theta, Params::raw(0.5, 0.0));
        for n in 0..10 {
            let q = cj(n, &c).unwrap();
            for k in 0..3 {
                let want = if k == n { 1.0 } else { 0.0 };
                assert!((q.derivative_n(k).eval(theta) - want).abs() < 1e-10, "θ={theta} n={n} k={k}");
            }
        }
    }
}

#[test]
fn inner_examples() {
    let one = Func::from_poly(&Poly::constant(1.0));
    assert!((sobolev_inner(&one, &one, &cfg(1, -1.0, LEG)).unwrap() - 1.0).abs() < 1e-15);
    let x = Func::from_poly(&Poly::identity());
    assert!((sobolev_inner(&x, &x, &cfg(1, 0.0, LEG)).unwrap() - 2.0).abs() < 1e-14);
}

#[test]
fn gram_matrix_diagonal() {
    let p = Params::raw(0.3, 0.7);
    let c = cfg(2, -1.0, p);
    let basis: Vec<Func> = (0..=12).map(|n| Func::from_poly(&cj(n, &c).unwrap())).collect();
    let diag: Vec<f64> = (0..=12).map(|n| if n < 2 { 1.0 } else { h_norm(n - 2, p) }).collect();
    let top = diag.iter().fold(0.0f64, |m, &v| m.max(v));
    for i in 0..=12 {
        for j in 0..=12 {
            let v = sobolev_inner(&basis[i], &basis[j], &c).unwrap();
            if i == j {
                assert!(rel(v, diag[i]) < 1e-9);
            } else {
                assert!(v.abs() <= 1e-10 * top);
            }
        }
    }
}

#[test]
fn expand_examples() {
    let theta = 0.3;
    let c = cfg(3, theta, LEG);
    let f = Func::from_poly(&Poly::taylor(&[0.0, 0.0, 1.0], theta));
    let ser = sobolev_expand(&f, 10, &c).unwrap();
    assert!((ser.taylor[0]).abs() < 1e-15 && ser.taylor[1].abs() < 1e-15 && (ser.taylor[2] - 1.0).abs() < 1e-15);
    assert!(ser.tail.normalized().iter().all(|v| v.abs() < 1e-14));

    let c = cfg(2, -1.0, Params::raw(0.5, 0.0));
    let m = 6;
    let ser = sobolev_expand(&Func::from_poly(&cj(m, &c).unwrap()), 12, &c).unwrap();
    assert!(ser.taylor.iter().all(|v| v.abs() < 1e-12));
    // orthonormal tail coefficients, relative to ‖J_{m−s}‖
    let unit = h_norm(m - 2, c.params).sqrt();
    for k in 0..=10 {
        let want = if k == m - 2 { unit } else { 0.0 };
        assert!((ser.tail.normalized()[k] - want).abs() < 1e-10 * unit, "k={k}");
    }
    assert!((ser.coeff(m) - 1.0).abs() < 1e-10);

    let e = registry("exp").unwrap().func;
    let ser = sobolev_expand(&e, 20, &cfg(1, -1.0, LEG)).unwrap();
    assert!(rel(ser.taylor[0], (-1f64).exp()) < 1e-15);
    let leg = expand(&e, 19, LEG).unwrap();
    for k in 0..=19 {
        assert!((ser.tail.coeff(k) - leg.coeff(k)).abs() <= 1e-13 * leg.coeff(0));
    }
}

#[test]
fn partial_sum_examples() {
    let p = Params::raw(0.3, -0.2);
    let c = cfg(2, 0.4, p);
    let q = jacobi_j_poly(6, p).unwrap().add(&Poly::new(vec![0.5, -1.0, 0.25]));
    let ser = sobolev_expand(&Func::from_poly(&q), 16, &c).unwrap();
    assert!(grid_diff(|x| sobolev_partial_sum(&ser, 8).unwrap().eval(x), |x| q.eval(x)) < 1e-11);

    let f = registry("runge").unwrap().func;
    let ser = sobolev_expand(&f, 30, &c).unwrap();
    let ds = sobolev_partial_sum_derivs(&ser, 20).unwrap();
    let ps = partial_sum(&ser.tail, 18).unwrap();
    assert!(grid_diff(|x| ds[2].eval(x), |x| ps.eval(x)) < 1e-10 * grid_max(|x| ps.eval(x)));

    let e = registry("exp").unwrap().func;
    let theta = 0.4;
    let ser = sobolev_expand(&e, 10, &cfg(3, theta, LEG)).unwrap();
    let t = sobolev_partial_sum(&ser, 1).unwrap();
    let et = theta.exp();
    assert!(grid_diff(|x| t.eval(x), |x| et * (1.0 + (x - theta))) < 1e-14);
    assert!(matches!(sobolev_partial_sum(&ser, 11), Err(Error::IndexRange { .. })));
}

#[test]
fn approximant_examples() {
    let p = Params::raw(0.5, 0.0);
    let c = cfg(2, -1.0, p);
    let eta = Eta::default();
    let q = Func::from_poly(&jacobi_j_poly(5, p).unwrap().add(&Poly::identity()));
    let v = approximant_v(&q, 6, &c, &eta).unwrap();
    assert!(grid_diff(|x| v.eval(x), |x| q.eval(x)) < 1e-11);

    let f = registry("runge").unwrap().func;
    let n = 10;
    let dv = approximant_v_derivs(&f, n, &c, &eta).unwrap();
    let f2 = f.derivative(2).unwrap();
    let vn = vallee_poussin(&expand(&f2, 2 * n, p).unwrap(), n, &eta).unwrap();
    let scale = grid_max(|x| f2.eval(x));
    assert!(grid_diff(|x| dv[2].eval(x), |x| vn.eval(x)) <= 1e-10 * scale);

    let e = registry("exp").unwrap().func;
    assert!(approximant_v(&e, 6, &c, &eta).unwrap().trim().degree() <= 14);
    assert!(matches!(approximant_v(&e, 200, &c, &eta), Err(Error::CapExceeded { .. })));
}

#[test]
fn taylor_remainder_examples() {
    let c = cfg(2, 0.0, LEG);
    let q = Poly::new(vec![1.0, 2.0, 3.0, 0.5]);
    let errs = taylor_remainder_error(&Func::from_poly(&q), &q, &c, 2.0).unwrap();
    assert!(errs.iter().all(|&e| e < 1e-13));

    let s = 1;
    let c = cfg(s, -1.0, LEG);
    let eta = Eta::default();
    let f = registry("endpoint:1.75").unwrap().func;
    let mut prev = f64::INFINITY;
    for n in [8, 16, 32] {
        let v = approximant_v(&f, n, &c, &eta).unwrap();
        let errs = taylor_remainder_error(&f, &v, &c, 2.0).unwrap();
        let fs = f.derivative(s).unwrap();
        let vn = vallee_poussin(&expand(&fs, 2 * n, LEG).unwrap(), n, &eta).unwrap();
        let direct = jacobi_sobolev::quadrature::lp_norm_with(|x| fs.eval(x) - vn.eval(x), 2.0, LEG, jacobi_sobolev::fourier::norm_order(2 * n + s)).unwrap();
        assert!(rel(errs[s], direct) < 1e-6);
        assert!(errs[0] < prev);
        prev = errs[0];
    }
}
