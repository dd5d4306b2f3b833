mod common;

use common::{grid_diff, grid_max, rel};
use jacobi_sobolev::connection::*;
use jacobi_sobolev::fourier::{expand, CoeffSeq};
use jacobi_sobolev::quadrature::{inner, Func};
use jacobi_sobolev::registry::registry;
use jacobi_sobolev::special::{h_norm, jacobi_j, jacobi_j_poly, Params};
use jacobi_sobolev::Poly;

const LEG: Params = Params::raw(0.0, 0.0);

#[test]
fn tau_examples() {
    assert!(rel(tau(1, LEG).unwrap(), 1.0 / 6.0) < 1e-15);
    assert!(rel(tau(1, Params::raw(0.0, -0.5)).unwrap(), 2.0 / 15.0) < 1e-15);
    assert_eq!(tau(1, Params::raw(0.5, -1.0)).unwrap(), 0.0);
    assert_eq!(tau_normalized(3, LEG).unwrap(), 2.0 * tau(3, LEG).unwrap());
}

#[test]
fn promotion_examples() {
    let p = Params::raw(0.3, 0.7);
    for (which, up) in [(Promote::Alpha, Params::raw(1.3, 0.7)), (Promote::Beta, Params::raw(0.3, 1.7))] {
        let (c0, c1) = promote(4, p, which).unwrap();
        for i in 0..9 {
            let x = -1.0 + i as f64 / 4.0;
            let rhs = c0 * jacobi_j(4, up, x).unwrap() + c1 * jacobi_j(3, up, x).unwrap();
            assert!((jacobi_j(4, p, x).unwrap() - rhs).abs() < 1e-11);
        }
    }
    let (c0, c1) = promote(1, LEG, Promote::Alpha).unwrap();
    let up = Params::raw(1.0, 0.0);
    assert!(grid_diff(|x| x, |x| c0 * jacobi_j(1, up, x).unwrap() + c1) < 1e-15);
}

/// Connection row for small `n`, and `J_n^{α,β}` rebuilt from `J^{α+1,β+1}` by α- then β-promotion.
#[test]
fn composed_promotion_matches_connection_row() {
    let p = Params::raw(0.3, -0.2);
    let up = p.shifted(1.0);
    for n in 1..=6 {
        let row = conn_coeffs(n, p).unwrap();
        let lhs = |x: f64| jacobi_j(n, up, x).unwrap();
        let rhs = |x: f64| (0..=n).map(|j| row.values[j] * jacobi_j(j, p, x).unwrap()).sum::<f64>();
        assert!(grid_diff(lhs, rhs) < 1e-12 * grid_max(lhs));
        let (a0, a1) = promote(n, p, Promote::Alpha).unwrap();
        let mid = Params::raw(p.alpha + 1.0, p.beta);
        let (b0, b1) = promote(n, mid, Promote::Beta).unwrap();
        let (c0, c1) = promote(n - 1, mid, Promote::Beta).unwrap();
        let composed = |x: f64| {
            let jn = jacobi_j(n, up, x).unwrap();
            let jn1 = jacobi_j(n - 1, up, x).unwrap();
            let jn2 = if n >= 2 { jacobi_j(n - 2, up, x).unwrap() } else { 0.0 };
            a0 * (b0 * jn + b1 * jn1) + a1 * (c0 * jn1 + c1 * jn2)
        };
        assert!(grid_diff(|x| jacobi_j(n, p, x).unwrap(), composed) < 1e-12);
    }
}

#[test]
fn conn_coeffs_examples() {
    for p in common::weight_grid() {
        assert!((conn_coeffs(0, p).unwrap().values[0] - 1.0).abs() < 1e-14);
    }
    assert!(conn_coeffs(4, Params::raw(1.0, 0.0)).unwrap().values[1] < 0.0);
    let up = Func::from_poly(&jacobi_j_poly(3, Params::raw(1.0, 1.0)).unwrap());
    let row = conn_coeffs(3, LEG).unwrap();
    for j in 0..=3usize {
        let jj = Func::from_poly(&jacobi_j_poly(j, LEG).unwrap());
        let proj = inner(&up, &jj, LEG, 16).unwrap() / h_norm(j, LEG);
        assert!((proj - row.values[j]).abs() < 1e-13);
    }
}

#[test]
fn connection_expansion_to_degree_40() {
    for p in common::weight_grid() {
        for n in [10, 25, 40] {
            let row = conn_coeffs(n, p).unwrap();
            let up = jacobi_j_poly(n, p.shifted(1.0)).unwrap();
            let sum = (0..=n).fold(Poly::zero(), |acc, j| acc.add(&jacobi_j_poly(j, p).unwrap().scale(row.values[j])));
            let scale = grid_max(|x| up.eval(x));
            assert!(grid_diff(|x| up.eval(x), |x| sum.eval(x)) <= 1e-9 * scale, "{p:?} n={n}");
        }
    }
}

#[test]
fn printed_product_identity() {
    // the printed coefficients satisfy A_{j+1}B_j = 2j+α+β+3 with the swap symmetric
    for p in common::weight_grid() {
        for j in 0..20 {
            let v = a_printed(j + 1, p) * b_printed(j, p);
            assert!(rel(v, 2.0 * j as f64 + p.alpha + p.beta + 3.0) < 1e-12);
            let swap = a_printed(j + 1, p.swapped()) * b_printed(j, p.swapped());
            assert!(rel(v, swap) < 1e-12);
        }
    }
}

#[test]
fn finite_sum_identity() {
    for p in common::weight_grid() {
        for n in 0..=30 {
            for j in 0..=n {
                let (d, c) = (finite_sum_direct(j, n, p), finite_sum_closed(j, n, p));
                assert!((d - c).abs() <= 1e-11 * c.abs().max(1.0), "{p:?} j={j} n={n}");
            }
        }
    }
}

#[test]
fn sigma_tails_examples() {
    let p = Params::raw(0.5, -0.3);
    let c = expand(&Func::from_poly(&jacobi_j_poly(3, p).unwrap()), 20, p).unwrap();
    let exact = CoeffSeq::from_normalized(p, c.normalized().iter().map(|&v| if v.abs() < 1e-12 { 0.0 } else { v }).collect());
    assert_eq!(sigma_tails(&exact, 3).unwrap(), (0.0, 0.0));
    for j in 0..5 {
        let mut e = vec![0.0; 24];
        e[j + 1] = h_norm(j + 1, p).sqrt();
        let c = CoeffSeq::from_normalized(p, e);
        let (s1, s2) = sigma_tails(&c, j).unwrap();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        assert!(rel(s1, sign * b_coef(j, p)) < 1e-12);
        assert!(rel(s2, b_coef(j, p.swapped())) < 1e-12);
    }
}

#[test]
fn sigma_closed_form_and_recurrence() {
    let p = Params::raw(0.3, -0.2);
    let q = p.swapped();
    let f = registry("runge:4").unwrap().func;
    let c = expand(&f, 120, p).unwrap();
    let g = expand(&f.derivative(1).unwrap(), 120, p).unwrap();
    for j in 0..6 {
        let (s1, s2) = sigma_tails(&c, j).unwrap();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let c1 = sign * b_coef(j, p) * (g.coeff(j) - d_coef(j, p) * g.coeff(j + 1));
        let c2 = b_coef(j, q) * (g.coeff(j) + d_coef(j, q) * g.coeff(j + 1));
        assert!(rel(s1, c1) < 1e-9 && rel(s2, c2) < 1e-9, "j={j}");
        let (t1, t2) = sigma_tails(&c, j + 1).unwrap();
        let fj = c.coeff(j + 1);
        let scale = s1.abs().max(s2.abs());
        assert!((t1 - (s1 - sign * fj * b_coef(j, p))).abs() <= 1e-11 * scale);
        assert!((t2 - (s2 - fj * b_coef(j, q))).abs() <= 1e-11 * scale);
    }
}

#[test]
fn main_lemma_examples() {
    let p = Params::raw(0.5, 0.0);
    let q = Func::from_poly(&jacobi_j_poly(6, p).unwrap().add(&Poly::identity()));
    assert!(main_lemma_residual(&q, 8, p).unwrap() < 1e-11);
    let f = registry("exp").unwrap().func;
    assert!(main_lemma_residual(&f, 12, p).unwrap() <= 1e-8 * 1f64.exp());
    let left = registry("left:4.5").unwrap().func;
    let scale = 4.5 * 2f64.powf(3.5);
    assert!(main_lemma_residual(&left, 10, LEG).unwrap() <= 1e-7 * scale);
}
