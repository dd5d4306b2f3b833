mod common;

use common::{grid_diff, grid_max};
use jacobi_sobolev::connection::{a_printed, b_printed, finite_sum_closed, finite_sum_direct};
use jacobi_sobolev::experiments::fit_slope;
use jacobi_sobolev::fourier::{expand, partial_sum, vallee_poussin, Eta};
use jacobi_sobolev::quadrature::{gauss_jacobi, lp_norm, Func};
use jacobi_sobolev::sobolev::{approximant_v, cj, sobolev_expand, sobolev_partial_sum, SobolevConfig};
use jacobi_sobolev::special::{jacobi_j, jacobi_j_poly, jacobi_p, pochhammer, Params};
use jacobi_sobolev::Poly;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = Params> {
    (-0.9f64..2.0, -0.9f64..2.0).prop_map(|(a, b)| Params::raw(a, b))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-1.0f64..1.0, 1..=max_deg + 1).prop_map(Poly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derivative_identity(n in 1usize..50, p in params()) {
        let d = jacobi_j_poly(n, p).unwrap().derivative();
        let up = p.shifted(1.0);
        let rhs = |x: f64| jacobi_j(n - 1, up, x).unwrap();
        prop_assert!(grid_diff(|x| d.eval(x), rhs) <= 1e-9 * grid_max(rhs));
    }

    #[test]
    fn value_at_one(n in 0usize..40, p in params()) {
        let fact: f64 = (1..=n).map(|i| i as f64).product();
        let want = pochhammer(p.alpha + 1.0, n) / fact;
        prop_assert!((jacobi_p(n, p, 1.0).unwrap() - want).abs() <= 1e-12 * want.abs());
    }

    #[test]
    fn symmetric_weight_parity(n in 0usize..30, a in -0.9f64..2.0, x in -1.0f64..1.0) {
        let p = Params::raw(a, a);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let (l, r) = (jacobi_j(n, p, -x).unwrap(), sign * jacobi_j(n, p, x).unwrap());
        prop_assert!((l - r).abs() <= 1e-12 * l.abs().max(1e-3));
    }

    #[test]
    fn quadrature_exactness(m in 1usize..24, p in params(), seed in prop::collection::vec(-1.0f64..1.0, 48)) {
        let q = Poly::new(seed[..2 * m].to_vec());
        let exact = gauss_jacobi(80, p).unwrap().integrate(|x| q.eval(x));
        let approx = gauss_jacobi(m, p).unwrap().integrate(|x| q.eval(x));
        let scale = gauss_jacobi(80, p).unwrap().integrate(|x| q.eval(x).abs());
        prop_assert!((exact - approx).abs() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn nodes_interlace(m in 1usize..60, p in params()) {
        let a = gauss_jacobi(m, p).unwrap().nodes;
        let b = gauss_jacobi(m + 1, p).unwrap().nodes;
        for i in 0..m {
            prop_assert!(b[i] < a[i] && a[i] < b[i + 1]);
        }
    }

    #[test]
    fn joint_weight_shift_shrinks_l2_norm(p in params(), q in poly(12)) {
        let f = Func::from_poly(&q);
        let lo = lp_norm(&f, 2.0, p, 40).unwrap();
        let hi = lp_norm(&f, 2.0, p.shifted(1.0), 40).unwrap();
        prop_assert!(hi <= lo * (1.0 + 1e-12));
    }

    #[test]
    fn trimming_keeps_values(q in poly(40)) {
        let t = q.trim();
        prop_assert!(grid_diff(|x| q.eval(x), |x| t.eval(x)) <= 1e-13 * grid_max(|x| q.eval(x)).max(1e-300));
    }

    #[test]
    fn antiderivative_inverts_derivative(q in poly(30), theta in -1.0f64..1.0) {
        let back = q.antiderivative(theta).derivative();
        prop_assert!(grid_diff(|x| back.eval(x), |x| q.eval(x)) <= 1e-12 * grid_max(|x| q.eval(x)).max(1.0));
        prop_assert!(q.antiderivative(theta).eval(theta).abs() <= 1e-14);
    }

    #[test]
    fn projections_reproduce_polynomials(p in params(), q in poly(8)) {
        let f = Func::from_poly(&q);
        let c = expand(&f, 20, p).unwrap();
        let scale = grid_max(|x| q.eval(x)).max(1.0);
        prop_assert!(grid_diff(|x| partial_sum(&c, 8).unwrap().eval(x), |x| q.eval(x)) <= 1e-11 * scale);
        prop_assert!(grid_diff(|x| vallee_poussin(&c, 8, &Eta::default()).unwrap().eval(x), |x| q.eval(x)) <= 1e-11 * scale);
    }

    #[test]
    fn sobolev_operators_reproduce_polynomials(p in params(), q in poly(8), s in 1usize..4, theta in -1.0f64..1.0) {
        let cfg = SobolevConfig::new(s, theta, p).unwrap();
        let f = Func::from_poly(&q);
        // the tail is expanded from q^{(s)}, so its noise scales with the derivatives
        let scale = (0..=s).map(|k| { let d = q.derivative_n(k); grid_max(|x| d.eval(x)) }).fold(1.0, f64::max);
        let ser = sobolev_expand(&f, 16, &cfg).unwrap();
        prop_assert!(grid_diff(|x| sobolev_partial_sum(&ser, 8).unwrap().eval(x), |x| q.eval(x)) <= 1e-11 * scale);
        let v = approximant_v(&f, 8, &cfg, &Eta::default()).unwrap();
        prop_assert!(grid_diff(|x| v.eval(x), |x| q.eval(x)) <= 1e-11 * scale);
    }

    #[test]
    fn sobolev_anchor_data(p in params(), s in 1usize..4, theta in -1.0f64..1.0, n in 0usize..16) {
        let cfg = SobolevConfig::new(s, theta, p).unwrap();
        let q = cj(n, &cfg).unwrap();
        for k in 0..s {
            let want = if k == n { 1.0 } else { 0.0 };
            prop_assert!((q.derivative_n(k).eval(theta) - want).abs() <= 1e-10);
        }
    }

    #[test]
    fn printed_product_is_symmetric(p in params(), j in 0usize..40) {
        let v = a_printed(j + 1, p) * b_printed(j, p);
        let w = a_printed(j + 1, p.swapped()) * b_printed(j, p.swapped());
        prop_assert!((v - w).abs() <= 1e-12 * v.abs());
    }

    #[test]
    fn finite_sum_matches_closed_form(p in params(), n in 0usize..30, frac in 0.0f64..1.0) {
        let j = (frac * n as f64) as usize;
        let (d, c) = (finite_sum_direct(j, n, p), finite_sum_closed(j, n, p));
        prop_assert!((d - c).abs() <= 1e-11 * c.abs().max(1.0));
    }

    #[test]
    fn power_law_slope_recovered(e in -4.0f64..1.0, c in 0.1f64..10.0) {
        let ns = [8usize, 16, 32, 64, 128];
        let errs: Vec<f64> = ns.iter().map(|&n| c * (n as f64).powf(e)).collect();
        prop_assert!((fit_slope(&ns, &errs).unwrap().0 - e).abs() < 1e-10);
    }
}
