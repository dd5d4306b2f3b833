mod common;

use common::{grid_diff, rel};
use jacobi_sobolev::experiments::*;
use jacobi_sobolev::registry::registry;
use jacobi_sobolev::sobolev::SobolevConfig;
use jacobi_sobolev::special::{jacobi_j, jacobi_j_extended, Params};
use jacobi_sobolev::Error;

const LEG: Params = Params::raw(0.0, 0.0);
const NS: [usize; 5] = [8, 16, 32, 64, 128];

#[test]
fn registry_examples() {
    assert_eq!(registry("exp").unwrap().func.eval(0.0), 1.0);
    assert!(rel(registry("endpoint:1.75").unwrap().func.eval(-1.0), 2f64.powf(1.75)) < 1e-15);
    assert!(rel(registry("runge").unwrap().func.eval(0.2), 0.5) < 1e-15);
    let g = registry("sharp:20:0:0:1").unwrap().func;
    let d = grid_diff(|x| g.deriv(1, x).unwrap(), |x| jacobi_j(20, LEG, x).unwrap());
    assert!(d <= 1e-9);
    assert!(grid_diff(|x| g.eval(x), |x| jacobi_j_extended(21, Params::raw(-1.0, -1.0), x).unwrap()) < 1e-12);
    for bad in ["nope", "endpoint:x", "jacobi:2:0"] {
        assert!(matches!(registry(bad), Err(Error::UnknownId(_))));
    }
}

#[test]
fn registry_derivatives_match_finite_differences() {
    let h = 1e-5;
    for id in ["exp", "runge", "endpoint:3.75", "left:2.5", "interior:3.5:0.3", "jacobi:6:0.5:-0.2"] {
        let f = registry(id).unwrap().func;
        for k in 0..3 {
            for x in [-0.7, -0.1, 0.55] {
                let fd = (f.deriv(k, x + h).unwrap() - f.deriv(k, x - h).unwrap()) / (2.0 * h);
                let exact = f.deriv(k + 1, x).unwrap();
                assert!((fd - exact).abs() <= 1e-5 * exact.abs().max(1.0), "{id} k={k} x={x}");
            }
        }
    }
}

#[test]
fn fit_slope_examples() {
    let ns: Vec<usize> = NS.to_vec();
    let e: Vec<f64> = ns.iter().map(|&n| (n as f64).powi(-2)).collect();
    let (s, _) = fit_slope(&ns, &e).unwrap();
    assert!((s + 2.0).abs() < 1e-12);
    let e: Vec<f64> = ns.iter().map(|&n| 3.0 * (n as f64).powf(-0.5)).collect();
    assert!((fit_slope(&ns, &e).unwrap().0 + 0.5).abs() < 1e-12);
    let e: Vec<f64> =
        ns.iter().enumerate().map(|(i, &n)| (1.0 + if i % 2 == 0 { 0.01 } else { -0.01 }) / n as f64).collect();
    let s = fit_slope(&ns, &e).unwrap().0;
    assert!((-1.02..=-0.98).contains(&s));
    assert!(matches!(fit_slope(&ns[..2], &e[..2]), Err(Error::TooFewPoints(2))));
}

#[test]
fn polynomial_is_reproduced_by_every_operator() {
    let cfg = SobolevConfig::new(1, -1.0, Params::raw(0.5, 0.0)).unwrap();
    for op in [Operator::S, Operator::V, Operator::CalS, Operator::CalV] {
        let r = run_rates("jacobi:5:0:0", &cfg, op, &[6, 8, 12], 2.0).unwrap();
        assert!(r.errors.iter().flatten().all(|&e| e <= 1e-11), "{}", op.name());
    }
    let r = suboptimality_study("jacobi:4:0:0", LEG, 2, &[6, 8]).unwrap();
    assert!(r.errors.iter().flatten().all(|&e| e <= 1e-11));
}

#[test]
fn operators_parse() {
    for name in ["S", "V", "calS", "calV"] {
        assert_eq!(name.parse::<Operator>().unwrap().name(), name);
    }
    assert!("W".parse::<Operator>().is_err());
}

#[test]
fn sharpness_examples() {
    assert!(sharpness_identity(12, 0, LEG).unwrap().relative() <= 1e-11);
    assert!(sharpness_identity(12, 1, LEG).unwrap().relative() <= 1e-8);
    assert!(sharpness_identity(16, 2, Params::raw(0.5, 0.0)).unwrap().relative() <= 1e-7);
}

#[test]
fn empty_report_emits_header_only() {
    let r = RateReport::empty("empty");
    assert_eq!(report_csv(&r), "fn,operator,alpha,beta,s,theta,p,n,k,error,ratio\n");
    let v: serde_json::Value = serde_json::from_str(&report_json(&r)).unwrap();
    assert_eq!(v["label"], "empty");
    assert_eq!(v["slopes"].as_array().unwrap().len(), 0);
    assert_eq!(v["pass"], false);
    let dir = std::env::temp_dir().join(format!("js-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.csv");
    emit_report(&r, &path).unwrap();
    assert!(path.with_extension("json").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_deterministic() {
    let cfg = SobolevConfig::new(1, 0.4, LEG).unwrap();
    let a = run_rates("endpoint:1.75", &cfg, Operator::CalV, &[8, 16, 32], 2.0).unwrap();
    let b = run_rates("endpoint:1.75", &cfg, Operator::CalV, &[8, 16, 32], 2.0).unwrap();
    assert_eq!(report_csv(&a), report_csv(&b));
    assert_eq!(report_json(&a), report_json(&b));
}

#[test]
fn json_pass_reflects_thresholds() {
    let cfg = SobolevConfig::new(1, -1.0, LEG).unwrap();
    let r = run_rates("endpoint:1.75", &cfg, Operator::CalV, &NS, 2.0).unwrap();
    let bounded = (-0.2..=0.2).contains(&r.ratio_slope);
    let gaps = r.gaps().iter().enumerate().all(|(k, g)| (g - k as f64).abs() <= 0.3);
    assert_eq!(r.pass, bounded && gaps);
    let v: serde_json::Value = serde_json::from_str(&report_json(&r)).unwrap();
    assert_eq!(v["pass"], r.pass);
}

#[test]
fn error_components_decrease() {
    let cfg = SobolevConfig::new(1, -1.0, LEG).unwrap();
    let r = run_rates("endpoint:1.75", &cfg, Operator::CalV, &[8, 16, 32], 2.0).unwrap();
    for k in 0..=1 {
        assert!(r.errors.windows(2).all(|w| w[1][k] < w[0][k]));
    }
}

#[test]
fn plot_script_mentions_every_order() {
    let cfg = SobolevConfig::new(2, -1.0, LEG).unwrap();
    let r = run_rates("exp", &cfg, Operator::CalS, &[8, 10, 12], 2.0).unwrap();
    let s = plot_script(&r, std::path::Path::new("out.csv"));
    assert!(s.contains("k=0") && s.contains("k=1") && s.contains("k=2"));
}
