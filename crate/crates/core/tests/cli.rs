use jacobi_sobolev::cli::{execute, parse_args, Command, RunConfig, UsageError};
use jacobi_sobolev::experiments::Operator;
use jacobi_sobolev::verify::Suite;
use std::process::Command as Proc;

const BIN: &str = env!("CARGO_BIN_EXE_jacobi-sobolev");

fn parse(args: &str) -> Result<RunConfig, UsageError> {
    parse_args(std::iter::once("jacobi-sobolev").chain(args.split_whitespace()))
}

fn invalid(args: &str) -> String {
    match parse(args) {
        Err(UsageError::Invalid(m)) => m,
        other => panic!("expected a validation error, got {other:?}"),
    }
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Proc::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scratch_dir(tag: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("js-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn rates_preset_arguments_parse() {
    let c = parse("rates --fn endpoint:3.75 --alpha 0 --beta 0 --s 1 --theta -1 --op calV --ns 8,16,32,64,128 --p 2")
        .unwrap();
    assert_eq!(c.command, Command::Rates);
    assert_eq!(c.fid, "endpoint:3.75");
    assert_eq!((c.params.alpha, c.params.beta, c.s, c.theta, c.pexp), (0.0, 0.0, 1, -1.0, 2.0));
    assert_eq!(c.op, Operator::CalV);
    assert_eq!(c.ns, vec![8, 16, 32, 64, 128]);
}

#[test]
fn bad_alpha_is_a_usage_error() {
    assert!(invalid("rates --alpha -1.5").contains("alpha must exceed -1"));
}

#[test]
fn validation_errors_are_aggregated() {
    let m = invalid("approx --alpha -2 --beta -3 --theta 4 --p 0.5 --fn nope --op W");
    for part in ["alpha", "beta", "theta", "p must", "unknown function id", "unknown operator"] {
        assert!(m.contains(part), "{part} missing from {m}");
    }
}

#[test]
fn verify_all_selects_every_suite() {
    let c = parse("verify all --seed 42").unwrap();
    assert_eq!(c.command, Command::Verify(Suite::ALL.to_vec()));
    assert_eq!(c.seed, 42);
    assert_eq!(parse("verify").unwrap().command, Command::Verify(Suite::ALL.to_vec()));
    assert!(invalid("verify everything").contains("unknown suite"));
}

#[test]
fn defaults_are_the_safe_regime() {
    let c = parse("rates").unwrap();
    assert_eq!((c.params.alpha, c.params.beta, c.theta, c.s, c.pexp), (0.0, 0.0, -1.0, 1, 2.0));
    assert_eq!(c.fid, "endpoint:1.75");
    assert_eq!(parse("rates --p inf").unwrap().pexp, f64::INFINITY);
}

#[test]
fn flags_override_config_file_and_preset() {
    let dir = scratch_dir("cfg");
    let path = dir.join("c.json");
    std::fs::write(&path, r#"{"preset": "k-gap", "alpha": 0.5, "beta": 0.25, "p": "inf"}"#).unwrap();
    let c = parse(&format!("rates --config {} --beta 0", path.display())).unwrap();
    assert_eq!(c.fid, "endpoint:3.75");
    assert_eq!((c.params.alpha, c.params.beta, c.pexp), (0.5, 0.0, f64::INFINITY));
    std::fs::write(&path, r#"{"alpha": 0.5, "colour": 1}"#).unwrap();
    assert!(invalid(&format!("rates --config {}", path.display())).contains("config"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn execute_eval_and_quad() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    assert_eq!(execute(&parse("eval --n 2 --x 1").unwrap(), &mut out, &mut err), 0);
    let text = String::from_utf8(out).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert!(text.starts_with("n,alpha,beta,x,J,P,h\n2,0,0,1,"));
    assert!((row[4].parse::<f64>().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(row[5], "1.0000000000000000e0");
    let mut out = Vec::new();
    assert_eq!(execute(&parse("quad --n 2").unwrap(), &mut out, &mut err), 0);
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,node,weight");
    assert_eq!(lines.len(), 3);
    let node: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((node - 1.0 / 3f64.sqrt()).abs() < 1e-15);
}

#[test]
fn expand_csv_columns() {
    let (code, out, _) = run(&["expand", "--fn", "exp", "--n", "5"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "k,coeff,h_k,tail_energy");
    assert_eq!(lines.len(), 7);
}

#[test]
fn binary_exit_codes() {
    let (code, _, err) = run(&["rates", "--alpha", "-1.5"]);
    assert_eq!(code, 2);
    assert!(err.contains("alpha must exceed -1"));
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    let (code, out, _) = run(&["verify", "core", "--paper-literal-h"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
}

#[test]
fn rates_out_writes_csv_json_and_plot() {
    let dir = scratch_dir("out");
    let csv = dir.join("r.csv");
    let (code, out, _) = run(&[
        "rates", "--fn", "exp", "--ns", "8,10,12", "--op", "calS", "--out", csv.to_str().unwrap(), "--plot-script",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("\"slopes\""));
    let body = std::fs::read_to_string(&csv).unwrap();
    assert!(body.starts_with("fn,operator,alpha,beta,s,theta,p,n,k,error,ratio\n"));
    assert!(csv.with_extension("json").exists() && csv.with_extension("gp").exists());
    assert_eq!(run(&["rates", "--plot-script"]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["rates", "--fn", "runge", "--ns", "8,16,24", "--theta", "0.4"];
    let one = Proc::new(BIN).args(args).env("JACOBI_SOBOLEV_THREADS", "1").output().unwrap();
    let four = Proc::new(BIN).args(args).env("JACOBI_SOBOLEV_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}
