//! End-to-end tests of the `rpint` binary: exit codes, output formats and
//! round-trips through the serialized formats.

use std::path::PathBuf;
use std::process::{Command, Output};

use rpint_core::distribution::dirac_derivative;
use rpint_core::serial::{
    distribution_from_json, distribution_to_json, multiplier_to_json, piecewise_to_json,
};
use rpint_core::spaces::Multiplier;
use rpint_core::{rat, rat_i, PiecewiseFn, Rat};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rpint"))
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rpint-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn delta_file() -> PathBuf {
    write_temp("delta.json", &distribution_to_json(&dirac_derivative(0)))
}

#[test]
fn integrate_delta_against_shifted_ramp() {
    // g(0) = 1/2 for the ramp on [-1/2, 1/2]
    let m = Multiplier::from_bv(
        0,
        PiecewiseFn::clamped_ramp(rat(-1, 2), rat(1, 2)),
        Rat::from_integer(0.into()),
    )
    .unwrap();
    let mult = write_temp("ramp-mult.json", &multiplier_to_json(&m));
    let out = bin()
        .args(["integrate", "--dist"])
        .arg(delta_file())
        .arg("--mult")
        .arg(&mult)
        .args(["--lambda", "0"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("1/2"));
    assert!(text.contains("decimal: 0.5"));
}

#[test]
fn integrate_order_mismatch_exits_one() {
    let m = Multiplier::from_bv(
        1,
        PiecewiseFn::heaviside(Rat::from_integer(0.into())),
        Rat::from_integer(0.into()),
    )
    .unwrap();
    let mult = write_temp("h0-mult-order1.json", &multiplier_to_json(&m));
    let out = bin()
        .args(["integrate", "--dist"])
        .arg(delta_file())
        .arg("--mult")
        .arg(&mult)
        .args(["--lambda", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("OrderMismatch"), "{}", stderr(&out));
}

#[test]
fn integrate_point_interval() {
    let out = bin()
        .args(["integrate", "--dist"])
        .arg(delta_file())
        .args(["--interval", "{0}"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("1"));
}

#[test]
fn eval_heaviside_at_jump_and_infinity() {
    let f = write_temp(
        "h0.json",
        &piecewise_to_json(&PiecewiseFn::heaviside(Rat::from_integer(0.into()))),
    );
    let out = bin().args(["eval", "--fn"]).arg(&f).args(["--at", "0"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0");
    let out = bin().args(["eval", "--fn"]).arg(&f).args(["--at", "inf"]).output().unwrap();
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn norm_of_dirac_derivative_prints_enclosure() {
    let d = write_temp("ddelta.json", &distribution_to_json(&dirac_derivative(1)));
    let out = bin().args(["norm", "--dist"]).arg(&d).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "[1, 1]");
}

#[test]
fn product_of_delta_with_itself_roundtrips() {
    let d = delta_file();
    let out = bin()
        .args(["product", "--a"])
        .arg(&d)
        .arg("--b")
        .arg(&d)
        .output()
        .unwrap();
    assert!(out.status.success());
    let back = distribution_from_json(&stdout(&out)).unwrap();
    assert_eq!(back, dirac_derivative(0));
}

#[test]
fn lattice_join_with_zero() {
    let d = delta_file();
    let zero = write_temp(
        "zero.json",
        &distribution_to_json(&rpint_core::Distribution::zero(1)),
    );
    let out = bin()
        .args(["lattice", "--op", "join", "--a"])
        .arg(&d)
        .arg("--b")
        .arg(&zero)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let back = distribution_from_json(&stdout(&out)).unwrap();
    assert_eq!(back, dirac_derivative(0));
    assert!(stderr(&out).contains("exact: true"));

    // abs needs no second operand
    let out = bin().args(["lattice", "--op", "abs", "--a"]).arg(&d).output().unwrap();
    assert!(out.status.success());
    // join without --b is a domain error
    let out = bin().args(["lattice", "--op", "join", "--a"]).arg(&d).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reproduce_paper_is_deterministic_and_green() {
    let a = bin().arg("reproduce-paper").output().unwrap();
    let b = bin().arg("reproduce-paper").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "output must be byte-identical");
    let text = stdout(&a);
    assert!(text.starts_with("case,expected,computed,status"));
    assert!(text.contains("delta_pairing,1/2,1/2,PASS"));
    assert!(text.contains("dirac_norm_m3,1,1,PASS"));
    assert!(text.contains("lambda_dependence_n2_lam1_4,-1/4,-1/4,PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn shipped_data_files_work_end_to_end() {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    // box primitive: integral over [0, 1) telescopes to 1
    let out = bin()
        .args(["integrate", "--dist"])
        .arg(data.join("box.json"))
        .args(["--interval", "[0,1)"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().next(), Some("1"));

    // normalisation-dependent pairing from the shipped kernel
    let out = bin()
        .args(["integrate", "--dist"])
        .arg(data.join("ddelta.json"))
        .arg("--mult")
        .arg(data.join("step-kernel-quarter.json"))
        .args(["--lambda", "1/4"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().next(), Some("-1/4"));

    // meet of the triangle with the box stays within both
    let out = bin()
        .args(["lattice", "--op", "meet", "--a"])
        .arg(data.join("triangle.json"))
        .arg("--b")
        .arg(data.join("box.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let meet = distribution_from_json(&stdout(&out)).unwrap();
    let norm_out = bin()
        .args(["norm", "--dist"])
        .arg(data.join("triangle.json"))
        .output()
        .unwrap();
    assert_eq!(stdout(&norm_out).trim(), "[1, 1]");
    assert!(!meet.is_zero());

    for f in ["delta.json", "ddelta.json", "box.json", "triangle.json"] {
        let text = std::fs::read_to_string(data.join(f)).unwrap();
        distribution_from_json(&text).unwrap();
    }
}

#[test]
fn usage_errors_exit_two() {
    let out = bin().args(["integrate", "--no-such-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_one() {
    let bad = write_temp("bad.json", "{ not json");
    let out = bin()
        .args(["integrate", "--dist"])
        .arg(&bad)
        .args(["--interval", "full"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("Parse"));
    let _ = rat_i(0);
}
