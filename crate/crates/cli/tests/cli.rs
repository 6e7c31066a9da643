use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;
use velu_dual::curve::Curve;
use velu_dual::ff::FieldContext;

const FIXTURE: [&str; 8] = ["--p", "5", "--a", "1", "--b", "0", "--kernel-gen", "0,0"];

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_velu-dual"))
        .args(args)
        .output()
        .expect("failed to start velu-dual");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn with_fixture<'a>(cmd: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend(FIXTURE);
    v.extend(extra);
    v
}

fn error_of(r: &Run) -> Value {
    serde_json::from_str(r.stderr.trim()).unwrap_or_else(|_| panic!("stderr: {}", r.stderr))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn velu_degree_two_example() {
    let r = run(&with_fixture("velu", &[]));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["degree"], 2);
    assert_eq!(v["r"]["den"], serde_json::json!([[0], [1]]));
    assert_eq!(
        v["codomain"],
        serde_json::json!({"p": 5, "k": 1, "a": [1], "b": [0]})
    );
}

#[test]
fn dual_certificate_is_verified() {
    let r = run(&with_fixture("dual", &[]));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["m"], 2);
}

#[test]
fn non_prime_characteristic_is_a_parse_error() {
    let r = run(&[
        "velu",
        "--p",
        "4",
        "--a",
        "1",
        "--b",
        "0",
        "--kernel-gen",
        "0,0",
    ]);
    assert_eq!(r.code, 2);
    let e = error_of(&r);
    assert_eq!(e["error"], "ParseError");
    assert_eq!(e["at"], "--p");
    assert!(e["message"].as_str().unwrap().contains("not prime"));
}

#[test]
fn out_of_range_digit_is_a_parse_error() {
    let r = run(&[
        "velu",
        "--p",
        "5",
        "--a",
        "7",
        "--b",
        "0",
        "--kernel-gen",
        "0,0",
    ]);
    assert_eq!(r.code, 2);
    assert_eq!(error_of(&r)["at"], "--a");
}

#[test]
fn kernel_forms_agree() {
    let from_gen = run(&with_fixture("velu", &[]));
    let from_poly = run(&[
        "velu",
        "--p",
        "5",
        "--a",
        "1",
        "--b",
        "0",
        "--kernel-poly",
        "0,1",
    ]);
    let from_points = run(&[
        "velu",
        "--p",
        "5",
        "--a",
        "1",
        "--b",
        "0",
        "--kernel-point",
        "0,0",
    ]);
    assert_eq!(from_poly.code, 0, "{}", from_poly.stderr);
    assert_eq!(from_gen.stdout, from_poly.stdout);
    assert_eq!(from_gen.stdout, from_points.stdout);
    let pretty = run(&[
        "velu",
        "--pretty",
        "--p",
        "5",
        "--a",
        "1",
        "--b",
        "0",
        "--kernel-poly",
        "0,1",
    ]);
    assert!(pretty.stdout.starts_with("kernel (2 points): O, (0, 0)"));
}

#[test]
fn kernel_poly_resolved_over_an_extension() {
    // the roots of x^2 + 2 live in F_25, but E(F_25) has order 32 and the
    // four points above them together with O are not a subgroup
    let r = run(&[
        "velu",
        "--p",
        "5",
        "--a",
        "1",
        "--b",
        "0",
        "--kernel-poly",
        "2,0,1",
    ]);
    assert_eq!(r.code, 1);
    assert_eq!(error_of(&r)["error"], "InvalidKernel");

    // the order-3 subgroup of y^2 = x^3 + 2 over F_5 has kernel polynomial x,
    // with points (0, ±sqrt 2) defined over F_25 only
    let r = run(&[
        "velu",
        "--p",
        "5",
        "--a",
        "0",
        "--b",
        "2",
        "--kernel-poly",
        "0,1",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["degree"], 3);
}

#[test]
fn kernel_flags_are_exclusive() {
    let r = run(&with_fixture("velu", &["--kernel-poly", "0,1"]));
    assert_eq!(r.code, 2);
    let r = run(&["velu", "--p", "5", "--a", "1", "--b", "0"]);
    assert_eq!(r.code, 2);
}

#[test]
fn singular_curve_is_a_math_failure() {
    let r = run(&[
        "velu",
        "--p",
        "5",
        "--a",
        "0",
        "--b",
        "0",
        "--kernel-gen",
        "0,0",
    ]);
    assert_eq!(r.code, 1);
    assert_eq!(error_of(&r)["error"], "SingularCurve");
}

#[test]
fn guard_rails() {
    let r = run(&[
        "velu",
        "--p",
        "1009",
        "--k",
        "2",
        "--a",
        "1,0",
        "--b",
        "0,0",
        "--kernel-gen",
        "0;0",
    ]);
    assert_eq!(r.code, 1);
    let e = error_of(&r);
    assert_eq!(e["error"], "FieldTooLarge");
    assert!(e["message"].as_str().unwrap().contains("desk-scale tool"));

    let ctx = FieldContext::new(53, 1).unwrap();
    let e = Curve::from_ints(&ctx, 2, 1).unwrap();
    let big = e
        .points()
        .unwrap()
        .into_iter()
        .find(|q| q.order() > 50)
        .expect("a point of order above 50");
    let (x, y) = big.coords().unwrap();
    let point = format!("{},{}", x.digits()[0], y.digits()[0]);
    let r = run(&[
        "velu",
        "--p",
        "53",
        "--a",
        "2",
        "--b",
        "1",
        "--kernel-gen",
        &point,
    ]);
    assert_eq!(r.code, 1);
    let e = error_of(&r);
    assert_eq!(e["error"], "SubgroupTooLarge");
    assert!(e["message"].as_str().unwrap().contains("desk-scale tool"));
}

#[test]
fn dual_then_verify_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let r = run(&with_fixture("dual", &["--out", path_str(&cert)]));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let r = run(&["verify", "--cert", path_str(&cert)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "{\"degree\":2,\"verified\":true}\n");
}

#[test]
fn tampered_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let r = run(&with_fixture("dual", &[]));
    let mut v: Value = serde_json::from_str(&r.stdout).unwrap();
    // replace the dual by phi itself, which is not its dual here
    v["dual"] = v["phi"].clone();
    fs::write(&cert, v.to_string()).unwrap();
    let r = run(&["verify", "--cert", path_str(&cert)]);
    assert_eq!(r.code, 1);
    let e = error_of(&r);
    assert_eq!(e["error"], "VerificationFailed");
}

#[test]
fn mismatched_pair_fails_with_dual_identity_message() {
    let dir = tempfile::tempdir().unwrap();
    let phi = dir.path().join("phi.json");
    let dual = dir.path().join("dual.json");
    let r = run(&with_fixture("velu", &["--out", path_str(&phi)]));
    assert_eq!(r.code, 0);
    // a map in the wrong direction between unrelated curves
    let r = run(&[
        "velu",
        "--p",
        "7",
        "--a",
        "3",
        "--b",
        "2",
        "--kernel-gen",
        "5,3",
        "--out",
        path_str(&dual),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = run(&["verify", "--phi", path_str(&phi), "--dual", path_str(&dual)]);
    assert_eq!(r.code, 1);
    assert!(error_of(&r)["message"]
        .as_str()
        .unwrap()
        .contains("dual identity failed"));

    // phi is not its own dual either
    let r = run(&["verify", "--phi", path_str(&phi), "--dual", path_str(&phi)]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("dual identity failed"));
}

#[test]
fn matching_pair_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cert = run(&with_fixture("dual", &[]));
    let v: Value = serde_json::from_str(&cert.stdout).unwrap();
    let phi = dir.path().join("phi.json");
    let dual = dir.path().join("dual.json");
    fs::write(&phi, v["phi"].to_string()).unwrap();
    fs::write(&dual, v["dual"].to_string()).unwrap();
    let r = run(&["verify", "--phi", path_str(&phi), "--dual", path_str(&dual)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn batch_verification_reports_each_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let mut certs = Vec::new();
    for args in [
        vec![
            "dual",
            "--p",
            "5",
            "--a",
            "1",
            "--b",
            "0",
            "--kernel-gen",
            "0,0",
        ],
        vec![
            "dual",
            "--p",
            "7",
            "--a",
            "3",
            "--b",
            "2",
            "--kernel-gen",
            "5,3",
        ],
        vec![
            "dual",
            "--p",
            "5",
            "--a",
            "1",
            "--b",
            "0",
            "--kernel-gen",
            "0,0",
            "--frobenius",
            "1",
        ],
    ] {
        let r = run(&args);
        assert_eq!(r.code, 0, "{}", r.stderr);
        certs.push(serde_json::from_str::<Value>(&r.stdout).unwrap());
    }
    let batch = dir.path().join("batch.json");
    fs::write(&batch, Value::Array(certs.clone()).to_string()).unwrap();
    let r = run(&["verify", "--batch", path_str(&batch)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["total"], 3);
    assert_eq!(v["verified"], 3);

    let mut bad = certs[1].clone();
    bad["dual"] = bad["phi"].clone();
    certs.push(bad);
    certs.push(serde_json::json!({"not": "a certificate"}));
    fs::write(&batch, Value::Array(certs).to_string()).unwrap();
    let r = run(&["verify", "--batch", path_str(&batch)]);
    assert_eq!(r.code, 1);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["verified"], 3);
    assert_eq!(v["results"][3]["verified"], false);
    assert_eq!(v["results"][4]["error"]["error"], "ParseError");
    assert_eq!(error_of(&r)["error"], "VerificationFailed");
}

#[test]
fn decompose_finds_frobenius_power() {
    let r = run(&with_fixture("decompose", &["--frobenius", "2"]));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["original_degree"], 50);
    assert_eq!(v["sep"]["degree"], 2);
}

#[test]
fn mul_map_matches_multiplier() {
    let r = run(&["mul-map", "--p", "7", "--a", "3", "--b", "2", "--m", "-3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["degree"], 9);
    let r = run(&["mul-map", "--p", "7", "--a", "3", "--b", "2", "--m", "0"]);
    assert_eq!(r.code, 1);
}

#[test]
fn eval_base_and_extension_points() {
    let r = run(&with_fixture("eval", &["--point", "2,0"]));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "{\"x\":[0],\"y\":[0]}\n");
    let r = run(&with_fixture("eval", &["--point", "0,0"]));
    assert_eq!(r.stdout, "\"infinity\"\n");
    let r = run(&with_fixture("eval", &["--point", "1,1"]));
    assert_eq!(r.code, 1);
    assert_eq!(error_of(&r)["error"], "NotOnCurve");

    // the first affine point of E(F_25), coordinates as digits over F_5[t]/(t^2 + 2)
    let mut hit = None;
    'scan: for x in 0..25u64 {
        for y in 1..25u64 {
            let point = format!("{},{};{},{}", x % 5, x / 5, y % 5, y / 5);
            let r = run(&with_fixture("eval", &["--point", &point]));
            if r.code == 0 {
                hit = Some((point, r.stdout));
                break 'scan;
            }
        }
    }
    let (point, image) = hit.expect("E(F_25) has affine points");
    let v: Value = serde_json::from_str(&image).unwrap();
    assert!(
        v == "infinity" || v["x"].as_array().unwrap().len() == 2,
        "{point}"
    );
}

#[test]
fn map_file_as_input() {
    let dir = tempfile::tempdir().unwrap();
    let phi = dir.path().join("phi.json");
    run(&with_fixture("velu", &["--out", path_str(&phi)]));
    let from_file = run(&["dual", "--map", path_str(&phi)]);
    let direct = run(&with_fixture("dual", &[]));
    assert_eq!(from_file.code, 0, "{}", from_file.stderr);
    assert_eq!(from_file.stdout, direct.stdout);

    fs::write(&phi, "{\"domain\": 3}").unwrap();
    let r = run(&["dual", "--map", path_str(&phi)]);
    assert_eq!(r.code, 2);
    assert_eq!(error_of(&r)["error"], "ParseError");
}

#[test]
fn pretty_dual_shows_pipeline_trace() {
    let r = run(&with_fixture("dual", &["--pretty"]));
    assert_eq!(r.code, 0);
    for needle in [
        "step 1",
        "n = 0",
        "e = 0",
        "c = 1, u = 1",
        "c = 2, u = 2",
        "lambda of degree 2",
        "step 7",
    ] {
        assert!(
            r.stdout.contains(needle),
            "missing {needle:?} in\n{}",
            r.stdout
        );
    }
}

#[test]
fn output_is_deterministic() {
    for cmd in ["velu", "dual", "decompose"] {
        let a = run(&with_fixture(cmd, &[]));
        let b = run(&with_fixture(cmd, &[]));
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
    let a = run(&with_fixture("dual", &["--pretty"]));
    let b = run(&with_fixture("dual", &["--pretty"]));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn extension_field_curve() {
    // y^2 = x^3 + t x over F_25: any rational 2-torsion point gives a kernel
    let r = run(&[
        "mul-map", "--p", "5", "--k", "2", "--a", "0,1", "--b", "0,0", "--m", "2",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = run(&[
        "velu",
        "--p",
        "5",
        "--k",
        "2",
        "--a",
        "0,1",
        "--b",
        "0,0",
        "--kernel-gen",
        "0,0;0,0",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["domain"]["k"], 2);
    let r = run(&[
        "dual",
        "--p",
        "5",
        "--k",
        "2",
        "--a",
        "0,1",
        "--b",
        "0,0",
        "--kernel-gen",
        "0,0;0,0",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(
        serde_json::from_str::<Value>(&r.stdout).unwrap()["verified"],
        true
    );
}
