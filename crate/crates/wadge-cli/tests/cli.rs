use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use wadge::coding::{nat, pair, unpair};
use wadge::complete_sets::{c_xi_member, h_member, ConstructionTerm};
use wadge::descriptions::{lift, normalize, Desc};
use wadge::ordinals::Ord;
use wadge::sequences::{rho0_pow, BitSeq};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
    json: Value,
}

fn wadge(args: &[&str]) -> Run {
    let path: PathBuf = std::env::temp_dir().join(format!(
        "wadge-cli-{}-{}.json",
        std::process::id(),
        args.join("_").replace(|c: char| !c.is_ascii_alphanumeric(), "")
    ));
    let out = Command::new(env!("CARGO_BIN_EXE_wadge"))
        .args(args)
        .arg("--json")
        .arg(&path)
        .output()
        .expect("spawn wadge");
    let json = std::fs::read_to_string(&path).map_or(Value::Null, |s| serde_json::from_str(&s).expect("json report"));
    let _ = std::fs::remove_file(&path);
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        json,
    }
}

#[test]
fn pair_prints_code() {
    let r = wadge(&["code", "pair", "0", "1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "2");
    assert_eq!(r.json["ok"], true);
    assert_eq!(r.json["result"], pair(&nat(0), &nat(1)).to_string());
    assert_eq!(r.json["command"][0], "code");
}

#[test]
fn unpair_matches_library() {
    let r = wadge(&["code", "unpair", "123456789012345678901234567890"]);
    let (a, b) = unpair(&"123456789012345678901234567890".parse().unwrap());
    assert_eq!(r.code, 0);
    assert_eq!(r.json["result"], serde_json::json!([a.to_string(), b.to_string()]));
}

#[test]
fn tree_verify_passes() {
    let r = wadge(&["tree", "verify", "--d", "2", "--max-l", "8"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let levels = r.json["result"]["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 9);
    assert_eq!(levels[8]["size"], 255);
}

#[test]
fn malformed_description_is_positioned() {
    let r = wadge(&["desc", "validate", "u(2; 0, z ; rep=neg(0))"]);
    assert_eq!(r.code, 2);
    let lines: Vec<&str> = r.stderr.lines().collect();
    assert!(lines[0].starts_with("error: invalid description"), "{}", r.stderr);
    assert_eq!(lines[1], "  u(2; 0, z ; rep=neg(0))");
    assert_eq!(lines[2], format!("  {}^", " ".repeat(8)));
    assert_eq!(r.json["ok"], false);
    assert_eq!(r.json["exit_code"], 2);
}

#[test]
fn malformed_numbers_exit_two() {
    assert_eq!(wadge(&["code", "pair", "x", "1"]).code, 2);
    assert_eq!(wadge(&["ord", "add", "w+", "1"]).code, 2);
    assert_eq!(wadge(&["seq", "eval", "fm(0;", "1"]).code, 2);
    assert_eq!(wadge(&["levels", "check", "0,1;0"]).code, 2);
    assert_eq!(wadge(&["frobnicate"]).code, 2);
}

#[test]
fn runtime_errors_exit_one() {
    let r = wadge(&["ord", "sub", "1", "w"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error:"));
}

#[test]
fn ordinals_match_library() {
    let r = wadge(&["ord", "add", "w+1", "w^2"]);
    let v = "w+1".parse::<Ord>().unwrap().add(&"w^2".parse().unwrap());
    assert_eq!(r.json["result"], v.to_string());
    let r = wadge(&["ord", "classify", "w+3"]);
    assert_eq!(r.json["result"]["kind"], "successor");
    assert_eq!(r.json["result"]["predecessor"], "w+2");
}

#[test]
fn rho_matches_library() {
    let a: BitSeq = "ep(0110;10)".parse().unwrap();
    let eta: Ord = "2".parse().unwrap();
    let r = wadge(&["seq", "rho", "ep(0110;10)", "--eta", "2", "--window", "32"]);
    assert_eq!(r.code, 0);
    let b = rho0_pow(&eta, &a).unwrap();
    let w: String = b.window(32).unwrap().iter().map(|&x| if x { '1' } else { '0' }).collect();
    assert_eq!(r.json["result"]["seq"], b.to_string());
    assert_eq!(r.json["result"]["window"], w);
}

#[test]
fn descriptions_match_library() {
    let u: Desc = "neg(neg(u(1; 0; rep=0)))".parse().unwrap();
    let r = wadge(&["desc", "normalize", "neg(neg(u(1; 0; rep=0)))"]);
    assert_eq!(r.json["result"], normalize(&u).unwrap().to_string());
    let r = wadge(&["desc", "lift", "u(1;0;rep=0)", "--eta", "2"]);
    let v = lift(&"u(1;0;rep=0)".parse().unwrap(), &"2".parse().unwrap()).unwrap();
    assert_eq!(r.json["result"], v.to_string());
}

#[test]
fn membership_matches_library() {
    for (term, seq) in [("d(z)", "fm(0;3)"), ("L(2; s(z; rep=d(z)))", "ep(1;01)"), ("z", "fm(1;)")] {
        let t: ConstructionTerm = term.parse().unwrap();
        let want = h_member(&t, &seq.parse().unwrap()).unwrap();
        let r = wadge(&["eval", "h", "--term", term, "--seq", seq]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.json["result"], want, "{term} {seq}");
    }
    let want = c_xi_member(&"2".parse().unwrap(), &"fm(0;1)".parse().unwrap()).unwrap();
    assert_eq!(wadge(&["eval", "cxi", "--xi", "2", "--seq", "fm(0;1)"]).json["result"], want);
}

#[test]
fn levels_check_reports_agreement() {
    let r = wadge(&["levels", "check", "0,1;0,2;1,1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["result"]["agrees"], true);
}

#[test]
fn selector_conditions_hold() {
    let r = wadge(&["selector", "build", "--d", "2", "--depth", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["result"]["entries"].as_array().unwrap().len(), 15);
    assert!(r.json["result"]["check"].is_null());
}

#[test]
fn shift_system_check_passes() {
    let r = wadge(&["shiftsys", "check", "--nmax", "3", "--window", "64", "--trials", "10"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.json["result"]["identity"].as_array().unwrap().len(), 6);
}
