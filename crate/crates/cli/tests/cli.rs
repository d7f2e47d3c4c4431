//! End-to-end runs of the `rscodes` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rscodes")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("rscodes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gf8_table_csv() {
    let expected = "power,label,polynomial,tuple,inverse_power\n\
                    1,2,X,010,6\n\
                    2,4,X^2,001,5\n\
                    3,3,1+X,110,4\n\
                    4,6,X+X^2,011,3\n\
                    5,7,1+X+X^2,111,2\n\
                    6,5,1+X^2,101,1\n\
                    7,1,1,100,0\n";
    assert_eq!(stdout(&["gf", "table"]), expected);
    assert_eq!(stdout(&["gf", "table", "--poly", "1+X+X^3"]), expected);
}

#[test]
fn gf_rejects_non_primitive_polynomial() {
    let out = run(&["gf", "table", "--m", "3", "--poly", "1+X^3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rs_encode_then_decode_single_error() {
    let enc = stdout(&["rs", "encode", "--n", "7", "--k", "3", "--info", "1,2,3"]);
    let cw: Vec<u32> = enc.lines().nth(1).unwrap().split(',').nth(1).unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
    let mut r = cw.clone();
    r[4] ^= 5;
    let word = r.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    let dec = stdout(&["rs", "decode", "--n", "7", "--k", "3", "--word", &word, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&dec).unwrap();
    assert_eq!(v["status"], "corrected");
    assert_eq!(v["info"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["error_positions"], serde_json::json!([4]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["rs", "encode", "--n", "7", "--k", "3", "--info", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["rs", "decode", "--n", "7", "--k", "3", "--word", "1,2,3,4,5,6,7"]).status.code(), Some(3));
    assert_eq!(run(&["sim", "aloha", "--set", "bogus=1"]).status.code(), Some(2));
    assert_eq!(run(&["constrained", "rll", "--decode", "0101"]).status.code(), Some(3));
    assert_eq!(run(&["sim", "ber", "--set", "scheme=\"nope\""]).status.code(), Some(2));
}

#[test]
fn simulation_is_deterministic_per_seed() {
    let args = ["sim", "aloha", "--set", "slots=20000", "--seed", "7"];
    assert_eq!(stdout(&args), stdout(&args));
    let other = stdout(&["sim", "aloha", "--set", "slots=20000", "--seed", "8"]);
    assert_ne!(stdout(&args), other);
}

#[test]
fn sweep_rows_and_empty_grid() {
    let out = stdout(&["sim", "aloha", "--set", "slots=1000", "--sweep", "load", "--grid", "0.5:1.5:0.5"]);
    assert_eq!(out.lines().count(), 4);
    let empty = run(&["sim", "aloha", "--sweep", "load", "--grid", ""]);
    assert!(empty.status.success());
    assert_eq!(String::from_utf8(empty.stdout).unwrap().lines().count(), 1);
}

#[test]
fn json_parameter_file_and_set_precedence() {
    let p = tmp("titlebaum.json");
    std::fs::write(&p, r#"{"m": 8, "t": 4, "l": 4, "trials": 500}"#).unwrap();
    let out = stdout(&["sim", "titlebaum", "--json", p.to_str().unwrap(), "--set", "t=2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["params"]["M"], 8.0);
    assert_eq!(v["params"]["T"], 2.0);
}

#[test]
fn output_file() {
    let p = tmp("eval.csv");
    stdout(&["eval", "capacity", "--model", "waterfill", "--out", p.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&p).unwrap(), "channel,power\n0,6\n1,4\n");
}

#[test]
fn constrained_commands() {
    assert_eq!(stdout(&["constrained", "rll", "--encode", "4,0"]), "stream\n0011000011\n");
    assert_eq!(stdout(&["constrained", "rll", "--decode", "0000111000"]), "messages\n4 2\n");
    let avoid = stdout(&[
        "constrained", "avoid", "--n", "7", "--k", "3", "--window", "5", "--kappa", "2", "--forbidden", "7", "--info", "0,3",
    ]);
    assert_eq!(avoid, "info,suitable_controls,codeword\n0 3,2;3;5;6,0 3 2 1 1 0 2\n");
    let odp = stdout(&["constrained", "odp", "--n", "7", "--k", "3"]);
    assert!(odp.lines().nth(1).unwrap().starts_with("5 6 7,"));
}

#[test]
fn defect_write_read() {
    let w = stdout(&["defects", "write", "--variant", "two-defect", "--info", "1101000", "--defects", "??????????", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&w).unwrap();
    let stored: String = v["stored"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    let r = stdout(&["defects", "read", "--variant", "two-defect", "--stored", &stored]);
    assert!(r.trim_end().ends_with(",1 1 0 1 0 0 0"));
    let sweep = stdout(&["defects", "sweep", "--variant", "one-defect", "--set", "n=5"]);
    assert!(sweep.contains("one-defect,5,4,1,1,"));
}

#[test]
fn vault_enroll_and_authenticate() {
    let rec = tmp("record.json");
    let template = "1 2 3 4 5 6 7 8 9 10 11 12 13 14 15";
    stdout(&["vault", "enroll", "--scheme", "syndrome", "--template", template, "--format", "json", "--out", rec.to_str().unwrap()]);
    let ok = stdout(&["vault", "auth", "--record", rec.to_str().unwrap(), "--template", "1 2 3 4 5 6 7 8 9 10 11 12 13 14 0"]);
    assert!(ok.lines().nth(1).unwrap().starts_with("accept"));
    let far = stdout(&["vault", "auth", "--record", rec.to_str().unwrap(), "--template", "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0"]);
    assert!(far.lines().nth(1).unwrap().starts_with("reject"));
}

#[test]
fn noise_samples_are_seeded() {
    let a = stdout(&["noise", "middleton", "--count", "5", "--seed", "3"]);
    assert_eq!(a, stdout(&["noise", "middleton", "--count", "5", "--seed", "3"]));
    assert_eq!(a.lines().count(), 6);
}
