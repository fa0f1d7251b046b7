use std::process::{Command, Output};

fn qfock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfock")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn bkl_prints_the_atypical_chain() {
    let out = qfock(&["bkl", "--shape", "1|1", "--tuple", "3|3", "--window", "0..3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "(1) M[3|3]\n(q) M[2|2]\n");

    let out = qfock(&["bkl", "--shape", "1|1", "--tuple", "3|3", "--window", "0..3", "--mode", "dual"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert!(stdout(&out).contains("(-q^-3) M[0|0]"));
}

#[test]
fn bkl_json_round_trips() {
    let out = qfock(&["bkl", "--shape", "2|0", "--tuple", "2,1", "--window", "1..2", "--json"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let shape = "2|0".parse().unwrap();
    let v = qfock::fock::FockVector::from_json(shape, &value["expansion"]).unwrap();
    let f = qfock::weightlat::SignedTuple::parse(shape, "2,1").unwrap();
    let g = qfock::weightlat::SignedTuple::parse(shape, "1,2").unwrap();
    assert!(v.coeff(&f).is_one());
    assert_eq!(v.coeff(&g), qfock::LaurentPoly::q());
}

#[test]
fn exit_codes() {
    let escape = qfock(&["bkl", "--shape", "1|1", "--tuple", "5|5", "--window", "0..3"]);
    assert_eq!(escape.status.code(), Some(3));
    let bad = qfock(&["bkl", "--shape", "1|1", "--tuple", "5", "--window", "0..3"]);
    assert_eq!(bad.status.code(), Some(1));
    let not_anti = qfock(&["qsym", "--shape", "2|0", "--parabolic", "s1", "--tuple", "2,1", "--window", "0..3"]);
    assert_eq!(not_anti.status.code(), Some(1));
    let ok = qfock(&["verify", "--suite", "hecke", "--max-size", "2", "--window", "0..2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).lines().all(|l| l.starts_with("ok")));
}

#[test]
fn qsym_bases() {
    let base = ["qsym", "--shape", "2|1", "--parabolic", "s1", "--tuple", "1,1|5", "--window", "0..5"];
    let n = qfock(&[&base[..], &["--basis", "N"]].concat());
    assert_eq!(stdout(&n).trim(), "[1,1|5] = (1)N[1,1|5]");
    let m = qfock(&[&base[..], &["--basis", "Mtilde"]].concat());
    assert_eq!(stdout(&m).trim(), "[1,1|5] = (q + q^-1)Mtilde[1,1|5]");
    let dual_zero = qfock(&["qsym", "--shape", "2|0", "--parabolic", "s1", "--tuple", "2,1", "--window", "0..3", "--dual"]);
    assert_eq!(stdout(&dual_zero).trim(), "0");
}

#[test]
fn char_tables() {
    let out = qfock(&["char", "--algebra", "gl(1|1)", "--weight", "0|0", "--window", "-2..2", "--kind", "simple", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    let mults: Vec<i64> = rows.iter().map(|r| r.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(mults.iter().filter(|&&m| m == 1).count(), 2);
    assert_eq!(mults.iter().filter(|&&m| m == -1).count(), 2);

    let out = qfock(&["char", "--algebra", "gl(1|2)", "--weight", "0|0,2", "--window", "-2..2", "--kind", "whittaker", "--json"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["meaning"], "standard-Whittaker");
    let delta = &value["rows"][0];
    assert_eq!(delta["object"], "Delta");
    assert_eq!(delta["entries"][0]["multiplicity"], 2);
}

#[test]
fn quiver_matches_golden() {
    let out = qfock(&["quiver", "--n", "2"]);
    let golden = include_str!("golden/quiver_gl12.txt");
    let tokens = |s: &str| s.split_whitespace().map(str::to_owned).collect::<Vec<_>>();
    assert_eq!(tokens(&stdout(&out)), tokens(golden));
}
