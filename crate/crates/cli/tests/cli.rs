use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use shuffle_core::algebra::{parse_combination, LinComb};
use shuffle_core::biword::Biword;

fn shuffle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shuffle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = shuffle(args);
    assert_eq!(o.status.code(), Some(0), "{:?}: {}", args, stderr(&o));
    stdout(&o).trim_end().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("shuffle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn column(table: &str, header: &str) -> Vec<String> {
    let mut lines = table.lines();
    let idx = lines
        .next()
        .unwrap()
        .split_whitespace()
        .position(|h| h == header)
        .unwrap();
    lines
        .map(|l| l.split_whitespace().nth(idx).unwrap().to_string())
        .collect()
}

#[test]
fn products() {
    assert_eq!(
        ok(&["product", "biword-prec", "12|ab", "21|cd"]),
        "1243|abcd + 1423|acbd + 1432|acdb"
    );
    assert_eq!(
        ok(&["product", "biword-succ", "12|ab", "21|cd"]),
        "4123|cabd + 4132|cadb + 4312|cdab"
    );
    assert_eq!(ok(&["product", "shuffle", "a", ""]), "a");
    assert_eq!(ok(&["product", "internal", "312|111", "132|111"]), "213|111");
    assert_eq!(ok(&["product", "internal", "12|11", "1|2"]), "0");
    assert_eq!(ok(&["product", "word-prec", "ab", "c"]), "abc + acb");
    assert_eq!(ok(&["product", "star", "1|1", "1"]), "1|1");
}

#[test]
fn coproducts() {
    assert_eq!(ok(&["coproduct", "prec", "3142|abcd"]), "21|ab ⊗ 21|cd + 213|abc ⊗ 1|d");
    assert_eq!(ok(&["coproduct", "succ", "3142|abcd"]), "1|a ⊗ 132|bcd");
    assert_eq!(ok(&["coproduct", "deconcat", "ab"]), "1 ⊗ ab + a ⊗ b + ab ⊗ 1");
    assert_eq!(ok(&["coproduct", "full", "1|1"]), "1 ⊗ 1|1 + 1|1 ⊗ 1");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let o = shuffle(&["product", "biword-prec", "12|11", "21|1x"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("position 4"), "{}", err);
    assert!(err.contains("    ^"), "{}", err);
    assert_eq!(shuffle(&["product", "nonsense", "a", "b"]).status.code(), Some(2));
    assert_eq!(
        shuffle(&["product", "biword-prec", "12|11", "2*"]).status.code(),
        Some(2)
    );
}

#[test]
fn dims_tables() {
    assert_eq!(
        column(&ok(&["dims", "6", "--descd"]), "descd"),
        ["1", "3", "10", "36", "137", "543"]
    );
    assert_eq!(
        column(&ok(&["dims", "5", "--prim"]), "prim"),
        ["1", "1", "2", "10", "70"]
    );
    assert_eq!(column(&ok(&["dims", "1", "--biwords"]), "biwords"), ["1"]);
    assert_eq!(shuffle(&["dims", "7", "--descd"]).status.code(), Some(2));
    assert_eq!(shuffle(&["dims", "13", "--series"]).status.code(), Some(2));
    let series = ok(&["dims", "9", "--series"]);
    assert_eq!(column(&series, "descd(x)")[6], "2219");
}

#[test]
fn config_and_flags_set_cutoffs() {
    let path = scratch("cutoffs.toml");
    std::fs::write(&path, "[cutoffs]\nrank = 3\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(shuffle(&["--config", p, "dims", "4", "--descd"]).status.code(), Some(2));
    assert_eq!(
        column(
            &ok(&["--config", p, "--rank-cutoff", "4", "dims", "4", "--descd"]),
            "descd"
        )[3],
        "36"
    );
    std::fs::write(&path, "[cutoffs]\nbogus = 3\n").unwrap();
    assert_eq!(shuffle(&["--config", p, "dims", "2"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = ok(&["verify", "bidendriform", "5"]);
    assert!(out.starts_with("PASS bidendriform"), "{}", out);
    ok(&["verify", "pn-coproduct", "6"]);
    assert!(ok(&["verify", "shuffle-axioms", "0"]).contains("0 checks"));
    assert_eq!(shuffle(&["verify", "nope"]).status.code(), Some(2));
    let all = ok(&["verify", "all", "3"]);
    assert_eq!(all.lines().count(), 9);
    assert_eq!(all, ok(&["verify", "all", "3"]));
}

#[test]
fn membership_and_pi() {
    assert_eq!(ok(&["membership", "3", "213|111"]), "not a member");
    assert_eq!(ok(&["membership", "3", "213|111 + 231|111"]), "member");
    assert_eq!(shuffle(&["membership", "3", "12|11"]).status.code(), Some(2));
    assert_eq!(ok(&["pi", "4", "--route", "all"]), "1|4");
    assert_eq!(ok(&["pi", "1,1"]), "12|11");
}

#[test]
fn json_round_trips() {
    let out = ok(&["--json", "product", "biword-prec", "12|11", "1|2"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let result = LinComb::<Biword>::from_json(&v["result"]).unwrap();
    assert_eq!(result.to_json(), v["result"]);
    let rendered: LinComb<Biword> = parse_combination(v["rendered"].as_str().unwrap(), |k, _| k.parse()).unwrap();
    assert_eq!(result, rendered);

    let dims: Value = serde_json::from_str(&ok(&["--json", "dims", "3"])).unwrap();
    assert_eq!(dims["rows"][2]["descd_rank"], 10);
    assert_eq!(dims["flags"].as_array().unwrap().len(), 0);

    let verify: Value = serde_json::from_str(&ok(&["--json", "verify", "dendriform", "3"])).unwrap();
    assert_eq!(verify["passed"], true);
    assert_eq!(verify["suites"][0]["suite"], "dendriform");
}

#[test]
fn decompositions() {
    let path = scratch("sh.json");
    std::fs::write(&path, ok(&["sh-presentation", "--sizes", "3", "--max-weight", "3"])).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(ok(&["validate", p]), "valid");
    assert_eq!(ok(&["decompose", p, "abc", "--roundtrip"]), "a<(b<c)\nroundtrip ok");
    assert_eq!(ok(&["decompose", p, "a"]), "a");
    let v: Value = serde_json::from_str(&ok(&["--json", "decompose", p, "ab"])).unwrap();
    assert_eq!(v["terms"][0]["rendered"], "a<b");
    assert_eq!(shuffle(&["decompose", p, "zz"]).status.code(), Some(2));

    let mut pres: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for row in pres["prec"].as_array_mut().unwrap() {
        if row[0] == "a" && row[1] == "b" {
            row[2].as_array_mut().unwrap().push(serde_json::json!(["ba", 1]));
        }
    }
    let bad = scratch("perturbed.json");
    std::fs::write(&bad, pres.to_string()).unwrap();
    let b = bad.to_str().unwrap();
    let o = shuffle(&["decompose", b, "ab"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("violation"), "{}", out);
    assert!(out.contains("rigidity failure for `ab`"), "{}", out);
    assert_eq!(shuffle(&["validate", b]).status.code(), Some(1));
}
