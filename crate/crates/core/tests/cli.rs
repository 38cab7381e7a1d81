use fano_wps::cli::main_with_args;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["fano-wps"];
    argv.extend_from_slice(args);
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn analyze_text() {
    let (code, out, _) = run(&["analyze", "--weights", "33,22,6,5"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("P^3(33,22,6,5)\n"));
    assert!(out.contains("fano_index=66"));
    assert!(out.contains("volume=66/5"));
    assert!(out.contains("1/33(22,6,5)"));
    assert!(out.contains("overall=CanonicalNotTerminal"));
}

#[test]
fn analyze_is_order_insensitive() {
    let (_, a, _) = run(&["analyze", "--weights", "5,6,22,33", "--json"]);
    let (_, b, _) = run(&["analyze", "--weights", "(33, 22, 6, 5)", "--json"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["weights"], serde_json::json!(["33", "22", "6", "5"]));
    assert_eq!(v["fano_index"], "66");
}

#[test]
fn analyze_not_well_formed() {
    let (code, out, err) = run(&["analyze", "--weights", "2,2,1"]);
    assert_eq!(code, 1);
    assert!(out.contains("well_formed=false"));
    assert!(err.contains("not well-formed"));
}

#[test]
fn analyze_bad_input() {
    let (code, _, err) = run(&["analyze", "--weights", "3,x,1"]);
    assert_eq!(code, 1);
    assert!(err.contains("\"x\""), "{}", err);
    assert_eq!(run(&["analyze", "--weights", "3,0,1"]).0, 1);
    assert_eq!(run(&["analyze"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
}

#[test]
fn analyze_above_cost_cap_is_undecided() {
    let (code, _, err) = run(&["analyze", "--weights", "7,5,3,2", "--cost-cap", "5"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-paper"));
}

#[test]
fn family_certificate_mode() {
    let (code, out, _) = run(&["family", "--name", "canonical-max-index", "--dim", "8", "--verify", "certificate"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("verification=pass"));
    assert!(out.contains("via certificate"));
}

#[test]
fn family_json() {
    let (code, out, _) = run(&["family", "--name", "gorenstein-terminal-max-volume", "--dim", "7", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["instance"]["predicted_volume"]["num"], "49787136");
}

#[test]
fn family_errors() {
    assert_eq!(run(&["family", "--name", "no-such-family", "--dim", "3"]).0, 1);
    assert_eq!(run(&["family", "--name", "gorenstein-terminal-max-volume", "--dim", "6"]).0, 1);
    let (code, _, _) = run(&["family", "--name", "canonical-max-index", "--dim", "5", "--verify", "brute", "--cost-cap", "10"]);
    assert_eq!(code, 2);
}

#[test]
fn search_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dim2.csv");
    let p = path.to_str().unwrap();
    let (code, out, err) = run(&[
        "search", "--dim", "2", "--class", "canonical", "--objective", "fano-index", "--sum-max", "60", "--workers", "3",
        "--csv", p,
    ]);
    assert_eq!(code, 0, "{}", err);
    assert!(out.starts_with("best=6 achievers=[(1,2,3)]"));
    assert!(out.contains("evidence within bound"));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["weights", "h", "class", "gorenstein", "fano_index", "volume_num", "volume_den"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert!(rows.iter().any(|r| &r[0] == "1;2;3" && &r[1] == "6" && &r[5] == "6" && &r[6] == "1"));
}

#[test]
fn search_unwritable_csv() {
    let (code, _, _) = run(&[
        "search", "--dim", "2", "--class", "terminal", "--sum-max", "10", "--csv", "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn search_terminal_dim2() {
    let (code, out, _) = run(&["search", "--dim", "2", "--class", "terminal", "--objective", "index", "--sum-max", "10"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("best=3 achievers=[(1,1,1)]"));
}

#[test]
fn search_invalid_config() {
    assert_eq!(run(&["search", "--dim", "3", "--class", "terminal", "--sum-max", "2"]).0, 1);
    assert_eq!(run(&["search", "--dim", "2", "--class", "terminal", "--sum-max", "10", "--workers", "0"]).0, 1);
}

#[test]
fn verify_paper() {
    let (code, out, _) = run(&["verify-paper", "--max-dim", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("P^3(7,5,3,2) index"));
    assert!(!out.contains("FAIL"));
    assert_eq!(run(&["verify-paper", "--max-dim", "3"]).0, 1);
}

#[test]
fn verify_paper_full() {
    let (code, out, _) = run(&["verify-paper", "--max-dim", "10"]);
    assert_eq!(code, 0);
    assert!(out.contains("23029100604532998144"));
}
