use std::process::{Command, Output};

fn zeroerr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeroerr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn chromatic_number_of_g13() {
    let o = zeroerr(&["invariant", "chi", "--graph", "g13"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn exactness_markers() {
    let o = zeroerr(&["invariant", "chif", "--graph", "g13"]);
    assert_eq!(stdout(&o).trim(), "35/11");
    let o = zeroerr(&["invariant", "theta", "--graph", "pentagon"]);
    let s = stdout(&o);
    assert!(s.starts_with("[2.23606") && s.trim_end().ends_with(']'), "{s}");
    let o = zeroerr(&["invariant", "xi", "--graph", "complement(g13)", "--rep", "g13bar"]);
    assert_eq!(stdout(&o).trim(), "[3, 3]");
}

#[test]
fn pentagon_protocol_verifies() {
    let o = zeroerr(&[
        "protocol",
        "verify",
        "--builtin",
        "f_tilde",
        "--m",
        "1",
        "--rep",
        "c5bar",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("verified: true"));
    let o = zeroerr(&[
        "protocol",
        "verify",
        "--builtin",
        "f_tilde",
        "--m",
        "2",
        "--rep",
        "c5bar^2",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn table1_lists_computed_verdicts() {
    let o = zeroerr(&["rates", "table1"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    for row in [
        "| Yes | Yes | G13^∨m, H_n^⊠m, H_n^∨m | Yes | Yes |",
        "| Yes | No | 𝔏(G13)^∨m, 𝔏(G13)^⊠m | Yes | No |",
        "| No | Yes | Unknown | (unknown) | (unknown) |",
        "| No | No | C5^∨m, C5^⊠m | No | No |",
    ] {
        assert!(s.contains(row), "missing `{row}` in\n{s}");
    }
}

#[test]
fn invalid_input_exits_2() {
    let o = zeroerr(&["invariant", "chi", "--graph", "no-such-graph"]);
    assert_eq!(code(&o), 2);
    let o = zeroerr(&["graph", "power", "--graph", "g13", "--m", "4", "--kind", "strong"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn timeout_exits_3_with_bracket() {
    let o = zeroerr(&[
        "invariant",
        "chi",
        "--graph",
        "complement(h(11))",
        "--budget-seconds",
        "0.001",
    ]);
    assert_eq!(code(&o), 3);
    let s = stdout(&o);
    assert!(s.starts_with('[') && s.contains(", "), "{s}");
}

#[test]
fn verification_failure_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("c5.json");
    let o = zeroerr(&["rep", "builtin", "--name", "c5bar", "-o", rep.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = zeroerr(&[
        "rep",
        "verify",
        "--rep",
        rep.to_str().unwrap(),
        "--graph",
        "complement(pentagon)",
    ]);
    assert_eq!(code(&o), 0);
    let o = zeroerr(&["rep", "verify", "--rep", rep.to_str().unwrap(), "--graph", "pentagon"]);
    assert_eq!(code(&o), 4);
    assert_eq!(stdout(&o).trim(), "invalid");
    let o = zeroerr(&["protocol", "verify", "--builtin", "g_tilde", "--rep", "hbar(3)"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn structure_check_passes() {
    let o = zeroerr(&["verify", "g13-structure"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("M N Q | L P R | {Z} | ∅"));
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("f.json");
    let o = zeroerr(&["instance", "builtin", "--name", "g_tilde", "-o", inst.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = zeroerr(&["confusion", "predict", "--instance", inst.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "AllOr");
    let g = dir.path().join("g.json");
    let o = zeroerr(&[
        "confusion",
        "power",
        "--instance",
        inst.to_str().unwrap(),
        "--m",
        "2",
        "-o",
        g.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let o = zeroerr(&["invariant", "chi", "--graph", g.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "8");
    let o = zeroerr(&["graph", "complement", "--graph", "pentagon", "--format", "dot"]);
    assert!(stdout(&o).starts_with("graph "));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["rates", "casebook", "--case", "c5_between"][..],
        &["invariant", "report", "--graph", "g13", "--certificates"][..],
        &[
            "protocol",
            "verify",
            "--builtin",
            "f_tilde",
            "--rep",
            "c5bar",
            "--sample-x",
            "2",
            "--sample-y",
            "1",
        ][..],
    ] {
        let a = zeroerr(args);
        let b = zeroerr(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
