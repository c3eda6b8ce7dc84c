use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_k2t"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn k2t");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    child.wait_with_output().expect("wait for k2t")
}

fn stdout_of(args: &[&str], stdin: Option<&str>) -> String {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "k2t {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

const F3_10: &str = "I~aK[A@_W";

#[test]
fn construct_emits_family_graph6() {
    assert_eq!(stdout_of(&["construct", "--t", "3", "--n", "10"], None), format!("{F3_10}\n"));
    // smallest member is the complete graph
    assert_eq!(stdout_of(&["construct", "--t", "3", "--n", "4"], None), "C~\n");
}

#[test]
fn mu_exact_twelve_digits() {
    assert_eq!(
        stdout_of(&["mu", "--t", "3", "--n", "10", "--exact"], None),
        "4.16227766017\n"
    );
}

#[test]
fn mu_stream_csv() {
    let out = stdout_of(&["mu"], Some(&format!("{F3_10}\n")));
    assert_eq!(out, format!("graph6,mu\n{F3_10},4.16227766017\n"));
}

#[test]
fn bounds_lines() {
    let out = stdout_of(&["bounds", "--t", "3", "--n", "10"], None);
    assert_eq!(
        out,
        "upper 4.16227766017\nlower 4.01227766017\nlower_stated_range false\nysh 4.37228132327\n"
    );
    // no ysh line away from t = 3
    let out = stdout_of(&["bounds", "--t", "4", "--n", "17"], None);
    assert!(out.contains("upper 5.77200187266"), "{out}");
    assert!(!out.contains("ysh"));
}

#[test]
fn minor_verdicts() {
    // K_6 against t=2 trips the density shortcut
    let out = stdout_of(&["minor", "--t", "2"], Some("E~~w\n"));
    assert_eq!(out, "E~~w present-by-density\n");
    // --witness forces construction
    let out = stdout_of(&["minor", "--t", "2", "--witness"], Some("E~~w\n"));
    assert!(out.starts_with("E~~w present [["), "{out}");
    // the family stays clean
    let out = stdout_of(&["minor", "--t", "3"], Some(&format!("{F3_10}\n")));
    assert_eq!(out, format!("{F3_10} absent\n"));
    // generic pattern path: C_5 has a K_3 minor ("Bw" is the triangle)
    let out = stdout_of(&["minor", "--pattern", "Bw"], Some("Dhc\n"));
    assert_eq!(out, "Dhc present\n");
}

#[test]
fn search_exhaustive_builtin_bowtie() {
    let out = stdout_of(
        &["search", "exhaustive", "--t", "2", "--n", "5", "--builtin"],
        None,
    );
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("graph6,n,t,mu,gap_upper,gap_ysh,is_ft"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("Dto,5,2,2.56155281281,"), "{row}");
    assert!(row.ends_with(",true"));
    assert_eq!(lines.next(), None);
}

#[test]
fn search_local_deterministic() {
    let args = [
        "search", "local", "--t", "3", "--n", "8", "--start", "hub-path", "--max-steps", "25",
    ];
    let a = stdout_of(&args, None);
    let b = stdout_of(&args, None);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(a.trim()).unwrap();
    assert_eq!(v["is_ft"], serde_json::Value::Bool(true));
    assert!(v["move_trace"].as_array().unwrap().len() >= 2);
}

#[test]
fn audit_exit_codes_and_formats() {
    let out = run(&["audit", "--t", "3"], Some(&format!("{F3_10}\n")));
    assert!(out.status.success());
    let table = String::from_utf8(out.stdout).unwrap();
    for check in ["C1", "C2", "C3", "C4", "C5", "C6", "C7"] {
        assert!(table.contains(check), "missing {check} in table");
    }
    let out = stdout_of(
        &["audit", "--t", "3", "--format", "jsonl"],
        Some(&format!("{F3_10}\n")),
    );
    assert_eq!(out.lines().count(), 7);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["graph6"], serde_json::Value::String(F3_10.into()));
    }
}

#[test]
fn sweep_grid() {
    let out = stdout_of(
        &["sweep", "--t-max", "3", "--n-min", "9", "--n-max", "10"],
        None,
    );
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "t,n,p,s,mu_exact,bound_upper,gap_upper,bound_lower,bound_ysh,equality"
    );
    // t=2: n 9,10; t=3: n 9,10
    assert_eq!(lines.len(), 5);
    assert!(lines.iter().any(|l| l.starts_with("2,9,4,0,") && l.ends_with("true")));
    assert!(lines.iter().any(|l| l.starts_with("3,10,3,0,") && l.ends_with("true")));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["mu", "--exact"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["definitely-not-a-subcommand"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["minor"], Some("Bw\n"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_graph6_reports_error() {
    let out = run(&["mu"], Some("D~{{\n"));
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("byte"), "{err}");
}
