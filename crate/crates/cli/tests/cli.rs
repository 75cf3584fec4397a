use std::process::{Command, Output};

fn majorcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_majorcat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_reports_incomparable() {
    let o = majorcat(&["check", "--alpha", "0.4,0.4,0.1,0.1", "--beta", "0.5,0.25,0.25", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Incomparable\n");
}

#[test]
fn check_forward_in_float_mode() {
    let o = majorcat(&["check", "--alpha", "1/2,1/2", "--beta", "0.9,0.1"]);
    assert_eq!(stdout(&o), "Forward\n");
}

#[test]
fn prob_prints_rational_and_decimal() {
    let o = majorcat(&["prob", "--alpha", "0.6,0.2,0.2", "--beta", "0.5,0.4,0.1", "--copies", "1", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("P_S = 8/9 ≈ 0.888889\n"), "{out}");
}

#[test]
fn prob_direct_reports_ceiling_and_minimizers() {
    let o = majorcat(&["prob", "--alpha", "0.60,0.21,0.10,0.09", "--beta", "0.55,0.25,0.10,0.10", "--exact"]);
    let out = stdout(&o);
    assert!(out.contains("P_S = 8/9"), "{out}");
    assert!(out.contains("ceiling = 9/10"), "{out}");
    assert!(out.contains("improvable = true"), "{out}");
    assert!(out.contains("L = {2}"), "{out}");
}

#[test]
fn selfcat_finds_six_copies() {
    let o = majorcat(&["selfcat", "--alpha", "0.928,0.060,0.006,0.006", "--beta", "0.950,0.030,0.020", "--max-copies", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "N=6\n");
}

#[test]
fn selfcat_reports_absence_within_budget() {
    let o = majorcat(&["selfcat", "--alpha", "0.928,0.060,0.006,0.006", "--beta", "0.950,0.030,0.020", "--max-copies", "5"]);
    assert_eq!(stdout(&o), "no N <= 5\n");
}

#[test]
fn selfcat_on_comparable_pair_is_precondition_error() {
    let o = majorcat(&["selfcat", "--alpha", "1/2,1/2", "--beta", "0.9,0.1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn catalyst_deterministic_and_probabilistic() {
    let o = majorcat(&["catalyst", "--alpha", "0.4,0.4,0.1,0.1", "--beta", "0.5,0.25,0.25", "--kappa", "0.6,0.4", "--exact"]);
    assert_eq!(stdout(&o), "direct = Incomparable\ncatalyzed = true\n");
    let o = majorcat(&[
        "catalyst", "--alpha", "0.6,0.2,0.2", "--beta", "0.5,0.4,0.1", "--kappa", "0.65,0.35", "--prob", "--exact",
    ]);
    assert_eq!(stdout(&o), "criterion = true\noracle = true\n");
}

#[test]
fn catalyst_on_unimprovable_pair_exits_3() {
    let o = majorcat(&["catalyst", "--alpha", "0.5,0.3,0.2", "--beta", "0.5,0.3,0.2", "--kappa", "0.6,0.4", "--prob"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn parse_errors_exit_2() {
    let o = majorcat(&["check", "--alpha", "0.5,0.6", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("majorcat:"));
    let o = majorcat(&["check", "--alpha", "0.5,x", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = majorcat(&["sample", "--kind", "nope", "--dims", "3", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sample_budget_exhaustion_exits_4() {
    let o = majorcat(&["sample", "--kind", "selfcat-slocc", "--dims", "3", "--trials", "2", "--max-draws", "0"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn sample_writes_csv_and_json_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let o = majorcat(&[
        "sample", "--kind", "selfcat-slocc", "--dims", "3..5", "--trials", "50", "--seed", "3", "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# majorcat ") && lines[0].contains("seed=3"));
    assert_eq!(lines[1], "dim,trials,successes,estimate,stderr");
    assert_eq!(lines.len(), 2 + 3);

    let json = dir.path().join("out.json");
    let o = majorcat(&[
        "sample", "--kind", "bound", "--dims", "3,4", "--trials", "20", "--format", "json", "--out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&json).unwrap();
    assert!(text.contains("\"meta\"") && text.contains("\"lhs_stderr\""));
}

#[test]
fn sample_output_independent_of_workers() {
    let run = |w: &str| {
        stdout(&majorcat(&["sample", "--kind", "conv-rate", "--dims", "3,6", "--trials", "64", "--seed", "5", "--workers", w]))
    };
    assert_eq!(run("1"), run("8"));
}

#[test]
fn page_curve() {
    let o = majorcat(&["page", "--dims", "2,3"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "dim,page_value");
    let v: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((v - 0.6028528846191237).abs() < 1e-12);
}
