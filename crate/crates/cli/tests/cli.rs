use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picardlab"))
        .args(args)
        .env_remove("PICARDLAB_CHI_MAX")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn verify_theorem_single() {
    let o = run(&["verify-theorem", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("K2=1 chi=3"));
    assert!(out.contains("maximal=yes"));
}

#[test]
fn verify_theorem_rejects_odd_n() {
    let o = run(&["verify-theorem", "2", "--m", "3", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n must be even"));
}

#[test]
fn verify_theorem_sweep_and_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reports.json");
    let o = run(&["verify-theorem", "3", "--sweep", "m=2..8,n=4,6,8", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("21 report(s) certified"));
    let text = fs::read_to_string(&path).unwrap();
    let reports: Vec<picardlab::ConstructionReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 21);
    let again = serde_json::to_string_pretty(&reports).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn verify_theorem_printed_reading_fails_certification() {
    let o = run(&["verify-theorem", "2", "--m", "4", "--n", "2", "--reading", "printed"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("2L2 = B1 + B3"));
}

#[test]
fn verify_theorem_usage_errors() {
    assert_eq!(run(&["verify-theorem", "4", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify-theorem", "2", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify-theorem", "3", "--m", "2", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify-theorem"]).status.code(), Some(2));
}

#[test]
fn geography_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = run(&["geography", "--chi-max", "500", "--emit", "csv,svg", "--sets", "A1,A2,A3,B", "--out-dir", d]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("geography.csv")).unwrap();
    assert!(csv.starts_with("set_label,params,K2,chi,slope_num,slope_den\n"));
    let svg = fs::read_to_string(dir.path().join("geography.svg")).unwrap();
    assert_eq!(svg.matches("class=\"marker ").count(), csv.lines().count() - 1);
}

#[test]
fn geography_rejects_small_bound() {
    assert_eq!(run(&["geography", "--chi-max", "2"]).status.code(), Some(2));
}

#[test]
fn geography_cap_from_environment() {
    let o = run(&["geography", "--chi-max", "20000"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_picardlab"))
        .args(["geography", "--chi-max", "20000", "--sets", "A1"])
        .env("PICARDLAB_CHI_MAX", "30000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn geography_claims_report_the_findings() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = run(&["geography", "--claims", "--chi-max", "500", "--emit", "json", "--out-dir", d]);
    // A3 ∩ B contains (128, 46), so claim i is refuted and the run fails.
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("A1∩B = ∅"));
    assert!(out.contains("A3∩B ∋ (128,46)"));
    assert!(out.contains("verified_under_relaxed_assumption"));
    let claims: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("claims.json")).unwrap()).unwrap();
    let first = &claims[0];
    assert_eq!(first["claim_id"], "i");
    assert_eq!(first["status"], "refuted_within_bound");
    assert_eq!(first["bound"], 500);
}

#[test]
fn geography_unwritable_output() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = run(&["geography", "--chi-max", "50", "--emit", "csv", "--out-dir", blocker.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_examples() {
    let o = run(&["classify", "--curve-C", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with(
        "3 lines × 2 points, representative A1, transversal: yes, torus-invariant: yes\n"
    ));
    assert_eq!(stdout(&run(&["classify", "--local", "y^2 - x^3"])), "A2\n");
    assert_eq!(stdout(&run(&["classify", "--local", "x*y"])), "A1\n");
}

#[test]
fn classify_errors() {
    let o = run(&["classify", "--local", "y^2 - 3*z"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("position 8"));
    let o = run(&["classify", "--local", "X0^2 - X1*X2", "--point", "1:0:1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["classify", "--local", "X0^2*X2 - X1^2*X2 + X0^3", "--point", "0:0:1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "A1\n");
}

#[test]
fn classify_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("germ.txt");
    fs::write(&path, "y^2 + 2*x^2*y + x^4 - x^5\n").unwrap();
    let o = run(&["classify", "--file", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "A4\n");
    let o = run(&["classify", "--file", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn slopes_examples() {
    let o = run(&["slopes", "--fix", "n=2", "--m-max", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("limit: 2\n"));
    let o = run(&["slopes", "--fix", "m=3", "--n-max", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("limit: 4\n"));
    assert_eq!(run(&["slopes", "--fix", "n=3"]).status.code(), Some(2));
    assert_eq!(run(&["slopes", "--fix", "k=3"]).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let a = stdout(&run(&["verify-theorem", "2", "--sweep", "m=3..5,n=2,4"]));
    let b = stdout(&run(&["verify-theorem", "2", "--sweep", "m=3..5,n=2,4"]));
    assert_eq!(a, b);
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a");
    let p2 = dir.path().join("b");
    for p in [&p1, &p2] {
        run(&["geography", "--chi-max", "300", "--emit", "svg,csv", "--out-dir", p.to_str().unwrap()]);
    }
    for f in ["geography.svg", "geography.csv"] {
        assert_eq!(fs::read(p1.join(f)).unwrap(), fs::read(p2.join(f)).unwrap());
    }
}
