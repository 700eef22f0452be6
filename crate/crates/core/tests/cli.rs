use std::process::{Command, Output};

use ns_chern::report::{RunReport, SweepReport};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ns-chern"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn params_at_three() {
    let out = run(&["params", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("p=3 q=19 a=4\n"));
}

#[test]
fn verify_passes_and_round_trips() {
    let out = run(&["verify", "--p", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let report: RunReport = serde_json::from_str(&text).unwrap();
    assert!(report.pass);
    assert_eq!(report.kernel.dimension.0, 2);
    let reprinted = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(reprinted.trim_end(), text.trim_end());
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "--p", "7"]);
    let b = run(&["verify", "--p", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["verify", "--p", "2"][..],
        &["verify", "--p", "15"],
        &["verify", "--p", "3", "--q", "11"],
        &["verify", "--p", "3", "--q", "19", "--a", "5"],
        &["verify", "--p", "3", "--q-cap", "10"],
        &["verify"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn overrides_are_honoured() {
    let out = run(&["verify", "--p", "3", "--q", "19", "--a", "15", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: RunReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.params.a.0, 15);
    assert_eq!(report.kernel.dimension.0, 2);
}

#[test]
fn sweep_to_fifty() {
    let out = run(&["sweep", "--p-min", "3", "--p-max", "50", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let sweep: SweepReport = serde_json::from_str(&stdout(&out)).unwrap();
    let ps: Vec<u64> = sweep.rows.iter().map(|r| r.p.0).collect();
    assert_eq!(
        ps,
        vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    );
    assert!(sweep
        .rows
        .iter()
        .all(|r| r.kernel_dimension.0 == 2 && r.image_dimension.0 == 4));
    assert!(sweep.all_pass);
}

#[test]
fn text_subcommands() {
    let c1 = stdout(&run(&["c1", "--p", "3"]));
    assert!(c1.contains("2+2t"));
    let kernel = stdout(&run(&["kernel", "--p", "5"]));
    assert!(kernel.contains("NOT a member"));
    assert!(kernel.contains("residual c₁ = (0, 4+4t, 4+t, 3)"));
    let kummer = stdout(&run(&["kummer", "--p", "5"]));
    assert!(kummer.contains("= 22"));
    let gram = stdout(&run(&["gram", "--p", "3"]));
    assert!(gram.contains("signature (1, 5)"));
}
