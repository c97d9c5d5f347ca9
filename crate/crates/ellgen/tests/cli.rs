//! End-to-end tests of the ellgen binary: table contents, exit codes,
//! output determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellgen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn surface_k3_q0_rows() {
    let out = stdout(&["surface", "--name", "K3", "--qmax", "0"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].contains("\"kind\":\"surface\""));
    assert_eq!(lines[1], "{\"m\":0,\"l2\":-2,\"c\":\"2\"}");
    assert_eq!(lines[2], "{\"m\":0,\"l2\":0,\"c\":\"20\"}");
    assert_eq!(lines[3], "{\"m\":0,\"l2\":2,\"c\":\"2\"}");
}

#[test]
fn surface_by_chern_numbers_matches_p2() {
    let custom = stdout(&["surface", "--c1sq", "9", "--c2", "3", "--qmax", "0"]);
    let rows: Vec<&str> = custom.lines().skip(1).collect();
    assert_eq!(
        rows,
        [
            "{\"m\":0,\"l2\":-2,\"c\":\"1\"}",
            "{\"m\":0,\"l2\":0,\"c\":\"1\"}",
            "{\"m\":0,\"l2\":2,\"c\":\"1\"}",
        ]
    );
}

#[test]
fn surface_abelian_empty_table() {
    let out = stdout(&["surface", "--name", "Abelian", "--qmax", "3"]);
    assert_eq!(out.lines().count(), 1, "header only");
}

#[test]
fn kummer_n1_single_row() {
    let out = stdout(&["kummer", "--n", "1", "--route", "hecke", "--qmax", "2"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows, ["{\"m\":0,\"l2\":0,\"c\":\"1\"}"]);
}

#[test]
fn kummer_chi_rows() {
    let out = stdout(&["kummer", "--n", "2", "--route", "chi"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(
        rows,
        [
            "{\"m\":0,\"l2\":0,\"c\":\"2\"}",
            "{\"m\":0,\"l2\":2,\"c\":\"20\"}",
            "{\"m\":0,\"l2\":4,\"c\":\"2\"}",
        ]
    );
    let out3 = stdout(&["kummer", "--n", "3", "--route", "chi"]);
    let rows3: Vec<&str> = out3.lines().skip(1).collect();
    assert_eq!(rows3.len(), 5);
    assert_eq!(rows3[2], "{\"m\":0,\"l2\":4,\"c\":\"90\"}");
}

#[test]
fn kummer_routes_emit_identical_tables() {
    let hecke = stdout(&["kummer", "--n", "2", "--qmax", "1", "--route", "hecke"]);
    let hilbert = stdout(&[
        "kummer", "--n", "2", "--qmax", "1", "--route", "hilbert", "--surface", "P1xP1",
    ]);
    let hecke_rows: Vec<&str> = hecke.lines().skip(1).collect();
    let hilbert_rows: Vec<&str> = hilbert.lines().skip(1).collect();
    assert_eq!(hecke_rows, hilbert_rows);
}

#[test]
fn csv_format_mirrors_json() {
    let csv = stdout(&["kummer", "--n", "2", "--route", "chi", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("# kind=kummer"));
    assert_eq!(lines[1], "m,l2,c");
    assert_eq!(&lines[2..], ["0,0,2", "0,2,20", "0,4,2"]);
}

#[test]
fn output_is_deterministic() {
    let args = ["surface", "--name", "P2", "--qmax", "2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn unknown_surface_exits_2() {
    let out = run(&["surface", "--name", "Enriques", "--qmax", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty(), "no partial table on error");
}

#[test]
fn hilbert_route_on_degenerate_surface_exits_2() {
    let out = run(&["kummer", "--n", "2", "--route", "hilbert", "--surface", "Abelian"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_n_exits_2() {
    let out = run(&["kummer", "--n", "0", "--route", "hecke"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn clap_usage_error_exits_2() {
    let out = run(&["surface", "--qmax", "1"]);
    assert_eq!(out.status.code(), Some(2), "no surface given");
}

#[test]
fn verify_degenerate_frame_passes() {
    let out = run(&["verify", "--pmax", "1", "--qmax", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("checks passed"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn verify_small_frame_passes() {
    let out = run(&["verify", "--pmax", "2", "--qmax", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn psi_has_half_integer_powers() {
    let out = stdout(&["psi", "--qmax", "0"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(
        rows,
        [
            "{\"m\":0,\"l2\":-1,\"c\":\"1\"}",
            "{\"m\":0,\"l2\":1,\"c\":\"-1\"}",
        ]
    );
}
