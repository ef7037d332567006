use std::process::Command;

use rendezvous_cli::{parse_args, EXIT_IO, EXIT_SIMULATION, EXIT_USAGE, OUT_DIR_ENV};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rendezvous"));
    c.env_remove(OUT_DIR_ENV);
    c
}

#[test]
fn negative_radius_is_a_usage_error() {
    let out = bin().args(["rendezvous", "--n", "-5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let out = bin().args(["scaling", "--density", "8*n^^2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let out = bin().args(["boundary", "--unknown"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}

#[test]
fn help_exits_zero() {
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("scaling"));
}

#[test]
fn unwritable_path_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.csv");
    let out = bin().args(["asy", "--n", "3"]).arg("--out").arg(&target).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_IO));
}

#[test]
fn failed_run_exits_4_but_still_writes_its_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let out = bin().args(["rendezvous", "--n", "15"]).arg("--out").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_SIMULATION));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().collect::<Result<_, _>>().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].len(), 14);
    assert_eq!(&rows[0][9], "false");
}

#[test]
fn successful_run_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("run.csv");
    let json_path = dir.path().join("run.json");
    let args = ["rendezvous", "--n", "5", "--density", "10000"];
    let out = bin().args(args).arg("--out").arg(&csv_path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(args).args(["--format", "json", "--out"]).arg(&json_path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert!(text.starts_with(
        "n,f,seed,t_total,t_1A,t_1B,t_1C,t_wave,t_travel,success,leader_count,blue_count,pink_count,boundary_count\n"
    ));
    assert!(text.ends_with('\n'));
    let from_csv: Vec<rendezvous_core::analysis::ScalingRow> =
        csv::Reader::from_path(&csv_path).unwrap().deserialize().collect::<Result<_, _>>().unwrap();
    let from_json: Vec<rendezvous_core::analysis::ScalingRow> =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(from_csv.len(), 1);
    assert_eq!(from_csv, from_json);
    let r = &from_csv[0];
    assert!(r.success && r.leader_count == 1 && r.seed == 42 && r.f == 10_000);
    let sum = r.t_1a + r.t_1b + r.t_1c + r.t_wave + r.t_travel;
    assert!((r.t_total - sum).abs() < 1e-9 * sum);
}

#[test]
fn output_directory_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env(OUT_DIR_ENV, dir.path())
        .args(["boundary", "--n", "5", "--trials", "2", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("boundary.json")).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn table_goes_to_stdout_without_a_destination() {
    let out = bin().args(["strings", "--strings", "50", "--trials", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("n_strings,k,seed,max_total_bits,mean_total_bits,per_pair_mean\n"));
}

#[test]
fn parse_args_resolves_output_path() {
    let cfg = parse_args(["rendezvous", "scaling", "--format", "json"]).unwrap();
    assert_eq!(cfg.command.name(), "scaling");
    let cfg = parse_args(["rendezvous", "lemmas", "--out", "x.csv"]).unwrap();
    assert_eq!(cfg.output_path().unwrap(), std::path::PathBuf::from("x.csv"));
}
