use std::process::{Command, Output};

use kerov_cli::RunConfig;

fn kerov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kerov"))
        .args(args)
        .env_remove("KEROV_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// CSV body after the `# kerov-run` header, as rows of fields.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(2).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn identities_pass_on_small_caps() {
    let out = kerov(&["identities", "--cap-boxes", "6", "--kmax", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().skip(1).all(|l| l.starts_with("[PASS]")));
    assert!(String::from_utf8_lossy(&out.stderr).contains("checks passed"));
}

#[test]
fn sampling_is_deterministic_and_header_round_trips() {
    let args = ["sample", "--n", "50", "--samples", "5", "--seed", "17", "--format", "csv"];
    let a = kerov(&args);
    let b = kerov(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let cfg = RunConfig::from_output(&text).unwrap();
    assert_eq!((cfg.n, cfg.samples, cfg.seed), (50, 5, 17));
    let other = stdout(&kerov(&["sample", "--n", "50", "--samples", "5", "--seed", "18", "--format", "csv"]));
    assert_ne!(text, other);
}

#[test]
fn json_output_carries_the_config() {
    let text = stdout(&kerov(&["sample", "--n", "1", "--samples", "3"]));
    let cfg = RunConfig::from_output(&text).unwrap();
    assert_eq!(cfg.command, "sample");
    let rows: Vec<serde_json::Value> = text.lines().skip(1).map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["rows"] == serde_json::json!([1])));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("expect.csv");
    let out = kerov(&["expect", "--observable", "p#2", "--n", "6", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r[1] == "0" && r[2] == "0"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "n = 30\nsamples = 4\nseed = 5\n").unwrap();
    let p = path.to_str().unwrap();
    let cfg = RunConfig::from_output(&stdout(&kerov(&["sample", "--config", p, "--format", "csv"]))).unwrap();
    assert_eq!((cfg.n, cfg.samples, cfg.seed), (30, 4, 5));
    let cfg = RunConfig::from_output(&stdout(&kerov(&["sample", "--config", p, "--n", "8", "--format", "csv"]))).unwrap();
    assert_eq!((cfg.n, cfg.samples, cfg.seed), (8, 4, 5));
}

#[test]
fn shape_table_hits_limit_shape_values() {
    let text = stdout(&kerov(&["shape", "--n", "400", "--grid", "4"]));
    let rows = csv_rows(&text);
    let value = |x: f64, col: usize| -> f64 {
        let row = rows.iter().find(|r| (r[0].parse::<f64>().unwrap() - x).abs() < 1e-12).unwrap();
        row[col].parse().unwrap()
    };
    assert!((value(0.0, 2) - 4.0 / std::f64::consts::PI).abs() < 1e-12);
    assert!((value(2.0, 2) - 2.0).abs() < 1e-12);
    assert!((value(-2.0, 2) - 2.0).abs() < 1e-12);
    assert_eq!(value(2.5, 4), 0.0);
}

#[test]
fn transition_clt_rows() {
    let out = kerov(&["clt", "--variant", "transition", "--n", "150", "--samples", "100", "--kmax", "5"]);
    let rows = csv_rows(&stdout(&out));
    let names: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(names, ["t_1", "t_2", "t_3", "t_4", "t_5"]);
    for r in &rows[..2] {
        assert_eq!(r[3].parse::<f64>().unwrap(), 0.0);
        assert_eq!(r[4].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn shape_clt_has_one_row_per_u() {
    let out = kerov(&["clt", "--variant", "shape", "--n", "150", "--samples", "100", "--kmax", "5"]);
    let names: Vec<String> = csv_rows(&stdout(&out)).into_iter().map(|r| r[0].clone()).collect();
    assert_eq!(names, ["u_0", "u_1", "u_2", "u_3", "u_4", "u_5"]);
    let u0 = &csv_rows(&stdout(&out))[0];
    assert_eq!(u0[4].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn biane_staircase_passes() {
    let out = kerov(&["biane"]);
    assert!(out.status.success());
    assert_eq!(csv_rows(&stdout(&out)).len(), 3);
}

#[test]
fn bad_input_exits_with_two() {
    let out = kerov(&["expect", "--observable", "q7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
