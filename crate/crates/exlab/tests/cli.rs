use std::process::{Command, Output};

use exlab::{run, ExperimentSpec, Module};

fn exlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dry_run_prints_resolved_params() {
    let o = exlab(&["weakseq", "--op", "pipeline", "--n", "500", "--r", "4", "--dry-run"]);
    assert!(o.status.success());
    let spec: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(spec["params"]["n"], 500);
    assert_eq!(spec["params"]["t"], 1);
    assert_eq!(spec["preset"], "desk");
}

#[test]
fn every_subcommand_has_dry_run() {
    let cases: [&[&str]; 6] = [
        &["setmap", "--op", "oracle"],
        &["bipfree", "--op", "zarankiewicz"],
        &["embed", "--op", "ramsey"],
        &["weakseq", "--op", "minor", "--preset", "paper"],
        &["rsgraph", "--op", "arrow", "--mode", "theorem", "--graph", "behrend"],
        &["removal", "--op", "step", "--random-grid", "12", "3"],
    ];
    for args in cases {
        let mut a = args.to_vec();
        a.push("--dry-run");
        let o = exlab(&a);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = exlab(&["removal", "--op", "grid", "--random-grid", "12", "3", "--dry-run"]);
    assert!(stdout(&o).contains("\"N\": 12"));
}

#[test]
fn validation_error_executes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = exlab(&["weakseq", "--op", "pipeline", "--r", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("r must be >= 1"));
    assert!(!out.exists());
    let o = exlab(&["setmap", "--op", "violate", "--param", "colour=3", "--dry-run"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn run_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let runs: [&[&str]; 3] = [
        &["setmap", "--op", "violate", "--k", "2", "--n", "6", "--trials", "100", "--seed", "7", "--out"],
        &["bipfree", "--op", "extract", "--trials", "10", "--seed", "1", "--out"],
        &["bipfree", "--op", "extract", "--graph", "kbip", "--out"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut a = args.to_vec();
        let path = p(&format!("{i}.json"));
        a.push(&path);
        let o = exlab(&a);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let rec: exlab::ExperimentRecord =
        serde_json::from_str(&std::fs::read_to_string(p("0.json")).unwrap()).unwrap();
    assert_eq!(rec.aggregate.successes, 100);

    let o = exlab(&["report", "--format", "csv", &p("0.json"), &p("1.json"), &p("2.json")]);
    assert!(o.status.success());
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(&rows[0][0], "bipfree");
    assert_eq!(&rows[2][0], "setmap");
    for row in &rows[..2] {
        assert_eq!(&row[5], "size/floor ratio");
        assert!(row[7].parse::<f64>().unwrap() >= 1.0);
    }
}

#[test]
fn csv_record_and_stdout_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trials.csv");
    let o = exlab(&[
        "removal", "--op", "diamond", "--random-grid", "8", "2", "--trials", "4", "--format", "csv", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 5);
    let o = exlab(&["rsgraph", "--op", "behrend", "--N", "100"]);
    let rec: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec["schema_version"], 1);
    assert_eq!(rec["trials"][0]["success"], true);
}

#[test]
fn grid_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let g = exlab_core::removal::GridColoring::from_fn(4, 2, |x, y| ((x + 2 * y) % 2) as u8).unwrap();
    std::fs::write(&path, exlab_core::io::format_grid(&g)).unwrap();
    let o = exlab(&["removal", "--op", "grid", "--grid-file", path.to_str().unwrap(), "--trials", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rec: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec["spec"]["params"]["grid_file"], path.to_str().unwrap());
    // a fixed input gives identical witnesses on every trial
    assert_eq!(rec["trials"][0]["digest"], rec["trials"][1]["digest"]);
    assert_eq!(rec["aggregate"]["successes"], 2);
}

#[test]
fn every_op_runs_with_defaults() {
    for m in Module::ALL {
        for op in m.ops() {
            let rec = run(&ExperimentSpec::new(m, op).trials(2)).unwrap();
            assert!(rec.aggregate.all_hold, "{m} {op}: {:?}", rec.trials);
            assert!(rec.aggregate.successes > 0, "{m} {op}: {:?}", rec.trials);
        }
    }
}
