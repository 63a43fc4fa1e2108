use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tilecraft::cli::stats_from_files;
use tilecraft::io::{read_assignment, read_layout, read_pairs};
use tilecraft::report::{read_json, JoinSummary, RunReport};

const DEMO: &str = "0\t0\t0\t1\t1\n1\t2\t0\t3\t1\n2\t0\t2\t1\t3\n3\t2\t2\t3\t3\n";

fn tilecraft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilecraft"))
        .args(args)
        .env_remove("TILECRAFT_WORKERS")
        .output()
        .expect("run tilecraft")
}

fn ok(args: &[&str]) {
    let out = tilecraft(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn synth(dir: &Path, name: &str, n: usize, mode: &str, seed: u64) -> PathBuf {
    let p = dir.join(name);
    let n = n.to_string();
    let seed = seed.to_string();
    ok(&["synth", "--n", &n, "--mode", mode, "--seed", &seed, "--out", s(&p)]);
    p
}

#[test]
fn fg_demo_is_a_two_by_two_grid() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "demo.tsv", DEMO);
    let out = dir.path().join("out");
    ok(&[
        "partition",
        "--input",
        s(&input),
        "--algo",
        "fg",
        "--fraction",
        "0.25",
        "--out",
        s(&out),
    ]);
    assert_eq!(
        fs::read_to_string(out.join("layout.tsv")).unwrap(),
        "0\t0\t0\t1.5\t1.5\t1\n1\t1.5\t0\t3\t1.5\t1\n2\t0\t1.5\t1.5\t3\t1\n3\t1.5\t1.5\t3\t3\t1\n"
    );
    assert_eq!(
        fs::read_to_string(out.join("assignment.tsv")).unwrap(),
        "0\t0\t0\n1\t1\t0\n2\t2\t0\n3\t3\t0\n"
    );
    let report: RunReport = read_json(&out.join("report.json")).unwrap();
    assert_eq!(report.payload, 1);
    assert_eq!(report.quality.k, 4);
    assert_eq!(report.quality.boundary_ratio_lambda, 0.0);
}

#[test]
fn identical_runs_write_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let input = synth(dir.path(), "c.tsv", 3000, "clustered", 9);
    let again = dir.path().join("c2.tsv");
    ok(&["synth", "--n", "3000", "--mode", "clustered", "--seed", "9", "--out", s(&again)]);
    assert_eq!(fs::read(&input).unwrap(), fs::read(&again).unwrap());

    let cases: [&[&str]; 3] = [
        &["partition", "--algo", "bos", "--payload", "40"],
        &["sample-partition", "--algo", "bsp", "--payload", "40", "--gamma", "0.3", "--seed", "5"],
        &[
            "parallel-partition",
            "--algo",
            "hc",
            "--payload",
            "40",
            "--coarse-payload",
            "700",
            "--anchor-sample",
            "500",
            "--workers",
            "3",
        ],
    ];
    for (i, case) in cases.iter().enumerate() {
        let runs: Vec<PathBuf> = (0..2).map(|j| dir.path().join(format!("r{i}_{j}"))).collect();
        for out in &runs {
            let mut args = case.to_vec();
            args.extend(["--input", s(&input), "--out", s(out)]);
            ok(&args);
        }
        for f in ["layout.tsv", "assignment.tsv", "report.json"] {
            assert_eq!(
                fs::read(runs[0].join(f)).unwrap(),
                fs::read(runs[1].join(f)).unwrap(),
                "{case:?} {f}"
            );
        }
    }
}

#[test]
fn report_lambda_matches_assignment_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = synth(dir.path(), "u.tsv", 4000, "uniform", 2);
    for algo in ["fg", "bsp", "slc", "bos", "hc", "str"] {
        let out = dir.path().join(algo);
        ok(&[
            "partition",
            "--input",
            s(&input),
            "--algo",
            algo,
            "--fraction",
            "0.01",
            "--out",
            s(&out),
        ]);
        let report: RunReport = read_json(&out.join("report.json")).unwrap();
        let entries = read_assignment(&out.join("assignment.tsv")).unwrap();
        let recount = entries.len() as f64 / 4000.0 - 1.0;
        assert_eq!(report.quality.boundary_ratio_lambda, recount, "{algo}");
        assert_eq!(entries.iter().filter(|e| !e.is_replica).count(), 4000);
        let layout = read_layout(&out.join("layout.tsv")).unwrap();
        assert_eq!(layout.len(), report.quality.k);
        let stats = stats_from_files(&out.join("layout.tsv"), &out.join("assignment.tsv")).unwrap();
        assert_eq!(stats, report.quality);
    }
}

#[test]
fn stats_command_prints_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "demo.tsv", DEMO);
    let out = dir.path().join("out");
    ok(&["partition", "--input", s(&input), "--algo", "str", "--payload", "2", "--out", s(&out)]);
    let res = tilecraft(&[
        "stats",
        "--layout",
        s(&out.join("layout.tsv")),
        "--assignment",
        s(&out.join("assignment.tsv")),
    ]);
    assert!(res.status.success());
    let v: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["k"], 2);
}

#[test]
fn sweep_writes_one_row_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let input = synth(dir.path(), "u.tsv", 5000, "uniform", 1);
    let out = dir.path().join("sw");
    ok(&[
        "sweep",
        "--input",
        s(&input),
        "--algos",
        "fg,str",
        "--fractions",
        "0.001,0.01,0.05",
        "--out",
        s(&out),
    ]);
    let mut rdr = csv::Reader::from_path(out.join("sweep.csv")).unwrap();
    let rows: Vec<tilecraft::cli::SweepRow> = rdr.deserialize().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.status == "ok" && r.partition_ms.unwrap() > 0.0));
    let fg: Vec<f64> =
        rows.iter().filter(|r| r.algorithm == "FG").map(|r| r.lambda.unwrap()).collect();
    assert!(fg.windows(2).all(|w| w[1] <= w[0]), "{fg:?}");
}

#[test]
fn bad_inputs_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(dir.path(), "dup.tsv", "1\t0\t0\t1\t1\n1\t2\t2\t3\t3\n");
    let res = tilecraft(&[
        "partition",
        "--input",
        s(&dup),
        "--algo",
        "fg",
        "--payload",
        "1",
        "--out",
        s(&dir.path().join("o")),
    ]);
    assert!(!res.status.success());
    assert!(String::from_utf8_lossy(&res.stderr).contains("duplicate object id 1"));

    let res = tilecraft(&[
        "partition",
        "--input",
        s(&dir.path().join("missing.tsv")),
        "--algo",
        "fg",
        "--payload",
        "1",
        "--out",
        s(&dir.path().join("o")),
    ]);
    assert!(!res.status.success());

    let demo = write(dir.path(), "demo.tsv", DEMO);
    let res = tilecraft(&[
        "sample-partition",
        "--input",
        s(&demo),
        "--algo",
        "hc",
        "--payload",
        "1",
        "--gamma",
        "0.5",
        "--out",
        s(&dir.path().join("o")),
    ]);
    assert!(!res.status.success());
}

#[test]
fn wkt_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "w.tsv",
        "7\tPOINT (2 3)\n1\tPOLYGON ((0 0, 2 0, 2 2, 0 2, 0 0))\n4\tLINESTRING (5 5, 6 7)\n",
    );
    let out = dir.path().join("o");
    ok(&[
        "partition",
        "--input",
        s(&input),
        "--format",
        "tsv-wkt",
        "--algo",
        "hc",
        "--payload",
        "1",
        "--out",
        s(&out),
    ]);
    let report: RunReport = read_json(&out.join("report.json")).unwrap();
    assert_eq!(report.quality.n, 3);
    assert_eq!(report.quality.k, 3);
}

fn join(dir: &Path, r: &Path, s_: &Path, algo: &str, out: &str) -> (JoinSummary, Vec<(u64, u64)>) {
    let out = dir.join(out);
    ok(&[
        "join",
        "--r",
        s(r),
        "--s",
        s(s_),
        "--algo",
        algo,
        "--fraction",
        "0.02",
        "--oracle",
        "--workers",
        "2",
        "--out",
        s(&out),
    ]);
    (read_json(&out.join("summary.json")).unwrap(), read_pairs(&out.join("pairs.tsv")).unwrap())
}

#[test]
fn join_matches_oracle_for_every_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let r = synth(dir.path(), "r.tsv", 500, "clustered", 11);
    let s_ = synth(dir.path(), "s.tsv", 500, "clustered", 12);
    for algo in ["fg", "bsp", "slc", "bos", "hc", "str"] {
        let (summary, pairs) = join(dir.path(), &r, &s_, algo, algo);
        assert_eq!(summary.oracle_match, Some(true), "{algo}");
        assert_eq!(summary.pair_count, pairs.len());
        assert_eq!(summary.r_count, 500);
    }
}

#[test]
fn self_join_contains_the_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let r = synth(dir.path(), "r.tsv", 400, "uniform", 3);
    let (summary, pairs) = join(dir.path(), &r, &r, "bsp", "self");
    assert_eq!(summary.oracle_match, Some(true));
    assert!((0..400).all(|i| pairs.binary_search(&(i, i)).is_ok()));
}

#[test]
fn disjoint_inputs_give_no_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let r = write(dir.path(), "r.tsv", "0\t0\t0\t1\t1\n1\t0\t2\t1\t3\n");
    let s_ = write(dir.path(), "s.tsv", "0\t5\t5\t6\t6\n1\t7\t7\t8\t8\n");
    let (summary, pairs) = join(dir.path(), &r, &s_, "fg", "dj");
    assert!(pairs.is_empty());
    assert_eq!(summary.oracle_match, Some(true));
}
