use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use anthill_cli::{Stats, SummaryReport};
use tempfile::TempDir;

fn anthill(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anthill"))
        .args(args)
        .env_remove("ANTHILL_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = anthill(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_summary(dir: &Path) -> SummaryReport {
    serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

fn sorted_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    files
}

#[test]
fn bench_writes_one_convergence_file_per_seed() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("run");
    ok(&[
        "bench",
        "--benchmark",
        "F2",
        "--dim",
        "5",
        "--pop",
        "8",
        "--iters",
        "25",
        "--seeds",
        "3,1,2",
        "--out",
        path_str(&out),
    ]);
    for seed in 1..=3 {
        let text = fs::read_to_string(out.join(format!("convergence_{seed}.csv"))).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "iteration,best_fitness");
        assert_eq!(lines.len(), 1 + 26);
        let values: Vec<f64> = lines[1..]
            .iter()
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[1] <= w[0]));
    }
    let summary = read_summary(&out);
    assert_eq!(summary.runs.len(), 3);
    assert_eq!(summary.budget, 8 * 26);
    assert!(summary.runs.iter().all(|r| r.evaluations == summary.budget));
}

#[test]
fn summary_statistics_match_per_seed_results() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("stats");
    ok(&[
        "bench",
        "--benchmark",
        "F5",
        "--dim",
        "4",
        "--pop",
        "6",
        "--iters",
        "20",
        "--seeds",
        "1,2,3,4,5,6",
        "--out",
        path_str(&out),
    ]);
    let summary = read_summary(&out);
    let bests: Vec<f64> = summary.runs.iter().map(|r| r.best_fitness).collect();
    let recomputed = Stats::from_values(&bests).unwrap();
    for (a, b) in [
        (summary.stats.median, recomputed.median),
        (summary.stats.mean, recomputed.mean),
        (summary.stats.std, recomputed.std),
        (summary.stats.min, recomputed.min),
        (summary.stats.max, recomputed.max),
    ] {
        assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
    }
    // the final convergence row of each seed is its reported best
    for run in &summary.runs {
        let text = fs::read_to_string(out.join(format!("convergence_{}.csv", run.seed))).unwrap();
        let last: f64 = text
            .lines()
            .last()
            .unwrap()
            .split(',')
            .nth(1)
            .unwrap()
            .parse()
            .unwrap();
        assert_eq!(last, run.best_fitness);
    }
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for dir in [&a, &b] {
        ok(&[
            "antenna",
            "--pop",
            "6",
            "--iters",
            "8",
            "--seeds",
            "4,9",
            "--out",
            path_str(dir),
        ]);
    }
    let files = sorted_files(&a);
    assert!(files.iter().any(|f| f.ends_with("pattern_4.csv")));
    assert!(files.iter().any(|f| f.ends_with("pattern_uniform.csv")));
    for file in files {
        if file.extension().unwrap() == "csv" {
            let name = file.file_name().unwrap();
            assert_eq!(
                fs::read(&file).unwrap(),
                fs::read(b.join(name)).unwrap(),
                "{name:?}"
            );
        }
    }
}

#[test]
fn antenna_summary_reports_uniform_baseline() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("ant");
    let config = tmp.path().join("ant.json");
    fs::write(
        &config,
        r#"{"mode": "antenna", "pop": 6, "iters": 5, "seeds": [1],
            "antenna": {"n_elements": 10, "spacing": 0.5, "symmetric": true,
                        "null_targets": [[60.0, -40.0]]}}"#,
    )
    .unwrap();
    ok(&[
        "antenna",
        "--config",
        path_str(&config),
        "--out",
        path_str(&out),
    ]);
    let summary = read_summary(&out);
    let antenna = summary.antenna.unwrap();
    assert!((antenna.uniform_max_sll_db + 12.97).abs() <= 0.05);
    assert_eq!(antenna.uniform_sidelobe_count, 8);
    let run = &antenna.runs[0];
    assert_eq!(run.amplitudes.len(), 10);
    assert_eq!(run.null_depths_db.len(), 1);
    assert_eq!(summary.runs[0].best_position.len(), 5);

    let pattern = fs::read_to_string(out.join("pattern_1.csv")).unwrap();
    let mut lines = pattern.lines();
    assert_eq!(lines.next(), Some("theta_deg,af_db"));
    assert_eq!(lines.count(), 1801);
}

#[test]
fn sweep_writes_a_directory_per_cell() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("sweep");
    ok(&[
        "sweep",
        "--benchmark",
        "F1,F6",
        "--dim",
        "2,3",
        "--pop",
        "4",
        "--iters",
        "5",
        "--out",
        path_str(&out),
    ]);
    for cell in ["F1_d2", "F1_d3", "F6_d2", "F6_d3"] {
        assert!(out.join(cell).join("summary.json").is_file(), "{cell}");
    }
    let all: Vec<SummaryReport> =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(all.len(), 4);
}

#[test]
fn out_dir_falls_back_to_environment() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("from-env");
    let status = Command::new(env!("CARGO_BIN_EXE_anthill"))
        .args(["bench", "--dim", "2", "--pop", "3", "--iters", "2"])
        .env("ANTHILL_OUT_DIR", &out)
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(out.join("convergence_1.csv").is_file());
}

#[test]
fn compare_writes_table_at_equal_budget() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("cmp");
    let stdout = ok(&[
        "compare",
        "--algorithm",
        "ahcoa,alo,random",
        "--dim",
        "3",
        "--pop",
        "5",
        "--iters",
        "10",
        "--seeds",
        "1,2,3",
        "--out",
        path_str(&out),
    ]);
    assert!(stdout.contains("median"));
    let csv = fs::read_to_string(out.join("comparison.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "seed,ahcoa,alo,random");
    assert_eq!(lines.len(), 1 + 3 + 1);
    assert!(lines[4].starts_with("median,"));
    let budgets: Vec<usize> = ["ahcoa", "alo", "random"]
        .iter()
        .map(|a| read_summary(&out.join(a)).budget)
        .collect();
    assert!(budgets.iter().all(|&b| b == 55));
}

#[test]
fn compare_rejects_unequal_budgets() {
    let tmp = TempDir::new().unwrap();
    let a = tmp.path().join("a.json");
    let b = tmp.path().join("b.json");
    fs::write(
        &a,
        r#"{"algorithm": "ahcoa", "dim": 2, "pop": 4, "iters": 10}"#,
    )
    .unwrap();
    fs::write(
        &b,
        r#"{"algorithm": "alo", "dim": 2, "pop": 4, "iters": 12}"#,
    )
    .unwrap();
    let out = anthill(&[
        "compare",
        "--config",
        path_str(&a),
        "--config",
        path_str(&b),
        "--out",
        path_str(&tmp.path().join("x")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn invalid_configs_exit_with_code_two() {
    let tmp = TempDir::new().unwrap();
    let typo = tmp.path().join("typo.json");
    fs::write(&typo, r#"{"poulation": 10}"#).unwrap();
    let out = anthill(&["bench", "--config", path_str(&typo)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("poulation"));

    let dir = path_str(tmp.path());
    for args in [
        vec!["bench", "--iters", "0", "--out", dir],
        vec!["bench", "--benchmark", "F9", "--out", dir],
        vec!["bench", "--algorithm", "nope", "--out", dir],
        vec!["bench", "--seeds", "1,x", "--out", dir],
        vec!["bench", "--unknown-flag"],
    ] {
        assert_eq!(anthill(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_with_code_three() {
    let tmp = TempDir::new().unwrap();
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let target = blocker.join("out");
    let out = anthill(&[
        "bench",
        "--dim",
        "2",
        "--pop",
        "3",
        "--iters",
        "2",
        "--out",
        path_str(&target),
    ]);
    assert_eq!(out.status.code(), Some(3));
}
