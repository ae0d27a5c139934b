use std::path::Path;
use std::process::{Command, Output};

use subspace_fp::{ClusteringResult, GroundTruth};
use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_subspace-fp"));
    cmd.env_clear();
    cmd
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn running_example(dir: &TempDir) {
    let out = run(
        &["generate", "--fixture", "running-example", "--out", "z.csv", "--truth", "truth.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
}

const DRAWING_ORDER: &str = "(S6,1),(S1,1),(S2,1),(S1,2),(S2,2),(S3,4),(S5,1),(S4,2)";

#[test]
fn membership_input_gives_the_two_expected_clusters() {
    let dir = TempDir::new().unwrap();
    running_example(&dir);
    for tie in ["lexicographic", DRAWING_ORDER] {
        let out = run(
            &["cluster", "--membership", "z.csv", "--min-sup", "0.4", "--tie-break", tie, "--out", "r.json"],
            dir.path(),
        );
        assert!(out.status.success(), "{}", stderr(&out));
        let result = ClusteringResult::from_json(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
        let points: Vec<_> = result.clusters.iter().map(|c| c.points.clone()).collect();
        assert_eq!(points, vec![vec![0, 1, 2], vec![3, 4]]);
    }
    let out = run(&["eval", "--result", "r.json", "--truth", "truth.json"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("nmi       1.0000"), "{text}");
    assert!(text.contains("f1        1.0000"), "{text}");
}

#[test]
fn all_outlier_result_has_zero_recall() {
    let dir = TempDir::new().unwrap();
    running_example(&dir);
    let empty = ClusteringResult {
        params: None,
        n: 5,
        clusters: vec![],
        outliers: (0..5).collect(),
    };
    std::fs::write(dir.path().join("empty.json"), empty.to_json()).unwrap();
    let out = run(&["eval", "--result", "empty.json", "--truth", "truth.json"], dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("recall    0.0000"));
}

#[test]
fn eval_rejects_size_mismatch() {
    let dir = TempDir::new().unwrap();
    running_example(&dir);
    let wrong = GroundTruth::from_clusters(7, vec![]);
    std::fs::write(dir.path().join("wrong.json"), serde_json::to_string(&wrong).unwrap()).unwrap();
    let empty = ClusteringResult { params: None, n: 5, clusters: vec![], outliers: (0..5).collect() };
    std::fs::write(dir.path().join("empty.json"), empty.to_json()).unwrap();
    let out = run(&["eval", "--result", "empty.json", "--truth", "wrong.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("5 points but the truth has 7"));
}

#[test]
fn missing_input_is_a_usage_error_naming_the_path() {
    let dir = TempDir::new().unwrap();
    let out = run(&["cluster", "--input", "no/such/file.csv", "--k", "3", "--min-sup", "0.1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no/such/file.csv"));
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    running_example(&dir);
    let both = run(
        &["cluster", "--membership", "z.csv", "--min-sup", "0.4", "--min-cluster-size", "2"],
        dir.path(),
    );
    assert_eq!(both.status.code(), Some(2));
    let neither = run(&["cluster", "--membership", "z.csv"], dir.path());
    assert_eq!(neither.status.code(), Some(2));
    let bad_tie = run(&["cluster", "--membership", "z.csv", "--min-sup", "0.4", "--tie-break", "(S0,1)"], dir.path());
    assert_eq!(bad_tie.status.code(), Some(2));
    let bad_sizes = run(&["bench", "--sizes", ""], dir.path());
    assert_eq!(bad_sizes.status.code(), Some(2));
    assert!(stderr(&bad_sizes).contains("size list is empty"));
}

#[test]
fn environment_supplies_flags() {
    let dir = TempDir::new().unwrap();
    running_example(&dir);
    let out = bin()
        .args(["cluster", "--membership", "z.csv"])
        .env("SUBSPACE_FP_MIN_SUP", "0.4")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let result = ClusteringResult::from_json(&stdout(&out)).unwrap();
    assert_eq!(result.clusters.len(), 2);
}

#[test]
fn generate_cluster_and_sweep_sidecar() {
    let dir = TempDir::new().unwrap();
    let spec = subspace_fp::dataset::SyntheticSpec {
        n: 300,
        d: 6,
        seed: 3,
        clusters: vec![
            subspace_fp::dataset::ClusterSpec::spread(0..120, 0..3, 2.0, 8.0, 0.05),
            subspace_fp::dataset::ClusterSpec::spread(120..240, 3..6, 8.0, 2.0, 0.05),
        ],
        background: None,
    };
    std::fs::write(dir.path().join("spec.toml"), spec.to_toml()).unwrap();
    let gen = run(&["generate", "--spec", "spec.toml", "--out", "x.csv", "--truth", "t.json"], dir.path());
    assert!(gen.status.success(), "{}", stderr(&gen));

    let no_header = run(&["cluster", "--input", "x.csv", "--k", "4", "--min-sup", "0.3"], dir.path());
    assert_eq!(no_header.status.code(), Some(1));
    assert!(stderr(&no_header).contains("--header"));

    let out = run(
        &["cluster", "--input", "x.csv", "--header", "--k", "4,6", "--min-sup", "0.3", "--out", "r.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let sweep: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json.sweep.json")).unwrap()).unwrap();
    assert_eq!(sweep.as_array().unwrap().len(), 2);
    let eval = run(&["eval", "--result", "r.json", "--truth", "t.json"], dir.path());
    let text = stdout(&eval);
    let f1: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("f1"))
        .map(|v| v.trim().parse().unwrap())
        .unwrap();
    assert!(f1 > 0.8, "{text}");
    assert!(text.lines().all(|l| l.split_whitespace().nth(1).is_some_and(|v| v.len() == 6)));
}

#[test]
fn bench_writes_one_row_per_size() {
    let dir = TempDir::new().unwrap();
    let out = run(&["bench", "--sizes", "100x5", "--out", "b.csv"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("b.csv")).unwrap();
    let rows: Vec<_> = text.lines().collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].starts_with("100,5,"));
    assert!(rows[1].ends_with(",ok"));

    let out = run(&["bench", "--sizes", "200x4,100x4", "--out", "b.json"], dir.path());
    assert!(out.status.success());
    let report: subspace_fp::bench::BenchReport =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("b.json")).unwrap()).unwrap();
    let keys: Vec<_> = report.rows.iter().map(|r| (r.n, r.d)).collect();
    assert_eq!(keys, vec![(100, 4), (200, 4)]);
}
