use std::fs;
use std::path::Path;

use pkw::checkpoint::{read_shard_file, shard_path, write_shard_file};
use pkw::cli::run;
use pkw::format::{DimsJson, ReportJson};
use pkw::pkw_core::driver::KernelReport;
use pkw::pkw_core::Partition;

fn pkw(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pkw").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn reports(stdout: &str) -> Vec<ReportJson> {
    stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn dims_two_by_two() {
    let (code, out, _) = pkw(&["dims", "--a", "2", "--b", "2"]);
    assert_eq!(code, 0);
    let dims: Vec<DimsJson> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let got: Vec<(&str, u64, u64)> = dims.iter().map(|d| (d.lambda.as_str(), d.p, d.p_prime)).collect();
    assert_eq!(got, [("4", 1, 1), ("3,1", 0, 0), ("2,2", 1, 1)]);
}

#[test]
fn dims_csv_single_row() {
    let (code, out, _) = pkw(&["dims", "--a", "1", "--b", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "lambda,p,p_prime\n4,1,1\n");
}

#[test]
fn invalid_arguments_exit_2() {
    assert_eq!(pkw(&["dims", "--a", "0", "--b", "3"]).0, 2);
    assert_eq!(pkw(&["kernel", "--a", "16", "--b", "16"]).0, 2);
    assert_eq!(pkw(&["kernel", "--a", "2", "--b", "2", "--lambda", "3,2"]).0, 2);
    assert_eq!(
        pkw(&["kernel", "--a", "2", "--b", "2", "--shards", "2", "--shard-id", "0"]).0,
        2
    );
    assert_eq!(
        pkw(&[
            "kernel",
            "--a",
            "2",
            "--b",
            "2",
            "--shards",
            "2",
            "--shard-id",
            "2",
            "--checkpoint",
            "x"
        ])
        .0,
        2
    );
    assert_eq!(pkw(&["no-such-command"]).0, 2);
}

#[test]
fn kernel_three_by_three() {
    let (code, out, _) = pkw(&["kernel", "--a", "3", "--b", "3", "--seed", "5"]);
    assert_eq!(code, 0);
    let rs = reports(&out);
    assert_eq!(rs.len(), 12);
    for r in &rs {
        assert_eq!(r.kernel_mult, 0, "{}", r.lambda);
        assert_eq!(r.rank, r.p);
        assert_eq!(r.status, if r.p == 0 { "skipped" } else { "computed" });
        assert_eq!((r.matrix.rows, r.matrix.cols), (r.p_prime, r.p));
        let back = KernelReport::try_from(r).unwrap();
        assert_eq!(&ReportJson::from(&back), r);
    }
    let nonzero: Vec<&str> = rs.iter().filter(|r| r.p > 0).map(|r| r.lambda.as_str()).collect();
    assert_eq!(nonzero, ["9", "7,2", "6,3", "5,2,2", "4,4,1"]);
}

#[test]
fn kernel_out_dir_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let (code, out, _) = pkw(&["kernel", "--a", "2", "--b", "3", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(fs::read_to_string(out_dir.join("reports.jsonl")).unwrap(), out);
    let summary = fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    let mut lines = summary.lines();
    assert_eq!(lines.next(), Some("lambda,p,p_prime,rank,kernel_mult"));
    assert!(lines.any(|l| l == "\"4,2\",1,1,1,0"), "{summary}");
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "kernel");
    assert_eq!(manifest["a"], 2);
    assert_eq!(manifest["lambdas"].as_array().unwrap().len(), 4);
}

#[test]
fn forced_kernel_for_a_greater_than_b() {
    let (code, out, _) = pkw(&["kernel", "--a", "3", "--b", "2", "--lambda", "2,2,2"]);
    assert_eq!(code, 0);
    let r = &reports(&out)[0];
    assert_eq!((r.p, r.p_prime, r.rank, r.kernel_mult), (1, 0, 0, 1));
}

fn run_shards(root: &Path, a: &str, b: &str, n: u64, ids: impl Iterator<Item = u64>) {
    for c in ids {
        let (code, _, err) = pkw(&[
            "kernel",
            "--a",
            a,
            "--b",
            b,
            "--shards",
            &n.to_string(),
            "--shard-id",
            &c.to_string(),
            "--checkpoint",
            root.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
    }
}

#[test]
fn merge_matches_direct_run() {
    let dir = tempfile::tempdir().unwrap();
    run_shards(dir.path(), "2", "4", 3, 0..3);
    let (code, merged, _) = pkw(&[
        "merge",
        "--a",
        "2",
        "--b",
        "4",
        "--checkpoint",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (_, direct, _) = pkw(&["kernel", "--a", "2", "--b", "4"]);
    assert_eq!(merged, direct);
}

#[test]
fn merge_missing_shard_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    run_shards(dir.path(), "2", "3", 4, [0, 1, 3].into_iter());
    let (code, _, err) = pkw(&[
        "merge",
        "--a",
        "2",
        "--b",
        "3",
        "--checkpoint",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 4, "{err}");
    let (code, _, _) = pkw(&[
        "merge",
        "--a",
        "2",
        "--b",
        "3",
        "--checkpoint",
        dir.path().join("none").to_str().unwrap(),
    ]);
    assert_eq!(code, 4);
}

#[test]
fn merge_duplicate_record_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    run_shards(dir.path(), "2", "3", 2, 0..2);
    let lambda: Partition = "4,2".parse().unwrap();
    let path = shard_path(dir.path(), 2, 3, &lambda, 1, 2);
    let mut file = read_shard_file(&path).unwrap();
    let first = file.records[0].clone();
    file.records.push(first);
    write_shard_file(&path, &file).unwrap();
    let (code, _, err) = pkw(&[
        "merge",
        "--a",
        "2",
        "--b",
        "3",
        "--checkpoint",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 4);
    assert!(err.contains("duplicate"), "{err}");
}

#[test]
fn checkpoint_resume_reuses_shards() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_str().unwrap();
    run_shards(dir.path(), "2", "3", 2, 0..1);
    let (_, direct, _) = pkw(&["kernel", "--a", "2", "--b", "3", "--lambda", "6"]);

    // a tampered shard 0 that is reused shows up in the merged matrix
    let lambda: Partition = "6".parse().unwrap();
    let kept = shard_path(dir.path(), 2, 3, &lambda, 0, 2);
    let mut file = read_shard_file(&kept).unwrap();
    file.records[0].value = "12345".into();
    write_shard_file(&kept, &file).unwrap();

    let (code, out, err) = pkw(&[
        "kernel",
        "--a",
        "2",
        "--b",
        "3",
        "--lambda",
        "6",
        "--shards",
        "2",
        "--checkpoint",
        root,
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(read_shard_file(&kept).unwrap(), file);
    assert_ne!(out, direct);

    fs::remove_file(&kept).unwrap();
    let (code, out, err) = pkw(&[
        "kernel",
        "--a",
        "2",
        "--b",
        "3",
        "--lambda",
        "6",
        "--shards",
        "2",
        "--checkpoint",
        root,
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, direct);
}

#[test]
fn straighten_output() {
    let (code, out, _) = pkw(&["straighten", "--filling", "2 1/1 2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "2 1/1 2 =\n-1 * 1 1/2 2\n");
    let (code, out, _) = pkw(&["straighten", "--filling", "1 2/1 2", "--psi"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("\n0\n"), "{out}");
    assert_eq!(pkw(&["straighten", "--filling", "1/2 3"]).0, 2);
}

#[test]
fn verify_example_exit_codes() {
    let (code, out, _) = pkw(&["verify-example"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.matches(" ok").count(), 22);
    assert_eq!(pkw(&["verify-example", "--corrupt-sign"]).0, 1);
}
