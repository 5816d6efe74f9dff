use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tdkernel"));
    c.env_remove("TDKERNEL_EXACT_BUDGET");
    c
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = cmd.output().unwrap();
    (
        status.code().unwrap(),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn p30(dir: &Path) -> PathBuf {
    let path = dir.join("p30.gr");
    let (code, _, err) = run(bin().args(["generate", "path:30", "--out"]).arg(&path));
    assert_eq!(code, 0, "{err}");
    path
}

#[test]
fn p30_exact_ratio_row() {
    let dir = tempfile::tempdir().unwrap();
    let g = p30(dir.path());
    let trace = dir.path().join("trace.jsonl");
    let (code, out, err) = run(bin()
        .args([
            "kernelize",
            "--problem",
            "ds",
            "--epsilon",
            "1",
            "--oracle",
            "exact",
            "--exact-opt",
            "--graph",
        ])
        .arg(&g)
        .arg("--trace")
        .arg(&trace));
    assert_eq!(code, 0, "{err}");
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 2);
    assert_eq!(
        rows[0],
        [
            "instance_id",
            "n",
            "m",
            "width",
            "delta",
            "problem",
            "epsilon",
            "backend",
            "size",
            "opt",
            "ratio",
            "oracle_calls",
            "max_query_size",
            "wall_ms"
        ]
    );
    let row = &rows[1];
    assert_eq!(
        &row[1..10],
        &["30", "29", "1", "2", "ds", "1.0", "exact", "10", "10"]
    );
    assert!(row[10].parse::<f64>().unwrap() <= 2.0);
    let lines: Vec<serde_json::Value> = std::fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.last().unwrap()["event"], "summary");
    assert_eq!(lines.last().unwrap()["s"], 24);
}

#[test]
fn greedy_leaves_ratio_empty() {
    let dir = tempfile::tempdir().unwrap();
    let g = p30(dir.path());
    let (code, out, _) = run(bin()
        .args([
            "kernelize",
            "--problem",
            "ids",
            "--epsilon",
            "0.5",
            "--oracle",
            "greedy",
            "--graph",
        ])
        .arg(&g));
    assert_eq!(code, 0);
    let row = &csv_rows(&out)[1];
    assert_eq!((row[9].as_str(), row[10].as_str()), ("", ""));
    let (code, out, _) = run(bin()
        .args([
            "kernelize",
            "--problem",
            "ids",
            "--epsilon",
            "1/2",
            "--oracle",
            "greedy",
            "--exact-opt",
            "--graph",
        ])
        .arg(&g));
    assert_eq!(code, 0);
    let row = &csv_rows(&out)[1];
    assert_eq!(row[9], "10");
    assert!(!row[10].is_empty());
}

#[test]
fn cds_on_disconnected_graph() {
    let (code, _, err) = run(bin()
        .args(["kernelize", "--problem", "cds", "--epsilon", "1", "--graph"])
        .arg(data("two_triangles.gr")));
    assert_eq!(code, 5);
    assert!(err.contains("handle each component separately"), "{err}");
}

#[test]
fn given_decomposition_is_used() {
    let (code, out, err) = run(bin()
        .args([
            "kernelize",
            "--problem",
            "cds",
            "--epsilon",
            "2",
            "--exact-opt",
            "--graph",
        ])
        .arg(data("c6.gr"))
        .arg("--td")
        .arg(data("c6.td")));
    assert_eq!(code, 0, "{err}");
    let row = &csv_rows(&out)[1];
    assert_eq!(
        (row[3].as_str(), row[8].as_str(), row[9].as_str()),
        ("2", "4", "4")
    );
}

#[test]
fn exit_code_classes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gr");
    std::fs::write(&bad, "p tds 3 2\n1 2\n3 3\n").unwrap();
    let (code, _, err) = run(bin()
        .args(["kernelize", "--problem", "ds", "--epsilon", "1", "--graph"])
        .arg(&bad));
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    let td = dir.path().join("bad.td");
    std::fs::write(&td, "s td 1 3 6\nb 1 1 2 3\n").unwrap();
    let (code, _, err) = run(bin()
        .args(["kernelize", "--problem", "ds", "--epsilon", "1", "--graph"])
        .arg(data("c6.gr"))
        .arg("--td")
        .arg(&td));
    assert_eq!(code, 2);
    assert!(err.contains("vertex 3 is in no bag"), "{err}");

    let g = p30(dir.path());
    let (code, _, err) = run(bin()
        .args([
            "kernelize",
            "--problem",
            "ds",
            "--epsilon",
            "1",
            "--query-cap",
            "5",
            "--graph",
        ])
        .arg(&g));
    assert_eq!(code, 3);
    assert!(err.contains("query of size 30"), "{err}");

    let (code, _, _) = run(bin()
        .args(["kernelize", "--problem", "hs", "--epsilon", "1", "--graph"])
        .arg(&g));
    assert_eq!(code, 1);
    let (code, _, _) = run(bin()
        .args(["kernelize", "--problem", "ds", "--epsilon", "0", "--graph"])
        .arg(&g));
    assert_eq!(code, 1);
    let (code, _, _) = run(bin().args([
        "kernelize",
        "--problem",
        "ds",
        "--epsilon",
        "1",
        "--graph",
        "/nonexistent.gr",
    ]));
    assert_eq!(code, 1);

    let (code, _, err) = run(bin()
        .env("TDKERNEL_EXACT_BUDGET", "ds=10")
        .args([
            "kernelize",
            "--problem",
            "ds",
            "--epsilon",
            "1",
            "--oracle",
            "exact",
            "--graph",
        ])
        .arg(&g));
    assert_eq!(code, 5);
    assert!(err.contains("budget 10"), "{err}");
}

#[test]
fn generated_instances_fan_out_in_order() {
    let args = [
        "kernelize",
        "--problem",
        "capds",
        "--epsilon",
        "64",
        "--oracle",
        "greedy",
        "--family",
        "connected:40:4:0.1",
        "--count",
        "12",
        "--seed",
        "3",
        "--capacity",
        "2",
    ];
    let (code, out, err) = run(bin().args(args));
    assert_eq!(code, 0, "{err}");
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 13);
    for (i, row) in rows[1..].iter().enumerate() {
        assert_eq!(row[0], format!("connected:40:4:0.1#{}", 3 + i));
    }
    // Identical apart from the wall time column.
    let (_, again, _) = run(bin().args(args));
    let strip = |t: &str| {
        csv_rows(t)
            .into_iter()
            .map(|mut r| {
                r.pop();
                r
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&out), strip(&again));
}

#[test]
fn verify_examples() {
    let (code, out, _) = run(bin().args([
        "verify",
        "lemma-ds-ii",
        "--count",
        "200",
        "--max-n",
        "14",
        "--seed",
        "7",
    ]));
    assert_eq!(code, 0);
    assert!(out.starts_with("lemma-ds-ii: 200/200 pass"), "{out}");
    let (code, out, _) = run(bin().args(["verify", "irving", "--alpha", "2", "--count", "50"]));
    assert_eq!(code, 0);
    assert!(out.starts_with("irving: 50/50 pass"), "{out}");
    let (code, out, err) = run(bin().args(["verify", "combine-cds", "--count", "20", "--tighten"]));
    assert_eq!(code, 4);
    assert!(out.contains("seed 0:"), "{out}");
    assert!(err.contains("combine-cds (seeds 0"), "{err}");
    let (code, _, _) = run(bin().args(["verify", "no-such-lemma"]));
    assert_eq!(code, 1);
    let (code, out, _) =
        run(bin().args(["verify", "all", "--count", "5", "--max-n", "10", "--json"]));
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 12);
}

#[test]
fn decompose_writes_a_loadable_td() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("grid.gr");
    assert_eq!(
        run(bin().args(["generate", "grid:4:5", "--out"]).arg(&g)).0,
        0
    );
    let td = dir.path().join("grid.td");
    let (code, _, err) = run(bin().arg("decompose").arg(&g).arg("--out").arg(&td));
    assert_eq!(code, 0, "{err}");
    let (code, out, err) = run(bin()
        .args(["kernelize", "--problem", "ds", "--epsilon", "1", "--graph"])
        .arg(&g)
        .arg("--td")
        .arg(&td));
    assert_eq!(code, 0, "{err}");
    assert_eq!(csv_rows(&out)[1][3], "4");
}
