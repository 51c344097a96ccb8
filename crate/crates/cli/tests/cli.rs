use rtl_cli::cache::{fingerprint_with_version, Cache, ResultRecord};
use serde_json::Value;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_rtl");

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn rtl(args: &[&str]) -> Out {
    rtl_stdin(args, None)
}

fn rtl_stdin(args: &[&str], input: Option<&str>) -> Out {
    let mut child = Command::new(BIN)
        .args(args)
        .env_remove("RTL_CACHE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut stdin = child.stdin.take().unwrap();
        if let Some(text) = input {
            stdin.write_all(text.as_bytes()).unwrap();
        }
    }
    let o = child.wait_with_output().unwrap();
    Out {
        code: o.status.code().unwrap_or(-1),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn cache_arg(dir: &Path) -> String {
    dir.join("results.jsonl").display().to_string()
}

#[test]
fn count_k4_six_colors() {
    let o = rtl(&["--no-cache", "count", "-g", "C~", "-r", "6"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let recs = lines(&o.stdout);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["result"]["count"], "45936");
    assert_eq!(recs[0]["operation"], "count");
}

#[test]
fn brute_and_engine_agree() {
    for g in ["C~", "D~{", "Dhc", "EFz_"] {
        let a = lines(&rtl(&["--no-cache", "count", "-g", g, "-r", "5"]).stdout);
        let b = lines(&rtl(&["--no-cache", "count", "-g", g, "-r", "5", "--brute"]).stdout);
        assert_eq!(a[0]["result"]["count"], b[0]["result"]["count"], "{g}");
    }
}

#[test]
fn search_small() {
    let o = rtl(&["--no-cache", "search", "-n", "4", "-r", "12", "--summary"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let r = &lines(&o.stdout)[0]["result"];
    assert_eq!(r["best_graph6"], "C~");
    assert_eq!(r["classes"], 11);
}

#[test]
fn csv_matches_json() {
    let json = lines(&rtl(&["--no-cache", "count", "-g", "C~", "-r", "7"]).stdout);
    let csv = rtl(&["--no-cache", "--format", "csv", "count", "-g", "C~", "-r", "7"]).stdout;
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let row = reader.records().next().unwrap().unwrap();
    let get = |k: &str| row.get(headers.iter().position(|h| h == k).unwrap()).unwrap().to_string();
    assert_eq!(get("result.count"), json[0]["result"]["count"].as_str().unwrap());
    assert_eq!(get("fingerprint"), json[0]["fingerprint"].as_str().unwrap());
    assert_eq!(get("params.r"), "7");
}

#[test]
fn cache_hit_is_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let c = cache_arg(dir.path());
    let args = ["--cache", c.as_str(), "count", "-g", "D~{", "-r", "6"];
    let first = lines(&rtl(&args).stdout);
    let second = lines(&rtl(&args).stdout);
    assert_eq!(first[0]["cached"], false);
    assert_eq!(second[0]["cached"], true);
    assert_eq!(first[0]["result"], second[0]["result"]);
    assert_eq!(Cache::open(Path::new(&c)).unwrap().len(), 1);
}

#[test]
fn version_change_invalidates() {
    let dir = tempfile::tempdir().unwrap();
    let c = cache_arg(dir.path());
    let params = serde_json::json!({ "graph6": "C~", "k": 4, "method": "engine", "r": 6 });
    let mut rec = ResultRecord::new("count", params.clone(), serde_json::json!({ "count": "0" }));
    rec.version = "0.0.0-old".into();
    rec.fingerprint = fingerprint_with_version("0.0.0-old", "count", &params);
    rtl_cli::cache::append_record(Path::new(&c), &rec).unwrap();
    let o = lines(&rtl(&["--cache", &c, "count", "-g", "C~", "-r", "6"]).stdout);
    assert_eq!(o[0]["cached"], false);
    assert_eq!(o[0]["result"]["count"], "45936");
}

#[test]
fn corrupt_lines_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let c = cache_arg(dir.path());
    rtl(&["--cache", &c, "count", "-g", "C~", "-r", "6"]);
    let mut f = std::fs::OpenOptions::new().append(true).open(&c).unwrap();
    f.write_all(b"{not json\n\n{\"fingerprint\":1}\n").unwrap();
    drop(f);
    let o = rtl(&["--cache", &c, "count", "-g", "C~", "-r", "6"]);
    assert_eq!(o.code, 0);
    assert_eq!(lines(&o.stdout)[0]["cached"], true);
    assert!(o.stderr.contains("warning"), "{}", o.stderr);
    let cache = Cache::open(Path::new(&c)).unwrap();
    assert_eq!(cache.len(), 1);
    assert!(cache.skipped >= 2);
}

#[test]
fn concurrent_writers_threads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("results.jsonl");
    std::thread::scope(|s| {
        for t in 0..8 {
            let path = &path;
            s.spawn(move || {
                for i in 0..50 {
                    let big = "x".repeat(5000 + i);
                    let rec = ResultRecord::new("stress", serde_json::json!({ "t": t, "i": i }), Value::String(big));
                    rtl_cli::cache::append_record(path, &rec).unwrap();
                }
            });
        }
    });
    let cache = Cache::open(&path).unwrap();
    assert_eq!(cache.len(), 400);
    assert_eq!(cache.skipped, 0);
}

#[test]
fn concurrent_writers_processes() {
    let dir = tempfile::tempdir().unwrap();
    let c = cache_arg(dir.path());
    let graphs: Vec<String> = rtl_core::graph::enumerate_graphs(5).unwrap().map(|g| g.graph6()).collect();
    let children: Vec<_> = (0..6)
        .map(|p| {
            let r = (5 + p).to_string();
            let mut child = Command::new(BIN)
                .args(["--cache", &c, "count", "-g", "-", "-r", &r])
                .stdin(Stdio::piped())
                .stdout(Stdio::null())
                .stderr(Stdio::piped())
                .spawn()
                .unwrap();
            child.stdin.take().unwrap().write_all(graphs.join("\n").as_bytes()).unwrap();
            child
        })
        .collect();
    for child in children {
        assert!(child.wait_with_output().unwrap().status.success());
    }
    let cache = Cache::open(Path::new(&c)).unwrap();
    assert_eq!(cache.skipped, 0);
    assert_eq!(cache.len(), 6 * graphs.len());
}

#[test]
fn exit_codes() {
    assert_eq!(rtl(&["--no-cache", "count", "-g", "C~", "-r", "6"]).code, 0);
    assert_eq!(rtl(&["nonsense"]).code, 2);
    assert_eq!(rtl(&["--no-cache", "count", "-r", "6"]).code, 2);
    assert_eq!(rtl(&["--no-cache", "clean", "-t", "{\"graph\":\"C~\",\"r\":6,\"lists\":[[0],[1],[2],[3],[4],[5]]}"]).code, 2);
    let bad = rtl(&["--no-cache", "count", "-g", "zz", "-r", "6"]);
    assert_eq!(bad.code, 4);
    assert_eq!(lines(&bad.stderr)[0]["error"]["kind"], "parse");
    let cap = rtl(&["--no-cache", "--oracle-cap", "10", "count", "-g", "C~", "-r", "6", "--brute"]);
    assert_eq!(cap.code, 3, "{}", cap.stderr);
    let missing = rtl(&["--no-cache", "template-stats", "-t", "/nonexistent/template.json"]);
    assert_eq!(missing.code, 1);
    assert_eq!(rtl(&["--help"]).code, 0);
}

#[test]
fn stdin_input() {
    let o = rtl_stdin(&["--no-cache", "count", "-g", "-", "-r", "6"], Some("C~\nC^\n"));
    assert_eq!(o.code, 0, "{}", o.stderr);
    let recs = lines(&o.stdout);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["params"]["graph6"], "C~");
    assert_eq!(recs[1]["params"]["graph6"], "C^");
}

#[test]
fn batch_equals_single_shots() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("five.g6");
    let graphs: Vec<String> = rtl_core::graph::enumerate_graphs(5).unwrap().map(|g| g.graph6()).collect();
    std::fs::write(&file, graphs.join("\n")).unwrap();
    let batch = lines(&rtl(&["--no-cache", "count", "-g", file.to_str().unwrap(), "-r", "6"]).stdout);
    assert_eq!(batch.len(), graphs.len());
    for (g, rec) in graphs.iter().zip(&batch) {
        let single = lines(&rtl(&["--no-cache", "count", "-g", g, "-r", "6"]).stdout);
        assert_eq!(&single[0], rec);
    }
}

#[test]
fn output_independent_of_workers() {
    let graphs: Vec<String> = rtl_core::graph::enumerate_graphs(5).unwrap().map(|g| g.graph6()).collect();
    let input = graphs.join("\n");
    let runs: Vec<String> = ["1", "2", "7"]
        .iter()
        .map(|w| rtl_stdin(&["--no-cache", "--workers", w, "count", "-g", "-", "-r", "7"], Some(&input)).stdout)
        .collect();
    assert!(!runs[0].is_empty());
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn template_commands() {
    let t = r#"{"graph":"C~","r":6,"lists":[[0,1],[1,2],[2,3],[3,4],[4,5],[5,0]]}"#;
    let stats = lines(&rtl(&["--no-cache", "template-stats", "-t", t]).stdout);
    assert_eq!(stats[0]["result"]["edges"], 6);
    let clean = rtl(&["--no-cache", "clean", "-t", t, "--xi", "1/2"]);
    assert_eq!(clean.code, 0, "{}", clean.stderr);
    assert!(lines(&clean.stdout)[0]["result"]["steps"].is_array());
    let crit = rtl(&["--no-cache", "critical", "-t", t]);
    assert_eq!(crit.code, 0, "{}", crit.stderr);
}

#[test]
fn threshold_at_given_n() {
    let o = rtl(&["--no-cache", "container-threshold", "-r", "12", "-n", "1000"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(lines(&o.stdout)[0]["result"]["passes"], false);
}

#[test]
fn other_commands_run() {
    for args in [
        vec!["--no-cache", "poly", "-g", "C~", "--eval", "6"],
        vec!["--no-cache", "closeness", "-g", "D~{"],
        vec!["--no-cache", "cliques", "-g", "D~{", "--list"],
        vec!["--no-cache", "supersat", "-n", "6", "-t", "1", "-k", "3", "-e", "15"],
        vec!["--no-cache", "bounds-compare", "-r", "12"],
        vec!["--no-cache", "container-stats", "-g", "C~", "-r", "6", "--materialize"],
    ] {
        let o = rtl(&args);
        assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
        assert_eq!(lines(&o.stdout).len(), 1, "{args:?}");
    }
    let poly = lines(&rtl(&["--no-cache", "poly", "-g", "C~", "--eval", "6"]).stdout);
    assert_eq!(poly[0]["result"]["value"], "45936");
}
