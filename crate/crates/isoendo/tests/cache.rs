use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use isoendo::cache::{atomic_write, Session};
use isoendo_core::graph::{enumerate_cycles, Cycle};
use isoendo_core::schoof::BoundMode;
use serde_json::Value;

fn run(args: &[&str], cache_env: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_isoendo"));
    cmd.args(args);
    match cache_env {
        Some(d) => cmd.env("ISOGENY_ENDO_CACHE", d),
        None => cmd.env_remove("ISOGENY_ENDO_CACHE"),
    };
    cmd.output().unwrap()
}

fn entries(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(dir)
        .map(|rd| rd.map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect())
        .unwrap_or_default();
    v.sort();
    v
}

#[test]
fn flag_writes_cache_and_reuses_it() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = run(&["reproduce", "--p", "31", "--cache-dir", d], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(entries(dir.path()), vec!["graph-p31-l2.json".to_string()]);
    let file = dir.path().join("graph-p31-l2.json");
    let first = fs::read(&file).unwrap();
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["digest"].as_str().unwrap().len(), 64);
    assert!(!v["payload"]["traces"].as_object().unwrap().is_empty());

    // a second run reads the traces back and leaves the file alone
    let again = run(&["reproduce", "--p", "31", "--cache-dir", d], None);
    assert_eq!(again.stdout, out.stdout);
    assert_eq!(fs::read(&file).unwrap(), first);

    // from scratch in another directory the bytes are the same
    let other = tempfile::tempdir().unwrap();
    run(&["reproduce", "--p", "31", "--cache-dir", other.path().to_str().unwrap()], None);
    assert_eq!(fs::read(other.path().join("graph-p31-l2.json")).unwrap(), first);
}

#[test]
fn environment_overrides_flag() {
    let flag = tempfile::tempdir().unwrap();
    let env = tempfile::tempdir().unwrap();
    let out = run(&["graph", "--p", "31", "--cache-dir", flag.path().to_str().unwrap()], Some(env.path()));
    assert_eq!(out.status.code(), Some(0));
    assert!(entries(flag.path()).is_empty());
    assert_eq!(entries(env.path()), vec!["graph-p31-l2.json".to_string()]);
}

#[test]
fn corrupt_cache_is_rebuilt_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let file = dir.path().join("graph-p31-l2.json");
    run(&["graph", "--p", "31", "--cache-dir", d], None);
    let good = fs::read(&file).unwrap();

    fs::write(&file, b"{ not json").unwrap();
    let out = run(&["graph", "--p", "31", "--cache-dir", d], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());
    assert_eq!(fs::read(&file).unwrap(), good);

    // valid JSON whose digest no longer matches
    let mut v: Value = serde_json::from_slice(&good).unwrap();
    v["payload"]["vertices"][0]["j"] = Value::String("5".into());
    fs::write(&file, serde_json::to_vec(&v).unwrap()).unwrap();
    let out = run(&["graph", "--p", "31", "--cache-dir", d], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert_eq!(fs::read(&file).unwrap(), good);
}

#[test]
fn cached_traces_match_fresh_ones() {
    let dir = tempfile::tempdir().unwrap();
    let cycles: Vec<Cycle> = {
        let s = Session::open(103, 2, None).unwrap();
        (0..s.graph.vertices.len()).flat_map(|v| enumerate_cycles(&s.graph, v, 3)).collect()
    };
    let mut a = Session::open(103, 2, Some(dir.path())).unwrap();
    let fresh: Vec<_> = cycles.iter().map(|c| a.trace(c, BoundMode::Sharp).unwrap()).collect();
    a.save();
    let mut b = Session::open(103, 2, Some(dir.path())).unwrap();
    for (c, t) in cycles.iter().zip(&fresh) {
        assert_eq!(&b.trace(c, BoundMode::Sharp).unwrap(), t);
    }
    assert_eq!(b.cache_path(), Some(dir.path().join("graph-p103-l2.json").as_path()));
}

#[test]
fn atomic_write_replaces_whole_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sub").join("x.json");
    atomic_write(&path, b"first").unwrap();
    atomic_write(&path, b"second, longer").unwrap();
    assert_eq!(fs::read(&path).unwrap(), b"second, longer");
    assert_eq!(entries(&dir.path().join("sub")), vec!["x.json".to_string()]);
}

#[test]
fn unwritable_cache_is_not_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, b"").unwrap();
    // the cache directory would have to live under a regular file
    let out = run(&["graph", "--p", "31", "--cache-dir", blocker.join("c").to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
