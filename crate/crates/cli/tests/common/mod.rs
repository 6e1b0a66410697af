#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use regex::Regex;
use walkdir::WalkDir;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(rel: &str) -> PathBuf {
    fixtures().join(rel)
}

pub fn es6migrate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_es6migrate"))
        .args(args)
        .env("ES6MIGRATE_LOG", "warn")
        .output()
        .expect("binary runs")
}

pub fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Refactors fixture `rel` into a fresh directory.
pub fn refactor_into(rel: &str, extra: &[&str]) -> (tempfile::TempDir, Output) {
    let out = tempfile::tempdir().unwrap();
    let root = fixture(rel);
    let mut args = vec!["refactor", "--root", s(&root), "--out", s(out.path())];
    args.extend_from_slice(extra);
    let o = es6migrate(&args);
    (out, o)
}

pub fn copy_dir(from: &Path, to: &Path) {
    for e in WalkDir::new(from) {
        let e = e.unwrap();
        let target = to.join(e.path().strip_prefix(from).unwrap());
        if e.file_type().is_dir() {
            fs::create_dir_all(&target).unwrap();
        } else {
            fs::copy(e.path(), &target).unwrap();
        }
    }
}

/// Relative path to text for every file under `dir`.
pub fn tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<(String, Vec<u8>)> = WalkDir::new(dir)
        .sort_by_file_name()
        .into_iter()
        .map(|e| e.unwrap())
        .filter(|e| e.file_type().is_file())
        .map(|e| {
            let rel = e
                .path()
                .strip_prefix(dir)
                .unwrap()
                .to_str()
                .unwrap()
                .replace('\\', "/");
            (rel, fs::read(e.path()).unwrap())
        })
        .collect();
    out.sort();
    out
}

/// `node` if it can be run.
pub fn node() -> Option<PathBuf> {
    let ok = Command::new("node")
        .arg("--version")
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false);
    ok.then(|| PathBuf::from("node"))
}

/// Runs a script with node from `cwd`; stdout and stderr together.
pub fn run_node(node: &Path, script: &Path, cwd: &Path) -> String {
    let o = Command::new(node)
        .arg(script)
        .current_dir(cwd)
        .output()
        .unwrap();
    let mut text = String::from_utf8_lossy(&o.stdout).into_owned();
    text.push_str(&String::from_utf8_lossy(&o.stderr));
    assert!(o.status.success(), "{} failed:\n{text}", script.display());
    text
}

/// Node output of `entry` before and after refactoring fixture `rel`.
pub fn outputs(node: &Path, rel: &str, entry: &str, extra: &[&str]) -> (String, String) {
    let root = fixture(rel);
    let before = run_node(node, &root.join(entry), &root);
    let (out, o) = refactor_into(rel, extra);
    assert!(matches!(code(&o), 0 | 3), "{rel}: {}", stderr(&o));
    fs::write(out.path().join("package.json"), "{\"type\": \"module\"}\n").unwrap();
    let after = run_node(node, &out.path().join(entry), out.path());
    (before, after)
}

/// Runs a page's scripts in document order: classic scripts as one script,
/// module scripts through a module entry next to the page.
pub fn page_output(node: &Path, dir: &Path, page: &str) -> String {
    let html = fs::read_to_string(dir.join(page)).unwrap();
    let tag = Regex::new(r#"(?s)<script([^>]*)>(.*?)</script>"#).unwrap();
    let src = Regex::new(r#"src="([^"]+)""#).unwrap();
    let mut classic = String::new();
    let mut module = String::new();
    for c in tag.captures_iter(&html) {
        let is_module = c[1].contains("type=\"module\"");
        match src.captures(&c[1]) {
            Some(m) if is_module => module.push_str(&format!("import \"./{}\";\n", &m[1])),
            Some(m) => classic.push_str(&fs::read_to_string(dir.join(&m[1])).unwrap()),
            None if is_module => module.push_str(&c[2]),
            None => classic.push_str(&c[2]),
        }
        classic.push('\n');
    }
    let work = tempfile::tempdir().unwrap();
    if module.is_empty() {
        let script = work.path().join("page.js");
        fs::write(&script, classic).unwrap();
        run_node(node, &script, work.path())
    } else {
        let script = dir.join("page.entry.mjs");
        fs::write(&script, module).unwrap();
        let text = run_node(node, &script, dir);
        fs::remove_file(&script).unwrap();
        text
    }
}
