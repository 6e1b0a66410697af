#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use es6migrate_core::{build_mdg, AnalysisOptions, Project, ProjectAnalysis, SourceFile};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn walk(dir: &Path, out: &mut Vec<PathBuf>) {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    for p in entries {
        if p.is_dir() {
            walk(&p, out);
        } else {
            out.push(p);
        }
    }
}

/// Files under `dir` with one of `exts`, as (relative path, text).
pub fn files_with(dir: &Path, exts: &[&str]) -> Vec<(String, String)> {
    let mut paths = Vec::new();
    walk(dir, &mut paths);
    paths
        .into_iter()
        .filter(|p| exts.iter().any(|e| p.extension().is_some_and(|x| x == *e)))
        .map(|p| {
            let rel = p
                .strip_prefix(dir)
                .unwrap()
                .to_str()
                .unwrap()
                .replace('\\', "/");
            (rel, fs::read_to_string(&p).unwrap())
        })
        .collect()
}

/// Loads a fixture project: its `.js` files and HTML pages.
pub fn project(rel: &str) -> Project {
    let dir = fixtures().join(rel);
    let files = files_with(&dir, &["js"])
        .into_iter()
        .map(|(p, t)| SourceFile::js(p, t))
        .collect();
    let mut project = Project::new(files);
    for (p, t) in files_with(&dir, &["html"]) {
        project.add_page(&p, &t);
    }
    project
}

pub fn analyse(rel: &str, options: &AnalysisOptions) -> ProjectAnalysis {
    build_mdg(&project(rel), options).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub type Edge = (String, String, String, String);

pub fn edges(pa: &ProjectAnalysis) -> BTreeSet<Edge> {
    pa.mdg
        .deps
        .iter()
        .map(|d| {
            (
                d.from.path.clone(),
                d.to.path.clone(),
                d.feature.clone().unwrap_or_else(|| "-".into()),
                d.usage.letter().to_string(),
            )
        })
        .collect()
}

/// Hand-written edge list: `from to feature usage` per line, `-` for no
/// feature, `#` comments.
pub fn golden_edges(name: &str) -> BTreeSet<Edge> {
    let text =
        fs::read_to_string(fixtures().join("golden/edges").join(format!("{name}.txt"))).unwrap();
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            assert_eq!(f.len(), 4, "bad golden line {l:?}");
            (f[0].into(), f[1].into(), f[2].into(), f[3].into())
        })
        .collect()
}

pub fn feature_names(pa: &ProjectAnalysis, path: &str) -> BTreeSet<String> {
    pa.module(path)
        .unwrap_or_else(|| panic!("no module {path}"))
        .features
        .iter()
        .filter(|f| f.kind != es6migrate_core::mdg::FeatureKind::Mutator)
        .map(|f| f.name.clone())
        .collect()
}
