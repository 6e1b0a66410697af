//! Finds the JavaScript files and HTML pages of a project directory.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use globset::{Glob, GlobSet, GlobSetBuilder};
use walkdir::WalkDir;

use es6migrate_core::{Project, SourceFile};

/// Dependency install directories are never part of a project.
pub const DEFAULT_EXCLUDES: &[&str] = &[
    "node_modules/**",
    "**/node_modules/**",
    "**/vendor/**",
    "vendor/**",
];

pub fn exclude_set(extra: &[String]) -> Result<GlobSet> {
    let mut b = GlobSetBuilder::new();
    for g in DEFAULT_EXCLUDES
        .iter()
        .copied()
        .chain(extra.iter().map(String::as_str))
    {
        b.add(Glob::new(g).with_context(|| format!("bad exclude pattern `{g}`"))?);
    }
    Ok(b.build()?)
}

fn relative(root: &Path, p: &Path) -> Option<String> {
    let rel = p.strip_prefix(root).ok()?;
    let parts: Vec<&str> = rel.iter().map(|c| c.to_str()).collect::<Option<_>>()?;
    Some(parts.join("/"))
}

pub struct Discovered {
    pub project: Project,
    /// Paths of every `.js` file found, pages' inline scripts excluded.
    pub js_paths: Vec<String>,
}

/// Loads `root`. `skip_dirs` are absolute directories to leave out, such as
/// an output directory nested inside the root.
pub fn load_project(root: &Path, excludes: &GlobSet, skip_dirs: &[PathBuf]) -> Result<Discovered> {
    let mut files = Vec::new();
    let mut pages = Vec::new();
    let walker = WalkDir::new(root)
        .sort_by_file_name()
        .into_iter()
        .filter_entry(|e| !skip_dirs.iter().any(|d| e.path() == d.as_path()));
    for entry in walker {
        let entry = entry.with_context(|| format!("cannot walk {}", root.display()))?;
        if !entry.file_type().is_file() {
            continue;
        }
        let Some(rel) = relative(root, entry.path()) else {
            log::warn!("skipping non-UTF-8 path {}", entry.path().display());
            continue;
        };
        if excludes.is_match(&rel) {
            continue;
        }
        let ext = entry
            .path()
            .extension()
            .and_then(|e| e.to_str())
            .unwrap_or("");
        if !matches!(ext, "js" | "html" | "htm") {
            continue;
        }
        let text = fs::read_to_string(entry.path())
            .with_context(|| format!("cannot read {}", entry.path().display()))?;
        if ext == "js" {
            files.push(SourceFile::js(rel, text));
        } else {
            pages.push((rel, text));
        }
    }
    let js_paths = files.iter().map(|f| f.path.clone()).collect();
    let mut project = Project::new(files);
    for (path, text) in pages {
        project.add_page(&path, &text);
    }
    Ok(Discovered { project, js_paths })
}

/// Project-relative paths of the `.js` files under `tests`.
pub fn test_files(root: &Path, tests: &Path, js_paths: &[String]) -> Result<BTreeSet<String>> {
    let dir = if tests.is_absolute() {
        tests.to_path_buf()
    } else {
        root.join(tests)
    };
    let prefix = relative(root, &dir)
        .with_context(|| format!("tests directory {} is outside the project", dir.display()))?;
    Ok(js_paths
        .iter()
        .filter(|p| prefix.is_empty() || p.starts_with(&format!("{prefix}/")))
        .cloned()
        .collect())
}
