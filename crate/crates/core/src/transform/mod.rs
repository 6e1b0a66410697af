//! Rewrites every module of an analysed project into an ES6 module with
//! named imports and exports.

mod module;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::analysis::naming::RenamePlan;
use crate::analysis::{Diagnostic, Format, PreconditionViolation, Project, ProjectAnalysis};
use crate::frontend::{inline_script_path, print, rewrite_script_tags, scan_scripts, Origin};

pub use module::transform_module;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Step {
    /// The `define` wrapper was replaced by the factory body.
    ClearAmd,
    /// `module.exports`/`exports` were replaced by the placeholder variable.
    ClearCjs,
    /// Bound properties became top-level variables.
    Destructure,
    Exports,
    Imports,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("{path}: no define call found")]
    NoDefine { path: String },
    #[error("{path}: {message}")]
    Print { path: String, message: String },
    #[error("{path}: cannot import `{target}`")]
    RelativePath { path: String, target: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleReport {
    pub path: String,
    pub format: Format,
    pub steps: Vec<Step>,
    /// Declared names that differ from the feature they stand for.
    pub renames: Vec<RenamePlan>,
    pub exports: Vec<String>,
    /// Source modules and libraries imported, in emitted order.
    pub imports: Vec<String>,
    pub violations: Vec<PreconditionViolation>,
    /// The file is a module of the dependence graph.
    pub in_graph: bool,
    /// Why a graph module was copied through unchanged.
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct TransformReport {
    pub modules: Vec<ModuleReport>,
    pub warnings: Vec<Diagnostic>,
    pub errors: Vec<String>,
}

impl TransformReport {
    /// Some graph module was copied through because it could not be migrated.
    pub fn has_failures(&self) -> bool {
        !self.errors.is_empty() || self.modules.iter().any(|m| m.skipped.is_some())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    pub path: String,
    pub text: String,
}

#[derive(Debug, Clone)]
pub struct RefactorOutput {
    /// Sorted by path.
    pub files: Vec<OutputFile>,
    pub report: TransformReport,
}

impl RefactorOutput {
    pub fn file(&self, path: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|f| f.path == path)
            .map(|f| f.text.as_str())
    }
}

fn copied(m: &crate::analysis::ModuleAnalysis, reason: Option<String>) -> ModuleReport {
    ModuleReport {
        path: m.source.path.clone(),
        format: m.format,
        steps: Vec::new(),
        renames: Vec::new(),
        exports: Vec::new(),
        imports: Vec::new(),
        violations: m.violations.clone(),
        in_graph: m.in_mdg,
        skipped: reason,
    }
}

/// Refactors every module of the graph; modules that cannot be migrated are
/// copied through verbatim and reported. HTML pages of the project get their
/// script elements marked as modules.
pub fn refactor_project(project: &Project, analysis: &ProjectAnalysis) -> RefactorOutput {
    let mut report = TransformReport {
        warnings: analysis.report.warnings.clone(),
        ..Default::default()
    };
    let mut files = Vec::new();
    let mut inline_text = HashMap::new();
    for m in &analysis.modules {
        let text = match (&m.skip_reason, m.in_mdg) {
            (Some(reason), _) => {
                report.modules.push(copied(m, Some(reason.clone())));
                m.source.text.clone()
            }
            (None, false) => {
                report.modules.push(copied(m, None));
                m.source.text.clone()
            }
            (None, true) => match transform_module(analysis, m).and_then(|(p, r)| {
                print(&p)
                    .map(|t| (t, r))
                    .map_err(|e| TransformError::Print {
                        path: m.source.path.clone(),
                        message: e.to_string(),
                    })
            }) {
                Ok((text, r)) => {
                    report.modules.push(r);
                    if m.source.origin == Origin::HtmlInline {
                        inline_text.insert(m.source.path.clone(), text.clone());
                    }
                    text
                }
                Err(e) => {
                    report.errors.push(e.to_string());
                    report.modules.push(copied(m, Some(e.to_string())));
                    m.source.text.clone()
                }
            },
        };
        if m.source.origin != Origin::HtmlInline {
            files.push(OutputFile {
                path: m.source.path.clone(),
                text,
            });
        }
    }
    for page in &project.pages {
        let scripts = scan_scripts(&page.text, &page.path).scripts;
        let inline = scripts
            .iter()
            .filter(|s| s.origin == Origin::HtmlInline)
            .count();
        let bodies: Vec<Option<String>> = (0..inline)
            .map(|k| inline_text.get(&inline_script_path(&page.path, k)).cloned())
            .collect();
        files.push(OutputFile {
            path: page.path.clone(),
            text: rewrite_script_tags(&page.text, &bodies),
        });
    }
    files.sort_by(|a, b| a.path.cmp(&b.path));
    RefactorOutput { files, report }
}
