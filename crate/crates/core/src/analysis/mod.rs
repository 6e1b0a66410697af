//! Module-structure recovery, precondition checking, dependency resolution
//! and graph construction.

mod common;
mod deps;
mod format;
mod globals;
mod module_object;
pub mod naming;
mod project;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frontend::{Program, SourceFile, Span};
use crate::mdg::{ModuleFeature, Usage};

pub use common::mod_name;
pub use deps::{
    collect_import_sites, resolve_dependencies, resolve_specifier, ImportKind, ImportSite,
    ImportTarget,
};
pub use format::{
    amd_define, check_format_preconditions, detect_format, detect_format_with_warning, new_targets,
    AmdDefine, FormatCheck,
};
pub use globals::{
    check_global_preconditions, collect_globals, resolve_global_features, GlobalDecl, GlobalInput,
    GlobalOwner,
};
pub(crate) use module_object::analyze as analyze_module_object;
pub use module_object::{
    check_destructuring_preconditions, collect_bound_properties, identify_module_object,
    resolve_module_structure, BoundCollection, ModuleObjectResult,
};
pub use project::build_mdg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Format {
    NonModular,
    #[serde(rename = "AMD")]
    Amd,
    #[serde(rename = "CJS")]
    Cjs,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::NonModular => "NonModular",
            Format::Amd => "AMD",
            Format::Cjs => "CJS",
        })
    }
}

/// Format selection for a whole project.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormatChoice {
    #[default]
    Auto,
    None,
    Amd,
    Cjs,
}

#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    pub format: FormatChoice,
    /// Directory (project-relative, "" for the root) AMD ids resolve against.
    pub amd_base: String,
    pub lenient_nesting: bool,
    /// Export every feature, not only those with incoming edges.
    pub library: bool,
    /// Paths of test files joining the graph as clients.
    pub test_files: BTreeSet<String>,
}

/// An HTML page whose scripts belong to the project.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HtmlPage {
    pub path: String,
    pub text: String,
}

/// The files of one project snapshot.
#[derive(Debug, Clone, Default)]
pub struct Project {
    /// Sorted by path. Inline scripts of pages appear under virtual paths.
    pub files: Vec<SourceFile>,
    pub pages: Vec<HtmlPage>,
}

impl Project {
    pub fn new(mut files: Vec<SourceFile>) -> Self {
        files.sort_by(|a, b| a.path.cmp(&b.path));
        files.dedup_by(|a, b| a.path == b.path);
        Project {
            files,
            pages: Vec::new(),
        }
    }

    /// Adds a page and its inline scripts. Linked scripts already in the
    /// project are tagged with their load position.
    pub fn add_page(&mut self, path: &str, text: &str) {
        let scan = crate::frontend::scan_scripts(text, path);
        for s in scan.scripts {
            match s.origin {
                crate::frontend::Origin::HtmlInline => self.files.push(s),
                _ => {
                    if let Some(f) = self.files.iter_mut().find(|f| f.path == s.path) {
                        f.origin = crate::frontend::Origin::HtmlLinked;
                        f.load_index.get_or_insert(s.load_index.unwrap_or(0));
                    }
                }
            }
        }
        self.files.sort_by(|a, b| a.path.cmp(&b.path));
        self.files.dedup_by(|a, b| a.path == b.path);
        self.pages.push(HtmlPage {
            path: path.to_string(),
            text: text.to_string(),
        });
        self.pages.sort_by(|a, b| a.path.cmp(&b.path));
    }

    pub fn file(&self, path: &str) -> Option<&SourceFile> {
        self.files.iter().find(|f| f.path == path)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Instantiation {
    FunctionDecl,
    FunctionExpr,
    EmptyObject,
    ObjectLiteral,
    EvaluatedExpression,
    Imported,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundProperty {
    pub name: String,
    /// Span of the value expression.
    pub value: Option<Span>,
    /// Span of the binding statement or property pair.
    pub site: Option<Span>,
    /// Index of the binding statement in the module's top-level body.
    pub stmt_index: usize,
    pub from_literal: bool,
}

/// Facts about a module object that is (or is bound to) a function.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FunctionFacts {
    pub empty_body: bool,
    /// The body assigns properties of `this`.
    pub this_bindings: bool,
    /// The body references `this` at all.
    pub uses_this: bool,
    /// Some path returns `new <self>(...)` or the function is a `new` target.
    pub constructed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleObjectInfo {
    /// Feature name: the local binding name, or `mod_<file>` when unnamed.
    pub feature_name: String,
    /// Local variables and functions holding the module object.
    pub names: BTreeSet<String>,
    pub instantiation: Instantiation,
    pub is_namespace: bool,
    /// Span of the expression e_i.
    pub expr: Option<Span>,
    pub decl_site: Option<Span>,
    pub bound_props: Vec<BoundProperty>,
    pub function: Option<FunctionFacts>,
    /// `<name>.prototype.x = ...` bindings exist in the module.
    pub prototype_extended: bool,
}

impl ModuleObjectInfo {
    pub fn bound(&self, name: &str) -> Option<&BoundProperty> {
        self.bound_props.iter().find(|b| b.name == name)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GlobalSets {
    /// G: top-level `var` declarations.
    pub explicit: Vec<GlobalDecl>,
    /// O: properties bound on the global object.
    pub object_props: Vec<GlobalDecl>,
    /// T: other top-level declarations.
    pub top_level: Vec<GlobalDecl>,
    /// Assignments to undeclared names in non-strict code.
    pub implied: Vec<GlobalDecl>,
}

impl GlobalSets {
    pub fn declared_names(&self) -> impl Iterator<Item = &str> {
        self.explicit
            .iter()
            .chain(self.top_level.iter())
            .map(|g| g.name.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    GlobalDecls,
    Destructuring,
    ModuleFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// A global variable is introduced in more than one file.
    SingleDeclaration,
    /// Two files declare top-level functions with the same name.
    UniqueTopLevelFunctions,
    /// Module-object properties are defined with bracket notation.
    DotNotation,
    /// The module object is referenced as a whole.
    NotFullyReferenced,
    /// The module object is reassigned or mutated.
    NotModified,
    /// A plain function references `this` in non-strict code.
    StrictThis,
    /// A `require` call or factory `return` is not at the top level.
    TopLevelImports,
}

impl Rule {
    pub fn family(self) -> Family {
        match self {
            Rule::SingleDeclaration | Rule::UniqueTopLevelFunctions => Family::GlobalDecls,
            Rule::DotNotation | Rule::NotFullyReferenced | Rule::NotModified => {
                Family::Destructuring
            }
            Rule::StrictThis | Rule::TopLevelImports => Family::ModuleFormat,
        }
    }

    pub const ALL: [Rule; 7] = [
        Rule::SingleDeclaration,
        Rule::UniqueTopLevelFunctions,
        Rule::DotNotation,
        Rule::NotFullyReferenced,
        Rule::NotModified,
        Rule::StrictThis,
        Rule::TopLevelImports,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PreconditionViolation {
    pub family: Family,
    pub rule: Rule,
    pub path: String,
    #[serde(serialize_with = "span_pair")]
    pub span: Option<Span>,
    pub message: String,
}

fn span_pair<S: serde::Serializer>(v: &Option<Span>, s: S) -> Result<S::Ok, S::Error> {
    v.map(|sp| [sp.start, sp.end]).serialize(s)
}

impl PreconditionViolation {
    pub fn new(rule: Rule, path: &str, span: Option<Span>, message: impl Into<String>) -> Self {
        PreconditionViolation {
            family: rule.family(),
            rule,
            path: path.to_string(),
            span,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Diagnostic {
    pub path: String,
    #[serde(serialize_with = "span_pair")]
    pub span: Option<Span>,
    pub message: String,
}

impl Diagnostic {
    pub fn new(path: &str, span: Option<Span>, message: impl Into<String>) -> Self {
        Diagnostic {
            path: path.to_string(),
            span,
            message: message.into(),
        }
    }
}

/// A reference in some module that the transform rewrites to an imported or
/// extracted feature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureRef {
    /// Span of the node to replace.
    pub span: Span,
    pub form: RefForm,
    /// Path of the module owning the feature.
    pub owner: String,
    pub feature: String,
    /// The value of the replaced node is dropped (expression statement).
    pub discarded: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefForm {
    /// Identifier or member expression read (or called).
    Read,
    /// Assignment node whose target is the feature.
    Assign,
    /// Update (`++`/`--`) node whose argument is the feature.
    Update,
    /// `<module object>.<prop>` where `prop` is not a feature: the object part
    /// at `span` (an identifier or `require(...)` call) is replaced.
    ObjectPart,
}

/// Everything known about one source file after analysis.
#[derive(Debug, Clone)]
pub struct ModuleAnalysis {
    pub source: SourceFile,
    pub program: Option<Program>,
    pub name: String,
    pub format: Format,
    pub amd: Option<AmdDefine>,
    pub module_object: Option<ModuleObjectInfo>,
    pub globals: GlobalSets,
    /// Resolved feature set F.
    pub features: Vec<ModuleFeature>,
    pub violations: Vec<PreconditionViolation>,
    pub imports: Vec<ImportSite>,
    /// Distinct imported modules, used for global allocation.
    pub import_count: usize,
    /// References rewritten by the transform (own and imported features).
    pub refs: Vec<FeatureRef>,
    /// Member of the graph; false for skipped files.
    pub in_mdg: bool,
    pub skip_reason: Option<String>,
    pub is_test: bool,
    /// Block-nested requires hoisted under lenient nesting.
    pub hoisted: Vec<Span>,
    /// Extracted features declared under a different name.
    pub renames: Vec<naming::RenamePlan>,
}

impl ModuleAnalysis {
    pub fn feature(&self, name: &str) -> Option<&ModuleFeature> {
        self.features.iter().find(|f| f.name == name)
    }

    pub fn module_object_feature(&self) -> Option<&ModuleFeature> {
        self.features
            .iter()
            .find(|f| f.kind == crate::mdg::FeatureKind::ModuleObject)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AnalysisReport {
    pub violations: Vec<PreconditionViolation>,
    pub warnings: Vec<Diagnostic>,
    /// Files excluded from the graph, with the reason.
    pub skipped: Vec<Diagnostic>,
    /// Unresolved feature accesses and similar per-module errors.
    pub errors: Vec<Diagnostic>,
}

#[derive(Debug, Clone)]
pub struct ProjectAnalysis {
    pub mdg: crate::mdg::Mdg,
    /// Sorted by path; includes skipped files.
    pub modules: Vec<ModuleAnalysis>,
    pub report: AnalysisReport,
    pub options: AnalysisOptions,
}

impl ProjectAnalysis {
    pub fn module(&self, path: &str) -> Option<&ModuleAnalysis> {
        self.modules.iter().find(|m| m.source.path == path)
    }
}

#[derive(Debug, Clone, Error)]
pub enum AnalysisError {
    #[error("refactoring abandoned: {message}")]
    Abandoned {
        message: String,
        violations: Vec<PreconditionViolation>,
        report: Box<AnalysisReport>,
    },
}

/// Aggregates individual uses into one usage letter: W if any use writes,
/// else C if every use calls, else R.
pub fn aggregate_usage(uses: &[Usage]) -> Usage {
    if uses.contains(&Usage::W) {
        Usage::W
    } else if !uses.is_empty() && uses.iter().all(|u| *u == Usage::C) {
        Usage::C
    } else {
        Usage::R
    }
}
