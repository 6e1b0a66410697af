use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::analysis::ProjectAnalysis;
use crate::frontend::visit::{walk_program, Ancestors, Ctx, Role, Visitor};
use crate::frontend::{parse, Expr, ExprKind, SourceFile, Span, Stmt, StmtKind};
use crate::mdg::FeatureKind;
use crate::paths;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("unknown module `{0}`")]
    UnknownModule(String),
    #[error("snapshots cover different modules: {0}")]
    MismatchedModuleSets(String),
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
}

/// A feature of a project module.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FeatureKey {
    pub module: String,
    pub feature: String,
}

impl FeatureKey {
    pub fn new(module: impl Into<String>, feature: impl Into<String>) -> Self {
        FeatureKey {
            module: module.into(),
            feature: feature.into(),
        }
    }
}

/// `client` imports `feature` of `target`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Import {
    pub client: String,
    pub target: String,
    pub feature: String,
}

/// The declaration of `client_feature` references the imported `feature` of
/// `target`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Access {
    pub client: String,
    pub client_feature: String,
    pub target: String,
    pub feature: String,
}

/// What the metrics need from a dependence graph: the feature set of every
/// project module, the imported features and which client features use them.
/// Libraries never appear here.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DependenceView {
    pub modules: BTreeMap<String, BTreeSet<String>>,
    pub imports: BTreeSet<Import>,
    pub accesses: BTreeSet<Access>,
}

impl DependenceView {
    pub fn add_module<I, S>(&mut self, path: &str, features: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.modules
            .entry(path.to_string())
            .or_default()
            .extend(features.into_iter().map(Into::into));
    }

    pub fn add_import(&mut self, client: &str, target: &str, feature: &str) {
        self.imports.insert(Import {
            client: client.into(),
            target: target.into(),
            feature: feature.into(),
        });
    }

    pub fn add_access(&mut self, client: &str, client_feature: &str, target: &str, feature: &str) {
        self.accesses.insert(Access {
            client: client.into(),
            client_feature: client_feature.into(),
            target: target.into(),
            feature: feature.into(),
        });
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuleMetrics {
    pub path: String,
    #[serde(rename = "fo")]
    pub fan_out: usize,
    #[serde(rename = "fi")]
    pub fan_in: usize,
    /// `None` when the module has neither incoming nor outgoing dependencies.
    pub instability: Option<f64>,
    #[serde(skip)]
    pub f_out: BTreeSet<FeatureKey>,
    #[serde(skip)]
    pub f_in: BTreeSet<FeatureKey>,
}

impl ModuleMetrics {
    /// Instability as an exact fraction `(FO, FO + FI)`.
    pub fn instability_ratio(&self) -> Option<(usize, usize)> {
        let total = self.fan_out + self.fan_in;
        (total > 0).then_some((self.fan_out, total))
    }

    /// Modules owning the features counted in fan-in.
    pub fn clients(&self) -> BTreeSet<String> {
        self.f_in.iter().map(|k| k.module.clone()).collect()
    }
}

pub fn compute_module_metrics(
    view: &DependenceView,
    m: &str,
) -> Result<ModuleMetrics, MetricsError> {
    if !view.modules.contains_key(m) {
        return Err(MetricsError::UnknownModule(m.to_string()));
    }
    let owns = |module: &str, f: &str| view.modules.get(module).is_some_and(|fs| fs.contains(f));
    let f_out: BTreeSet<FeatureKey> = view
        .imports
        .iter()
        .filter(|i| i.client == m && i.target != m && view.modules.contains_key(&i.target))
        .map(|i| FeatureKey::new(&i.target, &i.feature))
        .collect();
    let f_in: BTreeSet<FeatureKey> = view
        .accesses
        .iter()
        .filter(|a| a.target == m && a.client != m && owns(&a.client, &a.client_feature))
        .map(|a| FeatureKey::new(&a.client, &a.client_feature))
        .collect();
    let (fo, fi) = (f_out.len(), f_in.len());
    Ok(ModuleMetrics {
        path: m.to_string(),
        fan_out: fo,
        fan_in: fi,
        instability: (fo + fi > 0).then(|| fo as f64 / (fo + fi) as f64),
        f_out,
        f_in,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectMetrics {
    pub modules: Vec<ModuleMetrics>,
    pub avg_fo: f64,
    pub sd_fo: f64,
    pub avg_fi: f64,
    pub sd_fi: f64,
    /// Over modules with defined instability only.
    pub avg_i: Option<f64>,
    pub sd_i: Option<f64>,
    /// Set when this snapshot is the later side of a comparison.
    pub delta_i_pct: Option<f64>,
}

impl ProjectMetrics {
    pub fn module(&self, path: &str) -> Option<&ModuleMetrics> {
        self.modules.iter().find(|m| m.path == path)
    }
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

/// Sample standard deviation; 0 for fewer than two values.
fn sample_sd(xs: &[f64]) -> Option<f64> {
    let m = mean(xs)?;
    if xs.len() < 2 {
        return Some(0.0);
    }
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    Some((ss / (xs.len() - 1) as f64).sqrt())
}

pub fn project_metrics(view: &DependenceView) -> ProjectMetrics {
    let modules: Vec<ModuleMetrics> = view
        .modules
        .keys()
        .map(|m| compute_module_metrics(view, m).expect("module is in the view"))
        .collect();
    let fo: Vec<f64> = modules.iter().map(|m| m.fan_out as f64).collect();
    let fi: Vec<f64> = modules.iter().map(|m| m.fan_in as f64).collect();
    let inst: Vec<f64> = modules.iter().filter_map(|m| m.instability).collect();
    ProjectMetrics {
        avg_fo: mean(&fo).unwrap_or(0.0),
        sd_fo: sample_sd(&fo).unwrap_or(0.0),
        avg_fi: mean(&fi).unwrap_or(0.0),
        sd_fi: sample_sd(&fi).unwrap_or(0.0),
        avg_i: mean(&inst),
        sd_i: sample_sd(&inst),
        delta_i_pct: None,
        modules,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuleDelta {
    pub path: String,
    pub fo_before: usize,
    pub fo_after: usize,
    pub fi_before: usize,
    pub fi_after: usize,
    pub i_before: Option<f64>,
    pub i_after: Option<f64>,
    /// Clients of the module are the same in both snapshots.
    pub same_clients: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnapshotDelta {
    /// How dependences are counted in each snapshot. The first snapshot's
    /// counting is an interpretation: using one property of a module object
    /// is taken as depending on all of its properties.
    pub granularity: Granularity,
    pub before: ProjectMetrics,
    pub after: ProjectMetrics,
    pub modules: Vec<ModuleDelta>,
    pub delta_avg_fo: f64,
    pub delta_avg_fi: f64,
    /// Relative instability reduction in percent, over modules whose
    /// instability is defined in both snapshots. Positive means the later
    /// snapshot is more stable.
    pub delta_i_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Granularity {
    pub before: &'static str,
    pub after: &'static str,
}

impl Default for Granularity {
    fn default() -> Self {
        Granularity {
            before: "module object (interpretation: every bound property of a used module object counts)",
            after: "feature (module dependence graph edges)",
        }
    }
}

impl SnapshotDelta {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metrics serialize")
    }
}

pub fn compare_snapshots(
    before: &ProjectMetrics,
    after: &ProjectMetrics,
) -> Result<SnapshotDelta, MetricsError> {
    let a: BTreeSet<&str> = before.modules.iter().map(|m| m.path.as_str()).collect();
    let b: BTreeSet<&str> = after.modules.iter().map(|m| m.path.as_str()).collect();
    if a != b {
        let diff: Vec<&str> = a.symmetric_difference(&b).copied().collect();
        return Err(MetricsError::MismatchedModuleSets(diff.join(", ")));
    }
    let mut modules = Vec::new();
    let (mut ib, mut ia) = (Vec::new(), Vec::new());
    for m in &before.modules {
        let n = after.module(&m.path).expect("same module sets");
        if let (Some(x), Some(y)) = (m.instability, n.instability) {
            ib.push(x);
            ia.push(y);
        }
        modules.push(ModuleDelta {
            path: m.path.clone(),
            fo_before: m.fan_out,
            fo_after: n.fan_out,
            fi_before: m.fan_in,
            fi_after: n.fan_in,
            i_before: m.instability,
            i_after: n.instability,
            same_clients: m.clients() == n.clients(),
        });
    }
    let delta_i_pct = match (mean(&ib), mean(&ia)) {
        (Some(x), Some(y)) if x > 0.0 => Some((x - y) / x * 100.0),
        (Some(_), Some(0.0)) => Some(0.0),
        _ => None,
    };
    let mut after = after.clone();
    after.delta_i_pct = delta_i_pct;
    Ok(SnapshotDelta {
        granularity: Granularity::default(),
        delta_avg_fo: after.avg_fo - before.avg_fo,
        delta_avg_fi: after.avg_fi - before.avg_fi,
        before: before.clone(),
        after,
        modules,
        delta_i_pct,
    })
}

/// Features of a module object: its extracted properties and the object
/// itself when it survives.
fn object_kinds(k: FeatureKind) -> bool {
    matches!(
        k,
        FeatureKind::ExtractedProperty | FeatureKind::ModuleObject
    )
}

/// Test files are clients of the project, not part of it.
fn analysis_view(pa: &ProjectAnalysis, whole_objects: bool) -> DependenceView {
    let mut view = DependenceView::default();
    for node in &pa.mdg.modules {
        if pa.module(&node.id.path).is_some_and(|m| m.is_test) {
            continue;
        }
        let features = node
            .features
            .iter()
            .filter(|f| f.kind != FeatureKind::Mutator)
            .map(|f| f.name.clone());
        view.add_module(&node.id.path, features);
    }
    for d in &pa.mdg.deps {
        let (Some(f), Some(target)) = (&d.feature, pa.mdg.module(&d.to.path)) else {
            continue;
        };
        if d.from == d.to
            || !view.modules.contains_key(&d.from.path)
            || !view.modules.contains_key(&d.to.path)
        {
            continue;
        }
        let kind = target.feature(f).map(|x| x.kind);
        if whole_objects && kind.is_some_and(object_kinds) {
            for g in target.features.iter().filter(|g| object_kinds(g.kind)) {
                view.add_import(&d.from.path, &d.to.path, &g.name);
            }
        } else if kind.is_some_and(|k| k != FeatureKind::Mutator) {
            view.add_import(&d.from.path, &d.to.path, f);
        }
    }
    for m in &pa.modules {
        let Some(node) = pa.mdg.module(&m.source.path) else {
            continue;
        };
        if !view.modules.contains_key(&m.source.path) {
            continue;
        }
        let mut decls: Vec<(&str, Vec<Span>)> = Vec::new();
        for f in node
            .features
            .iter()
            .filter(|f| f.kind != FeatureKind::Mutator)
        {
            let mut spans: Vec<Span> = f.decl_site.into_iter().collect();
            if f.kind == FeatureKind::ExtractedProperty {
                if let Some(b) = m.module_object.as_ref().and_then(|o| o.bound(&f.name)) {
                    spans.extend(b.value);
                }
            }
            decls.push((&f.name, spans));
        }
        for r in &m.refs {
            if r.owner == m.source.path || !view.modules.contains_key(&r.owner) {
                continue;
            }
            for (g, spans) in &decls {
                if spans.iter().any(|s| s.contains(&r.span)) {
                    view.add_access(&m.source.path, g, &r.owner, &r.feature);
                }
            }
        }
    }
    view
}

/// The project before refactoring: a client depending on any part of a
/// module object imports every feature of that object.
pub fn es5_view(pa: &ProjectAnalysis) -> DependenceView {
    analysis_view(pa, true)
}

/// The project after refactoring: only the features on graph edges count.
pub fn es6_view(pa: &ProjectAnalysis) -> DependenceView {
    analysis_view(pa, false)
}

/// Builds the view of an ES6 tree from its `import {…}` and `export {…}`
/// statements. Features are the top-level declarations of each file; an
/// imported `set_<f>` mutator counts as `f` when the target exports `f`.
pub fn parse_es6_view(files: &[SourceFile]) -> Result<DependenceView, MetricsError> {
    let mut programs = Vec::new();
    for f in files {
        let p = parse(f).map_err(|e| MetricsError::Parse {
            path: f.path.clone(),
            message: e.to_string(),
        })?;
        programs.push((f.path.as_str(), p));
    }
    let mut view = DependenceView::default();
    let mut exports: HashMap<&str, HashMap<String, String>> = HashMap::new();
    for (path, p) in &programs {
        view.add_module(path, top_level_decls(&p.body).into_iter().map(|(n, _)| n));
        let ex = exports.entry(path).or_default();
        for s in &p.body {
            if let StmtKind::ExportNamed(specs) = &s.kind {
                for sp in specs {
                    ex.insert(sp.exported.clone(), sp.local.clone());
                }
            }
        }
    }
    for (path, p) in &programs {
        // import local -> (target, feature)
        let mut locals: HashMap<String, (String, String)> = HashMap::new();
        for s in &p.body {
            let StmtKind::ImportNamed { specifiers, source } = &s.kind else {
                continue;
            };
            let Some(target) = resolve(path, source, &view) else {
                continue;
            };
            let ex = &exports[target.as_str()];
            for sp in specifiers {
                let mut feature = sp.imported.clone();
                if let Some(of) = feature.strip_prefix("set_") {
                    if ex.contains_key(of) {
                        feature = of.to_string();
                    }
                }
                let declared = ex.get(&feature).cloned().unwrap_or_else(|| feature.clone());
                view.add_import(path, &target, &declared);
                locals.insert(sp.local.clone(), (target.clone(), declared));
            }
        }
        let decls = top_level_decls(&p.body);
        let mut v = Refs {
            locals: &locals,
            found: Vec::new(),
        };
        walk_program(p, &mut v);
        for (span, local) in v.found {
            let (target, feature) = &locals[&local];
            for (g, at) in &decls {
                if at.contains(&span) {
                    view.add_access(path, g, target, feature);
                }
            }
        }
    }
    Ok(view)
}

fn resolve(from: &str, spec: &str, view: &DependenceView) -> Option<String> {
    if !spec.starts_with('.') {
        return None;
    }
    let joined = paths::join(paths::parent(from), spec)?;
    [joined.clone(), format!("{joined}.js")]
        .into_iter()
        .find(|c| view.modules.contains_key(c))
}

/// Top-level `var` declarators and function declarations with their spans.
fn top_level_decls(body: &[Stmt]) -> Vec<(String, Span)> {
    let mut out = Vec::new();
    for s in body {
        match &s.kind {
            StmtKind::Var(ds) => {
                for d in ds {
                    if let Some(sp) = d.span.or(s.span) {
                        out.push((d.name.clone(), sp));
                    }
                }
            }
            StmtKind::Function(f) => {
                if let (Some(n), Some(sp)) = (&f.name, s.span) {
                    out.push((n.clone(), sp));
                }
            }
            _ => {}
        }
    }
    out
}

struct Refs<'m> {
    locals: &'m HashMap<String, (String, String)>,
    found: Vec<(Span, String)>,
}

impl<'a> Visitor<'a> for Refs<'_> {
    fn expr(&mut self, e: &'a Expr, _role: Role, _anc: &Ancestors<'a>, cx: &Ctx<'a>) {
        if let (ExprKind::Ident(n), Some(sp)) = (&e.kind, e.span) {
            if self.locals.contains_key(n) && cx.is_top_level_binding(n) {
                self.found.push((sp, n.clone()));
            }
        }
    }
}
