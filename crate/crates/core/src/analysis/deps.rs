use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use super::common::{mod_name, parent, usage_of_role, ModuleScope, VarInits};
use super::format::AmdDefine;
use super::globals::{is_global_object, GlobalOwner};
use super::{
    aggregate_usage, Diagnostic, FeatureRef, Format, ModuleObjectInfo, PreconditionViolation,
    RefForm, Rule,
};
use crate::frontend::visit::{walk_program, Ancestors, Ctx, Role, Visitor};
use crate::frontend::*;
use crate::mdg::{Dependency, ModuleId, Usage};
use crate::paths;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ImportKind {
    /// `var v = require(s)`
    NamespaceVar,
    /// `var v = require(s).p`
    NamedVar,
    /// `require(s);`
    SideEffect,
    /// `require(s).p` elsewhere.
    InlineNamed,
    /// `require(s)` elsewhere.
    InlineWhole,
    /// AMD dependency bound to a factory parameter.
    AmdParam,
    /// AMD dependency without a parameter.
    AmdExtra,
    /// `require(expr)` with a computed specifier.
    Dynamic,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ImportTarget {
    /// Project file path.
    Module(String),
    /// External library; `path` is a project file when the specifier resolved
    /// to a file outside the graph.
    Library { spec: String, path: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImportSite {
    pub kind: ImportKind,
    pub specifier: String,
    pub target: ImportTarget,
    /// The `require(...)` call.
    pub call: Option<Span>,
    /// Declarator removed by the transform.
    pub decl: Option<Span>,
    /// Statement removed by the transform.
    pub stmt: Option<Span>,
    pub binding: Option<String>,
    pub property: Option<String>,
    pub param_index: Option<usize>,
    /// The binding is written locally, so it stays a variable initialized from
    /// the import.
    pub local_copy: bool,
}

impl ImportSite {
    fn new(kind: ImportKind, specifier: &str, call: Option<Span>) -> Self {
        ImportSite {
            kind,
            specifier: specifier.to_string(),
            target: ImportTarget::Library {
                spec: specifier.to_string(),
                path: None,
            },
            call,
            decl: None,
            stmt: None,
            binding: None,
            property: None,
            param_index: None,
            local_copy: false,
        }
    }
}

/// Resolves an import specifier to a project file, or `None` for libraries.
pub fn resolve_specifier(
    from: &str,
    spec: &str,
    format: Format,
    files: &HashSet<String>,
    amd_base: &str,
) -> Option<String> {
    let relative = spec.starts_with("./") || spec.starts_with("../") || spec.starts_with('/');
    match format {
        Format::Amd => {
            let base = if relative {
                paths::join(paths::parent(from), spec)?
            } else {
                paths::join(amd_base, spec)?
            };
            let file = if base.ends_with(".js") {
                base
            } else {
                format!("{base}.js")
            };
            files.contains(&file).then_some(file)
        }
        _ => {
            if !relative {
                return None;
            }
            let base = paths::join(paths::parent(from), spec)?;
            [
                base.clone(),
                format!("{base}.js"),
                if base.is_empty() {
                    "index.js".to_string()
                } else {
                    format!("{base}/index.js")
                },
            ]
            .into_iter()
            .find(|c| c.ends_with(".js") && files.contains(c))
        }
    }
}

struct SiteCollector<'f> {
    inits: VarInits,
    expr_stmt: Option<(*const Expr, Option<Span>)>,
    sites: Vec<ImportSite>,
    path: &'f str,
    warnings: Vec<Diagnostic>,
}

impl<'a> Visitor<'a> for SiteCollector<'_> {
    fn stmt(&mut self, s: &'a Stmt, _: &Ctx<'a>) {
        self.inits.record(s);
        if let StmtKind::Expr(e) = &s.kind {
            self.expr_stmt = Some((e as *const Expr, s.span));
        }
    }

    fn expr(&mut self, e: &'a Expr, role: Role, anc: &Ancestors<'a>, cx: &Ctx<'a>) {
        let ExprKind::Call { callee, .. } = &e.kind else {
            return;
        };
        if callee.as_ident() != Some("require") || !cx.is_free("require") {
            return;
        }
        let Some(spec) = e.as_require_call() else {
            self.warnings.push(Diagnostic::new(
                self.path,
                e.span,
                "`require` with a computed specifier is treated as a library import",
            ));
            self.sites
                .push(ImportSite::new(ImportKind::Dynamic, "<dynamic>", e.span));
            return;
        };
        let mut site = ImportSite::new(ImportKind::InlineWhole, spec, e.span);
        match role {
            Role::VarInit => {
                if let Some((name, span)) = self.inits.name_of(e) {
                    site.kind = ImportKind::NamespaceVar;
                    site.binding = Some(name.clone());
                    site.decl = *span;
                }
            }
            Role::MemberObject => {
                if let Some((
                    member @ Expr {
                        kind:
                            ExprKind::Member {
                                property: MemberProp::Dot(p),
                                ..
                            },
                        ..
                    },
                    mrole,
                )) = parent(anc)
                {
                    site.property = Some(p.clone());
                    site.kind = ImportKind::InlineNamed;
                    if mrole == Role::VarInit {
                        if let Some((name, span)) = self.inits.name_of(member) {
                            site.kind = ImportKind::NamedVar;
                            site.binding = Some(name.clone());
                            site.decl = *span;
                        }
                    }
                }
            }
            Role::Discarded => {
                if let Some((ptr, span)) = self.expr_stmt {
                    if std::ptr::eq(ptr, e) {
                        site.kind = ImportKind::SideEffect;
                        site.stmt = span;
                    }
                }
            }
            _ => {}
        }
        self.sites.push(site);
    }
}

/// Finds the import sites of a module and resolves their specifiers.
pub fn collect_import_sites(
    p: &Program,
    format: Format,
    path: &str,
    amd: Option<&AmdDefine>,
    files: &HashSet<String>,
    amd_base: &str,
) -> (Vec<ImportSite>, Vec<Diagnostic>) {
    let mut sites = Vec::new();
    let mut warnings = Vec::new();
    match format {
        Format::Amd => {
            if let Some(d) = amd {
                for (i, dep) in d.deps.iter().enumerate() {
                    if dep.is_empty() {
                        continue;
                    }
                    if AmdDefine::is_special(dep) {
                        warnings.push(Diagnostic::new(
                            path,
                            None,
                            format!(
                                "AMD dependency `{dep}` is a loader built-in and is not migrated"
                            ),
                        ));
                        continue;
                    }
                    let mut s = match d.params.get(i) {
                        Some(param) => {
                            let mut s = ImportSite::new(ImportKind::AmdParam, dep, None);
                            s.binding = Some(param.clone());
                            s
                        }
                        None => ImportSite::new(ImportKind::AmdExtra, dep, None),
                    };
                    s.param_index = Some(i);
                    sites.push(s);
                }
            }
        }
        Format::Cjs => {
            let mut v = SiteCollector {
                inits: VarInits::default(),
                expr_stmt: None,
                sites: Vec::new(),
                path,
                warnings: Vec::new(),
            };
            walk_program(p, &mut v);
            sites = v.sites;
            warnings.extend(v.warnings);
        }
        Format::NonModular => {}
    }
    for s in &mut sites {
        if s.kind == ImportKind::Dynamic {
            continue;
        }
        s.target = match resolve_specifier(path, &s.specifier, format, files, amd_base) {
            Some(t) => ImportTarget::Module(t),
            None => ImportTarget::Library {
                spec: s.specifier.clone(),
                path: None,
            },
        };
    }
    (sites, warnings)
}

/// Distinct modules and libraries imported by a file.
pub fn import_count(sites: &[ImportSite]) -> usize {
    sites
        .iter()
        .map(|s| &s.target)
        .collect::<std::collections::BTreeSet<_>>()
        .len()
}

/// What other modules know about a module of the graph.
#[derive(Debug, Clone)]
pub struct TargetView {
    pub id: ModuleId,
    /// Extracted properties in F.
    pub extracted: HashSet<String>,
    /// The module-object feature, when it is part of F.
    pub object_feature: Option<String>,
    /// The module has a module object at all.
    pub has_object: bool,
    /// Destructuring already failed, so F = {e}.
    pub degraded: bool,
    /// Non-mutator features, for global references.
    pub features: HashSet<String>,
}

pub struct DepEnv<'a> {
    pub targets: &'a BTreeMap<String, TargetView>,
    pub owners: &'a BTreeMap<String, GlobalOwner>,
}

/// Resolved dependencies of one module.
#[derive(Debug, Clone, Default)]
pub struct DependencyResult {
    pub deps: Vec<Dependency>,
    pub libraries: Vec<ModuleId>,
    pub refs: Vec<FeatureRef>,
    pub sites: Vec<ImportSite>,
    pub warnings: Vec<Diagnostic>,
    pub errors: Vec<Diagnostic>,
    /// Violations this module causes in imported modules, keyed by target.
    pub degrade: Vec<(String, PreconditionViolation)>,
}

/// The module's own analysis inputs needed to rewrite its references.
pub struct OwnModule<'a> {
    pub id: &'a ModuleId,
    pub path: &'a str,
    pub format: Format,
    pub amd: Option<&'a AmdDefine>,
    pub object: Option<&'a ModuleObjectInfo>,
    /// Extracted properties in this module's F.
    pub extracted: &'a HashSet<String>,
}

#[derive(Default)]
struct Written(HashSet<String>);

impl<'a> Visitor<'a> for Written {
    fn expr(&mut self, e: &'a Expr, role: Role, _: &Ancestors<'a>, _: &Ctx<'a>) {
        if let (Some(n), Role::AssignTarget(_) | Role::UpdateArg) = (e.as_ident(), role) {
            self.0.insert(n.to_string());
        }
    }
}

/// Uses of a whole module object that survive destructuring.
fn allowed_whole(r: Role) -> bool {
    matches!(
        r,
        Role::Callee
            | Role::NewCallee
            | Role::Compare
            | Role::Test
            | Role::Discarded
            | Role::Unary(UnaryOp::TypeOf | UnaryOp::Not | UnaryOp::Void)
    )
}

struct RefCollector<'e> {
    env: &'e DepEnv<'e>,
    own: &'e OwnModule<'e>,
    scope: ModuleScope,
    sites: &'e [ImportSite],
    /// Binding name to site index, for bindings rewritten to imports.
    bindings: HashMap<String, usize>,
    /// `require` call span to site index.
    calls: HashMap<Span, usize>,
    uses: BTreeMap<(String, String), Vec<Usage>>,
    used_sites: HashSet<usize>,
    refs: Vec<FeatureRef>,
    warnings: Vec<Diagnostic>,
    errors: Vec<Diagnostic>,
    degrade: Vec<(String, PreconditionViolation)>,
}

impl RefCollector<'_> {
    fn target(&self, site: usize) -> Option<(&str, &TargetView)> {
        match &self.sites[site].target {
            ImportTarget::Module(p) => self.env.targets.get(p).map(|t| (p.as_str(), t)),
            ImportTarget::Library { .. } => None,
        }
    }

    fn push_ref(
        &mut self,
        span: Option<Span>,
        form: RefForm,
        owner: &str,
        feature: &str,
        discarded: bool,
    ) {
        if let Some(span) = span {
            self.refs.push(FeatureRef {
                span,
                form,
                owner: owner.to_string(),
                feature: feature.to_string(),
                discarded,
            });
        }
    }

    fn use_feature(&mut self, owner: &str, feature: &str, usage: Usage) {
        self.uses
            .entry((owner.to_string(), feature.to_string()))
            .or_default()
            .push(usage);
    }

    fn degrade(
        &mut self,
        target: &str,
        t: &TargetView,
        rule: Rule,
        _span: Option<Span>,
        msg: String,
    ) {
        if t.degraded {
            return;
        }
        let msg = format!("{msg} by {}", self.own.path);
        self.degrade.push((
            target.to_string(),
            PreconditionViolation::new(rule, target, None, msg),
        ));
    }

    /// Records a reference to feature `feature` of `owner` made through node
    /// `e` used in `role`, with `anc` its ancestors.
    fn feature_use(
        &mut self,
        owner: &str,
        feature: &str,
        e: &Expr,
        role: Role,
        anc: &Ancestors<'_>,
    ) {
        let usage = usage_of_role(role);
        self.use_feature(owner, feature, usage);
        let parent_node = parent(anc);
        match (role, parent_node) {
            (Role::AssignTarget(_), Some((a, arole))) => self.push_ref(
                a.span,
                RefForm::Assign,
                owner,
                feature,
                arole == Role::Discarded,
            ),
            (Role::UpdateArg, Some((u, urole))) => self.push_ref(
                u.span,
                RefForm::Update,
                owner,
                feature,
                urole == Role::Discarded,
            ),
            _ => self.push_ref(e.span, RefForm::Read, owner, feature, false),
        }
    }

    /// A reference to the imported module as a whole through node `e`.
    fn whole_use(&mut self, site: usize, e: &Expr, role: Role, stored_ok: bool) {
        self.used_sites.insert(site);
        let Some((path, t)) = self.target(site) else {
            return;
        };
        let (path, t) = (path.to_string(), t.clone());
        if !t.has_object {
            self.errors.push(Diagnostic::new(
                self.own.path,
                e.span,
                format!("`{path}` exports nothing that can be referenced as a whole"),
            ));
            return;
        }
        if t.object_feature.is_none() || !(allowed_whole(role) || stored_ok) {
            self.degrade(
                &path,
                &t,
                Rule::NotFullyReferenced,
                e.span,
                "module object referenced as a whole".into(),
            );
        }
        let name = t.object_feature.clone().unwrap_or_else(|| object_name(&t));
        let usage = match usage_of_role(role) {
            Usage::W => Usage::R,
            u => u,
        };
        self.use_feature(&path, &name, usage);
        self.push_ref(e.span, RefForm::Read, &path, &name, false);
    }

    /// `<import>.p` through node `obj`, whose parent is the member access.
    fn property_use(&mut self, site: usize, obj: &Expr, anc: &Ancestors<'_>) {
        self.used_sites.insert(site);
        let Some((path, t)) = self.target(site) else {
            return;
        };
        let (path, t) = (path.to_string(), t.clone());
        let Some((member, mrole)) = parent(anc) else {
            return;
        };
        let up = &anc[..anc.len() - 1];
        match &member.kind {
            ExprKind::Member {
                property: MemberProp::Dot(p),
                ..
            } if t.extracted.contains(p) => {
                if mrole == Role::Unary(UnaryOp::Delete) {
                    self.degrade(
                        &path,
                        &t,
                        Rule::NotModified,
                        member.span,
                        format!("`{p}` deleted"),
                    );
                }
                self.feature_use(&path, p, member, mrole, up);
            }
            ExprKind::Member {
                property: MemberProp::Dot(p),
                ..
            } => {
                let write = matches!(
                    mrole,
                    Role::AssignTarget(_) | Role::UpdateArg | Role::Unary(UnaryOp::Delete)
                );
                if write && p != "prototype" {
                    self.degrade(
                        &path,
                        &t,
                        Rule::NotModified,
                        member.span,
                        format!("property `{p}` written"),
                    );
                } else if p != "prototype" {
                    self.warnings.push(Diagnostic::new(
                        self.own.path,
                        member.span,
                        format!("unresolved feature `{p}` of `{path}`; the module object is imported instead"),
                    ));
                    if t.object_feature.is_none() {
                        self.degrade(
                            &path,
                            &t,
                            Rule::NotFullyReferenced,
                            member.span,
                            format!("unbound property `{p}` read"),
                        );
                    }
                }
                self.object_part(&path, &t, obj);
            }
            _ => {
                self.degrade(
                    &path,
                    &t,
                    Rule::NotFullyReferenced,
                    member.span,
                    "computed property access".into(),
                );
                self.object_part(&path, &t, obj);
            }
        }
    }

    fn object_part(&mut self, path: &str, t: &TargetView, obj: &Expr) {
        if !t.has_object {
            self.errors.push(Diagnostic::new(
                self.own.path,
                obj.span,
                format!("`{path}` has no module object to fall back to"),
            ));
            return;
        }
        let name = t.object_feature.clone().unwrap_or_else(|| object_name(t));
        self.use_feature(path, &name, Usage::R);
        self.push_ref(obj.span, RefForm::ObjectPart, path, &name, false);
    }

    fn own_object_ref(&self, e: &Expr, cx: &Ctx<'_>) -> bool {
        let Some(info) = self.own.object else {
            return self.scope.is_exports_object(e, cx);
        };
        match &e.kind {
            ExprKind::Ident(n) if info.names.contains(n) => self.scope.is_module_binding(cx, n),
            _ => self.scope.is_exports_object(e, cx),
        }
    }

    fn global_owner(&self, name: &str) -> Option<(String, bool)> {
        let o = self.env.owners.get(name)?;
        let t = self.env.targets.get(&o.path)?;
        t.features
            .contains(name)
            .then(|| (o.path.clone(), o.path == self.own.path))
    }
}

fn object_name(t: &TargetView) -> String {
    t.object_feature
        .clone()
        .unwrap_or_else(|| mod_name(&t.id.path))
}

impl<'a> Visitor<'a> for RefCollector<'_> {
    fn expr(&mut self, e: &'a Expr, role: Role, anc: &Ancestors<'a>, cx: &Ctx<'a>) {
        // require(...) call sites.
        if let Some(site) = e.span.and_then(|s| self.calls.get(&s).copied()) {
            if matches!(e.kind, ExprKind::Call { .. }) {
                let s = &self.sites[site];
                match s.kind {
                    ImportKind::InlineNamed => self.property_use(site, e, anc),
                    ImportKind::InlineWhole => {
                        let stored = matches!(
                            parent(anc),
                            Some((Expr { kind: ExprKind::Assign { target, .. }, .. }, _))
                                if self.scope.is_exports_object(target, cx)
                        );
                        self.whole_use(site, e, role, stored)
                    }
                    ImportKind::NamedVar if s.local_copy => self.property_use(site, e, anc),
                    ImportKind::NamespaceVar if s.local_copy => self.whole_use(site, e, role, true),
                    _ => {}
                }
                return;
            }
        }
        // Bindings of imports.
        if let ExprKind::Ident(n) = &e.kind {
            if let Some(&site) = self.bindings.get(n) {
                if self.scope.is_module_binding(cx, n) {
                    let s = &self.sites[site];
                    match s.kind {
                        ImportKind::NamedVar => {
                            self.used_sites.insert(site);
                            if let Some((path, _)) = self.target(site) {
                                let path = path.to_string();
                                let p = s.property.clone().unwrap_or_default();
                                self.feature_use(&path, &p, e, role, anc);
                            }
                        }
                        _ if role == Role::MemberObject => self.property_use(site, e, anc),
                        _ => self.whole_use(site, e, role, false),
                    }
                    return;
                }
            }
        }
        // The module's own object and its properties.
        if role == Role::MemberObject && self.own_object_ref(e, cx) {
            if let Some((
                member @ Expr {
                    kind:
                        ExprKind::Member {
                            property: MemberProp::Dot(p),
                            ..
                        },
                    ..
                },
                _,
            )) = parent(anc)
            {
                if self.own.extracted.contains(p) {
                    let own = self.own.path.to_string();
                    self.push_ref(member.span, RefForm::Read, &own, p, false);
                    return;
                }
            }
        }
        if self.own.format == Format::Cjs
            && self.scope.is_exports_object(e, cx)
            && !(e.as_ident() == Some("module"))
        {
            let own = self.own.path.to_string();
            let placeholder = mod_name(own.as_str());
            self.push_ref(e.span, RefForm::ObjectPart, &own, &placeholder, false);
            return;
        }
        // Globals.
        match &e.kind {
            ExprKind::Ident(n) if cx.is_free(n) => {
                if let Some((owner, own)) = self.global_owner(n) {
                    if !own {
                        self.feature_use(&owner, n, e, role, anc);
                    }
                }
            }
            ExprKind::Member {
                object,
                property: MemberProp::Dot(n),
            } if is_global_object(object, cx) => {
                if let Some((owner, own)) = self.global_owner(n) {
                    if own {
                        let o = owner.clone();
                        self.push_ref(e.span, RefForm::Read, &o, n, false);
                    } else {
                        self.feature_use(&owner, n, e, role, anc);
                    }
                }
            }
            _ => {}
        }
    }
}

/// Resolves the fine-grained dependencies of one module of the graph.
pub fn resolve_dependencies(
    p: &Program,
    own: &OwnModule<'_>,
    sites: &[ImportSite],
    env: &DepEnv<'_>,
) -> DependencyResult {
    let scope = ModuleScope::new(p, own.format, own.amd);
    let mut written = Written::default();
    walk_program(p, &mut written);
    let mut sites = sites.to_vec();
    let mut bindings = HashMap::new();
    let mut calls = HashMap::new();
    for (i, s) in sites.iter_mut().enumerate() {
        if let Some(b) = &s.binding {
            s.local_copy = written.0.contains(b);
        }
        let library = matches!(s.target, ImportTarget::Library { .. });
        match s.kind {
            ImportKind::NamespaceVar | ImportKind::NamedVar | ImportKind::AmdParam
                if !s.local_copy =>
            {
                bindings.insert(s.binding.clone().unwrap_or_default(), i);
            }
            _ => {}
        }
        if !library {
            if let Some(c) = s.call {
                calls.insert(c, i);
            }
        }
    }
    let mut r = RefCollector {
        env,
        own,
        scope,
        sites: &sites,
        bindings,
        calls,
        uses: BTreeMap::new(),
        used_sites: HashSet::new(),
        refs: Vec::new(),
        warnings: Vec::new(),
        errors: Vec::new(),
        degrade: Vec::new(),
    };
    walk_program(p, &mut r);
    let mut out = DependencyResult {
        refs: r.refs,
        warnings: r.warnings,
        errors: r.errors,
        degrade: r.degrade,
        ..Default::default()
    };
    for ((owner, feature), uses) in r.uses {
        let Some(t) = env.targets.get(&owner) else {
            continue;
        };
        out.deps.push(Dependency {
            from: own.id.clone(),
            to: t.id.clone(),
            feature: Some(feature),
            usage: aggregate_usage(&uses),
        });
    }
    for (i, s) in sites.iter().enumerate() {
        match &s.target {
            ImportTarget::Library { spec, path } => {
                let id = match path {
                    Some(p) => ModuleId::new(spec.clone(), p.clone()),
                    None => ModuleId::library(spec.clone()),
                };
                out.deps.push(Dependency {
                    from: own.id.clone(),
                    to: id.clone(),
                    feature: None,
                    usage: Usage::L,
                });
                out.libraries.push(id);
            }
            ImportTarget::Module(path) => {
                if !r.used_sites.contains(&i) && !s.local_copy {
                    if let Some(t) = env.targets.get(path) {
                        out.deps.push(Dependency {
                            from: own.id.clone(),
                            to: t.id.clone(),
                            feature: None,
                            usage: Usage::S,
                        });
                    }
                }
            }
        }
    }
    out.sites = sites;
    out
}
