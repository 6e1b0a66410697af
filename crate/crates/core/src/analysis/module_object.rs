use std::collections::{BTreeSet, HashSet};

use super::common::{mod_name, module_body, parent, this_users, ModuleScope, VarInits};
use super::format::AmdDefine;
use super::{
    BoundProperty, Format, FunctionFacts, Instantiation, ModuleObjectInfo, PreconditionViolation,
    Rule,
};
use crate::frontend::visit::{hoisted_names, walk_program, Ancestors, Ctx, Role, Visitor};
use crate::frontend::*;
use crate::mdg::{FeatureKind, ModuleFeature};

#[derive(Debug, Clone, Default)]
pub struct ModuleObjectResult {
    pub info: Option<ModuleObjectInfo>,
    /// Violations found while identifying the object (conflicting or
    /// alias-breaking whole assignments).
    pub violations: Vec<PreconditionViolation>,
}

struct WholeAssign<'a> {
    aliases: Vec<String>,
    value: &'a Expr,
    site: Option<Span>,
    /// `exports = X` without `module.exports` in the chain.
    bare_exports: bool,
}

fn is_exports_target(e: &Expr) -> bool {
    e.is_module_exports() || e.as_ident() == Some("exports")
}

/// Splits `a = b = c = v` into its targets and final value.
fn assign_chain(e: &Expr) -> (Vec<&Expr>, &Expr) {
    let mut targets = Vec::new();
    let mut cur = e;
    while let ExprKind::Assign {
        op: AssignOp::Assign,
        target,
        value,
    } = &cur.kind
    {
        targets.push(&**target);
        cur = value;
    }
    (targets, cur)
}

fn whole_assign<'a>(
    targets: &[&'a Expr],
    value: &'a Expr,
    site: Option<Span>,
    decl: Option<&str>,
) -> Option<WholeAssign<'a>> {
    if !targets.iter().any(|t| is_exports_target(t)) {
        return None;
    }
    let mut aliases: Vec<String> = decl.into_iter().map(str::to_string).collect();
    for t in targets {
        if let Some(n) = t.as_ident() {
            if n != "exports" {
                aliases.push(n.to_string());
            }
        }
    }
    Some(WholeAssign {
        aliases,
        value,
        site,
        bare_exports: !targets.iter().any(|t| t.is_module_exports()),
    })
}

fn cjs_whole_assigns(body: &[Stmt]) -> Vec<WholeAssign<'_>> {
    let mut out = Vec::new();
    for s in body {
        match &s.kind {
            StmtKind::Expr(e) => {
                let (targets, value) = assign_chain(e);
                if let Some(w) = whole_assign(&targets, value, s.span, None) {
                    out.push(w);
                }
            }
            StmtKind::Var(decls) => {
                for d in decls {
                    if let Some(init) = &d.init {
                        let (targets, value) = assign_chain(init);
                        if let Some(w) = whole_assign(&targets, value, s.span, Some(&d.name)) {
                            out.push(w);
                        }
                    }
                }
            }
            _ => {}
        }
    }
    out
}

fn binds_exports_property(body: &[Stmt]) -> bool {
    body.iter().any(|s| match &s.kind {
        StmtKind::Expr(Expr {
            kind: ExprKind::Assign { target, .. },
            ..
        }) => matches!(target.as_dot_member(), Some((o, _)) if is_exports_target(o)),
        _ => false,
    })
}

/// Looks up how the module-level binding `name` is initialized.
enum Binding<'a> {
    Function(&'a Function, Option<Span>),
    Value(&'a Expr, Option<Span>),
}

fn find_binding<'a>(body: &'a [Stmt], name: &str) -> Option<Binding<'a>> {
    for s in body {
        match &s.kind {
            StmtKind::Function(f) if f.name.as_deref() == Some(name) => {
                return Some(Binding::Function(f, s.span))
            }
            StmtKind::Var(decls) => {
                for d in decls {
                    if d.name == name {
                        if let Some(init) = &d.init {
                            let (_, value) = assign_chain(init);
                            return Some(Binding::Value(value, s.span));
                        }
                    }
                }
            }
            _ => {}
        }
    }
    // `var N; ... N = value;`
    for s in body {
        if let StmtKind::Expr(e) = &s.kind {
            let (targets, value) = assign_chain(e);
            if targets.iter().any(|t| t.as_ident() == Some(name)) {
                return Some(Binding::Value(value, s.span));
            }
        }
    }
    None
}

fn classify_value(e: &Expr) -> Instantiation {
    match &e.kind {
        ExprKind::Function(_) => Instantiation::FunctionExpr,
        ExprKind::Object(props) if props.is_empty() => Instantiation::EmptyObject,
        ExprKind::Object(_) => Instantiation::ObjectLiteral,
        _ if e.is_require_call() => Instantiation::Imported,
        _ => Instantiation::EvaluatedExpression,
    }
}

fn function_facts(
    f: &Function,
    names: &BTreeSet<String>,
    p: &Program,
    new_targets: &HashSet<String>,
) -> FunctionFacts {
    let t = this_users(p);
    let key = f as *const Function;
    FunctionFacts {
        empty_body: f.body.is_empty(),
        this_bindings: t.binders.contains(&key),
        uses_this: t.users.contains(&key),
        constructed: names.iter().any(|n| new_targets.contains(n))
            || f.name.as_ref().is_some_and(|n| new_targets.contains(n)),
    }
}

/// Builds the module-object description for `value`, following one level of
/// identifier indirection inside the module body.
fn describe(
    body: &[Stmt],
    value: &Expr,
    site: Option<Span>,
    mut aliases: Vec<String>,
    path: &str,
    p: &Program,
    new_targets: &HashSet<String>,
) -> ModuleObjectInfo {
    let top: HashSet<String> = hoisted_names(body);
    let mut expr = value.span;
    let mut decl_site = site;
    let mut func: Option<&Function> = None;
    let instantiation = match value.as_ident().filter(|n| top.contains(*n)) {
        Some(n) => {
            aliases.insert(0, n.to_string());
            match find_binding(body, n) {
                Some(Binding::Function(f, s)) => {
                    func = Some(f);
                    expr = f.span;
                    decl_site = s;
                    Instantiation::FunctionDecl
                }
                Some(Binding::Value(v, s)) => {
                    expr = v.span;
                    decl_site = s;
                    if let ExprKind::Function(f) = &v.kind {
                        func = Some(f);
                    }
                    classify_value(v)
                }
                None => Instantiation::EvaluatedExpression,
            }
        }
        None => {
            if let ExprKind::Function(f) = &value.kind {
                func = Some(f);
            }
            classify_value(value)
        }
    };
    let mut names = BTreeSet::new();
    let mut feature_name = None;
    for a in aliases {
        if feature_name.is_none() {
            feature_name = Some(a.clone());
        }
        names.insert(a);
    }
    ModuleObjectInfo {
        feature_name: feature_name.unwrap_or_else(|| mod_name(path)),
        function: func.map(|f| function_facts(f, &names, p, new_targets)),
        names,
        instantiation,
        is_namespace: false,
        expr,
        decl_site,
        bound_props: Vec::new(),
        prototype_extended: false,
    }
}

/// Identifies the module object e_i. Bound properties and namespace status
/// are filled in by [`collect_bound_properties`].
pub fn identify_module_object(
    p: &Program,
    format: Format,
    path: &str,
    amd: Option<&AmdDefine>,
    new_targets: &HashSet<String>,
) -> ModuleObjectResult {
    let mut out = ModuleObjectResult::default();
    match format {
        Format::NonModular => {}
        Format::Cjs => {
            let body = &p.body;
            let assigns = cjs_whole_assigns(body);
            match assigns.first() {
                None => {
                    if binds_exports_property(body) {
                        out.info = Some(ModuleObjectInfo {
                            feature_name: mod_name(path),
                            names: BTreeSet::new(),
                            instantiation: Instantiation::EmptyObject,
                            is_namespace: true,
                            expr: None,
                            decl_site: None,
                            bound_props: Vec::new(),
                            function: None,
                            prototype_extended: false,
                        });
                    }
                }
                Some(w) => {
                    for extra in &assigns[1..] {
                        out.violations.push(PreconditionViolation::new(
                            Rule::NotModified,
                            path,
                            extra.site,
                            "conflicting whole assignment of the module object",
                        ));
                    }
                    for a in &assigns {
                        if a.bare_exports {
                            out.violations.push(PreconditionViolation::new(
                                Rule::NotModified,
                                path,
                                a.site,
                                "`exports` is reassigned, breaking its link to `module.exports`",
                            ));
                        }
                    }
                    out.info = Some(describe(
                        body,
                        w.value,
                        w.site,
                        w.aliases.clone(),
                        path,
                        p,
                        new_targets,
                    ));
                }
            }
        }
        Format::Amd => {
            let Some(d) = amd else {
                return out;
            };
            if d.object_literal {
                let obj = d.object(p);
                out.info = Some(ModuleObjectInfo {
                    feature_name: mod_name(path),
                    names: BTreeSet::new(),
                    instantiation: obj
                        .map(classify_value)
                        .unwrap_or(Instantiation::ObjectLiteral),
                    is_namespace: true,
                    expr: obj.and_then(|o| o.span),
                    decl_site: p.body[d.stmt_index].span,
                    bound_props: Vec::new(),
                    function: None,
                    prototype_extended: false,
                });
                return out;
            }
            let Some(f) = d.factory(p) else {
                return out;
            };
            let ret = f.body.iter().find_map(|s| match &s.kind {
                StmtKind::Return(Some(e)) => Some((e, s.span)),
                _ => None,
            });
            if let Some((e, site)) = ret {
                let (targets, value) = assign_chain(e);
                let aliases = targets
                    .iter()
                    .filter_map(|t| t.as_ident().map(str::to_string))
                    .collect();
                out.info = Some(describe(
                    &f.body,
                    value,
                    site,
                    aliases,
                    path,
                    p,
                    new_targets,
                ));
            }
        }
    }
    out
}

fn find_object(e: &Expr, span: Span) -> Option<&Vec<Property>> {
    if e.span == Some(span) {
        if let ExprKind::Object(props) = &e.kind {
            return Some(props);
        }
    }
    match &e.kind {
        ExprKind::Assign { value, .. } => find_object(value, span),
        ExprKind::Call { args, .. } => args.iter().find_map(|a| find_object(a, span)),
        _ => None,
    }
}

fn literal_props(body: &[Stmt], span: Span) -> Option<&Vec<Property>> {
    body.iter().find_map(|s| match &s.kind {
        StmtKind::Var(decls) => decls
            .iter()
            .find_map(|d| d.init.as_ref().and_then(|e| find_object(e, span))),
        StmtKind::Expr(e) | StmtKind::Return(Some(e)) => find_object(e, span),
        _ => None,
    })
}

fn literal_stmt_index(body: &[Stmt], span: Span) -> usize {
    body.iter()
        .position(|s| s.span.is_some_and(|ss| ss.contains(&span)))
        .unwrap_or(0)
}

/// Whether `e` denotes the module object syntactically at module top.
fn names_object(e: &Expr, info: &ModuleObjectInfo, format: Format) -> bool {
    match &e.kind {
        ExprKind::Ident(n) => info.names.contains(n) || (format == Format::Cjs && n == "exports"),
        _ => format == Format::Cjs && e.is_module_exports(),
    }
}

/// The set B_i together with whether the prototype is extended in-module.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundCollection {
    pub props: Vec<BoundProperty>,
    pub prototype_extended: bool,
}

/// Collects the bound properties of the module object: dot-notation
/// assignments in the module body and object-literal pairs.
pub fn collect_bound_properties(
    info: &ModuleObjectInfo,
    p: &Program,
    format: Format,
    amd: Option<&AmdDefine>,
) -> BoundCollection {
    let body = module_body(p, amd);
    let mut out = BoundCollection::default();
    let mut seen = HashSet::new();
    if matches!(info.instantiation, Instantiation::ObjectLiteral) {
        if let Some(span) = info.expr {
            let scan: &[Stmt] = if amd.is_some_and(|d| d.object_literal) {
                &p.body
            } else {
                body
            };
            if let Some(props) = literal_props(scan, span) {
                let idx = literal_stmt_index(scan, span);
                for pr in props {
                    let name = pr.key.name();
                    let ok = !matches!(pr.key, PropKey::Num(_)) && is_identifier_name(name);
                    if ok && seen.insert(name.to_string()) {
                        out.props.push(BoundProperty {
                            name: name.to_string(),
                            value: pr.value.span,
                            site: pr.span,
                            stmt_index: idx,
                            from_literal: true,
                        });
                    }
                }
            }
        }
    }
    for (i, s) in body.iter().enumerate() {
        let StmtKind::Expr(Expr {
            kind:
                ExprKind::Assign {
                    op: AssignOp::Assign,
                    target,
                    value,
                },
            ..
        }) = &s.kind
        else {
            continue;
        };
        let Some((obj, prop)) = target.as_dot_member() else {
            continue;
        };
        if let Some((inner, "prototype")) = obj.as_dot_member() {
            if names_object(inner, info, format) {
                out.prototype_extended = true;
            }
            continue;
        }
        if !names_object(obj, info, format) {
            continue;
        }
        if prop == "prototype" {
            out.prototype_extended = true;
            continue;
        }
        if seen.insert(prop.to_string()) {
            out.props.push(BoundProperty {
                name: prop.to_string(),
                value: value.span,
                site: s.span,
                stmt_index: i,
                from_literal: false,
            });
        }
    }
    out
}

/// Applies bound properties and decides the namespace status.
pub(crate) fn complete(info: &mut ModuleObjectInfo, bound: BoundCollection) {
    info.bound_props = bound.props;
    info.prototype_extended = bound.prototype_extended;
    info.is_namespace = match info.instantiation {
        Instantiation::EmptyObject | Instantiation::ObjectLiteral => true,
        Instantiation::FunctionDecl | Instantiation::FunctionExpr => {
            info.function.as_ref().is_some_and(|f| f.empty_body) && !info.prototype_extended
        }
        _ => false,
    };
}

struct DestructuringCheck<'i> {
    info: &'i ModuleObjectInfo,
    scope: ModuleScope,
    path: String,
    bound_values: HashSet<Span>,
    this_users: HashSet<*const Function>,
    /// Names declared without initializer whose first top assignment defines them.
    deferred_init: HashSet<String>,
    inits: VarInits,
    out: Vec<PreconditionViolation>,
}

impl DestructuringCheck<'_> {
    fn flag(&mut self, rule: Rule, span: Option<Span>, msg: String) {
        self.out
            .push(PreconditionViolation::new(rule, &self.path, span, msg));
    }

    fn is_ref(&self, e: &Expr, cx: &Ctx<'_>) -> bool {
        match &e.kind {
            ExprKind::Ident(n) if self.info.names.contains(n) => {
                self.scope.is_module_binding(cx, n)
            }
            _ => self.scope.is_exports_object(e, cx),
        }
    }

    fn describe(&self, e: &Expr) -> String {
        e.as_ident()
            .map(str::to_string)
            .unwrap_or_else(|| "module.exports".to_string())
    }
}

impl<'a> Visitor<'a> for DestructuringCheck<'_> {
    fn stmt(&mut self, s: &'a Stmt, _: &Ctx<'a>) {
        self.inits.record(s);
    }

    fn expr(&mut self, e: &'a Expr, role: Role, anc: &Ancestors<'a>, cx: &Ctx<'a>) {
        if let ExprKind::Function(f) = &e.kind {
            if e.span.is_some_and(|s| self.bound_values.contains(&s))
                && self.this_users.contains(&(&**f as *const Function))
            {
                self.flag(
                    Rule::NotFullyReferenced,
                    e.span,
                    "bound function refers to the module object through `this`".into(),
                );
            }
            return;
        }
        // `module` inside `module.exports` is part of the reference.
        if e.as_ident() == Some("module") && role == Role::MemberObject {
            return;
        }
        if !self.is_ref(e, cx) {
            return;
        }
        let name = self.describe(e);
        let top = self.scope.at_top(cx);
        match role {
            Role::MemberObject => {
                let Some((member, mrole)) = parent(anc) else {
                    return;
                };
                match &member.kind {
                    ExprKind::Member {
                        property: MemberProp::Bracket(_),
                        ..
                    } => {
                        if matches!(mrole, Role::AssignTarget(_)) {
                            self.flag(
                                Rule::DotNotation,
                                member.span,
                                format!("property of `{name}` defined with bracket notation"),
                            );
                        } else {
                            self.flag(
                                Rule::NotFullyReferenced,
                                member.span,
                                format!("`{name}` accessed with a computed property"),
                            );
                        }
                    }
                    ExprKind::Member {
                        property: MemberProp::Dot(prop),
                        ..
                    } => {
                        if prop == "prototype" {
                            return;
                        }
                        let bound = self.info.bound(prop).is_some();
                        match mrole {
                            Role::AssignTarget(_) | Role::UpdateArg => {
                                if !top && !bound {
                                    self.flag(
                                        Rule::NotModified,
                                        member.span,
                                        format!("`{name}.{prop}` is added outside the module body"),
                                    );
                                }
                            }
                            Role::Unary(UnaryOp::Delete) => self.flag(
                                Rule::NotModified,
                                member.span,
                                format!("`{name}.{prop}` is deleted"),
                            ),
                            _ => {
                                if !bound && self.info.is_namespace {
                                    self.flag(
                                        Rule::NotFullyReferenced,
                                        member.span,
                                        format!("`{name}.{prop}` is not a bound property"),
                                    );
                                }
                            }
                        }
                    }
                    _ => {}
                }
            }
            Role::Callee
            | Role::NewCallee
            | Role::Compare
            | Role::Test
            | Role::Discarded
            | Role::Unary(UnaryOp::TypeOf | UnaryOp::Not | UnaryOp::Void) => {}
            Role::AssignTarget(op) => {
                let defining = top && op == AssignOp::Assign && {
                    match &e.kind {
                        ExprKind::Ident(n) if n != "exports" => self.deferred_init.remove(n),
                        _ => true,
                    }
                };
                if !defining {
                    self.flag(
                        Rule::NotModified,
                        e.span,
                        format!("module object `{name}` is reassigned"),
                    );
                }
            }
            Role::UpdateArg | Role::Unary(UnaryOp::Delete) => self.flag(
                Rule::NotModified,
                e.span,
                format!("module object `{name}` is modified"),
            ),
            Role::AssignValue => {
                let export_site = matches!(
                    parent(anc),
                    Some((Expr { kind: ExprKind::Assign { target, .. }, .. }, _))
                        if self.is_ref(target, cx)
                            || target.as_ident().is_some_and(|n| self.info.names.contains(n))
                );
                if !export_site {
                    self.flag(
                        Rule::NotFullyReferenced,
                        e.span,
                        format!("module object `{name}` is stored"),
                    );
                }
            }
            Role::VarInit => {
                let alias = self
                    .inits
                    .name_of(e)
                    .is_some_and(|(n, _)| self.info.names.contains(n));
                if !alias {
                    self.flag(
                        Rule::NotFullyReferenced,
                        e.span,
                        format!("module object `{name}` is aliased"),
                    );
                }
            }
            Role::Returned if top && self.scope.format == Format::Amd => {}
            _ => {
                let what = match role {
                    Role::Argument => "passed as an argument",
                    Role::Returned => "returned",
                    _ => "used as a value",
                };
                self.flag(
                    Rule::NotFullyReferenced,
                    e.span,
                    format!("module object `{name}` is {what}"),
                );
            }
        }
    }
}

/// Evaluates the destructuring preconditions for the module object.
pub fn check_destructuring_preconditions(
    info: &ModuleObjectInfo,
    p: &Program,
    format: Format,
    path: &str,
    amd: Option<&AmdDefine>,
) -> Vec<PreconditionViolation> {
    let body = module_body(p, amd);
    let mut out = Vec::new();
    if info.instantiation == Instantiation::ObjectLiteral {
        if let Some(props) = info
            .expr
            .and_then(|s| literal_props(body, s).or_else(|| literal_props(&p.body, s)))
        {
            for pr in props {
                let name = pr.key.name();
                if matches!(pr.key, PropKey::Num(_)) || !is_identifier_name(name) {
                    out.push(PreconditionViolation::new(
                        Rule::DotNotation,
                        path,
                        pr.span,
                        format!("property {name:?} cannot be accessed with dot notation"),
                    ));
                }
            }
        }
    }
    let mut deferred_init = HashSet::new();
    for s in body {
        if let StmtKind::Var(decls) = &s.kind {
            for d in decls {
                if d.init.is_none() && info.names.contains(&d.name) {
                    deferred_init.insert(d.name.clone());
                }
            }
        }
    }
    let mut v = DestructuringCheck {
        info,
        scope: ModuleScope::new(p, format, amd),
        path: path.to_string(),
        bound_values: info.bound_props.iter().filter_map(|b| b.value).collect(),
        this_users: this_users(p).users,
        deferred_init,
        inits: VarInits::default(),
        out: Vec::new(),
    };
    walk_program(p, &mut v);
    out.extend(v.out);
    for b in &info.bound_props {
        if b.name == info.feature_name {
            out.push(PreconditionViolation::new(
                Rule::NotFullyReferenced,
                path,
                b.site,
                format!("bound property `{}` shadows the module object", b.name),
            ));
        }
    }
    out
}

/// Step 1 to 3 of structure resolution: F = {e} on any violation, B for a
/// namespace object, B plus e otherwise.
pub fn resolve_module_structure(
    info: &ModuleObjectInfo,
    violations: &[PreconditionViolation],
) -> Vec<ModuleFeature> {
    let e = ModuleFeature::new(
        &info.feature_name,
        FeatureKind::ModuleObject,
        info.decl_site,
    );
    if violations
        .iter()
        .any(|v| v.rule.family() == super::Family::Destructuring)
    {
        return vec![e];
    }
    let mut out = Vec::new();
    if !info.is_namespace {
        out.push(e);
    }
    for b in &info.bound_props {
        out.push(ModuleFeature::new(
            &b.name,
            FeatureKind::ExtractedProperty,
            b.site,
        ));
    }
    out
}

/// Identification, bound-property collection and the destructuring checks
/// in one call.
pub(crate) fn analyze(
    p: &Program,
    format: Format,
    path: &str,
    amd: Option<&AmdDefine>,
    new_targets: &HashSet<String>,
) -> ModuleObjectResult {
    let mut r = identify_module_object(p, format, path, amd, new_targets);
    if let Some(info) = &mut r.info {
        let bound = collect_bound_properties(info, p, format, amd);
        complete(info, bound);
        let more = check_destructuring_preconditions(info, p, format, path, amd);
        r.violations.extend(more);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::format::amd_define;

    fn run(src: &str) -> (ModuleObjectInfo, Vec<PreconditionViolation>) {
        let p = parse_str(src).unwrap();
        let format = crate::analysis::detect_format(&p);
        let amd = amd_define(&p);
        let mut targets = HashSet::new();
        crate::analysis::format::new_targets(&p, &mut targets);
        let r = analyze(&p, format, "lib/MathUtils.js", amd.as_ref(), &targets);
        (r.info.expect("module object"), r.violations)
    }

    fn names(f: &[ModuleFeature]) -> Vec<&str> {
        let mut v: Vec<&str> = f.iter().map(|f| f.name.as_str()).collect();
        v.sort();
        v
    }

    const FN_DECL: &str = "function MathUtils(){}\n\
        MathUtils.DEG_TO_RAD = Math.PI/180.0;\n\
        MathUtils.radFromDeg = function(deg){ return deg * MathUtils.DEG_TO_RAD; };\n\
        MathUtils.degFromRad = function(rad){ return rad / MathUtils.DEG_TO_RAD; };\n\
        module.exports = MathUtils;";

    #[test]
    fn empty_function_is_namespace() {
        let (info, v) = run(FN_DECL);
        assert!(v.is_empty(), "{v:?}");
        assert_eq!(info.instantiation, Instantiation::FunctionDecl);
        assert!(info.is_namespace);
        let f = resolve_module_structure(&info, &v);
        assert_eq!(names(&f), vec!["DEG_TO_RAD", "degFromRad", "radFromDeg"]);
    }

    #[test]
    fn exports_alias_is_empty_object() {
        let (info, v) = run("exports.a = 1;\nexports.b = function(){ return exports.a; };");
        assert!(v.is_empty(), "{v:?}");
        assert_eq!(info.instantiation, Instantiation::EmptyObject);
        assert_eq!(info.feature_name, "mod_MathUtils");
        assert_eq!(names(&resolve_module_structure(&info, &v)), vec!["a", "b"]);
    }

    #[test]
    fn evaluated_expression_with_alias() {
        let (info, v) = run(
            "var create = require(\"./create\");\nvar math = module.exports = create(Math);\nmath.EPSILON = 1e-9;\nmath.f = function(x){ return x > math.EPSILON; };",
        );
        assert!(v.is_empty(), "{v:?}");
        assert_eq!(info.instantiation, Instantiation::EvaluatedExpression);
        assert!(!info.is_namespace);
        assert_eq!(info.feature_name, "math");
        assert_eq!(
            names(&resolve_module_structure(&info, &v)),
            vec!["EPSILON", "f", "math"]
        );
    }

    #[test]
    fn prototype_bindings_are_not_bound_properties() {
        let (info, v) = run(
            "function Vec2(x, y){ if (!(this instanceof Vec2)) { return new Vec2(x, y); } this.x = x; this.y = y; }\n\
             Vec2.zero = function(){ return new Vec2(0, 0); };\n\
             Vec2.prototype.toString = function(){ return this.x + \",\" + this.y; };\n\
             module.exports = Vec2;",
        );
        assert!(v.is_empty(), "{v:?}");
        assert!(info.prototype_extended);
        assert!(!info.is_namespace);
        let facts = info.function.unwrap();
        assert!(facts.this_bindings && facts.constructed);
        assert_eq!(info.bound_props.len(), 1);
    }

    #[test]
    fn violations_degrade() {
        let (info, v) = run("var M = {};\nM[\"k\"] = 1;\nmodule.exports = M;");
        assert_eq!(v[0].rule, Rule::DotNotation);
        assert_eq!(names(&resolve_module_structure(&info, &v)), vec!["M"]);
        let (_, v) = run("function V(){ return 1; }\nV.a = 1;\nregister(V);\nmodule.exports = V;");
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::NotFullyReferenced);
        let (_, v) = run("var M = {};\nM.a = 1;\nfunction f(){ M.b = 2; }\nmodule.exports = M;");
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::NotModified);
        let (_, v) = run("module.exports = {a: 1};\nmodule.exports = {b: 2};");
        assert!(v.iter().any(|v| v.rule == Rule::NotModified));
    }

    #[test]
    fn amd_factory_return() {
        let (info, v) = run(
            "define([\"app/Score\"], function(Score){ var Game = {}; Game.start = function(){ return new Score(); }; return Game; });",
        );
        assert!(v.is_empty(), "{v:?}");
        assert_eq!(info.feature_name, "Game");
        assert!(info.is_namespace);
        assert_eq!(info.bound_props[0].name, "start");
    }

    #[test]
    fn object_literal_keys() {
        let (info, v) = run("module.exports = {a: 1, \"b-c\": 2};");
        assert_eq!(info.bound_props.len(), 1);
        assert_eq!(v[0].rule, Rule::DotNotation);
    }
}
