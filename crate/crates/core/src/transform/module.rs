use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::{ModuleReport, Step, TransformError};
use crate::analysis::naming::{choose_name, RenamePlan, RenameReason};
use crate::analysis::{
    mod_name, FeatureRef, Format, ImportKind, ImportTarget, ModuleAnalysis, ProjectAnalysis,
    RefForm,
};
use crate::frontend::visit::{for_each_expr_mut, for_each_expr_post_mut, hoisted_names};
use crate::frontend::*;
use crate::mdg::{FeatureKind, ModuleFeature, Usage};
use crate::paths;

/// Prefix of the temporary identifiers standing for imported names until
/// their local names are chosen. Not a valid identifier, so it cannot clash.
const PENDING: char = '#';

/// Something the module imports under a local name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum ImportKey {
    /// Exported name of a project module.
    Named { owner: String, name: String },
    /// Default import of a library, keyed by the emitted specifier.
    Default { source: String },
}

#[derive(Debug, Clone)]
struct Rep {
    form: RefForm,
    local: String,
    setter: Option<String>,
    discarded: bool,
}

struct Rewrite<'a> {
    pa: &'a ProjectAnalysis,
    m: &'a ModuleAnalysis,
    path: &'a str,
    /// Pending import keys in allocation order.
    keys: Vec<ImportKey>,
    key_index: HashMap<ImportKey, usize>,
    /// Library imports whose local name is fixed by an existing binding.
    fixed: HashMap<usize, String>,
    /// Position of the first import site per source, for ordering.
    first_seen: HashMap<String, (u32, usize)>,
    bare: BTreeSet<String>,
    reps: HashMap<Span, Rep>,
    remove_decls: HashSet<Span>,
    remove_stmts: HashSet<Span>,
}

fn pending(k: usize) -> String {
    format!("{PENDING}{k}")
}

fn is_pending(n: &str) -> Option<usize> {
    n.strip_prefix(PENDING)?.parse().ok()
}

impl<'a> Rewrite<'a> {
    fn key(&mut self, k: ImportKey) -> String {
        if let Some(&i) = self.key_index.get(&k) {
            return pending(i);
        }
        let i = self.keys.len();
        self.keys.push(k.clone());
        self.key_index.insert(k, i);
        pending(i)
    }

    fn own_feature(&self, name: &str) -> Option<&'a ModuleFeature> {
        self.m.features.iter().find(|f| f.name == name)
    }

    /// Name under which feature `feature` of `owner` is reachable here.
    fn local_of(&mut self, owner: &str, feature: &str) -> String {
        if owner == self.path {
            return match self.own_feature(feature) {
                Some(f) => f.emitted_name.clone(),
                None => feature.to_string(),
            };
        }
        self.key(ImportKey::Named {
            owner: owner.to_string(),
            name: feature.to_string(),
        })
    }

    fn setter_of(&mut self, owner: &str, feature: &str) -> String {
        let name = ModuleFeature::mutator(feature).name;
        self.key(ImportKey::Named {
            owner: owner.to_string(),
            name,
        })
    }

    fn see(&mut self, source: &str, pos: (u32, usize)) {
        let e = self.first_seen.entry(source.to_string()).or_insert(pos);
        if pos < *e {
            *e = pos;
        }
    }

    fn library_source(&self, spec: &str, path: &Option<String>) -> String {
        match path {
            Some(p) => paths::relative_specifier(self.path, p),
            None => spec.to_string(),
        }
    }

    /// Plans the rewriting of import sites and feature references.
    fn plan(&mut self) {
        let m = self.m;
        let mut primary_done: HashSet<String> = HashSet::new();
        for (i, s) in m.imports.iter().enumerate() {
            let pos = (
                s.call.map(|c| c.start).unwrap_or(0),
                s.param_index.unwrap_or(i),
            );
            match &s.target {
                ImportTarget::Library { spec, path } => {
                    if s.kind == ImportKind::Dynamic {
                        continue;
                    }
                    let source = self.library_source(spec, path);
                    self.see(&source, pos);
                    match s.kind {
                        ImportKind::SideEffect => {
                            self.bare.insert(source);
                            self.remove_stmts.extend(s.stmt);
                        }
                        ImportKind::AmdExtra => {
                            self.bare.insert(source);
                        }
                        ImportKind::NamespaceVar | ImportKind::AmdParam
                            if !s.local_copy && !primary_done.contains(&source) =>
                        {
                            primary_done.insert(source.clone());
                            let name = self.key(ImportKey::Default {
                                source: source.clone(),
                            });
                            let idx = is_pending(&name).expect("pending name");
                            self.fixed
                                .insert(idx, s.binding.clone().unwrap_or_default());
                            self.remove_decls.extend(s.decl);
                        }
                        _ => {
                            let local = self.key(ImportKey::Default { source });
                            if let Some(c) = s.call {
                                self.reps.insert(
                                    c,
                                    Rep {
                                        form: RefForm::Read,
                                        local,
                                        setter: None,
                                        discarded: false,
                                    },
                                );
                            }
                        }
                    }
                }
                ImportTarget::Module(t) => {
                    self.see(t, pos);
                    match s.kind {
                        ImportKind::NamespaceVar | ImportKind::NamedVar if !s.local_copy => {
                            self.remove_decls.extend(s.decl);
                        }
                        ImportKind::SideEffect => {
                            self.remove_stmts.extend(s.stmt);
                        }
                        _ => {}
                    }
                }
            }
        }
        let refs: Vec<FeatureRef> = m.refs.clone();
        for r in refs {
            let local = self.local_of(&r.owner, &r.feature);
            let setter = match r.form {
                RefForm::Assign | RefForm::Update if r.owner != self.path => {
                    Some(self.setter_of(&r.owner, &r.feature))
                }
                _ => None,
            };
            self.reps.insert(
                r.span,
                Rep {
                    form: r.form,
                    local,
                    setter,
                    discarded: r.discarded,
                },
            );
        }
        // Project modules imported only for their side effects.
        if let Some(node) = self.pa.mdg.module(self.path) {
            for d in self.pa.mdg.outgoing(&node.id).unwrap_or_default() {
                if d.usage == Usage::S {
                    self.bare.insert(d.to.path.clone());
                }
            }
        }
    }
}

fn one() -> Expr {
    Expr::synth(ExprKind::Number("1".into()))
}

fn replace(e: &mut Expr, rep: &Rep) {
    let local = || Expr::ident(&rep.local);
    let new = match (rep.form, &rep.setter, &mut e.kind) {
        (RefForm::Assign, Some(setter), ExprKind::Assign { op, value, .. }) => {
            let value = std::mem::replace(&mut **value, Expr::null());
            let value = match op.binary() {
                None => value,
                Some(b) => Expr::binary(b, local(), value),
            };
            let call = Expr::call(Expr::ident(setter), vec![value]);
            if rep.discarded {
                call
            } else {
                Expr::synth(ExprKind::Sequence(vec![call, local()]))
            }
        }
        (RefForm::Update, Some(setter), ExprKind::Update { op, prefix, .. }) => {
            let (step, undo) = match op {
                UpdateOp::Incr => (BinaryOp::Add, BinaryOp::Sub),
                UpdateOp::Decr => (BinaryOp::Sub, BinaryOp::Add),
            };
            let numeric = Expr::synth(ExprKind::Unary {
                op: UnaryOp::Plus,
                arg: Box::new(local()),
            });
            let call = Expr::call(
                Expr::ident(setter),
                vec![Expr::binary(step, numeric, one())],
            );
            if rep.discarded {
                call
            } else if *prefix {
                Expr::synth(ExprKind::Sequence(vec![call, local()]))
            } else {
                Expr::synth(ExprKind::Sequence(vec![
                    call,
                    Expr::binary(undo, local(), one()),
                ]))
            }
        }
        _ => local(),
    };
    *e = new;
}

/// Removes statements and declarators by span, in every statement list.
fn prune(body: &mut Vec<Stmt>, decls: &HashSet<Span>, stmts: &HashSet<Span>) {
    body.retain_mut(|s| {
        if s.span.is_some_and(|sp| stmts.contains(&sp)) {
            return false;
        }
        match &mut s.kind {
            StmtKind::Var(d) => {
                let before = d.len();
                d.retain(|v| !v.span.is_some_and(|sp| decls.contains(&sp)));
                return !(d.is_empty() && before > 0);
            }
            StmtKind::Block(b) => prune(b, decls, stmts),
            StmtKind::If {
                consequent,
                alternate,
                ..
            } => {
                prune_one(consequent, decls, stmts);
                if let Some(a) = alternate {
                    prune_one(a, decls, stmts);
                }
            }
            StmtKind::For { body, .. }
            | StmtKind::ForIn { body, .. }
            | StmtKind::While { body, .. }
            | StmtKind::DoWhile { body, .. }
            | StmtKind::Labeled { body, .. } => prune_one(body, decls, stmts),
            StmtKind::Try {
                block,
                handler,
                finalizer,
            } => {
                prune(block, decls, stmts);
                if let Some(h) = handler {
                    prune(&mut h.body, decls, stmts);
                }
                if let Some(f) = finalizer {
                    prune(f, decls, stmts);
                }
            }
            StmtKind::Switch { cases, .. } => {
                for c in cases {
                    prune(&mut c.body, decls, stmts);
                }
            }
            _ => {}
        }
        true
    });
}

fn prune_one(s: &mut Stmt, decls: &HashSet<Span>, stmts: &HashSet<Span>) {
    let mut v = vec![std::mem::replace(s, Stmt::synth(StmtKind::Empty))];
    prune(&mut v, decls, stmts);
    *s = v.pop().unwrap_or_else(|| Stmt::synth(StmtKind::Empty));
}

/// Replaces the `define(...)` statement by the factory body, turning the
/// factory's `return e` into `var mod_<file> = e`.
fn step1_clear_amd(
    p: &mut Program,
    m: &ModuleAnalysis,
    placeholder: &str,
) -> Result<(), TransformError> {
    let d = m.amd.as_ref().ok_or_else(|| TransformError::NoDefine {
        path: m.source.path.clone(),
    })?;
    let no_define = || TransformError::NoDefine {
        path: m.source.path.clone(),
    };
    let define_span = m
        .program
        .as_ref()
        .and_then(|o| o.body.get(d.stmt_index))
        .and_then(|s| s.span)
        .ok_or_else(no_define)?;
    let idx = p
        .body
        .iter()
        .position(|s| s.span == Some(define_span))
        .ok_or_else(no_define)?;
    let StmtKind::Expr(Expr {
        kind: ExprKind::Call { args, .. },
        ..
    }) = &mut p.body[idx].kind
    else {
        return Err(no_define());
    };
    let mut inlined = Vec::new();
    if d.object_literal {
        let obj = args.pop().ok_or_else(no_define)?;
        inlined.push(Stmt::var(placeholder, Some(obj)));
    } else {
        let factory = args
            .iter_mut()
            .rev()
            .find_map(|a| match &mut a.kind {
                ExprKind::Function(f) => Some(f),
                _ => None,
            })
            .ok_or_else(no_define)?;
        for s in std::mem::take(&mut factory.body) {
            match s.kind {
                StmtKind::Return(value) => {
                    if let Some(v) = value {
                        inlined.push(Stmt {
                            kind: StmtKind::Var(vec![VarDeclarator {
                                name: placeholder.to_string(),
                                init: Some(v),
                                span: None,
                            }]),
                            span: s.span,
                        });
                    }
                    break;
                }
                _ => inlined.push(s),
            }
        }
    }
    p.body.splice(idx..=idx, inlined);
    Ok(())
}

/// Turns the bound-property bindings of extracted features into variable
/// declarations.
fn step3_destructure(p: &mut Program, m: &ModuleAnalysis) -> bool {
    let Some(info) = &m.module_object else {
        return false;
    };
    let mut changed = false;
    let extracted: Vec<_> = info
        .bound_props
        .iter()
        .filter_map(|b| {
            let f = m.feature(&b.name)?;
            (f.kind == FeatureKind::ExtractedProperty).then_some((b, f.emitted_name.clone()))
        })
        .collect();
    // `N.p = v;` statements.
    for (b, emitted) in extracted.iter().filter(|(b, _)| !b.from_literal) {
        let Some(stmt) = p
            .body
            .iter_mut()
            .find(|s| s.span.is_some() && s.span == b.site)
        else {
            continue;
        };
        if let StmtKind::Expr(Expr {
            kind: ExprKind::Assign { value, .. },
            ..
        }) = &mut stmt.kind
        {
            let v = std::mem::replace(&mut **value, Expr::null());
            stmt.kind = StmtKind::Var(vec![VarDeclarator {
                name: emitted.clone(),
                init: Some(v),
                span: None,
            }]);
            changed = true;
        }
    }
    // Object-literal pairs, hoisted before their statement in source order.
    let literal: HashMap<Span, String> = extracted
        .iter()
        .filter(|(b, _)| b.from_literal)
        .filter_map(|(b, e)| b.site.map(|s| (s, e.clone())))
        .collect();
    if literal.is_empty() {
        return changed;
    }
    let mut out = Vec::with_capacity(p.body.len() + literal.len());
    for mut s in std::mem::take(&mut p.body) {
        let mut taken = Vec::new();
        stmt_objects(&mut s, &mut |props: &mut Vec<Property>| {
            props.retain_mut(|pr| match pr.span.and_then(|sp| literal.get(&sp)) {
                Some(name) => {
                    let v = std::mem::replace(&mut pr.value, Expr::null());
                    taken.push(Stmt::var(name.clone(), Some(v)));
                    false
                }
                None => true,
            });
        });
        changed |= !taken.is_empty();
        out.extend(taken);
        out.push(s);
    }
    p.body = out;
    changed
}

/// Calls `f` on the property list of every object literal reachable from a
/// top-level statement without entering functions.
fn stmt_objects(s: &mut Stmt, f: &mut dyn FnMut(&mut Vec<Property>)) {
    fn walk(e: &mut Expr, f: &mut dyn FnMut(&mut Vec<Property>)) {
        match &mut e.kind {
            ExprKind::Object(props) => f(props),
            ExprKind::Assign { value, .. } => walk(value, f),
            ExprKind::Call { args, .. } => args.iter_mut().for_each(|a| walk(a, f)),
            _ => {}
        }
    }
    match &mut s.kind {
        StmtKind::Var(d) => {
            for v in d {
                if let Some(e) = &mut v.init {
                    walk(e, f);
                }
            }
        }
        StmtKind::Expr(e) | StmtKind::Return(Some(e)) => walk(e, f),
        _ => {}
    }
}

/// Occurrences of every identifier: references, declared variables,
/// function names and parameters.
fn name_counts(body: &[Stmt]) -> HashMap<String, usize> {
    use crate::frontend::visit::{walk_program, Ancestors, Ctx, Role, Visitor};
    struct C(HashMap<String, usize>);
    impl C {
        fn add(&mut self, n: &str) {
            *self.0.entry(n.to_string()).or_default() += 1;
        }
    }
    impl<'a> Visitor<'a> for C {
        fn expr(&mut self, e: &'a Expr, _: Role, _: &Ancestors<'a>, _: &Ctx<'a>) {
            if let ExprKind::Ident(n) = &e.kind {
                self.add(n);
            }
        }
        fn stmt(&mut self, s: &'a Stmt, _: &Ctx<'a>) {
            let decls = match &s.kind {
                StmtKind::Var(d)
                | StmtKind::For {
                    init: Some(ForInit::Var(d)),
                    ..
                } => d.as_slice(),
                StmtKind::ForIn {
                    left: ForInLeft::Var(d),
                    ..
                } => std::slice::from_ref(d),
                _ => &[],
            };
            for d in decls {
                self.add(&d.name);
            }
        }
        fn function(&mut self, f: &'a Function, _: &Ctx<'a>) {
            if let Some(n) = &f.name {
                self.add(n);
            }
            for p in &f.params {
                self.add(p);
            }
        }
    }
    let p = Program::new(body.to_vec());
    let mut c = C(HashMap::new());
    walk_program(&p, &mut c);
    c.0
}

/// Whether `e` can be dropped without observable effect.
fn pure_object_value(e: &Expr, object: &HashSet<String>) -> bool {
    match &e.kind {
        ExprKind::Ident(_)
        | ExprKind::Null
        | ExprKind::Number(_)
        | ExprKind::Str(_)
        | ExprKind::Bool(_)
        | ExprKind::Function(_) => true,
        ExprKind::Object(props) => props.iter().all(|p| pure_object_value(&p.value, object)),
        ExprKind::Assign {
            op: AssignOp::Assign,
            target,
            value,
        } => {
            target.as_ident().is_some_and(|n| object.contains(n))
                && pure_object_value(value, object)
        }
        _ => false,
    }
}

/// Deletes declarations and assignments of the module object (and of the
/// placeholder) once nothing else refers to them.
fn drop_unused_object(p: &mut Program, object: &HashSet<String>, keep: &HashSet<String>) {
    loop {
        let counts = name_counts(&p.body);
        // Occurrences of object names inside removable statements.
        let mut inside: HashMap<String, usize> = HashMap::new();
        let mut candidates: Vec<(usize, Option<usize>, HashSet<String>)> = Vec::new();
        for (i, s) in p.body.iter().enumerate() {
            let single = |stmt: Stmt| name_counts(std::slice::from_ref(&stmt));
            match &s.kind {
                StmtKind::Function(f)
                    if f.body.is_empty() && f.name.as_ref().is_some_and(|n| object.contains(n)) =>
                {
                    let c = single(s.clone());
                    candidates.push((i, None, c.keys().cloned().collect()));
                    for (k, v) in c {
                        *inside.entry(k).or_default() += v;
                    }
                }
                StmtKind::Var(d) => {
                    for (j, v) in d.iter().enumerate() {
                        if object.contains(&v.name)
                            && v.init.as_ref().is_none_or(|e| pure_object_value(e, object))
                        {
                            let c = single(Stmt::synth(StmtKind::Var(vec![v.clone()])));
                            candidates.push((i, Some(j), c.keys().cloned().collect()));
                            for (k, n) in c {
                                *inside.entry(k).or_default() += n;
                            }
                        }
                    }
                }
                StmtKind::Expr(
                    e @ Expr {
                        kind: ExprKind::Assign { .. },
                        ..
                    },
                ) if pure_object_value(e, object) => {
                    let c = single(s.clone());
                    candidates.push((i, None, c.keys().cloned().collect()));
                    for (k, n) in c {
                        *inside.entry(k).or_default() += n;
                    }
                }
                _ => {}
            }
        }
        let removable = |n: &String| {
            !keep.contains(n)
                && counts.get(n).copied().unwrap_or(0) == inside.get(n).copied().unwrap_or(0)
        };
        let chosen: Vec<_> = candidates
            .into_iter()
            .filter(|(_, _, names)| names.iter().filter(|n| object.contains(*n)).all(removable))
            .collect();
        if chosen.is_empty() {
            return;
        }
        let mut drop_stmt = HashSet::new();
        let mut drop_decl: HashMap<usize, HashSet<usize>> = HashMap::new();
        for (i, j, _) in chosen {
            match j {
                None => {
                    drop_stmt.insert(i);
                }
                Some(j) => {
                    drop_decl.entry(i).or_default().insert(j);
                }
            }
        }
        let body = std::mem::take(&mut p.body);
        for (i, mut s) in body.into_iter().enumerate() {
            if drop_stmt.contains(&i) {
                continue;
            }
            if let (Some(js), StmtKind::Var(d)) = (drop_decl.get(&i), &mut s.kind) {
                let mut j = 0;
                d.retain(|_| {
                    j += 1;
                    !js.contains(&(j - 1))
                });
                if d.is_empty() {
                    continue;
                }
            }
            p.body.push(s);
        }
    }
}

fn mutator_decl(name: &str, target: &str) -> Stmt {
    let param = if target == "value" { "value_" } else { "value" };
    Stmt::synth(StmtKind::Function(Function {
        name: Some(name.to_string()),
        params: vec![param.to_string()],
        directives: Vec::new(),
        body: vec![Stmt::expr(Expr::assign(
            Expr::ident(target),
            Expr::ident(param),
        ))],
        span: None,
    }))
}

/// Refactors one module of the graph into an ES6 module.
pub fn transform_module(
    pa: &ProjectAnalysis,
    m: &ModuleAnalysis,
) -> Result<(Program, ModuleReport), TransformError> {
    let path = m.source.path.as_str();
    let mut p = m.program.clone().ok_or_else(|| TransformError::Print {
        path: path.to_string(),
        message: "module was not parsed".into(),
    })?;
    let placeholder = mod_name(path);
    let mut rw = Rewrite {
        pa,
        m,
        path,
        keys: Vec::new(),
        key_index: HashMap::new(),
        fixed: HashMap::new(),
        first_seen: HashMap::new(),
        bare: BTreeSet::new(),
        reps: HashMap::new(),
        remove_decls: HashSet::new(),
        remove_stmts: HashSet::new(),
    };
    rw.plan();
    let mut steps = Vec::new();

    // References to features and library imports.
    let reps = std::mem::take(&mut rw.reps);
    for_each_expr_post_mut(&mut p.body, &mut |e| {
        if let Some(r) = e.span.and_then(|s| reps.get(&s)) {
            replace(e, r);
        }
    });
    prune(&mut p.body, &rw.remove_decls, &rw.remove_stmts);

    match m.format {
        Format::Amd => {
            step1_clear_amd(&mut p, m, &placeholder)?;
            steps.push(Step::ClearAmd);
        }
        Format::Cjs => steps.push(Step::ClearCjs),
        Format::NonModular => {}
    }
    if step3_destructure(&mut p, m) {
        steps.push(Step::Destructure);
    }

    // Module object cleanup.
    let exported_names: HashSet<String> = m
        .features
        .iter()
        .filter(|f| f.exported)
        .map(|f| f.emitted_name.clone())
        .collect();
    let mut object: HashSet<String> = HashSet::from([placeholder.clone()]);
    if let Some(info) = &m.module_object {
        if info.is_namespace && m.module_object_feature().is_none() {
            object.extend(info.names.iter().cloned());
        }
    }
    drop_unused_object(&mut p, &object, &exported_names);

    // Declarations the module needs at the top.
    let mut head = Vec::new();
    let declared = hoisted_names(&p.body);
    let counts = name_counts(&p.body);
    if m.format == Format::Cjs
        && counts.contains_key(&placeholder)
        && !declared.contains(&placeholder)
    {
        // `module.exports` starts out as an empty object.
        head.push(Stmt::var(
            &placeholder,
            Some(Expr::synth(ExprKind::Object(Vec::new()))),
        ));
    }
    for f in &m.features {
        if matches!(
            f.kind,
            FeatureKind::GlobalObjectProperty | FeatureKind::ImpliedGlobal
        ) && !declared.contains(&f.emitted_name)
        {
            head.push(Stmt::var(&f.emitted_name, None));
        }
    }

    // Step 4: mutators and the export list.
    let mut tail = Vec::new();
    let mut export = Vec::new();
    for f in &m.features {
        if f.kind == FeatureKind::Mutator {
            let target = f
                .mutates
                .as_ref()
                .and_then(|t| m.feature(t))
                .map(|t| t.emitted_name.clone())
                .unwrap_or_default();
            tail.push(mutator_decl(&f.emitted_name, &target));
        }
        if f.exported {
            export.push(ExportSpecifier {
                local: f.emitted_name.clone(),
                exported: f.name.clone(),
            });
        }
    }
    let exports: Vec<String> = export.iter().map(|e| e.exported.clone()).collect();
    if !export.is_empty() {
        tail.push(Stmt::synth(StmtKind::ExportNamed(export)));
        steps.push(Step::Exports);
    }

    // Step 5: local names for imports, then the import statements.
    let mut body = head;
    body.append(&mut p.body);
    body.append(&mut tail);
    let mut taken: HashSet<String> = name_counts(&body)
        .into_keys()
        .filter(|n| is_pending(n).is_none())
        .collect();
    taken.extend(m.features.iter().map(|f| f.emitted_name.clone()));
    taken.extend(rw.fixed.values().cloned());
    taken.insert(placeholder.clone());
    let mut order: Vec<usize> = (0..rw.keys.len()).collect();
    let source_of = |k: &ImportKey| match k {
        ImportKey::Named { owner, .. } => owner.clone(),
        ImportKey::Default { source } => source.clone(),
    };
    let rank = |source: &str| -> (u32, usize, usize, String) {
        let (a, b) = rw
            .first_seen
            .get(source)
            .copied()
            .unwrap_or((u32::MAX, usize::MAX));
        let load = pa
            .module(source)
            .and_then(|t| t.source.load_index)
            .unwrap_or(usize::MAX);
        (a, b, load, source.to_string())
    };
    order.sort_by_cached_key(|&i| (rank(&source_of(&rw.keys[i])), rw.keys[i].clone()));
    let mut locals: Vec<String> = vec![String::new(); rw.keys.len()];
    let mut renames: Vec<RenamePlan> = m.renames.clone();
    for &i in &order {
        if let Some(f) = rw.fixed.get(&i) {
            locals[i] = f.clone();
            continue;
        }
        let (preferred, prefix_path) = match &rw.keys[i] {
            ImportKey::Named { owner, name } => (name.clone(), owner.clone()),
            ImportKey::Default { source } => {
                let stem = paths::sanitize_identifier(paths::file_stem(source));
                (stem, source.clone())
            }
        };
        let is_taken = |n: &str| taken.contains(n);
        let (local, plan) = choose_name(
            &preferred,
            &prefix_path,
            RenameReason::ImportConflict,
            &is_taken,
        );
        taken.insert(local.clone());
        renames.extend(plan);
        locals[i] = local;
    }
    for_each_expr_mut(&mut body, &mut |e| {
        if let ExprKind::Ident(n) = &mut e.kind {
            if let Some(i) = is_pending(n) {
                *n = locals[i].clone();
            }
        }
    });

    let mut imports: BTreeMap<(u32, usize, usize, String), Stmt> = BTreeMap::new();
    let mut named: BTreeMap<String, Vec<ImportSpecifier>> = BTreeMap::new();
    for &i in &order {
        match &rw.keys[i] {
            ImportKey::Named { owner, name } => {
                named
                    .entry(owner.clone())
                    .or_default()
                    .push(ImportSpecifier {
                        imported: name.clone(),
                        local: locals[i].clone(),
                    })
            }
            ImportKey::Default { source } => {
                imports.insert(
                    rank(source),
                    Stmt::synth(StmtKind::ImportDefault {
                        local: locals[i].clone(),
                        source: source.clone(),
                    }),
                );
            }
        }
    }
    for (owner, specifiers) in named {
        let r = rank(&owner);
        imports.insert(
            r,
            Stmt::synth(StmtKind::ImportNamed {
                specifiers,
                source: paths::relative_specifier(path, &owner),
            }),
        );
    }
    for source in &rw.bare {
        let r = rank(source);
        if imports.contains_key(&r) {
            continue;
        }
        let spec = if pa.mdg.module(source).is_some() {
            paths::relative_specifier(path, source)
        } else {
            source.clone()
        };
        imports.insert(r, Stmt::synth(StmtKind::ImportBare { source: spec }));
    }
    let import_sources: Vec<String> = imports
        .values()
        .map(|s| match &s.kind {
            StmtKind::ImportNamed { source, .. }
            | StmtKind::ImportDefault { source, .. }
            | StmtKind::ImportBare { source } => source.clone(),
            _ => String::new(),
        })
        .collect();
    if !imports.is_empty() {
        steps.push(Step::Imports);
    }
    let mut out: Vec<Stmt> = imports.into_values().collect();
    out.append(&mut body);
    p.body = out;
    Ok((
        p,
        ModuleReport {
            path: path.to_string(),
            format: m.format,
            steps,
            renames,
            exports,
            imports: import_sources,
            violations: m.violations.clone(),
            in_graph: true,
            skipped: None,
        },
    ))
}
