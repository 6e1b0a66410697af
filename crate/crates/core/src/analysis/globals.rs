use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::format::AmdDefine;
use super::{Diagnostic, Format, GlobalSets, PreconditionViolation, Rule};
use crate::frontend::visit::{walk_program, Ancestors, Ctx, Role, Visitor};
use crate::frontend::*;
use crate::mdg::FeatureKind;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalDecl {
    pub name: String,
    pub site: Option<Span>,
    pub is_function: bool,
}

impl GlobalDecl {
    fn new(name: &str, site: Option<Span>, is_function: bool) -> Self {
        GlobalDecl {
            name: name.to_string(),
            site,
            is_function,
        }
    }
}

/// The global object as seen from scripts.
pub(crate) fn is_global_object(e: &Expr, cx: &Ctx<'_>) -> bool {
    matches!(e.as_ident(), Some(n @ ("window" | "global")) if cx.is_free(n))
}

fn nested_vars(s: &Stmt, out: &mut Vec<GlobalDecl>) {
    let mut push = |d: &VarDeclarator| out.push(GlobalDecl::new(&d.name, d.span, false));
    match &s.kind {
        StmtKind::Var(d) => d.iter().for_each(push),
        StmtKind::For { init, body, .. } => {
            if let Some(ForInit::Var(d)) = init {
                d.iter().for_each(&mut push);
            }
            nested_vars(body, out);
        }
        StmtKind::ForIn { left, body, .. } => {
            if let ForInLeft::Var(d) = left {
                push(d);
            }
            nested_vars(body, out);
        }
        StmtKind::If {
            consequent,
            alternate,
            ..
        } => {
            nested_vars(consequent, out);
            if let Some(a) = alternate {
                nested_vars(a, out);
            }
        }
        StmtKind::Block(b) => b.iter().for_each(|s| nested_vars(s, out)),
        StmtKind::While { body, .. }
        | StmtKind::DoWhile { body, .. }
        | StmtKind::Labeled { body, .. } => nested_vars(body, out),
        StmtKind::Try {
            block,
            handler,
            finalizer,
        } => {
            block.iter().for_each(|s| nested_vars(s, out));
            if let Some(h) = handler {
                h.body.iter().for_each(|s| nested_vars(s, out));
            }
            if let Some(f) = finalizer {
                f.iter().for_each(|s| nested_vars(s, out));
            }
        }
        StmtKind::Switch { cases, .. } => {
            for c in cases {
                c.body.iter().for_each(|s| nested_vars(s, out));
            }
        }
        _ => {}
    }
}

struct Implied<'w> {
    explicit: HashSet<String>,
    object_props: Vec<GlobalDecl>,
    implied: Vec<GlobalDecl>,
    seen: HashSet<String>,
    path: &'w str,
    warnings: Vec<Diagnostic>,
}

impl<'a> Visitor<'a> for Implied<'_> {
    fn expr(&mut self, e: &'a Expr, role: Role, _: &Ancestors<'a>, cx: &Ctx<'a>) {
        if let (
            Role::AssignTarget(_),
            ExprKind::Member {
                object,
                property: MemberProp::Dot(n),
            },
        ) = (role, &e.kind)
        {
            if is_global_object(object, cx) && !self.object_props.iter().any(|g| &g.name == n) {
                self.object_props.push(GlobalDecl::new(n, e.span, false));
            }
            return;
        }
        let Some(n) = e.as_ident() else {
            return;
        };
        if !matches!(role, Role::AssignTarget(_)) || !cx.is_free(n) || self.explicit.contains(n) {
            return;
        }
        if cx.strict() {
            self.warnings.push(Diagnostic::new(
                self.path,
                e.span,
                format!("assignment to undeclared `{n}` in strict code (probable error)"),
            ));
        } else if self.seen.insert(n.to_string()) {
            self.implied.push(GlobalDecl::new(n, e.span, false));
        }
    }
}

/// Computes G, O, T and the implied globals of one file, plus warnings for
/// undeclared assignments in strict code.
pub fn collect_globals(
    p: &Program,
    format: Format,
    path: &str,
    amd: Option<&AmdDefine>,
) -> (GlobalSets, Vec<Diagnostic>) {
    let mut sets = GlobalSets::default();
    match format {
        Format::NonModular => {
            for s in &p.body {
                match &s.kind {
                    StmtKind::Var(d) => {
                        for v in d {
                            sets.explicit.push(GlobalDecl::new(&v.name, v.span, false));
                        }
                    }
                    StmtKind::Function(f) => {
                        if let Some(n) = &f.name {
                            sets.top_level.push(GlobalDecl::new(n, s.span, true));
                        }
                    }
                    _ => {
                        let mut nested = Vec::new();
                        nested_vars(s, &mut nested);
                        for g in nested {
                            if !sets
                                .explicit
                                .iter()
                                .chain(&sets.top_level)
                                .any(|x| x.name == g.name)
                            {
                                sets.top_level.push(g);
                            }
                        }
                    }
                }
            }
        }
        Format::Amd => {
            for (i, s) in p.body.iter().enumerate() {
                if amd.is_some_and(|d| d.stmt_index == i) {
                    continue;
                }
                match &s.kind {
                    StmtKind::Var(d) => {
                        for v in d {
                            sets.explicit.push(GlobalDecl::new(&v.name, v.span, false));
                        }
                    }
                    StmtKind::Function(f) => {
                        if let Some(n) = &f.name {
                            sets.explicit.push(GlobalDecl::new(n, s.span, true));
                        }
                    }
                    _ => {}
                }
            }
        }
        Format::Cjs => {}
    }
    // Later duplicates within one file are the same global.
    let mut seen = HashSet::new();
    sets.explicit.retain(|g| seen.insert(g.name.clone()));
    sets.top_level.retain(|g| seen.insert(g.name.clone()));
    let mut v = Implied {
        explicit: seen,
        object_props: Vec::new(),
        implied: Vec::new(),
        seen: HashSet::new(),
        path,
        warnings: Vec::new(),
    };
    walk_program(p, &mut v);
    let declared: HashSet<String> = v.object_props.iter().map(|g| g.name.clone()).collect();
    sets.object_props = v.object_props;
    sets.implied = v
        .implied
        .into_iter()
        .filter(|g| !declared.contains(&g.name))
        .collect();
    (sets, v.warnings)
}

/// What one file contributes to the global analysis.
pub struct GlobalInput<'a> {
    pub path: &'a str,
    pub format: Format,
    pub globals: &'a GlobalSets,
    pub import_count: usize,
}

/// Single-declaration and unique-top-level-function checks across files.
pub fn check_global_preconditions(files: &[GlobalInput<'_>]) -> Vec<PreconditionViolation> {
    let mut declared: BTreeMap<&str, Vec<(&str, &GlobalDecl)>> = BTreeMap::new();
    let mut on_object: BTreeMap<&str, Vec<(&str, &GlobalDecl)>> = BTreeMap::new();
    for f in files {
        for g in f.globals.explicit.iter().chain(&f.globals.top_level) {
            declared.entry(&g.name).or_default().push((f.path, g));
        }
        for g in &f.globals.object_props {
            on_object.entry(&g.name).or_default().push((f.path, g));
        }
    }
    let mut out = Vec::new();
    for (name, decls) in &declared {
        let others: Vec<&str> = on_object
            .get(name)
            .map(|o| {
                o.iter()
                    .map(|(p, _)| *p)
                    .filter(|p| !decls.iter().any(|(d, _)| d == p))
                    .collect()
            })
            .unwrap_or_default();
        if decls.len() < 2 && others.is_empty() {
            continue;
        }
        let functions = decls.iter().filter(|(_, g)| g.is_function).count();
        let rule = if functions >= 2 {
            Rule::UniqueTopLevelFunctions
        } else {
            Rule::SingleDeclaration
        };
        let mut sites: Vec<String> = decls.iter().map(|(p, _)| p.to_string()).collect();
        sites.extend(others.iter().map(|p| format!("{p} (global object)")));
        let (path, first) = decls[0];
        out.push(PreconditionViolation::new(
            rule,
            path,
            first.site,
            format!(
                "`{name}` is introduced in several files: {}",
                sites.join(", ")
            ),
        ));
    }
    out
}

/// Owner of a global-scope feature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalOwner {
    pub path: String,
    pub kind: FeatureKind,
    pub site: Option<Span>,
}

/// Allocates every global to exactly one file. Properties of the global
/// object and implied globals defined in several files go to the file with
/// the fewest distinct imports, ties to the smaller path.
pub fn resolve_global_features(files: &[GlobalInput<'_>]) -> BTreeMap<String, GlobalOwner> {
    let mut owners = BTreeMap::new();
    for f in files {
        for (set, kind) in [
            (&f.globals.explicit, FeatureKind::GlobalVar),
            (&f.globals.top_level, FeatureKind::TopLevelDecl),
        ] {
            for g in set {
                owners.entry(g.name.clone()).or_insert(GlobalOwner {
                    path: f.path.to_string(),
                    kind,
                    site: g.site,
                });
            }
        }
    }
    let mut shared: BTreeMap<&str, Vec<(&GlobalInput<'_>, &GlobalDecl, FeatureKind)>> =
        BTreeMap::new();
    for f in files {
        for (set, kind) in [
            (&f.globals.object_props, FeatureKind::GlobalObjectProperty),
            (&f.globals.implied, FeatureKind::ImpliedGlobal),
        ] {
            for g in set {
                if !owners.contains_key(&g.name) {
                    shared.entry(&g.name).or_default().push((f, g, kind));
                }
            }
        }
    }
    for (name, defs) in shared {
        // An explicit property of the global object wins over an implied
        // global of the same name.
        let pool: Vec<_> = if defs
            .iter()
            .any(|d| d.2 == FeatureKind::GlobalObjectProperty)
        {
            defs.iter()
                .filter(|d| d.2 == FeatureKind::GlobalObjectProperty)
                .collect()
        } else {
            defs.iter().collect()
        };
        let best = pool
            .iter()
            .min_by(|a, b| (a.0.import_count, a.0.path).cmp(&(b.0.import_count, b.0.path)))
            .expect("non-empty");
        owners.insert(
            name.to_string(),
            GlobalOwner {
                path: best.0.path.to_string(),
                kind: best.2,
                site: best.1.site,
            },
        );
    }
    owners
}

#[cfg(test)]
mod tests {
    use super::*;

    fn globals(src: &str, format: Format) -> GlobalSets {
        let p = parse_str(src).unwrap();
        let amd = crate::analysis::amd_define(&p);
        collect_globals(&p, format, "f.js", amd.as_ref()).0
    }

    fn names(v: &[GlobalDecl]) -> Vec<&str> {
        v.iter().map(|g| g.name.as_str()).collect()
    }

    #[test]
    fn script_globals() {
        let g = globals(
            "var hintsleft = 3;\nfunction show(){ var local = 1; }\nfor (var i = 0; i < 2; i++) {}\nwindow.game = {};",
            Format::NonModular,
        );
        assert_eq!(names(&g.explicit), vec!["hintsleft"]);
        assert_eq!(names(&g.top_level), vec!["show", "i"]);
        assert_eq!(names(&g.object_props), vec!["game"]);
        assert!(g.implied.is_empty());
    }

    #[test]
    fn implied_globals_only_in_sloppy_code() {
        let g = globals("function f(){ y = 2; }", Format::NonModular);
        assert_eq!(names(&g.implied), vec!["y"]);
        let p = parse_str("'use strict';\nx = 1;").unwrap();
        let (g, w) = collect_globals(&p, Format::NonModular, "s.js", None);
        assert!(g.implied.is_empty());
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn cjs_has_no_declared_globals() {
        let g = globals(
            "var a = require(\"./a\");\nmodule.exports = a;",
            Format::Cjs,
        );
        assert!(g.explicit.is_empty() && g.top_level.is_empty());
    }

    #[test]
    fn duplicate_declarations() {
        let a = globals("var score = 0;", Format::NonModular);
        let b = globals("var score = 1;", Format::NonModular);
        let files = [
            GlobalInput {
                path: "a.js",
                format: Format::NonModular,
                globals: &a,
                import_count: 0,
            },
            GlobalInput {
                path: "b.js",
                format: Format::NonModular,
                globals: &b,
                import_count: 0,
            },
        ];
        let v = check_global_preconditions(&files);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::SingleDeclaration);
        let a = globals("function draw(){}", Format::NonModular);
        let b = globals("function draw(){}", Format::NonModular);
        let files = [
            GlobalInput {
                path: "a.js",
                format: Format::NonModular,
                globals: &a,
                import_count: 0,
            },
            GlobalInput {
                path: "b.js",
                format: Format::NonModular,
                globals: &b,
                import_count: 0,
            },
        ];
        assert_eq!(
            check_global_preconditions(&files)[0].rule,
            Rule::UniqueTopLevelFunctions
        );
    }

    #[test]
    fn allocation_prefers_fewer_imports_then_path() {
        let a = globals("window.game = 1;", Format::NonModular);
        let b = globals("window.game = 2;", Format::NonModular);
        let files = [
            GlobalInput {
                path: "a.js",
                format: Format::NonModular,
                globals: &a,
                import_count: 3,
            },
            GlobalInput {
                path: "b.js",
                format: Format::NonModular,
                globals: &b,
                import_count: 1,
            },
        ];
        assert_eq!(resolve_global_features(&files)["game"].path, "b.js");
        let files = [
            GlobalInput {
                path: "b.js",
                format: Format::NonModular,
                globals: &b,
                import_count: 1,
            },
            GlobalInput {
                path: "a.js",
                format: Format::NonModular,
                globals: &a,
                import_count: 1,
            },
        ];
        assert_eq!(resolve_global_features(&files)["game"].path, "a.js");
    }
}
