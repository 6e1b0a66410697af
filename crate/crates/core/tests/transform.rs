mod common;

use std::collections::{BTreeMap, BTreeSet};

use es6migrate_core::frontend::visit::{walk_program, Ancestors, Ctx, Role, Visitor};
use es6migrate_core::frontend::{parse_str, Expr, ExprKind, Program, StmtKind};
use es6migrate_core::{
    build_mdg, refactor_project, AnalysisOptions, Project, RefactorOutput, SourceFile,
};

use common::{files_with, fixtures, project};

fn refactor(dir: &str, options: &AnalysisOptions) -> RefactorOutput {
    let p = project(dir);
    let pa = build_mdg(&p, options).unwrap();
    refactor_project(&p, &pa)
}

fn parsed(path: &str, text: &str) -> Program {
    parse_str(text).unwrap_or_else(|e| panic!("{path}: {e}\n{text}"))
}

fn check_golden(name: &str, options: AnalysisOptions) {
    let out = refactor(&format!("projects/{name}"), &options);
    let want: BTreeMap<String, String> = files_with(
        &fixtures().join("golden/refactor").join(name),
        &["js", "html"],
    )
    .into_iter()
    .collect();
    let got: BTreeMap<String, String> = out
        .files
        .iter()
        .map(|f| (f.path.clone(), f.text.clone()))
        .collect();
    assert_eq!(
        got.keys().collect::<Vec<_>>(),
        want.keys().collect::<Vec<_>>(),
        "{name}"
    );
    for (path, text) in &want {
        if path.ends_with(".js") {
            let a = parsed(path, &got[path]);
            let b = parsed(path, text);
            assert!(
                a.structurally_eq(&b),
                "{name}/{path} differs:\n{}",
                got[path]
            );
        } else {
            assert_eq!(&got[path], text, "{name}/{path}");
        }
    }
    assert!(
        !out.report.has_failures(),
        "{name}: {}",
        out.report.to_json()
    );
}

#[test]
fn goldens() {
    for name in [
        "planck",
        "mathutils_function",
        "mathutils_empty",
        "mathutils_literal",
        "vec2",
        "write_deps",
        "narrowed",
        "hangman",
    ] {
        check_golden(name, AnalysisOptions::default());
    }
    check_golden(
        "tetris",
        AnalysisOptions {
            amd_base: "js".into(),
            ..Default::default()
        },
    );
    check_golden(
        "library",
        AnalysisOptions {
            library: true,
            ..Default::default()
        },
    );
    check_golden(
        "lenient",
        AnalysisOptions {
            lenient_nesting: true,
            ..Default::default()
        },
    );
}

fn imports(p: &Program) -> Vec<(String, String, String)> {
    p.body
        .iter()
        .flat_map(|s| match &s.kind {
            StmtKind::ImportNamed { specifiers, source } => specifiers
                .iter()
                .map(|sp| (source.clone(), sp.imported.clone(), sp.local.clone()))
                .collect(),
            _ => Vec::new(),
        })
        .collect()
}

fn exports(p: &Program) -> Vec<(String, String)> {
    p.body
        .iter()
        .flat_map(|s| match &s.kind {
            StmtKind::ExportNamed(specs) => specs
                .iter()
                .map(|e| (e.local.clone(), e.exported.clone()))
                .collect(),
            _ => Vec::new(),
        })
        .collect()
}

#[test]
fn math_module_shape() {
    let out = refactor("projects/planck", &AnalysisOptions::default());
    let text = out.file("src/common/Math.js").unwrap();
    let p = parsed("Math.js", text);
    assert_eq!(
        imports(&p),
        vec![
            (
                "../util/common.js".into(),
                "assert".into(),
                "common_assert".into()
            ),
            ("../util/common.js".into(), "debug".into(), "debug".into()),
            ("../util/create.js".into(), "create".into(), "create".into()),
        ]
    );
    let import_stmts = p
        .body
        .iter()
        .filter(|s| matches!(s.kind, StmtKind::ImportNamed { .. }))
        .count();
    assert_eq!(import_stmts, 2);
    assert!(text.contains("var mod_Math = {};"));
    assert!(text.contains("var math = mod_Math = create(native);"));
    assert!(text.contains("var Math_isFinite = function"));
    assert!(exports(&p).contains(&("Math_isFinite".into(), "isFinite".into())));
    assert!(!text.contains("require("));
    assert!(!text.contains("module.exports"));
}

/// Writes to imported bindings that survived the rewrite.
struct ImportWrites<'a> {
    imported: &'a BTreeSet<String>,
    found: Vec<String>,
    calls: BTreeSet<String>,
}

impl<'a, 'b> Visitor<'b> for ImportWrites<'a> {
    fn expr(&mut self, e: &'b Expr, role: Role, _anc: &Ancestors<'b>, cx: &Ctx<'b>) {
        match (&e.kind, role) {
            (ExprKind::Ident(n), Role::AssignTarget(_) | Role::UpdateArg)
                if self.imported.contains(n) && cx.is_top_level_binding(n) =>
            {
                self.found.push(n.clone());
            }
            (ExprKind::Ident(n), Role::Callee) if n.starts_with("set_") => {
                self.calls.insert(n.clone());
            }
            _ => {}
        }
    }
}

/// Every write form applied to an imported property, in several positions.
fn write_forms() -> Vec<String> {
    let ops = [
        "=", "+=", "-=", "*=", "/=", "%=", "<<=", ">>=", ">>>=", "&=", "|=", "^=",
    ];
    let mut forms: Vec<String> = ops.iter().map(|op| format!("s.count {op} 3")).collect();
    forms.extend(["s.count++", "s.count--", "++s.count", "--s.count"].map(String::from));
    forms.push("s.label = s.label + '!'".into());
    forms
}

fn write_project(form: &str) -> Project {
    let state = "exports.count = 1;\nexports.label = 'x';\nexports.get = function() { return exports.count + exports.label; };\n";
    let main = format!(
        "var s = require('./state');\n\
         {form};\n\
         var v = {form};\n\
         console.log(({form}), s.get(), v);\n\
         function later() {{ return {form}; }}\n\
         if (s.count) {{ later(); }}\n\
         for (var i = 0; i < 2; i++) {{ s.count = i ? ({form}) : s.count; }}\n\
         console.log(s.count, s.label, s.get());\n"
    );
    Project::new(vec![
        SourceFile::js("state.js", state),
        SourceFile::js("main.js", main),
    ])
}

#[test]
fn mutators_cover_every_write() {
    for form in write_forms() {
        let p = write_project(&form);
        let pa = build_mdg(&p, &AnalysisOptions::default()).unwrap();
        let out = refactor_project(&p, &pa);
        assert!(
            !out.report.has_failures(),
            "{form}: {}",
            out.report.to_json()
        );
        let main = parsed("main.js", out.file("main.js").unwrap());
        let state = parsed("state.js", out.file("state.js").unwrap());
        let imported: BTreeSet<String> = imports(&main).into_iter().map(|(_, _, l)| l).collect();
        let mut v = ImportWrites {
            imported: &imported,
            found: Vec::new(),
            calls: BTreeSet::new(),
        };
        walk_program(&main, &mut v);
        assert!(
            v.found.is_empty(),
            "{form}: imported bindings written: {:?}",
            v.found
        );
        assert!(!v.calls.is_empty(), "{form}: no mutator call");
        let exported: BTreeSet<String> = exports(&state).into_iter().map(|(_, e)| e).collect();
        let declared: BTreeSet<String> = state
            .body
            .iter()
            .filter_map(|s| match &s.kind {
                StmtKind::Function(f) => f.name.clone(),
                _ => None,
            })
            .collect();
        for call in &v.calls {
            assert!(imported.contains(call), "{form}: {call} not imported");
            assert!(exported.contains(call), "{form}: {call} not exported");
            assert!(declared.contains(call), "{form}: {call} not declared");
            assert!(
                exported.contains(&call["set_".len()..]),
                "{form}: {call} mutates nothing exported"
            );
        }
    }
}

#[test]
fn every_write_in_the_fixture_is_a_mutator_call() {
    let out = refactor("projects/write_deps", &AnalysisOptions::default());
    let main = parsed("main.js", out.file("main.js").unwrap());
    let imported: BTreeSet<String> = imports(&main).into_iter().map(|(_, _, l)| l).collect();
    let mut v = ImportWrites {
        imported: &imported,
        found: Vec::new(),
        calls: BTreeSet::new(),
    };
    walk_program(&main, &mut v);
    assert!(v.found.is_empty());
    assert_eq!(
        v.calls,
        ["set_count".to_string(), "set_label".to_string()].into()
    );
}

#[test]
fn library_mode_exports_unused_features() {
    let plain = refactor("projects/library", &AnalysisOptions::default());
    let lib = refactor(
        "projects/library",
        &AnalysisOptions {
            library: true,
            ..Default::default()
        },
    );
    let names = |o: &RefactorOutput, f: &str| -> BTreeSet<String> {
        exports(&parsed(f, o.file(f).unwrap()))
            .into_iter()
            .map(|(_, e)| e)
            .collect()
    };
    assert!(names(&lib, "check.js").contains("strict"));
    assert!(!names(&plain, "check.js").contains("strict"));
    assert_eq!(
        names(&lib, "api.js"),
        ["VERSION", "add", "sub"].map(String::from).into()
    );
}

#[test]
fn lenient_nesting_hoists_with_a_warning() {
    let strict = refactor("projects/lenient", &AnalysisOptions::default());
    let m = strict
        .report
        .modules
        .iter()
        .find(|m| m.path == "loader.js")
        .unwrap();
    assert!(m.skipped.is_some());
    let lenient = refactor(
        "projects/lenient",
        &AnalysisOptions {
            lenient_nesting: true,
            ..Default::default()
        },
    );
    assert!(!lenient.report.has_failures());
    assert!(lenient
        .report
        .warnings
        .iter()
        .any(|w| w.path == "loader.js"));
    let loader = parsed("loader.js", lenient.file("loader.js").unwrap());
    assert!(matches!(loader.body[0].kind, StmtKind::ImportNamed { .. }));
}

#[test]
fn pages_load_scripts_as_modules() {
    let out = refactor("projects/hangman", &AnalysisOptions::default());
    let html = out.file("index.html").unwrap();
    assert!(html.contains("type=\"module\""));
    assert!(!out.files.iter().any(|f| f.path.contains(".inline")));
}

fn resolve(from: &str, spec: &str) -> Option<String> {
    if !spec.starts_with('.') {
        return None;
    }
    let mut parts: Vec<&str> = from.split('/').collect();
    parts.pop();
    for seg in spec.split('/') {
        match seg {
            "." => {}
            ".." => {
                parts.pop();
            }
            s => parts.push(s),
        }
    }
    Some(parts.join("/"))
}

/// Closed-world checks over every migrated fixture: each output parses, each
/// exported name is declared, each named import is exported by its source,
/// and each written feature gets exactly one mutator, exported once.
#[test]
fn output_invariants() {
    let cases = [
        ("projects/planck", AnalysisOptions::default()),
        ("projects/vec2", AnalysisOptions::default()),
        ("projects/write_deps", AnalysisOptions::default()),
        ("projects/narrowed", AnalysisOptions::default()),
        ("projects/hangman", AnalysisOptions::default()),
        ("projects/library", AnalysisOptions::default()),
        ("projects/rules/not_modified", AnalysisOptions::default()),
        ("census/express_session", AnalysisOptions::default()),
        (
            "projects/tetris",
            AnalysisOptions {
                amd_base: "js".into(),
                ..Default::default()
            },
        ),
    ];
    for (dir, options) in cases {
        let p = project(dir);
        let pa = build_mdg(&p, &options).unwrap();
        let out = refactor_project(&p, &pa);
        let programs: BTreeMap<String, Program> = out
            .files
            .iter()
            .filter(|f| f.path.ends_with(".js"))
            .map(|f| (f.path.clone(), parsed(&f.path, &f.text)))
            .collect();
        let exported = |path: &str| -> Vec<String> {
            programs
                .get(path)
                .map(|p| exports(p).into_iter().map(|(_, e)| e).collect())
                .unwrap_or_default()
        };
        for (path, prog) in &programs {
            let declared = es6migrate_core::frontend::visit::hoisted_names(&prog.body);
            for (local, _) in exports(prog) {
                assert!(
                    declared.contains(&local),
                    "{dir}/{path}: exports undeclared {local}"
                );
            }
            for (source, imported, _) in imports(prog) {
                if let Some(target) = resolve(path, &source) {
                    assert!(
                        exported(&target).contains(&imported),
                        "{dir}/{path}: {target} does not export {imported}"
                    );
                }
            }
        }
        let written: BTreeSet<(String, String)> = pa
            .mdg
            .deps
            .iter()
            .filter(|d| d.usage == es6migrate_core::Usage::W)
            .filter_map(|d| Some((d.to.path.clone(), d.feature.clone()?)))
            .collect();
        for (target, feature) in written {
            let Some(prog) = programs.get(&target) else {
                continue;
            };
            let mutator = format!("set_{feature}");
            let defs = prog
                .body
                .iter()
                .filter(|s| matches!(&s.kind, StmtKind::Function(f) if f.name.as_deref() == Some(mutator.as_str())))
                .count();
            assert_eq!(defs, 1, "{dir}/{target}: {mutator} defined {defs} times");
            let n = exported(&target).iter().filter(|e| **e == mutator).count();
            assert_eq!(n, 1, "{dir}/{target}: {mutator} exported {n} times");
        }
    }
}
