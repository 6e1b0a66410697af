mod common;

use std::fs;

use common::{
    code, es6migrate, fixture, node, outputs, page_output, refactor_into, run_node, s, stderr,
};

const PROGRAMS: &[(&str, &str, &[&str])] = &[
    ("projects/planck", "src/index.js", &[]),
    ("projects/mathutils_function", "main.js", &[]),
    ("projects/mathutils_empty", "main.js", &[]),
    ("projects/mathutils_literal", "main.js", &[]),
    ("projects/vec2", "main.js", &[]),
    ("projects/write_deps", "main.js", &[]),
    ("projects/narrowed", "main.js", &[]),
    ("projects/lenient", "main.js", &["--lenient-nesting"]),
    (
        "projects/with_tests",
        "test/calc_test.js",
        &["--tests", "test"],
    ),
    ("projects/rules/dot_notation", "main.js", &[]),
    ("projects/rules/not_fully_referenced", "main.js", &[]),
    ("projects/rules/not_modified", "main.js", &[]),
    ("projects/rules/strict_this", "main.js", &[]),
    ("projects/rules/top_level_imports", "main.js", &[]),
];

#[test]
fn programs_behave_the_same() {
    let Some(node) = node() else {
        eprintln!("node not found; behaviour not checked");
        return;
    };
    for (rel, entry, extra) in PROGRAMS {
        let (before, after) = outputs(&node, rel, entry, extra);
        assert!(!before.is_empty(), "{rel}");
        assert_eq!(before, after, "{rel}");
    }
}

#[test]
fn page_behaves_the_same() {
    let Some(node) = node() else {
        eprintln!("node not found; behaviour not checked");
        return;
    };
    let before = page_output(&node, &fixture("projects/hangman"), "index.html");
    let (out, o) = refactor_into("projects/hangman", &[]);
    assert_eq!(code(&o), 0);
    let after = page_output(&node, out.path(), "index.html");
    assert!(before.contains("apple"));
    assert_eq!(before, after);
}

#[test]
fn every_write_form_behaves_the_same() {
    let Some(node) = node() else {
        eprintln!("node not found; behaviour not checked");
        return;
    };
    let ops = [
        "=", "+=", "-=", "*=", "/=", "%=", "<<=", ">>=", ">>>=", "&=", "|=", "^=",
    ];
    let mut forms: Vec<String> = ops.iter().map(|op| format!("s.count {op} 3")).collect();
    forms.extend(
        [
            "s.count++",
            "s.count--",
            "++s.count",
            "--s.count",
            "s.label += s.count",
        ]
        .map(String::from),
    );
    for form in forms {
        let root = tempfile::tempdir().unwrap();
        fs::write(
            root.path().join("state.js"),
            "exports.count = '7';\nexports.label = 'x';\nexports.get = function() { return exports.count + exports.label; };\n",
        )
        .unwrap();
        fs::write(
            root.path().join("main.js"),
            format!(
                "var s = require('./state');\n{form};\nvar v = {form};\nconsole.log(({form}), s.get(), v);\n\
                 function later() {{ return {form}; }}\nconsole.log(later(), s.count, s.label, s.get());\n"
            ),
        )
        .unwrap();
        let before = run_node(&node, &root.path().join("main.js"), root.path());
        let out = tempfile::tempdir().unwrap();
        let o = es6migrate(&["refactor", "--root", s(root.path()), "--out", s(out.path())]);
        assert_eq!(code(&o), 0, "{form}: {}", stderr(&o));
        fs::write(out.path().join("package.json"), "{\"type\": \"module\"}").unwrap();
        let after = run_node(&node, &out.path().join("main.js"), out.path());
        assert_eq!(before, after, "{form}");
    }
}
