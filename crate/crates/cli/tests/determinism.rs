mod common;

use es6migrate_core::{build_mdg, refactor_project, AnalysisOptions, Project, SourceFile};

use common::{code, es6migrate, fixture, refactor_into, s, stdout, tree};

const FIXTURES: &[(&str, &[&str])] = &[
    ("projects/planck", &[]),
    ("projects/tetris", &["--amd-base", "js"]),
    ("projects/hangman", &[]),
    ("projects/write_deps", &[]),
    ("projects/narrowed", &[]),
    ("projects/rules/strict_this", &[]),
    ("census/express_session", &[]),
];

#[test]
fn refactored_trees_and_reports_repeat() {
    for (rel, extra) in FIXTURES {
        let (a, ra) = refactor_into(rel, extra);
        let (b, rb) = refactor_into(rel, extra);
        assert_eq!(code(&ra), code(&rb), "{rel}");
        assert_eq!(stdout(&ra), stdout(&rb), "{rel}");
        assert_eq!(tree(a.path()), tree(b.path()), "{rel}");
    }
}

#[test]
fn reports_repeat() {
    for (rel, extra) in FIXTURES {
        let root = fixture(rel);
        for cmd in ["analyze", "metrics", "classify"] {
            let runs: Vec<_> = (0..2)
                .map(|_| {
                    let out = tempfile::tempdir().unwrap();
                    let mut args = vec![cmd, "--root", s(&root), "--out", s(out.path())];
                    args.extend_from_slice(extra);
                    let o = es6migrate(&args);
                    (code(&o), tree(out.path()))
                })
                .collect();
            assert_eq!(runs[0], runs[1], "{cmd} {rel}");
        }
    }
}

#[test]
fn file_order_does_not_matter() {
    let files = vec![
        SourceFile::js(
            "b.js",
            "var a = require('./a');\nexports.g = function() { return a.f() + a.k; };\n",
        ),
        SourceFile::js(
            "a.js",
            "exports.f = function() { return 1; };\nexports.k = 2;\n",
        ),
        SourceFile::js(
            "c.js",
            "var b = require('./b');\nvar a = require('./a');\nconsole.log(b.g(), a.k);\n",
        ),
    ];
    let mut reversed = files.clone();
    reversed.reverse();
    let run = |fs: Vec<SourceFile>| {
        let p = Project::new(fs);
        let pa = build_mdg(&p, &AnalysisOptions::default()).unwrap();
        let out = refactor_project(&p, &pa);
        (pa.mdg.serialize(), out.files, out.report.to_json())
    };
    assert_eq!(run(files), run(reversed));
}
