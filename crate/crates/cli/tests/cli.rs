mod common;

use std::fs;

use serde_json::Value;

use common::{code, copy_dir, es6migrate, fixture, refactor_into, s, stderr, stdout, tree};

fn json(path: &std::path::Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn empty_project_gives_an_empty_graph() {
    let root = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let o = es6migrate(&["analyze", "--root", s(root.path()), "--out", s(out.path())]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mdg = json(&out.path().join("mdg.json"));
    assert_eq!(mdg["modules"].as_array().unwrap().len(), 0);
    assert_eq!(mdg["deps"].as_array().unwrap().len(), 0);
    assert_eq!(
        json(&out.path().join("violations.json")),
        Value::Array(Vec::new())
    );
}

#[test]
fn conflicting_globals_abandon_with_exit_2() {
    for dir in [
        "projects/rules/single_declaration",
        "projects/rules/unique_functions",
    ] {
        let out = tempfile::tempdir().unwrap();
        let root = fixture(dir);
        let o = es6migrate(&[
            "analyze",
            "--root",
            s(&root),
            "--format",
            "none",
            "--out",
            s(out.path()),
        ]);
        assert_eq!(code(&o), 2, "{dir}");
        let v = json(&out.path().join("violations.json"));
        assert_eq!(v.as_array().unwrap().len(), 1, "{dir}");
        assert_eq!(v[0]["family"], "GlobalDecls");

        let (tree_out, o) = refactor_into(dir, &["--format", "none"]);
        assert_eq!(code(&o), 2, "{dir}");
        assert!(
            fs::read_dir(tree_out.path()).unwrap().next().is_none(),
            "nothing is written"
        );
    }
}

#[test]
fn io_problems_exit_1() {
    let o = es6migrate(&["analyze", "--root", "/nonexistent/project"]);
    assert_eq!(code(&o), 1);
    let root = fixture("projects/vec2");
    let o = es6migrate(&["refactor", "--root", s(&root)]);
    assert_eq!(code(&o), 1, "refactor needs a destination");
}

#[test]
fn skipped_modules_exit_3_and_are_copied() {
    let (out, o) = refactor_into("projects/rules/strict_this", &[]);
    assert_eq!(code(&o), 3);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let counter = report["modules"]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["path"] == "counter.js")
        .unwrap();
    assert!(counter["skipped"].is_string());
    assert_eq!(
        fs::read(out.path().join("counter.js")).unwrap(),
        fs::read(fixture("projects/rules/strict_this/counter.js")).unwrap()
    );
    assert!(fs::read_to_string(out.path().join("util.js"))
        .unwrap()
        .contains("export {twice};"));
}

#[test]
fn refactor_writes_the_whole_tree() {
    let (out, o) = refactor_into("projects/hangman", &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let files: Vec<String> = tree(out.path()).into_iter().map(|(p, _)| p).collect();
    assert_eq!(files, ["index.html", "js/content.js", "js/hint.js"]);
}

#[test]
fn in_place_matches_out() {
    let work = tempfile::tempdir().unwrap();
    copy_dir(&fixture("projects/planck"), work.path());
    let o = es6migrate(&["refactor", "--root", s(work.path()), "--in-place"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (out, _) = refactor_into("projects/planck", &[]);
    assert_eq!(tree(work.path()), tree(out.path()));
}

#[test]
fn in_place_leaves_pages_alone() {
    let work = tempfile::tempdir().unwrap();
    copy_dir(&fixture("projects/hangman"), work.path());
    let o = es6migrate(&["refactor", "--root", s(work.path()), "--in-place"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("index.html"));
    assert_eq!(
        fs::read(work.path().join("index.html")).unwrap(),
        fs::read(fixture("projects/hangman/index.html")).unwrap()
    );
    assert!(fs::read_to_string(work.path().join("js/hint.js"))
        .unwrap()
        .contains("export {hint, reveal};"));
}

#[test]
fn output_inside_the_root_is_not_reanalysed() {
    let work = tempfile::tempdir().unwrap();
    copy_dir(&fixture("projects/vec2"), work.path());
    let out = work.path().join("build");
    for _ in 0..2 {
        let o = es6migrate(&["refactor", "--root", s(work.path()), "--out", s(&out)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    let files: Vec<String> = tree(&out).into_iter().map(|(p, _)| p).collect();
    assert_eq!(files, ["Vec2.js", "main.js"]);
}

#[test]
fn dependency_directories_are_excluded() {
    let work = tempfile::tempdir().unwrap();
    copy_dir(&fixture("projects/vec2"), work.path());
    fs::create_dir_all(work.path().join("node_modules/dep")).unwrap();
    fs::write(
        work.path().join("node_modules/dep/index.js"),
        "var Vec2 = 1;",
    )
    .unwrap();
    fs::create_dir_all(work.path().join("extra")).unwrap();
    fs::write(work.path().join("extra/zero.js"), "function zero() {}").unwrap();
    let out = tempfile::tempdir().unwrap();
    let o = es6migrate(&[
        "analyze",
        "--root",
        s(work.path()),
        "--exclude",
        "extra/**",
        "--out",
        s(out.path()),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mdg = json(&out.path().join("mdg.json"));
    assert_eq!(mdg["modules"].as_array().unwrap().len(), 2);
}

#[test]
fn amd_base_resolves_module_ids() {
    let (out, o) = refactor_into("projects/tetris", &["--amd-base", "js"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let game = fs::read_to_string(out.path().join("js/game.js")).unwrap();
    assert!(game.contains("import {Board, EMPTY} from \"./board.js\";"));
    assert!(game.contains("import _ from \"lodash\";"));
}

#[test]
fn metrics_in_memory_and_from_a_tree_agree() {
    let root = fixture("projects/narrowed");
    let o = es6migrate(&["metrics", "--root", s(&root)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let in_memory: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let (after, _) = refactor_into("projects/narrowed", &[]);
    let report = tempfile::tempdir().unwrap();
    let o = es6migrate(&[
        "metrics",
        "--root",
        s(&root),
        "--after",
        s(after.path()),
        "--out",
        s(report.path()),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let from_tree = json(&report.path().join("metrics.json"));
    assert_eq!(in_memory["modules"], from_tree["modules"]);
    let before = in_memory["granularity"]["before"].as_str().unwrap();
    assert!(before.contains("interpretation"), "{before}");
    let area = in_memory["modules"]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["path"] == "area.js")
        .unwrap();
    assert_eq!(
        (area["fo_before"].as_u64(), area["fo_after"].as_u64()),
        (Some(5), Some(2))
    );
}

#[test]
fn classify_reports_formats_and_census() {
    let out = tempfile::tempdir().unwrap();
    let root = fixture("classifier");
    let o = es6migrate(&["classify", "--root", s(&root), "--out", s(out.path())]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mut rows = csv::Reader::from_path(out.path().join("formats.csv")).unwrap();
    let mut n = 0;
    for r in rows.records() {
        let r = r.unwrap();
        let want = match r[0].split('/').next().unwrap() {
            "amd" => "AMD",
            "cjs" => "CJS",
            "es6" => "ES6",
            _ => "Other",
        };
        assert_eq!(&r[1], want, "{}", &r[0]);
        n += 1;
    }
    assert_eq!(n, 40);

    let root = fixture("census/express_session");
    let o = es6migrate(&["classify", "--root", s(&root)]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let end = text.rfind("}\n").unwrap() + 1;
    let census: Value = serde_json::from_str(&text[..end]).unwrap();
    assert_eq!(census["factory"]["count"], 4);
    assert_eq!(census["namespace"]["count"], 1);
    assert!(text[end..].trim_start().starts_with("path,format"));
}

#[test]
fn library_flag_exports_everything() {
    let (out, o) = refactor_into("projects/library", &["--library"]);
    assert_eq!(code(&o), 0);
    let check = fs::read_to_string(out.path().join("check.js")).unwrap();
    assert!(check.contains("export {numbers, strict};"), "{check}");
}

#[test]
fn lenient_nesting_flag() {
    let (_, strict) = refactor_into("projects/lenient", &[]);
    assert_eq!(code(&strict), 3);
    let (out, o) = refactor_into("projects/lenient", &["--lenient-nesting"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("loader.js"), "the hoist is reported");
    let loader = fs::read_to_string(out.path().join("loader.js")).unwrap();
    assert!(loader.starts_with("import {twice} from \"./util.js\";"));
}

#[test]
fn tests_are_clients_but_not_measured() {
    let root = fixture("projects/with_tests");
    let (out, o) = refactor_into("projects/with_tests", &["--tests", "test"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let calc = fs::read_to_string(out.path().join("lib/calc.js")).unwrap();
    assert!(calc.contains("export {add, square};"), "{calc}");
    let test = fs::read_to_string(out.path().join("test/calc_test.js")).unwrap();
    assert!(
        test.contains("import {add, square} from \"../lib/calc.js\";"),
        "{test}"
    );

    let o = es6migrate(&["metrics", "--root", s(&root), "--tests", "test"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let m: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let paths: Vec<&str> = m["modules"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["path"].as_str().unwrap())
        .collect();
    assert_eq!(paths, ["lib/calc.js"]);

    let o = es6migrate(&["metrics", "--root", s(&root)]);
    let m: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(m["modules"].as_array().unwrap().len(), 2);

    let o = es6migrate(&["analyze", "--root", s(&root), "--tests", "/elsewhere"]);
    assert_eq!(code(&o), 1, "tests must be inside the root");
}
