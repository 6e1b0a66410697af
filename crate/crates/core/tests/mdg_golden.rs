mod common;

use es6migrate_core::AnalysisOptions;

use common::{analyse, edges, golden_edges, project};

fn check(dir: &str, golden: &str, options: AnalysisOptions) {
    assert!(
        project(dir).files.len() <= 5,
        "{dir} is too large for a hand-written oracle"
    );
    let pa = analyse(dir, &options);
    let got = edges(&pa);
    let want = golden_edges(golden);
    let missing: Vec<_> = want.difference(&got).collect();
    let extra: Vec<_> = got.difference(&want).collect();
    assert!(
        missing.is_empty() && extra.is_empty(),
        "{dir}: missing {missing:?}, unexpected {extra:?}"
    );
}

#[test]
fn planck() {
    check("projects/planck", "planck", AnalysisOptions::default());
}

#[test]
fn namespace_variants() {
    for v in ["function", "empty", "literal"] {
        check(
            &format!("projects/mathutils_{v}"),
            &format!("mathutils_{v}"),
            AnalysisOptions::default(),
        );
    }
}

#[test]
fn factory() {
    check("projects/vec2", "vec2", AnalysisOptions::default());
}

#[test]
fn writes() {
    check(
        "projects/write_deps",
        "write_deps",
        AnalysisOptions::default(),
    );
}

#[test]
fn narrowed() {
    check("projects/narrowed", "narrowed", AnalysisOptions::default());
}

#[test]
fn amd_with_library() {
    let options = AnalysisOptions {
        amd_base: "js".into(),
        ..Default::default()
    };
    check("projects/tetris", "tetris", options);
}

#[test]
fn page_scripts() {
    check("projects/hangman", "hangman", AnalysisOptions::default());
}

#[test]
fn library() {
    check("projects/library", "library", AnalysisOptions::default());
}

#[test]
fn lenient() {
    let options = AnalysisOptions {
        lenient_nesting: true,
        ..Default::default()
    };
    check("projects/lenient", "lenient", options);
}

#[test]
fn degraded_and_skipped() {
    for r in [
        "dot_notation",
        "not_fully_referenced",
        "not_modified",
        "strict_this",
        "top_level_imports",
    ] {
        check(
            &format!("projects/rules/{r}"),
            &format!("rules_{r}"),
            AnalysisOptions::default(),
        );
    }
}

#[test]
fn constructors_and_library_edge() {
    check(
        "census/express_session",
        "express_session",
        AnalysisOptions::default(),
    );
}
