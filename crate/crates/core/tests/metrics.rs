mod common;

use std::collections::BTreeMap;

use es6migrate_core::metrics::{
    census_files, compute_module_metrics, parse_es6_view, DependenceView,
};
use es6migrate_core::{
    census, classify_file_format, compare_snapshots, es5_view, es6_view, project_metrics,
    refactor_project, AnalysisOptions, FileFormat, FormatChoice, PatternClass, SourceFile,
};

use common::{analyse, files_with, fixtures, project};

/// Hand-derived for the narrowed fixture. Before the migration `area` depends
/// on the whole `shapes` object (its five properties); afterwards it imports
/// only `PI` and `square`. `report` is reached from `main`, which declares no
/// features and so contributes no fan-in.
/// (path, fo before, fo after, fi before, fi after, I before, I after)
type Row = (
    &'static str,
    usize,
    usize,
    usize,
    usize,
    (usize, usize),
    (usize, usize),
);

const NARROWED: &[Row] = &[
    ("area.js", 5, 2, 1, 1, (5, 6), (2, 3)),
    ("main.js", 1, 1, 0, 0, (1, 1), (1, 1)),
    ("report.js", 1, 1, 0, 0, (1, 1), (1, 1)),
    ("shapes.js", 0, 0, 1, 1, (0, 1), (0, 1)),
];

fn same_ratio(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 * b.1 == b.0 * a.1
}

#[test]
fn narrowed_import_reduces_fan_out() {
    let p = project("projects/narrowed");
    let pa = analyse("projects/narrowed", &AnalysisOptions::default());
    let before = project_metrics(&es5_view(&pa));
    let after = project_metrics(&es6_view(&pa));
    for &(path, fo0, fo1, fi0, fi1, i0, i1) in NARROWED {
        let (b, a) = (before.module(path).unwrap(), after.module(path).unwrap());
        assert_eq!(
            (b.fan_out, a.fan_out, b.fan_in, a.fan_in),
            (fo0, fo1, fi0, fi1),
            "{path}"
        );
        assert!(same_ratio(b.instability_ratio().unwrap(), i0), "{path}");
        assert!(same_ratio(a.instability_ratio().unwrap(), i1), "{path}");
        assert_eq!(b.clients(), a.clients(), "{path}");
    }
    // Sum of I drops from 17/6 to 16/6 over four modules.
    let delta = compare_snapshots(&before, &after).unwrap();
    assert!((delta.delta_i_pct.unwrap() - 100.0 / 17.0).abs() < 1e-9);
    assert!((delta.delta_avg_fo - (-3.0 / 4.0)).abs() < 1e-12);
    assert_eq!(delta.delta_avg_fi, 0.0);

    // The refactored text gives the same snapshot.
    let out = refactor_project(&p, &pa);
    let files: Vec<SourceFile> = out
        .files
        .iter()
        .map(|f| SourceFile::js(f.path.clone(), f.text.clone()))
        .collect();
    let parsed = project_metrics(&parse_es6_view(&files).unwrap());
    assert_eq!(parsed.modules, after.modules);

    // Fan-out after the migration counts named imports, so the text says it too.
    let spec = regex::Regex::new(r#"import \{([^}]*)\} from "\./"#).unwrap();
    for f in &out.files {
        let named: usize = spec
            .captures_iter(&f.text)
            .map(|c| c[1].split(',').count())
            .sum();
        assert_eq!(after.module(&f.path).unwrap().fan_out, named, "{}", f.path);
    }
}

#[test]
fn undefined_instability_is_left_out_of_averages() {
    let mut v = DependenceView::default();
    v.add_module("a.js", ["f"]);
    v.add_module("b.js", ["g"]);
    v.add_module("lonely.js", ["h"]);
    v.add_import("a.js", "b.js", "g");
    v.add_access("a.js", "f", "b.js", "g");
    let m = project_metrics(&v);
    let lonely = compute_module_metrics(&v, "lonely.js").unwrap();
    assert_eq!(
        (lonely.fan_out, lonely.fan_in, lonely.instability),
        (0, 0, None)
    );
    // a: 1/1, b: 0/1; lonely has no I.
    assert_eq!(m.avg_i, Some(0.5));
    assert!((m.avg_fo - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn express_session_census() {
    let pa = analyse("census/express_session", &AnalysisOptions::default());
    let c = census(&pa);
    assert_eq!(c.module_objects, 5);
    assert_eq!((c.factory.count, c.factory.percent), (4, 80.0));
    assert_eq!((c.namespace.count, c.namespace.percent), (1, 20.0));
    assert_eq!((c.utility.count, c.utility.percent), (0, 0.0));
    let by_file = census_files(&project("census/express_session"), FormatChoice::Auto);
    assert_eq!(by_file.objects, c.objects);
}

#[test]
fn labeled_census() {
    let dir = fixtures().join("census/labeled");
    let mut labels = csv::Reader::from_path(dir.join("labels.csv")).unwrap();
    let want: BTreeMap<String, PatternClass> = labels
        .records()
        .map(|r| {
            let r = r.unwrap();
            let class = match &r[1] {
                "Factory" => PatternClass::Factory,
                "Namespace" => PatternClass::Namespace,
                "Utility" => PatternClass::Utility,
                other => panic!("unknown class {other}"),
            };
            (r[0].to_string(), class)
        })
        .collect();
    let c = census_files(&project("census/labeled"), FormatChoice::Auto);
    let got: BTreeMap<String, PatternClass> = c
        .objects
        .iter()
        .map(|o| (o.path.clone(), o.class))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn classifier_corpus() {
    let root = fixtures().join("classifier");
    let mut total = 0;
    for (dir, want) in [
        ("amd", FileFormat::Amd),
        ("cjs", FileFormat::Cjs),
        ("es6", FileFormat::Es6),
        ("other", FileFormat::Other),
    ] {
        let files = files_with(&root.join(dir), &["js"]);
        assert_eq!(files.len(), 10, "{dir}");
        for (path, text) in files {
            assert_eq!(classify_file_format(&text), want, "{dir}/{path}");
            total += 1;
        }
    }
    assert_eq!(total, 40);
}
