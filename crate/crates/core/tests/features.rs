mod common;

use std::collections::BTreeSet;

use es6migrate_core::metrics::classify_module_object;
use es6migrate_core::{AnalysisOptions, PatternClass};

use common::{analyse, feature_names};

fn set(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[test]
fn namespace_objects_are_eliminated() {
    for v in ["function", "empty", "literal"] {
        let pa = analyse(
            &format!("projects/mathutils_{v}"),
            &AnalysisOptions::default(),
        );
        let m = pa.module("MathUtils.js").unwrap();
        let info = m.module_object.as_ref().unwrap();
        assert_eq!(classify_module_object(info), PatternClass::Namespace, "{v}");
        assert_eq!(
            feature_names(&pa, "MathUtils.js"),
            set(&["DEG_TO_RAD", "radFromDeg", "degFromRad"]),
            "{v}"
        );
    }
}

#[test]
fn factory_object_is_kept_with_its_properties() {
    let pa = analyse("projects/vec2", &AnalysisOptions::default());
    let info = pa
        .module("Vec2.js")
        .unwrap()
        .module_object
        .as_ref()
        .unwrap();
    assert_eq!(classify_module_object(info), PatternClass::Factory);
    let bound: BTreeSet<String> = info.bound_props.iter().map(|b| b.name.clone()).collect();
    assert_eq!(bound, set(&["zero", "neo", "clone", "isValid", "assert"]));
    let mut want = bound;
    want.insert("Vec2".into());
    assert_eq!(feature_names(&pa, "Vec2.js"), want);
}

#[test]
fn planck_math_features() {
    let pa = analyse("projects/planck", &AnalysisOptions::default());
    assert_eq!(
        feature_names(&pa, "src/common/Math.js"),
        set(&[
            "math",
            "EPSILON",
            "isFinite",
            "assert",
            "invSqrt",
            "nextPowerOfTwo",
            "clamp"
        ])
    );
}
