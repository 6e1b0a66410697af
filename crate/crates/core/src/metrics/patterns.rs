use std::collections::HashSet;

use serde::Serialize;

use crate::analysis::{
    amd_define, analyze_module_object, detect_format, new_targets, Format, FormatChoice,
    ModuleObjectInfo, Project, ProjectAnalysis,
};
use crate::frontend::{parse, Origin};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PatternClass {
    Factory,
    Namespace,
    Utility,
}

impl PatternClass {
    pub const ALL: [PatternClass; 3] = [
        PatternClass::Factory,
        PatternClass::Namespace,
        PatternClass::Utility,
    ];
}

/// Namespace objects are property containers. A function object is a factory
/// when it binds `this`, has its prototype extended or is instantiated;
/// any other function, and any object computed at runtime, is a utility.
pub fn classify_module_object(info: &ModuleObjectInfo) -> PatternClass {
    if info.is_namespace {
        return PatternClass::Namespace;
    }
    match &info.function {
        _ if info.prototype_extended => PatternClass::Factory,
        Some(f) if f.this_bindings || f.constructed => PatternClass::Factory,
        _ => PatternClass::Utility,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassCount {
    pub count: usize,
    pub percent: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub path: String,
    pub object: String,
    pub class: PatternClass,
}

/// Module objects per class, shaped as one row of a per-project table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Census {
    pub module_objects: usize,
    pub factory: ClassCount,
    pub namespace: ClassCount,
    pub utility: ClassCount,
    pub objects: Vec<CensusEntry>,
}

impl Census {
    pub fn count(&self, c: PatternClass) -> ClassCount {
        match c {
            PatternClass::Factory => self.factory,
            PatternClass::Namespace => self.namespace,
            PatternClass::Utility => self.utility,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("census serializes")
    }
}

/// Classifies the module object of every parsed module, including modules
/// skipped by the refactoring. Test files are left out.
pub fn census(pa: &ProjectAnalysis) -> Census {
    let mut constructed = HashSet::new();
    for p in pa.modules.iter().filter_map(|m| m.program.as_ref()) {
        new_targets(p, &mut constructed);
    }
    let objects: Vec<CensusEntry> = pa
        .modules
        .iter()
        .filter(|m| !m.is_test)
        .filter_map(|m| {
            let info = match (&m.module_object, &m.program, &m.skip_reason) {
                (Some(info), _, _) => info.clone(),
                (None, Some(p), Some(_)) => {
                    analyze_module_object(p, m.format, &m.source.path, m.amd.as_ref(), &constructed)
                        .info?
                }
                _ => return None,
            };
            Some(CensusEntry {
                path: m.source.path.clone(),
                object: info.feature_name.clone(),
                class: classify_module_object(&info),
            })
        })
        .collect();
    tally(objects)
}

/// Census of a project that need not pass the refactoring preconditions:
/// every file is examined on its own with the given format choice.
pub fn census_files(project: &Project, choice: FormatChoice) -> Census {
    let programs: Vec<_> = project
        .files
        .iter()
        .filter_map(|f| parse(f).ok().map(|p| (f, p)))
        .collect();
    let mut constructed = HashSet::new();
    for (_, p) in &programs {
        new_targets(p, &mut constructed);
    }
    let objects = programs
        .iter()
        .filter_map(|(f, p)| {
            let mut format = match choice {
                FormatChoice::Auto if f.origin != Origin::JsFile => Format::NonModular,
                FormatChoice::Auto => detect_format(p),
                FormatChoice::None => Format::NonModular,
                FormatChoice::Amd => Format::Amd,
                FormatChoice::Cjs => Format::Cjs,
            };
            let amd = if format == Format::Amd {
                amd_define(p)
            } else {
                None
            };
            if format == Format::Amd && amd.is_none() {
                format = Format::NonModular;
            }
            let info = analyze_module_object(p, format, &f.path, amd.as_ref(), &constructed).info?;
            Some(CensusEntry {
                path: f.path.clone(),
                object: info.feature_name.clone(),
                class: classify_module_object(&info),
            })
        })
        .collect();
    tally(objects)
}

fn tally(objects: Vec<CensusEntry>) -> Census {
    let total = objects.len();
    let row = |c: PatternClass| {
        let count = objects.iter().filter(|o| o.class == c).count();
        let percent = if total == 0 {
            0.0
        } else {
            (count as f64 * 1000.0 / total as f64).round() / 10.0
        };
        ClassCount { count, percent }
    };
    Census {
        module_objects: total,
        factory: row(PatternClass::Factory),
        namespace: row(PatternClass::Namespace),
        utility: row(PatternClass::Utility),
        objects,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{FunctionFacts, Instantiation};

    fn info(function: Option<FunctionFacts>, namespace: bool, proto: bool) -> ModuleObjectInfo {
        ModuleObjectInfo {
            feature_name: "X".into(),
            names: Default::default(),
            instantiation: Instantiation::FunctionDecl,
            is_namespace: namespace,
            expr: None,
            decl_site: None,
            bound_props: Vec::new(),
            function,
            prototype_extended: proto,
        }
    }

    #[test]
    fn classes() {
        let plain = FunctionFacts::default();
        let this = FunctionFacts {
            this_bindings: true,
            uses_this: true,
            ..Default::default()
        };
        let built = FunctionFacts {
            constructed: true,
            ..Default::default()
        };
        assert_eq!(
            classify_module_object(&info(None, true, false)),
            PatternClass::Namespace
        );
        assert_eq!(
            classify_module_object(&info(Some(this), false, false)),
            PatternClass::Factory
        );
        assert_eq!(
            classify_module_object(&info(Some(built), false, false)),
            PatternClass::Factory
        );
        assert_eq!(
            classify_module_object(&info(Some(plain.clone()), false, true)),
            PatternClass::Factory
        );
        assert_eq!(
            classify_module_object(&info(Some(plain), false, false)),
            PatternClass::Utility
        );
        assert_eq!(
            classify_module_object(&info(None, false, false)),
            PatternClass::Utility
        );
    }
}
