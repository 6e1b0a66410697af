//! Name-conflict detection and the prefix rule used when extracted or
//! imported features would clash with existing names.

use std::collections::HashSet;

use serde::Serialize;

use crate::frontend::visit::{walk_program, Ctx, Visitor};
use crate::frontend::*;
use crate::paths;

const BUILTINS: &[&str] = &[
    "Array",
    "ArrayBuffer",
    "Boolean",
    "DataView",
    "Date",
    "Error",
    "EvalError",
    "Float32Array",
    "Float64Array",
    "Function",
    "Infinity",
    "Int16Array",
    "Int32Array",
    "Int8Array",
    "Intl",
    "JSON",
    "Map",
    "Math",
    "NaN",
    "Number",
    "Object",
    "Promise",
    "Proxy",
    "RangeError",
    "ReferenceError",
    "Reflect",
    "RegExp",
    "Set",
    "String",
    "Symbol",
    "SyntaxError",
    "TypeError",
    "URIError",
    "Uint16Array",
    "Uint32Array",
    "Uint8Array",
    "Uint8ClampedArray",
    "WeakMap",
    "WeakSet",
    "alert",
    "arguments",
    "clearInterval",
    "clearTimeout",
    "console",
    "decodeURI",
    "decodeURIComponent",
    "document",
    "encodeURI",
    "encodeURIComponent",
    "escape",
    "eval",
    "exports",
    "global",
    "globalThis",
    "isFinite",
    "isNaN",
    "location",
    "module",
    "navigator",
    "parseFloat",
    "parseInt",
    "process",
    "require",
    "setInterval",
    "setTimeout",
    "undefined",
    "unescape",
    "window",
];

/// Names provided by the JavaScript runtime that a module-level declaration
/// would shadow.
pub fn is_builtin_global(name: &str) -> bool {
    BUILTINS.contains(&name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum RenameReason {
    /// Clashes with another name of the module.
    FeatureConflict,
    /// Shadows a runtime global or is a reserved word.
    GlobalBuiltinConflict,
    /// Clashes with a name in the importing module.
    ImportConflict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RenamePlan {
    pub original: String,
    pub emitted: String,
    pub reason: RenameReason,
    /// Applied prefixes, outermost folder first.
    pub prefix_chain: Vec<String>,
}

/// Prefix chains for a module path: `[stem]`, `[parent, stem]`, ...
pub fn prefix_chains(path: &str) -> Vec<Vec<String>> {
    let mut chain = vec![paths::sanitize_identifier(paths::file_stem(path))];
    let mut out = vec![chain.clone()];
    let mut dir = paths::parent(path);
    while !dir.is_empty() {
        chain.insert(0, paths::sanitize_identifier(paths::file_name(dir)));
        out.push(chain.clone());
        dir = paths::parent(dir);
    }
    out
}

fn unusable(name: &str) -> bool {
    !is_valid_binding_name(name) || is_builtin_global(name)
}

/// Picks the name to declare for `original`. When `original` is taken or not
/// a usable binding, it is prefixed with the file stem of `path`, then with
/// enclosing folders, and finally with a counter.
pub fn choose_name(
    original: &str,
    path: &str,
    conflict_reason: RenameReason,
    taken: &dyn Fn(&str) -> bool,
) -> (String, Option<RenamePlan>) {
    let bad = |n: &str| unusable(n) || taken(n);
    if !bad(original) {
        return (original.to_string(), None);
    }
    let reason = if unusable(original) && !taken(original) {
        RenameReason::GlobalBuiltinConflict
    } else {
        conflict_reason
    };
    let plan = |chain: Vec<String>| {
        let emitted = format!("{}_{original}", chain.join("_"));
        RenamePlan {
            original: original.to_string(),
            emitted,
            reason,
            prefix_chain: chain,
        }
    };
    let chains = prefix_chains(path);
    for chain in &chains {
        let p = plan(chain.clone());
        if !bad(&p.emitted) {
            return (p.emitted.clone(), Some(p));
        }
    }
    let last = chains.last().cloned().unwrap_or_default();
    for k in 2.. {
        let mut chain = last.clone();
        chain.push(k.to_string());
        let p = plan(chain);
        if !bad(&p.emitted) {
            return (p.emitted.clone(), Some(p));
        }
    }
    unreachable!()
}

/// Every name bound anywhere in the program: variables, functions,
/// parameters and catch parameters.
pub fn declared_names(p: &Program) -> HashSet<String> {
    struct D(HashSet<String>);
    impl<'a> Visitor<'a> for D {
        fn function(&mut self, f: &'a Function, _: &Ctx<'a>) {
            self.0.extend(f.name.iter().cloned());
            self.0.extend(f.params.iter().cloned());
        }
    }
    let mut d = D(crate::frontend::visit::hoisted_names(&p.body));
    walk_program(p, &mut d);
    collect_nested(&p.body, &mut d.0);
    d.0
}

fn collect_nested(body: &[Stmt], out: &mut HashSet<String>) {
    struct F<'o>(&'o mut HashSet<String>);
    impl<'a> Visitor<'a> for F<'_> {
        fn stmt(&mut self, s: &'a Stmt, _: &Ctx<'a>) {
            match &s.kind {
                StmtKind::Var(d) => self.0.extend(d.iter().map(|v| v.name.clone())),
                StmtKind::For {
                    init: Some(ForInit::Var(d)),
                    ..
                } => self.0.extend(d.iter().map(|v| v.name.clone())),
                StmtKind::ForIn {
                    left: ForInLeft::Var(d),
                    ..
                } => {
                    self.0.insert(d.name.clone());
                }
                StmtKind::Try {
                    handler: Some(h), ..
                } => {
                    self.0.insert(h.param.clone());
                }
                _ => {}
            }
        }
    }
    let p = Program::new(body.to_vec());
    walk_program(&p, &mut F(out));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_conflict_gets_file_prefix() {
        let (n, plan) = choose_name(
            "isFinite",
            "Math.js",
            RenameReason::FeatureConflict,
            &|_| false,
        );
        assert_eq!(n, "Math_isFinite");
        let plan = plan.unwrap();
        assert_eq!(plan.reason, RenameReason::GlobalBuiltinConflict);
        assert_eq!(plan.prefix_chain, vec!["Math"]);
    }

    #[test]
    fn escalates_to_parent_folder() {
        let taken = |n: &str| n == "assert" || n == "common_assert";
        let (n, plan) = choose_name(
            "assert",
            "util/common.js",
            RenameReason::ImportConflict,
            &taken,
        );
        assert_eq!(n, "util_common_assert");
        assert_eq!(plan.unwrap().prefix_chain, vec!["util", "common"]);
    }

    #[test]
    fn free_names_are_kept() {
        assert_eq!(
            choose_name("zero", "Vec2.js", RenameReason::FeatureConflict, &|_| false).0,
            "zero"
        );
        assert_eq!(
            choose_name("default", "x-y.js", RenameReason::FeatureConflict, &|_| {
                false
            })
            .0,
            "x_y_default"
        );
    }

    #[test]
    fn declared_names_cover_all_binding_forms() {
        let p = parse_str(
            "var a;\nfunction f(b){ var c; try {} catch (d) {} }\nvar g = function h(i){};",
        )
        .unwrap();
        let d = declared_names(&p);
        for n in ["a", "f", "b", "c", "d", "g", "h", "i"] {
            assert!(d.contains(n), "{n}");
        }
    }
}
