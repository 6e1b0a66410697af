//! Module dependence graph: modules with their feature sets, fine-grained
//! dependency edges and external library targets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frontend::Span;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModuleId {
    pub name: String,
    pub path: String,
}

impl ModuleId {
    pub fn new(name: impl Into<String>, path: impl Into<String>) -> Self {
        ModuleId {
            name: name.into(),
            path: path.into(),
        }
    }

    pub fn library(spec: impl Into<String>) -> Self {
        let s = spec.into();
        ModuleId {
            name: s.clone(),
            path: s,
        }
    }
}

impl fmt::Display for ModuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.path)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FeatureKind {
    ExtractedProperty,
    ModuleObject,
    GlobalVar,
    ImpliedGlobal,
    GlobalObjectProperty,
    TopLevelDecl,
    Mutator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFeature {
    pub name: String,
    pub kind: FeatureKind,
    pub exported: bool,
    pub emitted_name: String,
    #[serde(with = "span_pair")]
    pub decl_site: Option<Span>,
    /// For mutators, the feature they write.
    pub mutates: Option<String>,
}

impl ModuleFeature {
    pub fn new(name: impl Into<String>, kind: FeatureKind, decl_site: Option<Span>) -> Self {
        let name = name.into();
        ModuleFeature {
            emitted_name: name.clone(),
            name,
            kind,
            exported: false,
            decl_site,
            mutates: None,
        }
    }

    pub fn mutator(of: &str) -> Self {
        ModuleFeature {
            name: format!("set_{of}"),
            kind: FeatureKind::Mutator,
            exported: false,
            emitted_name: format!("set_{of}"),
            decl_site: None,
            mutates: Some(of.to_string()),
        }
    }
}

mod span_pair {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::frontend::Span;

    pub fn serialize<S: Serializer>(v: &Option<Span>, s: S) -> Result<S::Ok, S::Error> {
        v.map(|sp| [sp.start, sp.end]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Span>, D::Error> {
        Ok(Option::<[u32; 2]>::deserialize(d)?.map(|[a, b]| Span::new(a, b)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Usage {
    /// Read.
    R,
    /// Write.
    W,
    /// Call (or `new`).
    C,
    /// External library import.
    L,
    /// Side-effect-only import of a project module.
    S,
}

impl Usage {
    pub fn letter(self) -> &'static str {
        match self {
            Usage::R => "R",
            Usage::W => "W",
            Usage::C => "C",
            Usage::L => "L",
            Usage::S => "S",
        }
    }

    /// Whether an edge with this usage names no feature.
    pub fn is_featureless(self) -> bool {
        matches!(self, Usage::L | Usage::S)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dependency {
    pub from: ModuleId,
    pub to: ModuleId,
    pub feature: Option<String>,
    pub usage: Usage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleNode {
    pub id: ModuleId,
    pub features: Vec<ModuleFeature>,
}

impl ModuleNode {
    pub fn feature(&self, name: &str) -> Option<&ModuleFeature> {
        self.features.iter().find(|f| f.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Mdg {
    /// Sorted by path.
    pub modules: Vec<ModuleNode>,
    pub deps: BTreeSet<Dependency>,
    /// Sorted by path.
    pub libraries: Vec<ModuleId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MdgError {
    #[error("unknown module `{0}`")]
    UnknownModule(String),
    #[error("malformed graph: {0}")]
    Schema(String),
}

impl Mdg {
    pub fn new() -> Self {
        Mdg::default()
    }

    pub fn add_module(&mut self, id: ModuleId, features: Vec<ModuleFeature>) {
        let pos = self
            .modules
            .binary_search_by(|m| m.id.path.cmp(&id.path))
            .unwrap_or_else(|p| p);
        self.modules.insert(pos, ModuleNode { id, features });
    }

    pub fn add_library(&mut self, id: ModuleId) {
        if let Err(pos) = self.libraries.binary_search_by(|l| l.path.cmp(&id.path)) {
            self.libraries.insert(pos, id);
        }
    }

    /// Adds an edge; self-edges are ignored. Returns whether it was new.
    pub fn add_dep(&mut self, dep: Dependency) -> bool {
        if dep.from.path == dep.to.path {
            return false;
        }
        self.deps.insert(dep)
    }

    pub fn module(&self, path: &str) -> Option<&ModuleNode> {
        self.modules
            .binary_search_by(|m| m.id.path.as_str().cmp(path))
            .ok()
            .map(|i| &self.modules[i])
    }

    pub fn module_mut(&mut self, path: &str) -> Option<&mut ModuleNode> {
        self.modules
            .binary_search_by(|m| m.id.path.as_str().cmp(path))
            .ok()
            .map(|i| &mut self.modules[i])
    }

    pub fn is_library(&self, path: &str) -> bool {
        self.libraries.iter().any(|l| l.path == path)
    }

    fn known(&self, m: &ModuleId) -> Result<(), MdgError> {
        if self.module(&m.path).is_some() || self.is_library(&m.path) {
            Ok(())
        } else {
            Err(MdgError::UnknownModule(m.path.clone()))
        }
    }

    /// Edges into `m`, ordered by source path then feature name.
    pub fn incoming(&self, m: &ModuleId) -> Result<Vec<&Dependency>, MdgError> {
        self.known(m)?;
        let mut v: Vec<_> = self.deps.iter().filter(|d| d.to.path == m.path).collect();
        v.sort_by(|a, b| {
            (&a.from.path, &a.feature, a.usage).cmp(&(&b.from.path, &b.feature, b.usage))
        });
        Ok(v)
    }

    /// Edges out of `m`, ordered by target path then feature name.
    pub fn outgoing(&self, m: &ModuleId) -> Result<Vec<&Dependency>, MdgError> {
        self.known(m)?;
        Ok(self.deps.iter().filter(|d| d.from.path == m.path).collect())
    }

    /// Checks the structural invariants of a finished graph.
    pub fn validate(&self) -> Result<(), MdgError> {
        for d in &self.deps {
            self.known(&d.from)?;
            self.known(&d.to)?;
            if d.from.path == d.to.path {
                return Err(MdgError::Schema(format!("self edge on {}", d.from.path)));
            }
            match (&d.feature, d.usage.is_featureless()) {
                (None, true) => {}
                (Some(f), false) => {
                    let target = self.module(&d.to.path).ok_or_else(|| {
                        MdgError::Schema(format!("edge to library {} names a feature", d.to.path))
                    })?;
                    if target.feature(f).is_none() {
                        return Err(MdgError::Schema(format!(
                            "feature `{f}` is not declared by {}",
                            d.to.path
                        )));
                    }
                }
                _ => {
                    return Err(MdgError::Schema(format!(
                        "edge {} -> {} has usage {} but feature {:?}",
                        d.from.path,
                        d.to.path,
                        d.usage.letter(),
                        d.feature
                    )))
                }
            }
            if d.usage == Usage::L && !self.is_library(&d.to.path) {
                return Err(MdgError::Schema(format!(
                    "L edge to project module {}",
                    d.to.path
                )));
            }
        }
        Ok(())
    }

    fn to_json(&self) -> JsonMdg {
        JsonMdg {
            modules: self
                .modules
                .iter()
                .map(|m| JsonModule {
                    name: m.id.name.clone(),
                    path: m.id.path.clone(),
                    features: m.features.clone(),
                })
                .collect(),
            deps: self
                .deps
                .iter()
                .map(|d| JsonDep {
                    from: d.from.path.clone(),
                    to: d.to.path.clone(),
                    feature: d.feature.clone(),
                    usage: d.usage,
                })
                .collect(),
            libraries: self.libraries.iter().map(|l| l.path.clone()).collect(),
        }
    }

    pub fn serialize(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph serialization cannot fail")
    }

    pub fn serialize_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("graph serialization cannot fail")
    }

    pub fn deserialize(text: &str) -> Result<Mdg, MdgError> {
        let j: JsonMdg = serde_json::from_str(text).map_err(|e| MdgError::Schema(e.to_string()))?;
        let mut g = Mdg::new();
        for m in j.modules {
            if g.module(&m.path).is_some() {
                return Err(MdgError::Schema(format!("duplicate module {}", m.path)));
            }
            g.add_module(ModuleId::new(m.name, m.path), m.features);
        }
        for l in j.libraries {
            g.add_library(ModuleId::library(l));
        }
        let lookup = |g: &Mdg, p: &str| -> Result<ModuleId, MdgError> {
            if let Some(m) = g.module(p) {
                Ok(m.id.clone())
            } else if g.is_library(p) {
                Ok(ModuleId::library(p))
            } else {
                Err(MdgError::UnknownModule(p.to_string()))
            }
        };
        for d in j.deps {
            let dep = Dependency {
                from: lookup(&g, &d.from)?,
                to: lookup(&g, &d.to)?,
                feature: d.feature,
                usage: d.usage,
            };
            if !g.add_dep(dep) {
                return Err(MdgError::Schema(format!(
                    "duplicate or self edge {} -> {}",
                    d.from, d.to
                )));
            }
        }
        g.validate()?;
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonMdg {
    modules: Vec<JsonModule>,
    deps: Vec<JsonDep>,
    libraries: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonModule {
    name: String,
    path: String,
    features: Vec<ModuleFeature>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDep {
    from: String,
    to: String,
    feature: Option<String>,
    usage: Usage,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(p: &str) -> ModuleId {
        ModuleId::new(p.trim_end_matches(".js"), p)
    }

    fn three_module() -> Mdg {
        let mut g = Mdg::new();
        g.add_module(id("a.js"), vec![]);
        g.add_module(
            id("b.js"),
            vec![
                ModuleFeature::new("x", FeatureKind::ExtractedProperty, None),
                ModuleFeature::new("y", FeatureKind::ExtractedProperty, None),
            ],
        );
        g.add_module(id("c.js"), vec![]);
        g.add_library(ModuleId::library("left-pad"));
        g.add_dep(Dependency {
            from: id("a.js"),
            to: id("b.js"),
            feature: Some("x".into()),
            usage: Usage::R,
        });
        g.add_dep(Dependency {
            from: id("c.js"),
            to: id("b.js"),
            feature: Some("y".into()),
            usage: Usage::C,
        });
        g.add_dep(Dependency {
            from: id("c.js"),
            to: ModuleId::library("left-pad"),
            feature: None,
            usage: Usage::L,
        });
        g
    }

    #[test]
    fn empty_graph_json() {
        assert_eq!(
            Mdg::new().serialize(),
            r#"{"modules":[],"deps":[],"libraries":[]}"#
        );
    }

    #[test]
    fn incoming_and_outgoing() {
        let g = three_module();
        assert_eq!(g.incoming(&id("b.js")).unwrap().len(), 2);
        assert!(g.incoming(&id("a.js")).unwrap().is_empty());
        let out = g.outgoing(&id("c.js")).unwrap();
        assert_eq!(out.len(), 2);
        assert!(matches!(
            g.incoming(&id("zzz.js")),
            Err(MdgError::UnknownModule(_))
        ));
        g.validate().unwrap();
    }

    #[test]
    fn self_edges_and_duplicates_rejected() {
        let mut g = three_module();
        assert!(!g.add_dep(Dependency {
            from: id("b.js"),
            to: id("b.js"),
            feature: Some("x".into()),
            usage: Usage::R,
        }));
        assert!(!g.add_dep(Dependency {
            from: id("a.js"),
            to: id("b.js"),
            feature: Some("x".into()),
            usage: Usage::R,
        }));
    }

    #[test]
    fn json_round_trip() {
        let g = three_module();
        let back = Mdg::deserialize(&g.serialize()).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.serialize(), g.serialize());
    }

    #[test]
    fn schema_errors() {
        assert!(Mdg::deserialize("{").is_err());
        assert!(Mdg::deserialize(r#"{"modules":[],"deps":[{"from":"a","to":"b","feature":null,"usage":"L"}],"libraries":[]}"#).is_err());
    }
}
