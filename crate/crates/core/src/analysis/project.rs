use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::deps::{
    collect_import_sites, import_count, resolve_dependencies, DepEnv, ImportTarget, OwnModule,
    TargetView,
};
use super::format::{
    amd_define, check_format_preconditions, detect_format_with_warning, new_targets,
};
use super::globals::{
    check_global_preconditions, collect_globals, resolve_global_features, GlobalInput, GlobalOwner,
};
use super::module_object::{self, resolve_module_structure};
use super::naming::{choose_name, RenameReason};
use super::*;
use crate::frontend::visit::all_names;
use crate::frontend::{parse, Origin};
use crate::mdg::{FeatureKind, Mdg, ModuleFeature, ModuleId};
use crate::paths;

fn module_name(path: &str, format: Format, amd: Option<&AmdDefine>, amd_base: &str) -> String {
    match format {
        Format::NonModular => path.to_string(),
        Format::Cjs => paths::strip_extension(path),
        Format::Amd => {
            if let Some(id) = amd.and_then(|d| d.id.clone()) {
                return id;
            }
            let stripped = paths::strip_extension(path);
            if amd_base.is_empty() {
                stripped
            } else {
                stripped
                    .strip_prefix(&format!("{amd_base}/"))
                    .map(str::to_string)
                    .unwrap_or(stripped)
            }
        }
    }
}

fn skip(m: &mut ModuleAnalysis, report: &mut AnalysisReport, reason: String) {
    report
        .skipped
        .push(Diagnostic::new(&m.source.path, None, reason.clone()));
    m.skip_reason = Some(reason);
    m.in_mdg = false;
}

/// Decides the format of every parsed file.
fn assign_formats(
    modules: &mut [ModuleAnalysis],
    choice: FormatChoice,
    report: &mut AnalysisReport,
) -> Result<(), AnalysisError> {
    let mut detected = Vec::new();
    for m in modules.iter() {
        let Some(p) = &m.program else {
            detected.push(Format::NonModular);
            continue;
        };
        let (f, both) = detect_format_with_warning(p);
        if both {
            report.warnings.push(Diagnostic::new(
                &m.source.path,
                None,
                "file uses both AMD and CommonJS syntax; treated as AMD",
            ));
        }
        detected.push(f);
    }
    let any_amd = detected.contains(&Format::Amd);
    let any_cjs = detected.contains(&Format::Cjs);
    if choice == FormatChoice::Auto && any_amd && any_cjs {
        let amd: Vec<&str> = modules
            .iter()
            .zip(&detected)
            .filter(|(_, f)| **f == Format::Amd)
            .map(|(m, _)| m.source.path.as_str())
            .collect();
        let cjs: Vec<&str> = modules
            .iter()
            .zip(&detected)
            .filter(|(_, f)| **f == Format::Cjs)
            .map(|(m, _)| m.source.path.as_str())
            .collect();
        return Err(AnalysisError::Abandoned {
            message: format!(
                "project mixes AMD ({}) and CommonJS ({}); pass --format to choose one",
                amd.join(", "),
                cjs.join(", ")
            ),
            violations: Vec::new(),
            report: Box::new(report.clone()),
        });
    }
    for (m, d) in modules.iter_mut().zip(detected) {
        let html = matches!(m.source.origin, Origin::HtmlInline | Origin::HtmlLinked);
        m.format = match choice {
            FormatChoice::None => Format::NonModular,
            FormatChoice::Amd => {
                if d == Format::Amd {
                    Format::Amd
                } else {
                    Format::NonModular
                }
            }
            FormatChoice::Cjs => Format::Cjs,
            FormatChoice::Auto => {
                if d == Format::Amd {
                    Format::Amd
                } else if any_cjs && !html {
                    Format::Cjs
                } else {
                    Format::NonModular
                }
            }
        };
    }
    Ok(())
}

fn features_of(m: &ModuleAnalysis, owners: &BTreeMap<String, GlobalOwner>) -> Vec<ModuleFeature> {
    let mut out = match &m.module_object {
        Some(info) => resolve_module_structure(info, &m.violations),
        None => Vec::new(),
    };
    let g = &m.globals;
    for decl in g
        .explicit
        .iter()
        .chain(&g.top_level)
        .chain(&g.object_props)
        .chain(&g.implied)
    {
        if let Some(o) = owners.get(&decl.name) {
            if o.path == m.source.path && !out.iter().any(|f| f.name == decl.name) {
                out.push(ModuleFeature::new(&decl.name, o.kind, o.site));
            }
        }
    }
    out
}

fn target_view(m: &ModuleAnalysis) -> TargetView {
    let object = m.module_object_feature().map(|f| f.name.clone());
    TargetView {
        id: ModuleId::new(&m.name, &m.source.path),
        extracted: m
            .features
            .iter()
            .filter(|f| f.kind == FeatureKind::ExtractedProperty)
            .map(|f| f.name.clone())
            .collect(),
        object_feature: object,
        has_object: m.module_object.is_some(),
        degraded: m
            .violations
            .iter()
            .any(|v| v.family == Family::Destructuring),
        features: m.features.iter().map(|f| f.name.clone()).collect(),
    }
}

/// Chooses declared names for extracted properties and mutators.
fn assign_emitted_names(m: &mut ModuleAnalysis) {
    let Some(p) = &m.program else {
        return;
    };
    let names = all_names(p);
    let originals: HashSet<String> = m.features.iter().map(|f| f.name.clone()).collect();
    let mut chosen: HashSet<String> = HashSet::new();
    let path = m.source.path.clone();
    let mut renames = Vec::new();
    for f in m.features.iter_mut() {
        if f.kind == FeatureKind::Mutator {
            continue;
        }
        if f.kind != FeatureKind::ExtractedProperty {
            chosen.insert(f.emitted_name.clone());
            continue;
        }
        let own = f.name.clone();
        let taken = |n: &str| {
            names.contains(n) || chosen.contains(n) || (n != own && originals.contains(n))
        };
        let (emitted, plan) = choose_name(&f.name, &path, RenameReason::FeatureConflict, &taken);
        f.emitted_name = emitted.clone();
        chosen.insert(emitted);
        renames.extend(plan);
    }
    let emitted_of: BTreeMap<String, String> = m
        .features
        .iter()
        .map(|f| (f.name.clone(), f.emitted_name.clone()))
        .collect();
    for f in m.features.iter_mut() {
        if f.kind != FeatureKind::Mutator {
            continue;
        }
        let target = f.mutates.clone().unwrap_or_default();
        let base = format!("set_{}", emitted_of.get(&target).cloned().unwrap_or(target));
        let taken = |n: &str| names.contains(n) || chosen.contains(n);
        let (emitted, plan) = choose_name(&base, &path, RenameReason::FeatureConflict, &taken);
        f.emitted_name = emitted.clone();
        chosen.insert(emitted);
        renames.extend(plan);
    }
    m.renames = renames;
}

/// Builds the module dependence graph of a project.
pub fn build_mdg(
    project: &Project,
    options: &AnalysisOptions,
) -> Result<ProjectAnalysis, AnalysisError> {
    let mut report = AnalysisReport::default();
    let mut modules: Vec<ModuleAnalysis> = Vec::new();
    for src in &project.files {
        let program = match parse(src) {
            Ok(p) => Some(p),
            Err(e) => {
                report.skipped.push(Diagnostic::new(
                    &src.path,
                    e.span,
                    format!("syntax error: {}", e.message),
                ));
                None
            }
        };
        let skip_reason = program.is_none().then(|| "syntax error".to_string());
        modules.push(ModuleAnalysis {
            source: src.clone(),
            in_mdg: program.is_some(),
            program,
            name: String::new(),
            format: Format::NonModular,
            amd: None,
            module_object: None,
            globals: GlobalSets::default(),
            features: Vec::new(),
            violations: Vec::new(),
            imports: Vec::new(),
            import_count: 0,
            refs: Vec::new(),
            skip_reason,
            is_test: options.test_files.contains(&src.path),
            hoisted: Vec::new(),
            renames: Vec::new(),
        });
    }
    modules.sort_by(|a, b| a.source.path.cmp(&b.source.path));
    assign_formats(&mut modules, options.format, &mut report)?;

    let mut constructed = HashSet::new();
    for m in &modules {
        if let Some(p) = &m.program {
            new_targets(p, &mut constructed);
        }
    }
    let files: HashSet<String> = project.files.iter().map(|f| f.path.clone()).collect();

    // Per-file analyses.
    for m in modules.iter_mut() {
        let Some(p) = m.program.take() else {
            continue;
        };
        let path = m.source.path.clone();
        m.amd = if m.format == Format::Amd {
            amd_define(&p)
        } else {
            None
        };
        if m.format == Format::Amd && m.amd.is_none() {
            m.format = Format::NonModular;
        }
        m.name = module_name(&path, m.format, m.amd.as_ref(), &options.amd_base);
        let check =
            check_format_preconditions(&p, m.format, &path, &constructed, options.lenient_nesting);
        report.warnings.extend(check.warnings);
        m.hoisted = check.hoisted;
        if !check.violations.is_empty() {
            report.violations.extend(check.violations.iter().cloned());
            m.violations = check.violations;
            m.program = Some(p);
            skip(m, &mut report, "module-format precondition violated".into());
            continue;
        }
        let mo = module_object::analyze(&p, m.format, &path, m.amd.as_ref(), &constructed);
        report.violations.extend(mo.violations.iter().cloned());
        m.violations = mo.violations;
        m.module_object = mo.info;
        let (globals, warnings) = collect_globals(&p, m.format, &path, m.amd.as_ref());
        m.globals = globals;
        report.warnings.extend(warnings);
        let (sites, warnings) = collect_import_sites(
            &p,
            m.format,
            &path,
            m.amd.as_ref(),
            &files,
            &options.amd_base,
        );
        report.warnings.extend(warnings);
        m.import_count = import_count(&sites);
        m.imports = sites;
        m.program = Some(p);
    }

    // Imports of project files that left the graph are treated like
    // library imports.
    let members: HashSet<String> = modules
        .iter()
        .filter(|m| m.in_mdg)
        .map(|m| m.source.path.clone())
        .collect();
    for m in modules.iter_mut() {
        for s in &mut m.imports {
            if let ImportTarget::Module(t) = &s.target {
                if !members.contains(t) {
                    s.target = ImportTarget::Library {
                        spec: s.specifier.clone(),
                        path: Some(t.clone()),
                    };
                }
            }
        }
    }

    // Global declarations across files.
    let inputs: Vec<GlobalInput<'_>> = modules
        .iter()
        .filter(|m| m.in_mdg)
        .map(|m| GlobalInput {
            path: &m.source.path,
            format: m.format,
            globals: &m.globals,
            import_count: m.import_count,
        })
        .collect();
    let global_violations = check_global_preconditions(&inputs);
    if !global_violations.is_empty() {
        report.violations.extend(global_violations.iter().cloned());
        return Err(AnalysisError::Abandoned {
            message: format!(
                "{} global declaration precondition(s) violated",
                global_violations.len()
            ),
            violations: global_violations,
            report: Box::new(report),
        });
    }
    let owners = resolve_global_features(&inputs);
    drop(inputs);
    for m in modules.iter_mut().filter(|m| m.in_mdg) {
        m.features = features_of(m, &owners);
    }

    // Dependencies, repeated while imports force module objects to be kept
    // whole.
    let mut results = BTreeMap::new();
    for _round in 0..=modules.len() {
        let targets: BTreeMap<String, TargetView> = modules
            .iter()
            .filter(|m| m.in_mdg)
            .map(|m| (m.source.path.clone(), target_view(m)))
            .collect();
        let env = DepEnv {
            targets: &targets,
            owners: &owners,
        };
        results.clear();
        let mut degrade = Vec::new();
        for m in modules.iter().filter(|m| m.in_mdg) {
            let p = m.program.as_ref().expect("parsed");
            let extracted = targets[&m.source.path].extracted.clone();
            let id = targets[&m.source.path].id.clone();
            let own = OwnModule {
                id: &id,
                path: &m.source.path,
                format: m.format,
                amd: m.amd.as_ref(),
                object: m.module_object.as_ref(),
                extracted: &extracted,
            };
            let r = resolve_dependencies(p, &own, &m.imports, &env);
            degrade.extend(r.degrade.iter().cloned());
            results.insert(m.source.path.clone(), r);
        }
        let mut changed = false;
        for (target, v) in degrade {
            let Some(m) = modules.iter_mut().find(|m| m.source.path == target) else {
                continue;
            };
            if m.violations
                .iter()
                .any(|x| x.family == Family::Destructuring)
            {
                continue;
            }
            report.violations.push(v.clone());
            m.violations.push(v);
            m.features = features_of(m, &owners);
            changed = true;
        }
        if !changed {
            break;
        }
    }

    let mut mdg = Mdg::new();
    for m in modules.iter_mut().filter(|m| m.in_mdg) {
        let r = results.remove(&m.source.path).unwrap_or_default();
        report.warnings.extend(r.warnings);
        if !r.errors.is_empty() {
            m.skip_reason = Some(r.errors[0].message.clone());
            report.errors.extend(r.errors);
        }
        m.refs = r.refs;
        m.imports = r.sites;
        for lib in r.libraries {
            mdg.add_library(lib);
        }
        for d in r.deps {
            mdg.add_dep(d);
        }
    }
    // Mutators for written features.
    let written: BTreeSet<(String, String)> = mdg
        .deps
        .iter()
        .filter(|d| d.usage == crate::mdg::Usage::W)
        .filter_map(|d| d.feature.clone().map(|f| (d.to.path.clone(), f)))
        .collect();
    let incoming: BTreeSet<(String, String)> = mdg
        .deps
        .iter()
        .filter_map(|d| d.feature.clone().map(|f| (d.to.path.clone(), f)))
        .collect();
    for m in modules.iter_mut().filter(|m| m.in_mdg) {
        let path = m.source.path.clone();
        let mut mutators = Vec::new();
        for f in &m.features {
            if written.contains(&(path.clone(), f.name.clone())) {
                let mut mf = ModuleFeature::mutator(&f.name);
                mf.exported = true;
                mutators.push(mf);
            }
        }
        for f in m.features.iter_mut() {
            f.exported = options.library || incoming.contains(&(path.clone(), f.name.clone()));
        }
        m.features.extend(mutators);
        assign_emitted_names(m);
        mdg.add_module(ModuleId::new(&m.name, &path), m.features.clone());
    }
    // Drop edges whose endpoints left the graph.
    let known: HashSet<String> = mdg
        .modules
        .iter()
        .map(|m| m.id.path.clone())
        .chain(mdg.libraries.iter().map(|l| l.path.clone()))
        .collect();
    mdg.deps
        .retain(|d| known.contains(&d.from.path) && known.contains(&d.to.path));
    report.violations.sort();
    report.violations.dedup();
    Ok(ProjectAnalysis {
        mdg,
        modules,
        report,
        options: options.clone(),
    })
}
