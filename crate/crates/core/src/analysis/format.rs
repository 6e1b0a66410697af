use std::collections::{HashMap, HashSet};

use super::{Diagnostic, Format, PreconditionViolation, Rule};
use crate::frontend::visit::{walk_program, Ancestors, Ctx, Role, Visitor};
use crate::frontend::*;

/// The `define(...)` (or entry-point `require([...], fn)`) call of an AMD file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmdDefine {
    pub stmt_index: usize,
    pub id: Option<String>,
    /// Dependency-array entries in order.
    pub deps: Vec<String>,
    /// Factory parameters in order.
    pub params: Vec<String>,
    pub has_factory: bool,
    /// `define({...})` with no factory.
    pub object_literal: bool,
    /// Entry point loaded with `require([...], fn)`; exports nothing.
    pub is_require: bool,
}

impl AmdDefine {
    fn call<'a>(&self, p: &'a Program) -> Option<&'a [Expr]> {
        match &p.body.get(self.stmt_index)?.kind {
            StmtKind::Expr(Expr {
                kind: ExprKind::Call { args, .. },
                ..
            }) => Some(args),
            _ => None,
        }
    }

    pub fn factory<'a>(&self, p: &'a Program) -> Option<&'a Function> {
        self.call(p)?.iter().find_map(|a| match &a.kind {
            ExprKind::Function(f) => Some(&**f),
            _ => None,
        })
    }

    pub fn object<'a>(&self, p: &'a Program) -> Option<&'a Expr> {
        self.call(p)?
            .iter()
            .find(|a| matches!(a.kind, ExprKind::Object(_)))
    }

    /// Scope index of the factory's own bindings during a walk.
    pub fn factory_scope(&self, p: &Program) -> usize {
        match self.factory(p) {
            Some(f) if f.name.is_some() => 2,
            _ => 1,
        }
    }

    /// Dependency entries that are loader built-ins rather than modules.
    pub fn is_special(dep: &str) -> bool {
        matches!(dep, "require" | "exports" | "module")
    }
}

/// Finds the top-level AMD definition of a program.
pub fn amd_define(p: &Program) -> Option<AmdDefine> {
    for (i, s) in p.body.iter().enumerate() {
        let StmtKind::Expr(Expr {
            kind: ExprKind::Call { callee, args },
            ..
        }) = &s.kind
        else {
            continue;
        };
        let Some(name) = callee.as_ident() else {
            continue;
        };
        let is_require = match name {
            "define" => false,
            "require" | "requirejs" => true,
            _ => continue,
        };
        let mut id = None;
        let mut deps = Vec::new();
        let mut rest = args.as_slice();
        if let Some(Expr {
            kind: ExprKind::Str(s),
            ..
        }) = rest.first()
        {
            if is_require {
                continue;
            }
            id = Some(s.clone());
            rest = &rest[1..];
        }
        let mut saw_array = false;
        if let Some(Expr {
            kind: ExprKind::Array(items),
            ..
        }) = rest.first()
        {
            saw_array = true;
            for it in items {
                match it {
                    Some(Expr {
                        kind: ExprKind::Str(s),
                        ..
                    }) => deps.push(s.clone()),
                    _ => deps.push(String::new()),
                }
            }
            rest = &rest[1..];
        }
        if is_require && !saw_array {
            continue;
        }
        let (has_factory, object_literal, params) = match rest {
            [Expr {
                kind: ExprKind::Function(f),
                ..
            }] => (true, false, f.params.clone()),
            [Expr {
                kind: ExprKind::Object(_),
                ..
            }] if !is_require => (false, true, Vec::new()),
            [] if is_require => (false, false, Vec::new()),
            _ => continue,
        };
        return Some(AmdDefine {
            stmt_index: i,
            id,
            deps,
            params,
            has_factory,
            object_literal,
            is_require,
        });
    }
    None
}

struct CjsSyntax {
    found: bool,
}

impl<'a> Visitor<'a> for CjsSyntax {
    fn expr(&mut self, e: &'a Expr, _: Role, _: &Ancestors<'a>, cx: &Ctx<'a>) {
        if self.found {
            return;
        }
        match &e.kind {
            ExprKind::Call { callee, .. } => {
                if callee.as_ident() == Some("require") && cx.is_free("require") {
                    self.found = true;
                }
            }
            ExprKind::Ident(n) if n == "exports" && cx.is_free("exports") => self.found = true,
            _ if e.is_module_exports() && cx.is_free("module") => self.found = true,
            _ => {}
        }
    }
}

/// AMD when a top-level definition exists, CJS when CommonJS syntax occurs,
/// NonModular otherwise. The flag reports that both were present.
pub fn detect_format_with_warning(p: &Program) -> (Format, bool) {
    let mut v = CjsSyntax { found: false };
    let amd = amd_define(p);
    if let Some(d) = &amd {
        // Only look for CommonJS syntax outside the AMD wrapper.
        let outside = Program {
            directives: p.directives.clone(),
            body: p
                .body
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != d.stmt_index)
                .map(|(_, s)| s.clone())
                .collect(),
        };
        walk_program(&outside, &mut v);
        return (Format::Amd, v.found);
    }
    walk_program(p, &mut v);
    if v.found {
        (Format::Cjs, false)
    } else {
        (Format::NonModular, false)
    }
}

pub fn detect_format(p: &Program) -> Format {
    detect_format_with_warning(p).0
}

/// Names used as constructors anywhere in `p`: `new` targets and names
/// whose `prototype` is accessed.
pub fn new_targets(p: &Program, out: &mut HashSet<String>) {
    struct N<'o>(&'o mut HashSet<String>);
    impl<'a> Visitor<'a> for N<'_> {
        fn expr(&mut self, e: &'a Expr, _: Role, _: &Ancestors<'a>, _: &Ctx<'a>) {
            if let ExprKind::Member {
                object,
                property: MemberProp::Dot(p),
            } = &e.kind
            {
                if let (ExprKind::Ident(n), "prototype") = (&object.kind, p.as_str()) {
                    self.0.insert(n.clone());
                }
            }
            if let ExprKind::New { callee, .. } = &e.kind {
                match &callee.kind {
                    ExprKind::Ident(n) => {
                        self.0.insert(n.clone());
                    }
                    ExprKind::Member {
                        property: MemberProp::Dot(n),
                        ..
                    } => {
                        self.0.insert(n.clone());
                    }
                    _ => {}
                }
            }
        }
    }
    walk_program(p, &mut N(out));
}

#[derive(Debug, Default)]
pub struct FormatCheck {
    pub violations: Vec<PreconditionViolation>,
    pub warnings: Vec<Diagnostic>,
    /// Block-nested `require` calls accepted under lenient nesting.
    pub hoisted: Vec<Span>,
}

struct FormatVisitor<'n> {
    path: String,
    format: Format,
    new_targets: &'n HashSet<String>,
    lenient: bool,
    factory: Option<*const Function>,
    /// Functions exempt from the `this` rule (methods and constructors).
    exempt: HashSet<*const Function>,
    /// Name a function expression is stored under.
    stored_as: HashMap<*const Function, String>,
    reported: HashSet<*const Function>,
    out: FormatCheck,
}

fn method_position(role: Role, anc: &Ancestors<'_>) -> bool {
    match role {
        Role::PropValue => true,
        Role::AssignValue => matches!(
            anc.last(),
            Some((Expr { kind: ExprKind::Assign { target, .. }, .. }, _))
                if matches!(target.kind, ExprKind::Member { .. })
        ),
        _ => false,
    }
}

impl<'a> Visitor<'a> for FormatVisitor<'_> {
    fn stmt(&mut self, s: &'a Stmt, cx: &Ctx<'a>) {
        match &s.kind {
            StmtKind::Var(decls) => {
                for d in decls {
                    if let Some(Expr {
                        kind: ExprKind::Function(f),
                        ..
                    }) = &d.init
                    {
                        self.stored_as
                            .insert(&**f as *const Function, d.name.clone());
                    }
                }
            }
            StmtKind::Return(_) if self.format == Format::Amd => {
                let in_factory = cx.functions.len() == 1
                    && Some(cx.functions[0] as *const Function) == self.factory;
                if in_factory && cx.block_depth > 0 {
                    self.out.violations.push(PreconditionViolation::new(
                        Rule::TopLevelImports,
                        &self.path,
                        s.span,
                        "factory `return` is nested in a block",
                    ));
                }
            }
            _ => {}
        }
    }

    fn function(&mut self, f: &'a Function, _: &Ctx<'a>) {
        let key = f as *const Function;
        let name = f.name.clone().or_else(|| self.stored_as.get(&key).cloned());
        if let Some(n) = name {
            if self.new_targets.contains(&n) {
                self.exempt.insert(key);
            }
        }
    }

    fn expr(&mut self, e: &'a Expr, role: Role, anc: &Ancestors<'a>, cx: &Ctx<'a>) {
        match &e.kind {
            ExprKind::Function(f) => {
                if method_position(role, anc) {
                    self.exempt.insert(&**f as *const Function);
                }
                if role == Role::AssignValue {
                    if let Some((
                        Expr {
                            kind: ExprKind::Assign { target, .. },
                            ..
                        },
                        _,
                    )) = anc.last()
                    {
                        if let Some(n) = target.as_ident() {
                            self.stored_as
                                .insert(&**f as *const Function, n.to_string());
                        }
                    }
                }
            }
            ExprKind::This => match cx.functions.last() {
                None => self.out.violations.push(PreconditionViolation::new(
                    Rule::StrictThis,
                    &self.path,
                    e.span,
                    "`this` at the top level changes meaning in a module",
                )),
                Some(f) => {
                    let key = *f as *const Function;
                    if !cx.strict() && !self.exempt.contains(&key) && self.reported.insert(key) {
                        let name = f
                            .name
                            .clone()
                            .or_else(|| self.stored_as.get(&key).cloned())
                            .unwrap_or_else(|| "<anonymous>".to_string());
                        self.out.violations.push(PreconditionViolation::new(
                            Rule::StrictThis,
                            &self.path,
                            e.span,
                            format!(
                                "function `{name}` uses `this` in non-strict code and is neither a method nor a constructor"
                            ),
                        ));
                    }
                }
            },
            ExprKind::Call { callee, .. }
                if self.format == Format::Cjs
                    && callee.as_ident() == Some("require")
                    && cx.is_free("require") =>
            {
                if cx.in_function() {
                    self.out.violations.push(PreconditionViolation::new(
                        Rule::TopLevelImports,
                        &self.path,
                        e.span,
                        "`require` call nested in a function",
                    ));
                } else if cx.block_depth > 0 {
                    if self.lenient {
                        self.out.warnings.push(Diagnostic::new(
                            &self.path,
                            e.span,
                            "`require` nested in a block is hoisted to a top-level import",
                        ));
                        if let Some(sp) = e.span {
                            self.out.hoisted.push(sp);
                        }
                    } else {
                        self.out.violations.push(PreconditionViolation::new(
                            Rule::TopLevelImports,
                            &self.path,
                            e.span,
                            "`require` call nested in a block statement",
                        ));
                    }
                }
            }
            _ => {}
        }
    }
}

/// Evaluates the module-format preconditions of one file. `new_targets`
/// holds every name used with `new` anywhere in the project.
pub fn check_format_preconditions(
    p: &Program,
    format: Format,
    path: &str,
    new_targets: &HashSet<String>,
    lenient: bool,
) -> FormatCheck {
    let factory = if format == Format::Amd {
        amd_define(p).and_then(|d| d.factory(p).map(|f| f as *const Function))
    } else {
        None
    };
    let mut v = FormatVisitor {
        path: path.to_string(),
        format,
        new_targets,
        lenient,
        factory,
        exempt: HashSet::new(),
        stored_as: HashMap::new(),
        reported: HashSet::new(),
        out: FormatCheck::default(),
    };
    walk_program(p, &mut v);
    v.out
}
