//! Helpers shared by the analysis passes.

use std::collections::HashMap;

use super::format::AmdDefine;
use super::Format;
use crate::frontend::visit::{Ancestors, Ctx, Role, Visitor};
use crate::frontend::*;
use crate::mdg::Usage;

/// Where a module's own bindings live: the program scope for scripts and
/// CommonJS, the factory scope for AMD.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ModuleScope {
    pub format: Format,
    pub factory: Option<*const Function>,
    pub index: usize,
}

impl ModuleScope {
    pub fn new(p: &Program, format: Format, amd: Option<&AmdDefine>) -> Self {
        match (format, amd) {
            (Format::Amd, Some(d)) => ModuleScope {
                format,
                factory: d.factory(p).map(|f| f as *const Function),
                index: d.factory_scope(p),
            },
            _ => ModuleScope {
                format,
                factory: None,
                index: 0,
            },
        }
    }

    /// `name` resolves to a binding of the module scope.
    pub fn is_module_binding(&self, cx: &Ctx<'_>, name: &str) -> bool {
        if self.format == Format::Amd && !self.in_factory(cx) {
            return false;
        }
        cx.resolve(name) == Some(self.index)
    }

    pub fn in_factory(&self, cx: &Ctx<'_>) -> bool {
        match self.factory {
            Some(f) => cx.functions.first().is_some_and(|g| std::ptr::eq(*g, f)),
            None => self.format != Format::Amd,
        }
    }

    /// Directly in the module body: outside nested functions and blocks.
    pub fn at_top(&self, cx: &Ctx<'_>) -> bool {
        match self.format {
            Format::Amd => self.in_factory(cx) && cx.functions.len() == 1 && cx.block_depth == 0,
            _ => cx.at_top_level(),
        }
    }

    /// CommonJS `exports` or `module.exports` (with free `module`/`exports`).
    pub fn is_exports_object(&self, e: &Expr, cx: &Ctx<'_>) -> bool {
        if self.format != Format::Cjs {
            return false;
        }
        match &e.kind {
            ExprKind::Ident(n) => n == "exports" && cx.is_free("exports"),
            _ => e.is_module_exports() && cx.is_free("module"),
        }
    }
}

/// The statements forming the module body.
pub(crate) fn module_body<'a>(p: &'a Program, amd: Option<&AmdDefine>) -> &'a [Stmt] {
    match amd.and_then(|d| d.factory(p)) {
        Some(f) => &f.body,
        None => &p.body,
    }
}

pub(crate) fn usage_of_role(role: Role) -> Usage {
    match role {
        Role::AssignTarget(_) | Role::UpdateArg | Role::Unary(UnaryOp::Delete) => Usage::W,
        Role::Callee | Role::NewCallee => Usage::C,
        _ => Usage::R,
    }
}

/// Name of the variable standing for a module's object: `mod_<file>`.
pub fn mod_name(path: &str) -> String {
    format!(
        "mod_{}",
        crate::paths::sanitize_identifier(crate::paths::file_stem(path))
    )
}

/// Maps `var` initializers to their declarator name.
#[derive(Default)]
pub(crate) struct VarInits {
    pub by_init: HashMap<*const Expr, (String, Option<Span>)>,
}

impl VarInits {
    pub fn record(&mut self, s: &Stmt) {
        let decls = match &s.kind {
            StmtKind::Var(d) => d.as_slice(),
            StmtKind::For {
                init: Some(ForInit::Var(d)),
                ..
            } => d.as_slice(),
            _ => return,
        };
        for d in decls {
            if let Some(init) = &d.init {
                self.by_init
                    .insert(init as *const Expr, (d.name.clone(), d.span));
            }
        }
    }

    pub fn name_of(&self, e: &Expr) -> Option<&(String, Option<Span>)> {
        self.by_init.get(&(e as *const Expr))
    }
}

/// Functions whose own body (not nested functions) references `this`.
pub(crate) struct ThisUsers {
    pub users: std::collections::HashSet<*const Function>,
    /// Functions assigning `this.x` directly.
    pub binders: std::collections::HashSet<*const Function>,
}

impl<'a> Visitor<'a> for ThisUsers {
    fn expr(&mut self, e: &'a Expr, role: Role, _: &Ancestors<'a>, cx: &Ctx<'a>) {
        let Some(f) = cx.functions.last() else {
            return;
        };
        match &e.kind {
            ExprKind::This => {
                self.users.insert(*f as *const Function);
            }
            ExprKind::Member { object, .. }
                if matches!(object.kind, ExprKind::This)
                    && matches!(role, Role::AssignTarget(_)) =>
            {
                self.binders.insert(*f as *const Function);
            }
            _ => {}
        }
    }
}

pub(crate) fn this_users(p: &Program) -> ThisUsers {
    let mut v = ThisUsers {
        users: Default::default(),
        binders: Default::default(),
    };
    crate::frontend::visit::walk_program(p, &mut v);
    v
}

/// The member expression `anc` ends with when `role` is `MemberObject`.
pub(crate) fn parent<'a>(anc: &Ancestors<'a>) -> Option<(&'a Expr, Role)> {
    anc.last().copied()
}
