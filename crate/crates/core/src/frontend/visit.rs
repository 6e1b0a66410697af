//! Scope-aware read-only traversal and a plain mutable traversal.

use std::collections::HashSet;

use super::ast::*;

/// How an expression is used by its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Expression statement; the value is dropped.
    Discarded,
    Value,
    Test,
    VarInit,
    Returned,
    Thrown,
    AssignTarget(AssignOp),
    AssignValue,
    UpdateArg,
    Callee,
    NewCallee,
    Argument,
    MemberObject,
    BracketProp,
    Unary(UnaryOp),
    /// Operand of an equality, relational or `instanceof` operator.
    Compare,
    ArrayItem,
    PropValue,
    ForInLeft,
    ForInRight,
    CaseTest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScopeKind {
    Program,
    Function,
    Catch,
}

#[derive(Debug, Clone)]
pub struct Scope {
    pub kind: ScopeKind,
    pub names: HashSet<String>,
}

pub struct Ctx<'a> {
    pub scopes: Vec<Scope>,
    pub functions: Vec<&'a Function>,
    /// Compound-statement nesting inside the innermost function (or program).
    pub block_depth: usize,
    /// Index of the enclosing top-level statement.
    pub top_stmt: usize,
    pub program_strict: bool,
}

impl<'a> Ctx<'a> {
    /// Index of the scope declaring `name`, or `None` when it is free.
    pub fn resolve(&self, name: &str) -> Option<usize> {
        self.scopes.iter().rposition(|s| s.names.contains(name))
    }

    pub fn is_top_level_binding(&self, name: &str) -> bool {
        self.resolve(name) == Some(0)
    }

    pub fn is_free(&self, name: &str) -> bool {
        self.resolve(name).is_none()
    }

    pub fn in_function(&self) -> bool {
        !self.functions.is_empty()
    }

    /// At program top level, outside any function or compound statement.
    pub fn at_top_level(&self) -> bool {
        self.functions.is_empty() && self.block_depth == 0
    }

    pub fn strict(&self) -> bool {
        self.program_strict || self.functions.iter().any(|f| f.is_strict())
    }
}

pub type Ancestors<'a> = [(&'a Expr, Role)];

pub trait Visitor<'a> {
    fn expr(&mut self, _e: &'a Expr, _role: Role, _anc: &Ancestors<'a>, _cx: &Ctx<'a>) {}
    fn stmt(&mut self, _s: &'a Stmt, _cx: &Ctx<'a>) {}
    /// Called with the outer context before a function body is entered.
    fn function(&mut self, _f: &'a Function, _cx: &Ctx<'a>) {}
}

/// Names hoisted to the scope of `body`: `var` declarations at any block
/// depth and function declarations, excluding nested functions' contents.
pub fn hoisted_names(body: &[Stmt]) -> HashSet<String> {
    let mut out = HashSet::new();
    for s in body {
        hoist_stmt(s, &mut out);
    }
    out
}

fn hoist_decls(d: &[VarDeclarator], out: &mut HashSet<String>) {
    for v in d {
        out.insert(v.name.clone());
    }
}

fn hoist_stmt(s: &Stmt, out: &mut HashSet<String>) {
    match &s.kind {
        StmtKind::Var(d) => hoist_decls(d, out),
        StmtKind::Function(f) => {
            if let Some(n) = &f.name {
                out.insert(n.clone());
            }
        }
        StmtKind::If {
            consequent,
            alternate,
            ..
        } => {
            hoist_stmt(consequent, out);
            if let Some(a) = alternate {
                hoist_stmt(a, out);
            }
        }
        StmtKind::Block(b) => b.iter().for_each(|s| hoist_stmt(s, out)),
        StmtKind::For { init, body, .. } => {
            if let Some(ForInit::Var(d)) = init {
                hoist_decls(d, out);
            }
            hoist_stmt(body, out);
        }
        StmtKind::ForIn { left, body, .. } => {
            if let ForInLeft::Var(d) = left {
                out.insert(d.name.clone());
            }
            hoist_stmt(body, out);
        }
        StmtKind::While { body, .. }
        | StmtKind::DoWhile { body, .. }
        | StmtKind::Labeled { body, .. } => hoist_stmt(body, out),
        StmtKind::Try {
            block,
            handler,
            finalizer,
        } => {
            block.iter().for_each(|s| hoist_stmt(s, out));
            if let Some(h) = handler {
                h.body.iter().for_each(|s| hoist_stmt(s, out));
            }
            if let Some(f) = finalizer {
                f.iter().for_each(|s| hoist_stmt(s, out));
            }
        }
        StmtKind::Switch { cases, .. } => {
            for c in cases {
                c.body.iter().for_each(|s| hoist_stmt(s, out));
            }
        }
        StmtKind::ImportNamed { specifiers, .. } => {
            for sp in specifiers {
                out.insert(sp.local.clone());
            }
        }
        StmtKind::ImportDefault { local, .. } => {
            out.insert(local.clone());
        }
        _ => {}
    }
}

pub fn walk_program<'a, V: Visitor<'a>>(p: &'a Program, v: &mut V) {
    let mut w = Walker {
        v,
        cx: Ctx {
            scopes: vec![Scope {
                kind: ScopeKind::Program,
                names: hoisted_names(&p.body),
            }],
            functions: Vec::new(),
            block_depth: 0,
            top_stmt: 0,
            program_strict: p.strict_mode(),
        },
        anc: Vec::new(),
    };
    for (i, s) in p.body.iter().enumerate() {
        w.cx.top_stmt = i;
        w.stmt(s);
    }
}

struct Walker<'a, 'v, V: Visitor<'a>> {
    v: &'v mut V,
    cx: Ctx<'a>,
    anc: Vec<(&'a Expr, Role)>,
}

impl<'a, V: Visitor<'a>> Walker<'a, '_, V> {
    fn nested(&mut self, s: &'a Stmt) {
        self.cx.block_depth += 1;
        self.stmt(s);
        self.cx.block_depth -= 1;
    }

    fn nested_list(&mut self, body: &'a [Stmt]) {
        self.cx.block_depth += 1;
        for s in body {
            self.stmt(s);
        }
        self.cx.block_depth -= 1;
    }

    fn decls(&mut self, d: &'a [VarDeclarator]) {
        for v in d {
            if let Some(e) = &v.init {
                self.expr(e, Role::VarInit);
            }
        }
    }

    fn stmt(&mut self, s: &'a Stmt) {
        self.v.stmt(s, &self.cx);
        match &s.kind {
            StmtKind::Var(d) => self.decls(d),
            StmtKind::Function(f) => self.function(f),
            StmtKind::Expr(e) => self.expr(e, Role::Discarded),
            StmtKind::Return(e) => {
                if let Some(e) = e {
                    self.expr(e, Role::Returned);
                }
            }
            StmtKind::Throw(e) => self.expr(e, Role::Thrown),
            StmtKind::If {
                test,
                consequent,
                alternate,
            } => {
                self.expr(test, Role::Test);
                self.nested(consequent);
                if let Some(a) = alternate {
                    self.nested(a);
                }
            }
            StmtKind::Block(b) => self.nested_list(b),
            StmtKind::For {
                init,
                test,
                update,
                body,
            } => {
                self.cx.block_depth += 1;
                match init {
                    Some(ForInit::Var(d)) => self.decls(d),
                    Some(ForInit::Expr(e)) => self.expr(e, Role::Discarded),
                    None => {}
                }
                if let Some(t) = test {
                    self.expr(t, Role::Test);
                }
                if let Some(u) = update {
                    self.expr(u, Role::Discarded);
                }
                self.stmt(body);
                self.cx.block_depth -= 1;
            }
            StmtKind::ForIn { left, right, body } => {
                self.cx.block_depth += 1;
                if let ForInLeft::Expr(e) = left {
                    self.expr(e, Role::ForInLeft);
                }
                self.expr(right, Role::ForInRight);
                self.stmt(body);
                self.cx.block_depth -= 1;
            }
            StmtKind::While { test, body } | StmtKind::DoWhile { body, test } => {
                self.expr(test, Role::Test);
                self.nested(body);
            }
            StmtKind::Try {
                block,
                handler,
                finalizer,
            } => {
                self.nested_list(block);
                if let Some(h) = handler {
                    let mut names = HashSet::new();
                    names.insert(h.param.clone());
                    self.cx.scopes.push(Scope {
                        kind: ScopeKind::Catch,
                        names,
                    });
                    self.nested_list(&h.body);
                    self.cx.scopes.pop();
                }
                if let Some(f) = finalizer {
                    self.nested_list(f);
                }
            }
            StmtKind::Switch {
                discriminant,
                cases,
            } => {
                self.expr(discriminant, Role::Test);
                self.cx.block_depth += 1;
                for c in cases {
                    if let Some(t) = &c.test {
                        self.expr(t, Role::CaseTest);
                    }
                    for s in &c.body {
                        self.stmt(s);
                    }
                }
                self.cx.block_depth -= 1;
            }
            StmtKind::Labeled { body, .. } => self.stmt(body),
            StmtKind::Break(_)
            | StmtKind::Continue(_)
            | StmtKind::Empty
            | StmtKind::Debugger
            | StmtKind::ImportNamed { .. }
            | StmtKind::ImportDefault { .. }
            | StmtKind::ImportBare { .. }
            | StmtKind::ExportNamed(_) => {}
        }
    }

    fn function(&mut self, f: &'a Function) {
        self.v.function(f, &self.cx);
        let mut names = hoisted_names(&f.body);
        names.extend(f.params.iter().cloned());
        names.insert("arguments".to_string());
        self.cx.scopes.push(Scope {
            kind: ScopeKind::Function,
            names,
        });
        self.cx.functions.push(f);
        let saved_block = std::mem::replace(&mut self.cx.block_depth, 0);
        let saved_anc = std::mem::take(&mut self.anc);
        for s in &f.body {
            self.stmt(s);
        }
        self.anc = saved_anc;
        self.cx.block_depth = saved_block;
        self.cx.functions.pop();
        self.cx.scopes.pop();
    }

    fn expr(&mut self, e: &'a Expr, role: Role) {
        self.v.expr(e, role, &self.anc, &self.cx);
        self.anc.push((e, role));
        match &e.kind {
            ExprKind::Ident(_)
            | ExprKind::Number(_)
            | ExprKind::Str(_)
            | ExprKind::Bool(_)
            | ExprKind::Null
            | ExprKind::Regex(_)
            | ExprKind::This => {}
            ExprKind::Array(items) => {
                for i in items.iter().flatten() {
                    self.expr(i, Role::ArrayItem);
                }
            }
            ExprKind::Object(props) => {
                for p in props {
                    self.expr(&p.value, Role::PropValue);
                }
            }
            ExprKind::Function(f) => {
                // A named function expression binds its own name inside.
                if let Some(n) = &f.name {
                    let mut names = HashSet::new();
                    names.insert(n.clone());
                    self.cx.scopes.push(Scope {
                        kind: ScopeKind::Function,
                        names,
                    });
                    self.function(f);
                    self.cx.scopes.pop();
                } else {
                    self.function(f);
                }
            }
            ExprKind::Member { object, property } => {
                self.expr(object, Role::MemberObject);
                if let MemberProp::Bracket(p) = property {
                    self.expr(p, Role::BracketProp);
                }
            }
            ExprKind::Call { callee, args } => {
                self.expr(callee, Role::Callee);
                for a in args {
                    self.expr(a, Role::Argument);
                }
            }
            ExprKind::New { callee, args } => {
                self.expr(callee, Role::NewCallee);
                for a in args {
                    self.expr(a, Role::Argument);
                }
            }
            ExprKind::Assign { op, target, value } => {
                self.expr(target, Role::AssignTarget(*op));
                self.expr(value, Role::AssignValue);
            }
            ExprKind::Binary { op, left, right } => {
                let r = match op {
                    BinaryOp::Eq
                    | BinaryOp::NotEq
                    | BinaryOp::StrictEq
                    | BinaryOp::StrictNotEq
                    | BinaryOp::InstanceOf => Role::Compare,
                    _ => Role::Value,
                };
                self.expr(left, r);
                self.expr(right, r);
            }
            ExprKind::Unary { op, arg } => self.expr(arg, Role::Unary(*op)),
            ExprKind::Update { arg, .. } => self.expr(arg, Role::UpdateArg),
            ExprKind::Conditional {
                test,
                consequent,
                alternate,
            } => {
                self.expr(test, Role::Test);
                self.expr(consequent, Role::Value);
                self.expr(alternate, Role::Value);
            }
            ExprKind::Sequence(items) => {
                let last = items.len().saturating_sub(1);
                for (i, it) in items.iter().enumerate() {
                    self.expr(it, if i == last { role } else { Role::Discarded });
                }
            }
        }
        self.anc.pop();
    }
}

/// Calls `f` on every expression, parents before children. Children of the
/// node left in place by `f` are visited afterwards.
pub fn for_each_expr_mut(body: &mut [Stmt], f: &mut dyn FnMut(&mut Expr)) {
    body_walk(body, f, false);
}

/// Like [`for_each_expr_mut`] but children before parents, so `f` sees its
/// argument with every subexpression already processed.
pub fn for_each_expr_post_mut(body: &mut [Stmt], f: &mut dyn FnMut(&mut Expr)) {
    body_walk(body, f, true);
}

fn body_walk(body: &mut [Stmt], f: &mut dyn FnMut(&mut Expr), post: bool) {
    for s in body {
        stmt_walk(s, f, post);
    }
}

fn decls_walk(d: &mut [VarDeclarator], f: &mut dyn FnMut(&mut Expr), post: bool) {
    for v in d {
        if let Some(e) = &mut v.init {
            expr_walk(e, f, post);
        }
    }
}

pub fn stmt_mut(s: &mut Stmt, f: &mut dyn FnMut(&mut Expr)) {
    stmt_walk(s, f, false);
}

fn stmt_walk(s: &mut Stmt, f: &mut dyn FnMut(&mut Expr), post: bool) {
    match &mut s.kind {
        StmtKind::Var(d) => decls_walk(d, f, post),
        StmtKind::Function(func) => body_walk(&mut func.body, f, post),
        StmtKind::Expr(e) | StmtKind::Throw(e) => expr_walk(e, f, post),
        StmtKind::Return(Some(e)) => expr_walk(e, f, post),
        StmtKind::If {
            test,
            consequent,
            alternate,
        } => {
            expr_walk(test, f, post);
            stmt_walk(consequent, f, post);
            if let Some(a) = alternate {
                stmt_walk(a, f, post);
            }
        }
        StmtKind::Block(b) => body_walk(b, f, post),
        StmtKind::For {
            init,
            test,
            update,
            body,
        } => {
            match init {
                Some(ForInit::Var(d)) => decls_walk(d, f, post),
                Some(ForInit::Expr(e)) => expr_walk(e, f, post),
                None => {}
            }
            if let Some(t) = test {
                expr_walk(t, f, post);
            }
            if let Some(u) = update {
                expr_walk(u, f, post);
            }
            stmt_walk(body, f, post);
        }
        StmtKind::ForIn { left, right, body } => {
            match left {
                ForInLeft::Var(d) => decls_walk(std::slice::from_mut(d), f, post),
                ForInLeft::Expr(e) => expr_walk(e, f, post),
            }
            expr_walk(right, f, post);
            stmt_walk(body, f, post);
        }
        StmtKind::While { test, body } | StmtKind::DoWhile { body, test } => {
            expr_walk(test, f, post);
            stmt_walk(body, f, post);
        }
        StmtKind::Try {
            block,
            handler,
            finalizer,
        } => {
            body_walk(block, f, post);
            if let Some(h) = handler {
                body_walk(&mut h.body, f, post);
            }
            if let Some(fin) = finalizer {
                body_walk(fin, f, post);
            }
        }
        StmtKind::Switch {
            discriminant,
            cases,
        } => {
            expr_walk(discriminant, f, post);
            for c in cases {
                if let Some(t) = &mut c.test {
                    expr_walk(t, f, post);
                }
                body_walk(&mut c.body, f, post);
            }
        }
        StmtKind::Labeled { body, .. } => stmt_walk(body, f, post),
        _ => {}
    }
}

pub fn expr_mut(e: &mut Expr, f: &mut dyn FnMut(&mut Expr)) {
    expr_walk(e, f, false);
}

fn expr_walk(e: &mut Expr, f: &mut dyn FnMut(&mut Expr), post: bool) {
    if !post {
        f(e);
    }
    match &mut e.kind {
        ExprKind::Array(items) => {
            for i in items.iter_mut().flatten() {
                expr_walk(i, f, post);
            }
        }
        ExprKind::Object(props) => {
            for p in props {
                expr_walk(&mut p.value, f, post);
            }
        }
        ExprKind::Function(func) => body_walk(&mut func.body, f, post),
        ExprKind::Member { object, property } => {
            expr_walk(object, f, post);
            if let MemberProp::Bracket(p) = property {
                expr_walk(p, f, post);
            }
        }
        ExprKind::Call { callee, args } | ExprKind::New { callee, args } => {
            expr_walk(callee, f, post);
            for a in args {
                expr_walk(a, f, post);
            }
        }
        ExprKind::Assign { target, value, .. } => {
            expr_walk(target, f, post);
            expr_walk(value, f, post);
        }
        ExprKind::Binary { left, right, .. } => {
            expr_walk(left, f, post);
            expr_walk(right, f, post);
        }
        ExprKind::Unary { arg, .. } | ExprKind::Update { arg, .. } => expr_walk(arg, f, post),
        ExprKind::Conditional {
            test,
            consequent,
            alternate,
        } => {
            expr_walk(test, f, post);
            expr_walk(consequent, f, post);
            expr_walk(alternate, f, post);
        }
        ExprKind::Sequence(items) => {
            for i in items {
                expr_walk(i, f, post);
            }
        }
        _ => {}
    }
    if post {
        f(e);
    }
}

/// Every identifier name that occurs anywhere in the program, as a binding
/// or a reference.
pub fn all_names(p: &Program) -> HashSet<String> {
    struct N(HashSet<String>);
    impl<'a> Visitor<'a> for N {
        fn expr(&mut self, e: &'a Expr, _: Role, _: &Ancestors<'a>, _: &Ctx<'a>) {
            if let ExprKind::Ident(n) = &e.kind {
                self.0.insert(n.clone());
            }
        }
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
        fn function(&mut self, f: &'a Function, _: &Ctx<'a>) {
            if let Some(n) = &f.name {
                self.0.insert(n.clone());
            }
            self.0.extend(f.params.iter().cloned());
        }
    }
    let mut n = N(HashSet::new());
    walk_program(p, &mut n);
    n.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_str;

    struct Free(Vec<String>);
    impl<'a> Visitor<'a> for Free {
        fn expr(&mut self, e: &'a Expr, _: Role, _: &Ancestors<'a>, cx: &Ctx<'a>) {
            if let ExprKind::Ident(n) = &e.kind {
                if cx.is_free(n) {
                    self.0.push(n.clone());
                }
            }
        }
    }

    #[test]
    fn free_identifiers_respect_hoisting() {
        let p = parse_str(
            "function f(a){ g(a, b); if (x) { var b; } try {} catch (e) { e; } }\nfunction g(){}\nh;",
        )
        .unwrap();
        let mut v = Free(vec![]);
        walk_program(&p, &mut v);
        assert_eq!(v.0, vec!["x", "h"]);
    }
}
