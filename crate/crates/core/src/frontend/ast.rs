//! Syntax tree for the supported ES5 subset plus the ES6 import/export forms
//! the transform emits.
//!
//! Every node carries an optional [`Span`]. Nodes produced by the parser have
//! `Some(span)`; nodes fabricated by the refactoring carry `None`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Byte range `[start, end)` into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: u32,
    pub end: u32,
}

impl Span {
    pub fn new(start: u32, end: u32) -> Self {
        Span { start, end }
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub directives: Vec<String>,
    pub body: Vec<Stmt>,
}

impl Program {
    pub fn new(body: Vec<Stmt>) -> Self {
        Program {
            directives: Vec::new(),
            body,
        }
    }

    pub fn strict_mode(&self) -> bool {
        self.directives.iter().any(|d| d == "use strict")
    }

    /// Structural equality: same tree shape and content, spans ignored.
    pub fn structurally_eq(&self, other: &Program) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.clear_spans();
        b.clear_spans();
        a == b
    }

    pub fn clear_spans(&mut self) {
        for s in &mut self.body {
            s.clear_spans();
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Option<Span>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Var(Vec<VarDeclarator>),
    Function(Function),
    Expr(Expr),
    Return(Option<Expr>),
    If {
        test: Expr,
        consequent: Box<Stmt>,
        alternate: Option<Box<Stmt>>,
    },
    Block(Vec<Stmt>),
    For {
        init: Option<ForInit>,
        test: Option<Expr>,
        update: Option<Expr>,
        body: Box<Stmt>,
    },
    ForIn {
        left: ForInLeft,
        right: Expr,
        body: Box<Stmt>,
    },
    While {
        test: Expr,
        body: Box<Stmt>,
    },
    DoWhile {
        body: Box<Stmt>,
        test: Expr,
    },
    Break(Option<String>),
    Continue(Option<String>),
    Throw(Expr),
    Try {
        block: Vec<Stmt>,
        handler: Option<CatchClause>,
        finalizer: Option<Vec<Stmt>>,
    },
    Switch {
        discriminant: Expr,
        cases: Vec<SwitchCase>,
    },
    Labeled {
        label: String,
        body: Box<Stmt>,
    },
    Empty,
    Debugger,
    /// `import {a as b} from "m";`
    ImportNamed {
        specifiers: Vec<ImportSpecifier>,
        source: String,
    },
    /// `import d from "m";`
    ImportDefault {
        local: String,
        source: String,
    },
    /// `import "m";`
    ImportBare {
        source: String,
    },
    /// `export {a, b as c};`
    ExportNamed(Vec<ExportSpecifier>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarDeclarator {
    pub name: String,
    pub init: Option<Expr>,
    pub span: Option<Span>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ForInit {
    Var(Vec<VarDeclarator>),
    Expr(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ForInLeft {
    Var(VarDeclarator),
    Expr(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatchClause {
    pub param: String,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwitchCase {
    /// `None` for `default:`.
    pub test: Option<Expr>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImportSpecifier {
    pub imported: String,
    pub local: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportSpecifier {
    pub local: String,
    pub exported: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Function {
    pub name: Option<String>,
    pub params: Vec<String>,
    pub directives: Vec<String>,
    pub body: Vec<Stmt>,
    pub span: Option<Span>,
}

impl Function {
    pub fn is_strict(&self) -> bool {
        self.directives.iter().any(|d| d == "use strict")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Option<Span>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Ident(String),
    /// Numeric literal, kept as its source text.
    Number(String),
    /// String literal, stored decoded.
    Str(String),
    Bool(bool),
    Null,
    /// Regular-expression literal, carried as opaque source text.
    Regex(String),
    This,
    Array(Vec<Option<Expr>>),
    Object(Vec<Property>),
    Function(Box<Function>),
    Member {
        object: Box<Expr>,
        property: MemberProp,
    },
    Call {
        callee: Box<Expr>,
        args: Vec<Expr>,
    },
    New {
        callee: Box<Expr>,
        args: Vec<Expr>,
    },
    Assign {
        op: AssignOp,
        target: Box<Expr>,
        value: Box<Expr>,
    },
    Binary {
        op: BinaryOp,
        left: Box<Expr>,
        right: Box<Expr>,
    },
    Unary {
        op: UnaryOp,
        arg: Box<Expr>,
    },
    Update {
        op: UpdateOp,
        prefix: bool,
        arg: Box<Expr>,
    },
    Conditional {
        test: Box<Expr>,
        consequent: Box<Expr>,
        alternate: Box<Expr>,
    },
    Sequence(Vec<Expr>),
}

/// Member access notation is kept losslessly: `a.b` vs `a[expr]`.
#[derive(Debug, Clone, PartialEq)]
pub enum MemberProp {
    Dot(String),
    Bracket(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Property {
    pub key: PropKey,
    pub value: Expr,
    pub span: Option<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropKey {
    Ident(String),
    Str(String),
    Num(String),
}

impl PropKey {
    /// The property name as a string, regardless of how it was written.
    pub fn name(&self) -> &str {
        match self {
            PropKey::Ident(s) | PropKey::Str(s) | PropKey::Num(s) => s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssignOp {
    Assign,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Shl,
    Shr,
    UShr,
    BitAnd,
    BitOr,
    BitXor,
}

impl AssignOp {
    pub fn as_str(self) -> &'static str {
        match self {
            AssignOp::Assign => "=",
            AssignOp::Add => "+=",
            AssignOp::Sub => "-=",
            AssignOp::Mul => "*=",
            AssignOp::Div => "/=",
            AssignOp::Mod => "%=",
            AssignOp::Shl => "<<=",
            AssignOp::Shr => ">>=",
            AssignOp::UShr => ">>>=",
            AssignOp::BitAnd => "&=",
            AssignOp::BitOr => "|=",
            AssignOp::BitXor => "^=",
        }
    }

    /// The binary operator a compound assignment applies.
    pub fn binary(self) -> Option<BinaryOp> {
        Some(match self {
            AssignOp::Assign => return None,
            AssignOp::Add => BinaryOp::Add,
            AssignOp::Sub => BinaryOp::Sub,
            AssignOp::Mul => BinaryOp::Mul,
            AssignOp::Div => BinaryOp::Div,
            AssignOp::Mod => BinaryOp::Mod,
            AssignOp::Shl => BinaryOp::Shl,
            AssignOp::Shr => BinaryOp::Shr,
            AssignOp::UShr => BinaryOp::UShr,
            AssignOp::BitAnd => BinaryOp::BitAnd,
            AssignOp::BitOr => BinaryOp::BitOr,
            AssignOp::BitXor => BinaryOp::BitXor,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Or,
    And,
    BitOr,
    BitXor,
    BitAnd,
    Eq,
    NotEq,
    StrictEq,
    StrictNotEq,
    Lt,
    Gt,
    LtEq,
    GtEq,
    In,
    InstanceOf,
    Shl,
    Shr,
    UShr,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
}

impl BinaryOp {
    pub fn as_str(self) -> &'static str {
        match self {
            BinaryOp::Or => "||",
            BinaryOp::And => "&&",
            BinaryOp::BitOr => "|",
            BinaryOp::BitXor => "^",
            BinaryOp::BitAnd => "&",
            BinaryOp::Eq => "==",
            BinaryOp::NotEq => "!=",
            BinaryOp::StrictEq => "===",
            BinaryOp::StrictNotEq => "!==",
            BinaryOp::Lt => "<",
            BinaryOp::Gt => ">",
            BinaryOp::LtEq => "<=",
            BinaryOp::GtEq => ">=",
            BinaryOp::In => "in",
            BinaryOp::InstanceOf => "instanceof",
            BinaryOp::Shl => "<<",
            BinaryOp::Shr => ">>",
            BinaryOp::UShr => ">>>",
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Mod => "%",
        }
    }

    pub fn precedence(self) -> u8 {
        match self {
            BinaryOp::Or => 3,
            BinaryOp::And => 4,
            BinaryOp::BitOr => 5,
            BinaryOp::BitXor => 6,
            BinaryOp::BitAnd => 7,
            BinaryOp::Eq | BinaryOp::NotEq | BinaryOp::StrictEq | BinaryOp::StrictNotEq => 8,
            BinaryOp::Lt
            | BinaryOp::Gt
            | BinaryOp::LtEq
            | BinaryOp::GtEq
            | BinaryOp::In
            | BinaryOp::InstanceOf => 9,
            BinaryOp::Shl | BinaryOp::Shr | BinaryOp::UShr => 10,
            BinaryOp::Add | BinaryOp::Sub => 11,
            BinaryOp::Mul | BinaryOp::Div | BinaryOp::Mod => 12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Plus,
    Not,
    BitNot,
    TypeOf,
    Void,
    Delete,
}

impl UnaryOp {
    pub fn as_str(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Plus => "+",
            UnaryOp::Not => "!",
            UnaryOp::BitNot => "~",
            UnaryOp::TypeOf => "typeof",
            UnaryOp::Void => "void",
            UnaryOp::Delete => "delete",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateOp {
    Incr,
    Decr,
}

impl UpdateOp {
    pub fn as_str(self) -> &'static str {
        match self {
            UpdateOp::Incr => "++",
            UpdateOp::Decr => "--",
        }
    }
}

// ---- constructors for synthesized nodes ----

impl Expr {
    pub fn synth(kind: ExprKind) -> Self {
        Expr { kind, span: None }
    }

    pub fn ident(name: impl Into<String>) -> Self {
        Expr::synth(ExprKind::Ident(name.into()))
    }

    pub fn str_lit(value: impl Into<String>) -> Self {
        Expr::synth(ExprKind::Str(value.into()))
    }

    pub fn null() -> Self {
        Expr::synth(ExprKind::Null)
    }

    pub fn call(callee: Expr, args: Vec<Expr>) -> Self {
        Expr::synth(ExprKind::Call {
            callee: Box::new(callee),
            args,
        })
    }

    pub fn dot(object: Expr, prop: impl Into<String>) -> Self {
        Expr::synth(ExprKind::Member {
            object: Box::new(object),
            property: MemberProp::Dot(prop.into()),
        })
    }

    pub fn assign(target: Expr, value: Expr) -> Self {
        Expr::synth(ExprKind::Assign {
            op: AssignOp::Assign,
            target: Box::new(target),
            value: Box::new(value),
        })
    }

    pub fn binary(op: BinaryOp, left: Expr, right: Expr) -> Self {
        Expr::synth(ExprKind::Binary {
            op,
            left: Box::new(left),
            right: Box::new(right),
        })
    }

    pub fn as_ident(&self) -> Option<&str> {
        match &self.kind {
            ExprKind::Ident(n) => Some(n),
            _ => None,
        }
    }

    /// `object.prop` with dot notation.
    pub fn as_dot_member(&self) -> Option<(&Expr, &str)> {
        match &self.kind {
            ExprKind::Member {
                object,
                property: MemberProp::Dot(p),
            } => Some((object, p)),
            _ => None,
        }
    }

    /// `require("literal")`, returning the specifier.
    pub fn as_require_call(&self) -> Option<&str> {
        match &self.kind {
            ExprKind::Call { callee, args } if callee.as_ident() == Some("require") => {
                match args.as_slice() {
                    [Expr {
                        kind: ExprKind::Str(s),
                        ..
                    }] => Some(s),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    /// `require(...)` with any arguments.
    pub fn is_require_call(&self) -> bool {
        matches!(&self.kind, ExprKind::Call { callee, .. } if callee.as_ident() == Some("require"))
    }

    /// `module.exports`
    pub fn is_module_exports(&self) -> bool {
        matches!(self.as_dot_member(), Some((obj, "exports")) if obj.as_ident() == Some("module"))
    }

    pub fn clear_spans(&mut self) {
        self.span = None;
        match &mut self.kind {
            ExprKind::Ident(_)
            | ExprKind::Number(_)
            | ExprKind::Str(_)
            | ExprKind::Bool(_)
            | ExprKind::Null
            | ExprKind::Regex(_)
            | ExprKind::This => {}
            ExprKind::Array(items) => {
                for e in items.iter_mut().flatten() {
                    e.clear_spans();
                }
            }
            ExprKind::Object(props) => {
                for p in props {
                    p.span = None;
                    p.value.clear_spans();
                }
            }
            ExprKind::Function(f) => f.clear_spans(),
            ExprKind::Member { object, property } => {
                object.clear_spans();
                if let MemberProp::Bracket(e) = property {
                    e.clear_spans();
                }
            }
            ExprKind::Call { callee, args } | ExprKind::New { callee, args } => {
                callee.clear_spans();
                for a in args {
                    a.clear_spans();
                }
            }
            ExprKind::Assign { target, value, .. } => {
                target.clear_spans();
                value.clear_spans();
            }
            ExprKind::Binary { left, right, .. } => {
                left.clear_spans();
                right.clear_spans();
            }
            ExprKind::Unary { arg, .. } | ExprKind::Update { arg, .. } => arg.clear_spans(),
            ExprKind::Conditional {
                test,
                consequent,
                alternate,
            } => {
                test.clear_spans();
                consequent.clear_spans();
                alternate.clear_spans();
            }
            ExprKind::Sequence(items) => {
                for e in items {
                    e.clear_spans();
                }
            }
        }
    }
}

impl Function {
    pub fn clear_spans(&mut self) {
        self.span = None;
        for s in &mut self.body {
            s.clear_spans();
        }
    }
}

fn clear_decls(decls: &mut [VarDeclarator]) {
    for d in decls {
        d.span = None;
        if let Some(e) = &mut d.init {
            e.clear_spans();
        }
    }
}

impl Stmt {
    pub fn synth(kind: StmtKind) -> Self {
        Stmt { kind, span: None }
    }

    pub fn expr(e: Expr) -> Self {
        Stmt::synth(StmtKind::Expr(e))
    }

    pub fn var(name: impl Into<String>, init: Option<Expr>) -> Self {
        Stmt::synth(StmtKind::Var(vec![VarDeclarator {
            name: name.into(),
            init,
            span: None,
        }]))
    }

    pub fn clear_spans(&mut self) {
        self.span = None;
        match &mut self.kind {
            StmtKind::Var(decls) => clear_decls(decls),
            StmtKind::Function(f) => f.clear_spans(),
            StmtKind::Expr(e) | StmtKind::Throw(e) => e.clear_spans(),
            StmtKind::Return(e) => {
                if let Some(e) = e {
                    e.clear_spans();
                }
            }
            StmtKind::If {
                test,
                consequent,
                alternate,
            } => {
                test.clear_spans();
                consequent.clear_spans();
                if let Some(a) = alternate {
                    a.clear_spans();
                }
            }
            StmtKind::Block(body) => {
                for s in body {
                    s.clear_spans();
                }
            }
            StmtKind::For {
                init,
                test,
                update,
                body,
            } => {
                match init {
                    Some(ForInit::Var(d)) => clear_decls(d),
                    Some(ForInit::Expr(e)) => e.clear_spans(),
                    None => {}
                }
                for e in [test, update].into_iter().flatten() {
                    e.clear_spans();
                }
                body.clear_spans();
            }
            StmtKind::ForIn { left, right, body } => {
                match left {
                    ForInLeft::Var(d) => clear_decls(std::slice::from_mut(d)),
                    ForInLeft::Expr(e) => e.clear_spans(),
                }
                right.clear_spans();
                body.clear_spans();
            }
            StmtKind::While { test, body } | StmtKind::DoWhile { body, test } => {
                test.clear_spans();
                body.clear_spans();
            }
            StmtKind::Try {
                block,
                handler,
                finalizer,
            } => {
                for s in block {
                    s.clear_spans();
                }
                if let Some(h) = handler {
                    for s in &mut h.body {
                        s.clear_spans();
                    }
                }
                if let Some(f) = finalizer {
                    for s in f {
                        s.clear_spans();
                    }
                }
            }
            StmtKind::Switch {
                discriminant,
                cases,
            } => {
                discriminant.clear_spans();
                for c in cases {
                    if let Some(t) = &mut c.test {
                        t.clear_spans();
                    }
                    for s in &mut c.body {
                        s.clear_spans();
                    }
                }
            }
            StmtKind::Labeled { body, .. } => body.clear_spans(),
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
}

const RESERVED: &[&str] = &[
    "break",
    "case",
    "catch",
    "class",
    "const",
    "continue",
    "debugger",
    "default",
    "delete",
    "do",
    "else",
    "enum",
    "export",
    "extends",
    "false",
    "finally",
    "for",
    "function",
    "if",
    "import",
    "in",
    "instanceof",
    "new",
    "null",
    "return",
    "super",
    "switch",
    "this",
    "throw",
    "true",
    "try",
    "typeof",
    "var",
    "void",
    "while",
    "with",
];

/// Additional words reserved in strict mode and ES6 module code.
const STRICT_RESERVED: &[&str] = &[
    "implements",
    "interface",
    "let",
    "package",
    "private",
    "protected",
    "public",
    "static",
    "yield",
    "await",
    "eval",
    "arguments",
];

pub fn is_reserved_word(name: &str) -> bool {
    RESERVED.contains(&name)
}

/// True when `name` can be declared as a binding inside an ES6 module.
pub fn is_valid_binding_name(name: &str) -> bool {
    is_identifier_name(name) && !RESERVED.contains(&name) && !STRICT_RESERVED.contains(&name)
}

/// IdentifierName syntax (reserved words allowed).
pub fn is_identifier_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if is_id_start(c) => chars.all(is_id_continue),
        _ => false,
    }
}

pub fn is_id_start(c: char) -> bool {
    c == '$' || c == '_' || c.is_alphabetic()
}

pub fn is_id_continue(c: char) -> bool {
    c == '$' || c == '_' || c.is_alphanumeric() || c == '\u{200c}' || c == '\u{200d}'
}
