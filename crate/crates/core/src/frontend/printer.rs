use super::ast::*;
use super::PrintError;

const INDENT: &str = "  ";

// Expression precedence levels used to decide parenthesization.
const SEQ: u8 = 0;
const ASSIGN: u8 = 1;
const COND: u8 = 2;
const UNARY: u8 = 13;
const POSTFIX: u8 = 14;
const LHS: u8 = 15;
const PRIMARY: u8 = 16;

pub fn print_program(p: &Program) -> Result<String, PrintError> {
    let mut pr = Printer {
        out: String::new(),
        indent: 0,
    };
    pr.directives(&p.directives);
    pr.stmts(&p.body)?;
    Ok(pr.out)
}

pub fn print_expression(e: &Expr) -> Result<String, PrintError> {
    Printer {
        out: String::new(),
        indent: 0,
    }
    .expr(e, ASSIGN)
}

fn missing(what: &str, reason: &str) -> PrintError {
    PrintError {
        what: what.to_string(),
        reason: reason.to_string(),
    }
}

pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            '\u{b}' => out.push_str("\\v"),
            '\u{2028}' => out.push_str("\\u2028"),
            '\u{2029}' => out.push_str("\\u2029"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => {
                out.push_str(&format!("\\x{:02x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn check_binding(name: &str, what: &str) -> Result<(), PrintError> {
    if is_identifier_name(name) && !is_reserved_word(name) {
        Ok(())
    } else {
        Err(missing(
            what,
            &format!("`{name}` is not a valid identifier"),
        ))
    }
}

fn expr_prec(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Sequence(_) => SEQ,
        ExprKind::Assign { .. } => ASSIGN,
        ExprKind::Conditional { .. } => COND,
        ExprKind::Binary { op, .. } => op.precedence(),
        ExprKind::Unary { .. } => UNARY,
        ExprKind::Update { prefix: true, .. } => UNARY,
        ExprKind::Update { prefix: false, .. } => POSTFIX,
        ExprKind::Member { .. } | ExprKind::Call { .. } | ExprKind::New { .. } => LHS,
        _ => PRIMARY,
    }
}

fn contains_call(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Call { .. } => true,
        ExprKind::Member { object, .. } => contains_call(object),
        _ => false,
    }
}

/// Whether an `in` operator occurs outside of any parentheses the printer
/// would emit anyway. Conservative: any `in` not inside a function body.
fn contains_in(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Binary { op, left, right } => {
            *op == BinaryOp::In || contains_in(left) || contains_in(right)
        }
        ExprKind::Assign { target, value, .. } => contains_in(target) || contains_in(value),
        ExprKind::Conditional {
            test,
            consequent,
            alternate,
        } => contains_in(test) || contains_in(consequent) || contains_in(alternate),
        ExprKind::Sequence(items) => items.iter().any(contains_in),
        ExprKind::Unary { arg, .. } | ExprKind::Update { arg, .. } => contains_in(arg),
        ExprKind::Member { object, property } => {
            contains_in(object) || matches!(property, MemberProp::Bracket(b) if contains_in(b))
        }
        ExprKind::Call { callee, args } | ExprKind::New { callee, args } => {
            contains_in(callee) || args.iter().any(contains_in)
        }
        ExprKind::Array(items) => items.iter().flatten().any(contains_in),
        ExprKind::Object(props) => props.iter().any(|p| contains_in(&p.value)),
        _ => false,
    }
}

struct Printer {
    out: String,
    indent: usize,
}

impl Printer {
    fn pad(&self) -> String {
        INDENT.repeat(self.indent)
    }

    fn line(&mut self, text: &str) {
        self.out.push_str(&self.pad());
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn directives(&mut self, ds: &[String]) {
        for d in ds {
            let q = quote(d);
            self.line(&format!("{q};"));
        }
    }

    fn stmts(&mut self, body: &[Stmt]) -> Result<(), PrintError> {
        for s in body {
            let text = self.stmt(s)?;
            self.line(&text);
        }
        Ok(())
    }

    /// Statement text starting at the current indentation (first line not
    /// padded), without trailing newline.
    fn stmt(&mut self, s: &Stmt) -> Result<String, PrintError> {
        Ok(match &s.kind {
            StmtKind::Var(decls) => format!("var {};", self.declarators(decls, false)?),
            StmtKind::Function(f) => self.function(f, true)?,
            StmtKind::Expr(e) => {
                let text = self.expr(e, SEQ)?;
                let ambiguous = text.starts_with('{')
                    || text.starts_with("function")
                    || text.starts_with('/')
                    || matches!(e.kind, ExprKind::Str(_));
                if ambiguous {
                    format!("({text});")
                } else {
                    format!("{text};")
                }
            }
            StmtKind::Return(None) => "return;".to_string(),
            StmtKind::Return(Some(e)) => format!("return {};", self.expr(e, SEQ)?),
            StmtKind::Throw(e) => format!("throw {};", self.expr(e, SEQ)?),
            StmtKind::Break(None) => "break;".to_string(),
            StmtKind::Break(Some(l)) => format!("break {l};"),
            StmtKind::Continue(None) => "continue;".to_string(),
            StmtKind::Continue(Some(l)) => format!("continue {l};"),
            StmtKind::Empty => ";".to_string(),
            StmtKind::Debugger => "debugger;".to_string(),
            StmtKind::Block(body) => self.block(body)?,
            StmtKind::If {
                test,
                consequent,
                alternate,
            } => {
                let mut text = format!("if ({}) {}", self.expr(test, SEQ)?, self.sub(consequent)?);
                if let Some(alt) = alternate {
                    if matches!(consequent.kind, StmtKind::Block(_)) {
                        text.push_str(" else ");
                    } else {
                        text.push('\n');
                        text.push_str(&self.pad());
                        text.push_str("else ");
                    }
                    text.push_str(&self.sub(alt)?);
                }
                text
            }
            StmtKind::For {
                init,
                test,
                update,
                body,
            } => {
                let init = match init {
                    None => String::new(),
                    Some(ForInit::Var(d)) => format!("var {}", self.declarators(d, true)?),
                    Some(ForInit::Expr(e)) => {
                        let t = self.expr(e, SEQ)?;
                        if contains_in(e) {
                            format!("({t})")
                        } else {
                            t
                        }
                    }
                };
                let test = match test {
                    Some(t) => format!(" {}", self.expr(t, SEQ)?),
                    None => String::new(),
                };
                let update = match update {
                    Some(u) => format!(" {}", self.expr(u, SEQ)?),
                    None => String::new(),
                };
                format!("for ({init};{test};{update}) {}", self.sub(body)?)
            }
            StmtKind::ForIn { left, right, body } => {
                let left = match left {
                    ForInLeft::Var(d) => {
                        if d.init.is_some() {
                            return Err(missing("for-in declaration", "initializer not allowed"));
                        }
                        check_binding(&d.name, "for-in declaration")?;
                        format!("var {}", d.name)
                    }
                    ForInLeft::Expr(e) => self.expr(e, LHS)?,
                };
                format!(
                    "for ({left} in {}) {}",
                    self.expr(right, SEQ)?,
                    self.sub(body)?
                )
            }
            StmtKind::While { test, body } => {
                format!("while ({}) {}", self.expr(test, SEQ)?, self.sub(body)?)
            }
            StmtKind::DoWhile { body, test } => {
                let b = self.sub(body)?;
                let sep = if matches!(body.kind, StmtKind::Block(_)) {
                    " ".to_string()
                } else {
                    format!("\n{}", self.pad())
                };
                format!("do {b}{sep}while ({});", self.expr(test, SEQ)?)
            }
            StmtKind::Try {
                block,
                handler,
                finalizer,
            } => {
                if handler.is_none() && finalizer.is_none() {
                    return Err(missing("try statement", "needs a catch or finally clause"));
                }
                let mut text = format!("try {}", self.block(block)?);
                if let Some(h) = handler {
                    check_binding(&h.param, "catch clause")?;
                    text.push_str(&format!(" catch ({}) {}", h.param, self.block(&h.body)?));
                }
                if let Some(f) = finalizer {
                    text.push_str(&format!(" finally {}", self.block(f)?));
                }
                text
            }
            StmtKind::Switch {
                discriminant,
                cases,
            } => {
                let mut text = format!("switch ({}) {{\n", self.expr(discriminant, SEQ)?);
                self.indent += 1;
                for c in cases {
                    let head = match &c.test {
                        Some(t) => format!("case {}:", self.expr(t, SEQ)?),
                        None => "default:".to_string(),
                    };
                    text.push_str(&format!("{}{head}\n", self.pad()));
                    self.indent += 1;
                    for s in &c.body {
                        let st = self.stmt(s)?;
                        text.push_str(&format!("{}{st}\n", self.pad()));
                    }
                    self.indent -= 1;
                }
                self.indent -= 1;
                text.push_str(&self.pad());
                text.push('}');
                text
            }
            StmtKind::Labeled { label, body } => {
                check_binding(label, "label")?;
                format!("{label}: {}", self.sub(body)?)
            }
            StmtKind::ImportNamed { specifiers, source } => {
                let specs: Vec<String> = specifiers
                    .iter()
                    .map(|s| {
                        check_binding(&s.local, "import specifier")?;
                        Ok(if s.imported == s.local {
                            s.local.clone()
                        } else {
                            format!("{} as {}", s.imported, s.local)
                        })
                    })
                    .collect::<Result<_, PrintError>>()?;
                format!("import {{{}}} from {};", specs.join(", "), quote(source))
            }
            StmtKind::ImportDefault { local, source } => {
                check_binding(local, "default import")?;
                format!("import {local} from {};", quote(source))
            }
            StmtKind::ImportBare { source } => format!("import {};", quote(source)),
            StmtKind::ExportNamed(specs) => {
                let specs: Vec<String> = specs
                    .iter()
                    .map(|s| {
                        check_binding(&s.local, "export specifier")?;
                        Ok(if s.exported == s.local {
                            s.local.clone()
                        } else {
                            format!("{} as {}", s.local, s.exported)
                        })
                    })
                    .collect::<Result<_, PrintError>>()?;
                format!("export {{{}}};", specs.join(", "))
            }
        })
    }

    /// A nested statement (if/loop body). Blocks stay on the same line.
    fn sub(&mut self, s: &Stmt) -> Result<String, PrintError> {
        self.stmt(s)
    }

    fn block(&mut self, body: &[Stmt]) -> Result<String, PrintError> {
        if body.is_empty() {
            return Ok("{}".to_string());
        }
        let mut text = "{\n".to_string();
        self.indent += 1;
        for s in body {
            let st = self.stmt(s)?;
            text.push_str(&format!("{}{st}\n", self.pad()));
        }
        self.indent -= 1;
        text.push_str(&self.pad());
        text.push('}');
        Ok(text)
    }

    fn declarators(&mut self, decls: &[VarDeclarator], no_in: bool) -> Result<String, PrintError> {
        if decls.is_empty() {
            return Err(missing("var declaration", "no declarators"));
        }
        let mut parts = Vec::new();
        for d in decls {
            check_binding(&d.name, "var declaration")?;
            match &d.init {
                None => parts.push(d.name.clone()),
                Some(e) => {
                    let t = self.expr(e, ASSIGN)?;
                    if no_in && contains_in(e) {
                        parts.push(format!("{} = ({t})", d.name));
                    } else {
                        parts.push(format!("{} = {t}", d.name));
                    }
                }
            }
        }
        Ok(parts.join(", "))
    }

    fn function(&mut self, f: &Function, declaration: bool) -> Result<String, PrintError> {
        let name = match &f.name {
            Some(n) => {
                check_binding(n, "function")?;
                format!(" {n}")
            }
            None if declaration => return Err(missing("function declaration", "missing name")),
            None => String::new(),
        };
        for p in &f.params {
            check_binding(p, "function parameter")?;
        }
        let head = if declaration || f.name.is_some() {
            format!("function{name}({})", f.params.join(", "))
        } else {
            format!("function ({})", f.params.join(", "))
        };
        if f.body.is_empty() && f.directives.is_empty() {
            return Ok(format!("{head} {{}}"));
        }
        let mut text = format!("{head} {{\n");
        self.indent += 1;
        for d in &f.directives {
            text.push_str(&format!("{}{};\n", self.pad(), quote(d)));
        }
        for s in &f.body {
            let st = self.stmt(s)?;
            text.push_str(&format!("{}{st}\n", self.pad()));
        }
        self.indent -= 1;
        text.push_str(&self.pad());
        text.push('}');
        Ok(text)
    }

    fn expr(&mut self, e: &Expr, min: u8) -> Result<String, PrintError> {
        let text = self.expr_inner(e)?;
        if expr_prec(e) < min {
            Ok(format!("({text})"))
        } else {
            Ok(text)
        }
    }

    fn expr_inner(&mut self, e: &Expr) -> Result<String, PrintError> {
        Ok(match &e.kind {
            ExprKind::Ident(n) => {
                check_binding(n, "identifier")?;
                n.clone()
            }
            ExprKind::Number(raw) => {
                if raw.is_empty() {
                    return Err(missing("number literal", "empty text"));
                }
                raw.clone()
            }
            ExprKind::Str(s) => quote(s),
            ExprKind::Bool(b) => b.to_string(),
            ExprKind::Null => "null".to_string(),
            ExprKind::Regex(r) => r.clone(),
            ExprKind::This => "this".to_string(),
            ExprKind::Array(items) => {
                let mut parts = Vec::new();
                for item in items {
                    parts.push(match item {
                        Some(e) => self.expr(e, ASSIGN)?,
                        None => String::new(),
                    });
                }
                let mut text = parts.join(", ");
                if matches!(items.last(), Some(None)) {
                    text.push(',');
                }
                format!("[{text}]")
            }
            ExprKind::Object(props) => {
                let mut parts = Vec::new();
                for p in props {
                    let key = match &p.key {
                        PropKey::Ident(k) => {
                            if !is_identifier_name(k) {
                                return Err(missing("property key", "not an identifier name"));
                            }
                            k.clone()
                        }
                        PropKey::Str(k) => quote(k),
                        PropKey::Num(k) => k.clone(),
                    };
                    parts.push(format!("{key}: {}", self.expr(&p.value, ASSIGN)?));
                }
                format!("{{{}}}", parts.join(", "))
            }
            ExprKind::Function(f) => self.function(f, false)?,
            ExprKind::Member { object, property } => {
                let obj = if matches!(object.kind, ExprKind::Number(_)) {
                    format!("({})", self.expr_inner(object)?)
                } else {
                    self.expr(object, LHS)?
                };
                match property {
                    MemberProp::Dot(name) => {
                        if !is_identifier_name(name) {
                            return Err(missing(
                                "member access",
                                "property is not an identifier name",
                            ));
                        }
                        format!("{obj}.{name}")
                    }
                    MemberProp::Bracket(p) => format!("{obj}[{}]", self.expr(p, SEQ)?),
                }
            }
            ExprKind::Call { callee, args } => {
                format!("{}({})", self.expr(callee, LHS)?, self.args(args)?)
            }
            ExprKind::New { callee, args } => {
                let c = self.expr(callee, LHS)?;
                let c = if contains_call(callee) {
                    format!("({c})")
                } else {
                    c
                };
                format!("new {c}({})", self.args(args)?)
            }
            ExprKind::Assign { op, target, value } => {
                if !matches!(target.kind, ExprKind::Ident(_) | ExprKind::Member { .. }) {
                    return Err(missing("assignment", "invalid target"));
                }
                format!(
                    "{} {} {}",
                    self.expr(target, LHS)?,
                    op.as_str(),
                    self.expr(value, ASSIGN)?
                )
            }
            ExprKind::Binary { op, left, right } => {
                let p = op.precedence();
                format!(
                    "{} {} {}",
                    self.expr(left, p)?,
                    op.as_str(),
                    self.expr(right, p + 1)?
                )
            }
            ExprKind::Unary { op, arg } => {
                let a = self.expr(arg, UNARY)?;
                match op {
                    UnaryOp::TypeOf | UnaryOp::Void | UnaryOp::Delete => {
                        format!("{} {a}", op.as_str())
                    }
                    UnaryOp::Neg | UnaryOp::Plus => {
                        let sym = op.as_str();
                        if a.starts_with(sym) {
                            format!("{sym} {a}")
                        } else {
                            format!("{sym}{a}")
                        }
                    }
                    _ => format!("{}{a}", op.as_str()),
                }
            }
            ExprKind::Update { op, prefix, arg } => {
                let a = self.expr(arg, LHS)?;
                if *prefix {
                    format!("{}{a}", op.as_str())
                } else {
                    format!("{a}{}", op.as_str())
                }
            }
            ExprKind::Conditional {
                test,
                consequent,
                alternate,
            } => format!(
                "{} ? {} : {}",
                self.expr(test, COND + 1)?,
                self.expr(consequent, ASSIGN)?,
                self.expr(alternate, ASSIGN)?
            ),
            ExprKind::Sequence(items) => {
                if items.len() < 2 {
                    return Err(missing("sequence expression", "needs at least two items"));
                }
                let mut parts = Vec::new();
                for i in items {
                    parts.push(self.expr(i, ASSIGN)?);
                }
                parts.join(", ")
            }
        })
    }

    fn args(&mut self, args: &[Expr]) -> Result<String, PrintError> {
        let mut parts = Vec::new();
        for a in args {
            parts.push(self.expr(a, ASSIGN)?);
        }
        Ok(parts.join(", "))
    }
}
