use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::SyntaxError;

const MAX_DEPTH: u32 = 96;

/// Parses a complete script (or an ES6 module using only the import/export
/// forms the transform emits).
pub fn parse_program(src: &str) -> Result<Program, SyntaxError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        prev_end: 0,
        depth: 0,
        fn_depth: 0,
        block_depth: 0,
    };
    let (directives, body) = p.body_until_eof()?;
    Ok(Program { directives, body })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    prev_end: u32,
    depth: u32,
    fn_depth: u32,
    block_depth: u32,
}

fn assign_op(p: &str) -> Option<AssignOp> {
    Some(match p {
        "=" => AssignOp::Assign,
        "+=" => AssignOp::Add,
        "-=" => AssignOp::Sub,
        "*=" => AssignOp::Mul,
        "/=" => AssignOp::Div,
        "%=" => AssignOp::Mod,
        "<<=" => AssignOp::Shl,
        ">>=" => AssignOp::Shr,
        ">>>=" => AssignOp::UShr,
        "&=" => AssignOp::BitAnd,
        "|=" => AssignOp::BitOr,
        "^=" => AssignOp::BitXor,
        _ => return None,
    })
}

fn binary_op(tok: &Tok, no_in: bool) -> Option<BinaryOp> {
    Some(match tok {
        Tok::Punct(p) => match *p {
            "||" => BinaryOp::Or,
            "&&" => BinaryOp::And,
            "|" => BinaryOp::BitOr,
            "^" => BinaryOp::BitXor,
            "&" => BinaryOp::BitAnd,
            "==" => BinaryOp::Eq,
            "!=" => BinaryOp::NotEq,
            "===" => BinaryOp::StrictEq,
            "!==" => BinaryOp::StrictNotEq,
            "<" => BinaryOp::Lt,
            ">" => BinaryOp::Gt,
            "<=" => BinaryOp::LtEq,
            ">=" => BinaryOp::GtEq,
            "<<" => BinaryOp::Shl,
            ">>" => BinaryOp::Shr,
            ">>>" => BinaryOp::UShr,
            "+" => BinaryOp::Add,
            "-" => BinaryOp::Sub,
            "*" => BinaryOp::Mul,
            "/" => BinaryOp::Div,
            "%" => BinaryOp::Mod,
            _ => return None,
        },
        Tok::Word(w) if w == "instanceof" => BinaryOp::InstanceOf,
        Tok::Word(w) if w == "in" && !no_in => BinaryOp::In,
        _ => return None,
    })
}

impl Parser {
    fn cur(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn tok(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_tok(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn start(&self) -> u32 {
        self.cur().span.start
    }

    fn span_from(&self, start: u32) -> Option<Span> {
        Some(Span::new(start, self.prev_end.max(start)))
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].clone();
        self.prev_end = t.span.end;
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t.tok
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.tok(), Tok::Punct(q) if *q == p)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.tok(), Tok::Word(x) if x == w)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn err_here(&self, msg: impl Into<String>) -> SyntaxError {
        SyntaxError::new(Some(self.cur().span), msg)
    }

    fn unexpected(&self) -> SyntaxError {
        self.err_here(format!("unexpected {}", self.found()))
    }

    fn found(&self) -> String {
        match self.tok() {
            Tok::Eof => "end of input".to_string(),
            Tok::Word(w) => format!("`{w}`"),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Num(n) => format!("number {n}"),
            Tok::Str(_) => "string literal".to_string(),
            Tok::Regex(_) => "regular expression".to_string(),
        }
    }

    fn expect_punct(&mut self, p: &str) -> Result<(), SyntaxError> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(self.err_here(format!("expected `{p}`, found {}", self.found())))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<(), SyntaxError> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            Err(self.err_here(format!("expected `{w}`")))
        }
    }

    fn binding_ident(&mut self) -> Result<String, SyntaxError> {
        match self.tok() {
            Tok::Word(w) if !is_reserved_word(w) => {
                let w = w.clone();
                self.bump();
                Ok(w)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn consume_semicolon(&mut self) -> Result<(), SyntaxError> {
        if self.eat_punct(";") {
            return Ok(());
        }
        if self.is_punct("}") || matches!(self.tok(), Tok::Eof) || self.cur().newline_before {
            return Ok(());
        }
        Err(self.err_here(format!("expected `;`, found {}", self.found())))
    }

    fn enter(&mut self) -> Result<(), SyntaxError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err_here("nesting too deep"));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    // ---- statements ----

    fn body_until_eof(&mut self) -> Result<(Vec<String>, Vec<Stmt>), SyntaxError> {
        self.body_until(|p| matches!(p.tok(), Tok::Eof))
    }

    fn body_until(
        &mut self,
        done: impl Fn(&Parser) -> bool,
    ) -> Result<(Vec<String>, Vec<Stmt>), SyntaxError> {
        let mut directives = Vec::new();
        let mut body = Vec::new();
        let mut in_prologue = true;
        while !done(self) {
            if matches!(self.tok(), Tok::Eof) {
                return Err(self.unexpected());
            }
            if in_prologue {
                if let Tok::Str(s) = self.tok() {
                    let next = &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)];
                    let ends = matches!(next.tok, Tok::Punct(";") | Tok::Punct("}") | Tok::Eof)
                        || next.newline_before;
                    if ends {
                        directives.push(s.clone());
                        self.bump();
                        self.consume_semicolon()?;
                        continue;
                    }
                }
                in_prologue = false;
            }
            body.push(self.statement()?);
        }
        Ok((directives, body))
    }

    fn statement(&mut self) -> Result<Stmt, SyntaxError> {
        self.enter()?;
        let r = self.statement_inner();
        self.leave();
        r
    }

    fn block_body(&mut self) -> Result<Vec<Stmt>, SyntaxError> {
        self.expect_punct("{")?;
        self.block_depth += 1;
        let mut body = Vec::new();
        while !self.is_punct("}") {
            if matches!(self.tok(), Tok::Eof) {
                return Err(self.unexpected());
            }
            body.push(self.statement()?);
        }
        self.block_depth -= 1;
        self.bump();
        Ok(body)
    }

    fn sub_statement(&mut self) -> Result<Box<Stmt>, SyntaxError> {
        self.block_depth += 1;
        let s = self.statement();
        self.block_depth -= 1;
        Ok(Box::new(s?))
    }

    fn statement_inner(&mut self) -> Result<Stmt, SyntaxError> {
        let start = self.start();
        let kind = match self.tok().clone() {
            Tok::Punct("{") => StmtKind::Block(self.block_body()?),
            Tok::Punct(";") => {
                self.bump();
                StmtKind::Empty
            }
            Tok::Word(w) => match w.as_str() {
                "var" => {
                    self.bump();
                    let decls = self.var_declarators(false)?;
                    self.consume_semicolon()?;
                    StmtKind::Var(decls)
                }
                "function" => StmtKind::Function(self.function(true)?),
                "if" => {
                    self.bump();
                    self.expect_punct("(")?;
                    let test = self.expression(false)?;
                    self.expect_punct(")")?;
                    let consequent = self.sub_statement()?;
                    let alternate = if self.is_word("else") {
                        self.bump();
                        Some(self.sub_statement()?)
                    } else {
                        None
                    };
                    StmtKind::If {
                        test,
                        consequent,
                        alternate,
                    }
                }
                "for" => self.for_statement()?,
                "while" => {
                    self.bump();
                    self.expect_punct("(")?;
                    let test = self.expression(false)?;
                    self.expect_punct(")")?;
                    let body = self.sub_statement()?;
                    StmtKind::While { test, body }
                }
                "do" => {
                    self.bump();
                    let body = self.sub_statement()?;
                    self.expect_word("while")?;
                    self.expect_punct("(")?;
                    let test = self.expression(false)?;
                    self.expect_punct(")")?;
                    self.eat_punct(";");
                    StmtKind::DoWhile { body, test }
                }
                "return" => {
                    if self.fn_depth == 0 {
                        return Err(self.err_here("`return` outside of a function"));
                    }
                    self.bump();
                    let arg = if self.is_punct(";")
                        || self.is_punct("}")
                        || matches!(self.tok(), Tok::Eof)
                        || self.cur().newline_before
                    {
                        None
                    } else {
                        Some(self.expression(false)?)
                    };
                    self.consume_semicolon()?;
                    StmtKind::Return(arg)
                }
                "break" | "continue" => {
                    self.bump();
                    let label = match self.tok() {
                        Tok::Word(l) if !self.cur().newline_before && !is_reserved_word(l) => {
                            let l = l.clone();
                            self.bump();
                            Some(l)
                        }
                        _ => None,
                    };
                    self.consume_semicolon()?;
                    if w == "break" {
                        StmtKind::Break(label)
                    } else {
                        StmtKind::Continue(label)
                    }
                }
                "throw" => {
                    self.bump();
                    if self.cur().newline_before {
                        return Err(self.err_here("line break after `throw`"));
                    }
                    let arg = self.expression(false)?;
                    self.consume_semicolon()?;
                    StmtKind::Throw(arg)
                }
                "try" => self.try_statement()?,
                "switch" => self.switch_statement()?,
                "debugger" => {
                    self.bump();
                    self.consume_semicolon()?;
                    StmtKind::Debugger
                }
                "import" => self.import_statement()?,
                "export" => self.export_statement()?,
                "with" => return Err(self.err_here("`with` statements are not supported")),
                _ if !is_reserved_word(&w) && matches!(self.peek_tok(1), Tok::Punct(":")) => {
                    self.bump();
                    self.bump();
                    let body = self.sub_statement()?;
                    StmtKind::Labeled { label: w, body }
                }
                _ => self.expression_statement()?,
            },
            _ => self.expression_statement()?,
        };
        Ok(Stmt {
            kind,
            span: self.span_from(start),
        })
    }

    fn expression_statement(&mut self) -> Result<StmtKind, SyntaxError> {
        let e = self.expression(false)?;
        self.consume_semicolon()?;
        Ok(StmtKind::Expr(e))
    }

    fn var_declarators(&mut self, no_in: bool) -> Result<Vec<VarDeclarator>, SyntaxError> {
        let mut decls = Vec::new();
        loop {
            let start = self.start();
            let name = self.binding_ident()?;
            let init = if self.eat_punct("=") {
                Some(self.assignment(no_in)?)
            } else {
                None
            };
            decls.push(VarDeclarator {
                name,
                init,
                span: self.span_from(start),
            });
            if !self.eat_punct(",") {
                return Ok(decls);
            }
        }
    }

    fn for_statement(&mut self) -> Result<StmtKind, SyntaxError> {
        self.bump();
        self.expect_punct("(")?;
        let mut init = None;
        if self.is_word("var") {
            self.bump();
            let mut decls = self.var_declarators(true)?;
            if self.is_word("in") && decls.len() == 1 && decls[0].init.is_none() {
                self.bump();
                let right = self.expression(false)?;
                self.expect_punct(")")?;
                let body = self.sub_statement()?;
                return Ok(StmtKind::ForIn {
                    left: ForInLeft::Var(decls.remove(0)),
                    right,
                    body,
                });
            }
            init = Some(ForInit::Var(decls));
        } else if !self.is_punct(";") {
            let e = self.expression(true)?;
            if self.is_word("in") {
                if !is_assignable(&e) {
                    return Err(self.err_here("invalid left-hand side in for-in"));
                }
                self.bump();
                let right = self.expression(false)?;
                self.expect_punct(")")?;
                let body = self.sub_statement()?;
                return Ok(StmtKind::ForIn {
                    left: ForInLeft::Expr(e),
                    right,
                    body,
                });
            }
            init = Some(ForInit::Expr(e));
        }
        self.expect_punct(";")?;
        let test = if self.is_punct(";") {
            None
        } else {
            Some(self.expression(false)?)
        };
        self.expect_punct(";")?;
        let update = if self.is_punct(")") {
            None
        } else {
            Some(self.expression(false)?)
        };
        self.expect_punct(")")?;
        let body = self.sub_statement()?;
        Ok(StmtKind::For {
            init,
            test,
            update,
            body,
        })
    }

    fn try_statement(&mut self) -> Result<StmtKind, SyntaxError> {
        self.bump();
        let block = self.block_body()?;
        let handler = if self.is_word("catch") {
            self.bump();
            self.expect_punct("(")?;
            let param = self.binding_ident()?;
            self.expect_punct(")")?;
            let body = self.block_body()?;
            Some(CatchClause { param, body })
        } else {
            None
        };
        let finalizer = if self.is_word("finally") {
            self.bump();
            Some(self.block_body()?)
        } else {
            None
        };
        if handler.is_none() && finalizer.is_none() {
            return Err(self.err_here("`try` without `catch` or `finally`"));
        }
        Ok(StmtKind::Try {
            block,
            handler,
            finalizer,
        })
    }

    fn switch_statement(&mut self) -> Result<StmtKind, SyntaxError> {
        self.bump();
        self.expect_punct("(")?;
        let discriminant = self.expression(false)?;
        self.expect_punct(")")?;
        self.expect_punct("{")?;
        self.block_depth += 1;
        let mut cases = Vec::new();
        let mut seen_default = false;
        while !self.eat_punct("}") {
            let test = if self.is_word("case") {
                self.bump();
                Some(self.expression(false)?)
            } else if self.is_word("default") {
                if seen_default {
                    return Err(self.err_here("duplicate `default` clause"));
                }
                seen_default = true;
                self.bump();
                None
            } else {
                return Err(self.unexpected());
            };
            self.expect_punct(":")?;
            let mut body = Vec::new();
            while !self.is_word("case") && !self.is_word("default") && !self.is_punct("}") {
                if matches!(self.tok(), Tok::Eof) {
                    return Err(self.unexpected());
                }
                body.push(self.statement()?);
            }
            cases.push(SwitchCase { test, body });
        }
        self.block_depth -= 1;
        Ok(StmtKind::Switch {
            discriminant,
            cases,
        })
    }

    fn module_source(&mut self) -> Result<String, SyntaxError> {
        match self.tok().clone() {
            Tok::Str(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.err_here("expected module specifier string")),
        }
    }

    fn module_item_allowed(&self) -> Result<(), SyntaxError> {
        if self.fn_depth > 0 || self.block_depth > 0 {
            Err(self.err_here("import/export declarations are only allowed at the top level"))
        } else {
            Ok(())
        }
    }

    fn specifier_name(&mut self) -> Result<String, SyntaxError> {
        match self.tok().clone() {
            Tok::Word(w) => {
                self.bump();
                Ok(w)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn import_statement(&mut self) -> Result<StmtKind, SyntaxError> {
        self.module_item_allowed()?;
        self.bump();
        let kind = match self.tok().clone() {
            Tok::Str(_) => StmtKind::ImportBare {
                source: self.module_source()?,
            },
            Tok::Punct("{") => {
                self.bump();
                let mut specifiers = Vec::new();
                while !self.eat_punct("}") {
                    let imported = self.specifier_name()?;
                    let local = if self.is_word("as") {
                        self.bump();
                        self.binding_ident()?
                    } else {
                        if is_reserved_word(&imported) {
                            return Err(self.err_here("reserved word imported without alias"));
                        }
                        imported.clone()
                    };
                    specifiers.push(ImportSpecifier { imported, local });
                    if !self.is_punct("}") {
                        self.expect_punct(",")?;
                    }
                }
                self.expect_word("from")?;
                StmtKind::ImportNamed {
                    specifiers,
                    source: self.module_source()?,
                }
            }
            Tok::Word(_) => {
                let local = self.binding_ident()?;
                self.expect_word("from")?;
                StmtKind::ImportDefault {
                    local,
                    source: self.module_source()?,
                }
            }
            _ => return Err(self.unexpected()),
        };
        self.consume_semicolon()?;
        Ok(kind)
    }

    fn export_statement(&mut self) -> Result<StmtKind, SyntaxError> {
        self.module_item_allowed()?;
        self.bump();
        self.expect_punct("{")?;
        let mut specs = Vec::new();
        while !self.eat_punct("}") {
            let local = self.binding_ident()?;
            let exported = if self.is_word("as") {
                self.bump();
                self.specifier_name()?
            } else {
                local.clone()
            };
            specs.push(ExportSpecifier { local, exported });
            if !self.is_punct("}") {
                self.expect_punct(",")?;
            }
        }
        self.consume_semicolon()?;
        Ok(StmtKind::ExportNamed(specs))
    }

    fn function(&mut self, declaration: bool) -> Result<Function, SyntaxError> {
        let start = self.start();
        self.expect_word("function")?;
        let name = if matches!(self.tok(), Tok::Word(_)) {
            Some(self.binding_ident()?)
        } else if declaration {
            return Err(self.err_here("function declaration requires a name"));
        } else {
            None
        };
        self.expect_punct("(")?;
        let mut params = Vec::new();
        while !self.eat_punct(")") {
            params.push(self.binding_ident()?);
            if !self.is_punct(")") {
                self.expect_punct(",")?;
            }
        }
        self.expect_punct("{")?;
        let saved_block = std::mem::replace(&mut self.block_depth, 0);
        self.fn_depth += 1;
        let res = self.body_until(|p| p.is_punct("}"));
        self.fn_depth -= 1;
        self.block_depth = saved_block;
        let (directives, body) = res?;
        self.bump();
        Ok(Function {
            name,
            params,
            directives,
            body,
            span: self.span_from(start),
        })
    }

    // ---- expressions ----

    fn expression(&mut self, no_in: bool) -> Result<Expr, SyntaxError> {
        let start = self.start();
        let first = self.assignment(no_in)?;
        if !self.is_punct(",") {
            return Ok(first);
        }
        let mut items = vec![first];
        while self.eat_punct(",") {
            items.push(self.assignment(no_in)?);
        }
        Ok(Expr {
            kind: ExprKind::Sequence(items),
            span: self.span_from(start),
        })
    }

    fn assignment(&mut self, no_in: bool) -> Result<Expr, SyntaxError> {
        self.enter()?;
        let r = self.assignment_inner(no_in);
        self.leave();
        r
    }

    fn assignment_inner(&mut self, no_in: bool) -> Result<Expr, SyntaxError> {
        let start = self.start();
        let target = self.conditional(no_in)?;
        let op = match self.tok() {
            Tok::Punct(p) => assign_op(p),
            _ => None,
        };
        let Some(op) = op else {
            return Ok(target);
        };
        if !is_assignable(&target) {
            return Err(self.err_here("invalid assignment target"));
        }
        self.bump();
        let value = self.assignment(no_in)?;
        Ok(Expr {
            kind: ExprKind::Assign {
                op,
                target: Box::new(target),
                value: Box::new(value),
            },
            span: self.span_from(start),
        })
    }

    fn conditional(&mut self, no_in: bool) -> Result<Expr, SyntaxError> {
        let start = self.start();
        let test = self.binary(0, no_in)?;
        if !self.eat_punct("?") {
            return Ok(test);
        }
        let consequent = self.assignment(false)?;
        self.expect_punct(":")?;
        let alternate = self.assignment(no_in)?;
        Ok(Expr {
            kind: ExprKind::Conditional {
                test: Box::new(test),
                consequent: Box::new(consequent),
                alternate: Box::new(alternate),
            },
            span: self.span_from(start),
        })
    }

    fn binary(&mut self, min_prec: u8, no_in: bool) -> Result<Expr, SyntaxError> {
        let start = self.start();
        let mut left = self.unary()?;
        while let Some(op) = binary_op(self.tok(), no_in) {
            let prec = op.precedence();
            if prec <= min_prec {
                break;
            }
            self.bump();
            self.enter()?;
            let right = self.binary(prec, no_in);
            self.leave();
            left = Expr {
                kind: ExprKind::Binary {
                    op,
                    left: Box::new(left),
                    right: Box::new(right?),
                },
                span: self.span_from(start),
            };
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        let start = self.start();
        let op = match self.tok() {
            Tok::Punct("!") => Some(UnaryOp::Not),
            Tok::Punct("~") => Some(UnaryOp::BitNot),
            Tok::Punct("-") => Some(UnaryOp::Neg),
            Tok::Punct("+") => Some(UnaryOp::Plus),
            Tok::Word(w) if w == "typeof" => Some(UnaryOp::TypeOf),
            Tok::Word(w) if w == "void" => Some(UnaryOp::Void),
            Tok::Word(w) if w == "delete" => Some(UnaryOp::Delete),
            _ => None,
        };
        if let Some(op) = op {
            self.bump();
            self.enter()?;
            let arg = self.unary();
            self.leave();
            return Ok(Expr {
                kind: ExprKind::Unary {
                    op,
                    arg: Box::new(arg?),
                },
                span: self.span_from(start),
            });
        }
        let update = match self.tok() {
            Tok::Punct("++") => Some(UpdateOp::Incr),
            Tok::Punct("--") => Some(UpdateOp::Decr),
            _ => None,
        };
        if let Some(op) = update {
            self.bump();
            self.enter()?;
            let arg = self.unary();
            self.leave();
            let arg = arg?;
            if !is_assignable(&arg) {
                return Err(self.err_here("invalid update target"));
            }
            return Ok(Expr {
                kind: ExprKind::Update {
                    op,
                    prefix: true,
                    arg: Box::new(arg),
                },
                span: self.span_from(start),
            });
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, SyntaxError> {
        let start = self.start();
        let e = self.lhs()?;
        if self.cur().newline_before {
            return Ok(e);
        }
        let op = match self.tok() {
            Tok::Punct("++") => UpdateOp::Incr,
            Tok::Punct("--") => UpdateOp::Decr,
            _ => return Ok(e),
        };
        if !is_assignable(&e) {
            return Err(self.err_here("invalid update target"));
        }
        self.bump();
        Ok(Expr {
            kind: ExprKind::Update {
                op,
                prefix: false,
                arg: Box::new(e),
            },
            span: self.span_from(start),
        })
    }

    fn arguments(&mut self) -> Result<Vec<Expr>, SyntaxError> {
        self.expect_punct("(")?;
        let mut args = Vec::new();
        while !self.eat_punct(")") {
            args.push(self.assignment(false)?);
            if !self.is_punct(")") {
                self.expect_punct(",")?;
            }
        }
        Ok(args)
    }

    fn member_tail(&mut self, start: u32, mut e: Expr, calls: bool) -> Result<Expr, SyntaxError> {
        loop {
            if self.eat_punct(".") {
                let name = match self.tok().clone() {
                    Tok::Word(w) => {
                        self.bump();
                        w
                    }
                    _ => return Err(self.unexpected()),
                };
                e = Expr {
                    kind: ExprKind::Member {
                        object: Box::new(e),
                        property: MemberProp::Dot(name),
                    },
                    span: self.span_from(start),
                };
            } else if self.is_punct("[") {
                self.bump();
                let prop = self.expression(false)?;
                self.expect_punct("]")?;
                e = Expr {
                    kind: ExprKind::Member {
                        object: Box::new(e),
                        property: MemberProp::Bracket(Box::new(prop)),
                    },
                    span: self.span_from(start),
                };
            } else if calls && self.is_punct("(") {
                let args = self.arguments()?;
                e = Expr {
                    kind: ExprKind::Call {
                        callee: Box::new(e),
                        args,
                    },
                    span: self.span_from(start),
                };
            } else {
                return Ok(e);
            }
        }
    }

    fn lhs(&mut self) -> Result<Expr, SyntaxError> {
        let start = self.start();
        let base = if self.is_word("new") {
            self.new_expression()?
        } else {
            self.primary()?
        };
        self.member_tail(start, base, true)
    }

    fn new_expression(&mut self) -> Result<Expr, SyntaxError> {
        let start = self.start();
        self.enter()?;
        self.bump();
        let callee_start = self.start();
        let callee = if self.is_word("new") {
            self.new_expression()
        } else {
            self.primary()
        };
        let callee = callee.and_then(|c| self.member_tail(callee_start, c, false));
        self.leave();
        let callee = callee?;
        let args = if self.is_punct("(") {
            self.arguments()?
        } else {
            Vec::new()
        };
        Ok(Expr {
            kind: ExprKind::New {
                callee: Box::new(callee),
                args,
            },
            span: self.span_from(start),
        })
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        let start = self.start();
        let kind = match self.tok().clone() {
            Tok::Num(n) => {
                self.bump();
                ExprKind::Number(n)
            }
            Tok::Str(s) => {
                self.bump();
                ExprKind::Str(s)
            }
            Tok::Regex(r) => {
                self.bump();
                ExprKind::Regex(r)
            }
            Tok::Punct("(") => {
                self.bump();
                let e = self.expression(false)?;
                self.expect_punct(")")?;
                return Ok(e);
            }
            Tok::Punct("[") => self.array()?,
            Tok::Punct("{") => self.object()?,
            Tok::Word(w) => match w.as_str() {
                "this" => {
                    self.bump();
                    ExprKind::This
                }
                "null" => {
                    self.bump();
                    ExprKind::Null
                }
                "true" | "false" => {
                    self.bump();
                    ExprKind::Bool(w == "true")
                }
                "function" => ExprKind::Function(Box::new(self.function(false)?)),
                _ if is_reserved_word(&w) => return Err(self.unexpected()),
                _ => {
                    self.bump();
                    ExprKind::Ident(w)
                }
            },
            _ => return Err(self.unexpected()),
        };
        Ok(Expr {
            kind,
            span: self.span_from(start),
        })
    }

    fn array(&mut self) -> Result<ExprKind, SyntaxError> {
        self.bump();
        let mut items = Vec::new();
        loop {
            if self.eat_punct("]") {
                break;
            }
            if self.eat_punct(",") {
                items.push(None);
                continue;
            }
            items.push(Some(self.assignment(false)?));
            if self.eat_punct("]") {
                break;
            }
            self.expect_punct(",")?;
        }
        Ok(ExprKind::Array(items))
    }

    fn object(&mut self) -> Result<ExprKind, SyntaxError> {
        self.bump();
        let mut props = Vec::new();
        while !self.eat_punct("}") {
            let start = self.start();
            let key = match self.tok().clone() {
                Tok::Word(w) => {
                    if (w == "get" || w == "set")
                        && matches!(self.peek_tok(1), Tok::Word(_) | Tok::Str(_) | Tok::Num(_))
                    {
                        return Err(self.err_here("accessor properties are not supported"));
                    }
                    PropKey::Ident(w)
                }
                Tok::Str(s) => PropKey::Str(s),
                Tok::Num(n) => PropKey::Num(n),
                _ => return Err(self.unexpected()),
            };
            self.bump();
            self.expect_punct(":")?;
            let value = self.assignment(false)?;
            props.push(Property {
                key,
                value,
                span: self.span_from(start),
            });
            if !self.is_punct("}") {
                self.expect_punct(",")?;
            }
        }
        Ok(ExprKind::Object(props))
    }
}

fn is_assignable(e: &Expr) -> bool {
    matches!(e.kind, ExprKind::Ident(_) | ExprKind::Member { .. })
}
