//! Lexing, parsing and printing of the supported ES5 subset, plus extraction
//! of scripts embedded in HTML pages.

pub mod ast;
mod html;
mod lexer;
mod parser;
mod printer;
pub mod visit;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use ast::*;
pub use html::{
    extract_scripts, inline_script_path, rewrite_script_tags, scan_scripts, ScriptExtraction,
};
pub use lexer::{tokenize, Tok, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct SyntaxError {
    pub span: Option<Span>,
    pub message: String,
}

impl SyntaxError {
    pub fn new(span: Option<Span>, message: impl Into<String>) -> Self {
        SyntaxError {
            span,
            message: message.into(),
        }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.span {
            Some(s) => write!(f, "{} at {}", self.message, s),
            None => f.write_str(&self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot print {what}: {reason}")]
pub struct PrintError {
    pub what: String,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Origin {
    JsFile,
    HtmlInline,
    HtmlLinked,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    /// Project-relative path with `/` separators.
    pub path: String,
    pub text: String,
    pub origin: Origin,
    /// Position in the page's load order; only set for HTML origins.
    pub load_index: Option<usize>,
}

impl SourceFile {
    pub fn js(path: impl Into<String>, text: impl Into<String>) -> Self {
        SourceFile {
            path: path.into(),
            text: text.into(),
            origin: Origin::JsFile,
            load_index: None,
        }
    }
}

pub fn parse(source: &SourceFile) -> Result<Program, SyntaxError> {
    parse_str(&source.text)
}

pub fn parse_str(text: &str) -> Result<Program, SyntaxError> {
    parser::parse_program(text)
}

pub fn print(program: &Program) -> Result<String, PrintError> {
    printer::print_program(program)
}

/// Prints a single expression the way it would appear as an operand.
pub fn print_expr(expr: &Expr) -> Result<String, PrintError> {
    printer::print_expression(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reprint(src: &str) -> String {
        print(&parse_str(src).unwrap()).unwrap()
    }

    #[test]
    fn smallest_declaration() {
        let p = parse_str("var x = 1;").unwrap();
        match &p.body[0].kind {
            StmtKind::Var(d) => {
                assert_eq!(d[0].name, "x");
                assert_eq!(
                    d[0].init.as_ref().unwrap().kind,
                    ExprKind::Number("1".into())
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn namespace_binding_statement() {
        let p = parse_str("MathUtils.DEG_TO_RAD = Math.PI/180.0;").unwrap();
        let StmtKind::Expr(e) = &p.body[0].kind else {
            panic!()
        };
        let ExprKind::Assign { target, value, .. } = &e.kind else {
            panic!()
        };
        assert_eq!(target.as_dot_member().unwrap().1, "DEG_TO_RAD");
        assert!(matches!(
            value.kind,
            ExprKind::Binary {
                op: BinaryOp::Div,
                ..
            }
        ));
    }

    #[test]
    fn bracket_notation_survives_printing() {
        assert_eq!(reprint("obj[key] = 1;"), "obj[key] = 1;\n");
        assert_eq!(reprint("obj.key = 1;"), "obj.key = 1;\n");
    }

    #[test]
    fn empty_program_prints_nothing() {
        assert_eq!(print(&Program::new(vec![])).unwrap(), "");
    }

    #[test]
    fn es6_forms_print() {
        let p = Program::new(vec![
            Stmt::synth(StmtKind::ImportNamed {
                specifiers: vec![ImportSpecifier {
                    imported: "create".into(),
                    local: "create".into(),
                }],
                source: "./create.js".into(),
            }),
            Stmt::synth(StmtKind::ExportNamed(vec![ExportSpecifier {
                local: "Math_isFinite".into(),
                exported: "isFinite".into(),
            }])),
        ]);
        assert_eq!(
            print(&p).unwrap(),
            "import {create} from \"./create.js\";\nexport {Math_isFinite as isFinite};\n"
        );
    }

    #[test]
    fn strict_mode_from_prologue() {
        assert!(parse_str("'use strict'; var a;").unwrap().strict_mode());
        assert!(!parse_str("var a; 'use strict';").unwrap().strict_mode());
        assert!(!parse_str("'use strict' + x;").unwrap().strict_mode());
    }

    #[test]
    fn spans_nest() {
        let p = parse_str("var a = f(b.c, [1, 2]);").unwrap();
        let outer = p.body[0].span.unwrap();
        let StmtKind::Var(d) = &p.body[0].kind else {
            panic!()
        };
        let init = d[0].init.as_ref().unwrap();
        assert!(outer.contains(&init.span.unwrap()));
        if let ExprKind::Call { args, .. } = &init.kind {
            for a in args {
                assert!(init.span.unwrap().contains(&a.span.unwrap()));
            }
        }
    }

    #[test]
    fn asi_at_newline_only() {
        assert!(parse_str("var a = 1\nvar b = 2").is_ok());
        assert!(parse_str("var a = 1 var b = 2").is_err());
        let p = parse_str("return_ = 1\n++x").unwrap();
        assert_eq!(p.body.len(), 2);
    }

    #[test]
    fn restricted_return() {
        let p = parse_str("function f(){ return\n1; }").unwrap();
        let StmtKind::Function(f) = &p.body[0].kind else {
            panic!()
        };
        assert_eq!(f.body[0].kind, StmtKind::Return(None));
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let src = format!("x = {}1{};", "(".repeat(5000), ")".repeat(5000));
        assert!(parse_str(&src).is_err());
    }

    #[test]
    fn import_only_at_top_level() {
        assert!(parse_str("import {a} from \"./a.js\";").is_ok());
        assert!(parse_str("function f(){ import {a} from \"./a.js\"; }").is_err());
    }

    #[test]
    fn printer_round_trips_precedence() {
        for src in [
            "a = (b, c);",
            "x = (a + b) * c;",
            "x = a - (b - c);",
            "x = a - b - c;",
            "x = -(-a);",
            "x = - -a;",
            "x = +(+a);",
            "new (f())();",
            "new ((a ? b : c)(d))(e);",
            "new a.b.C();",
            "(new F()).x;",
            "x = (1).toString();",
            "(function () {})();",
            "({}).x;",
            "x = a ? b : c ? d : e;",
            "x = (a ? b : c) ? d : e;",
            "for (var i = (\"a\" in o); i < 1; i++) {}",
            "for (x in o) {}",
            "x = typeof typeof a;",
            "x = [, 1, , ];",
            "x = {\"a-b\": 1, 2: 3, c: 4};",
            "a = b = c;",
            "x = a || b && c;",
            "x = (a || b) && c;",
            "x = /re[/]/g.test(s);",
            "lbl: for (;;) { break lbl; }",
            "x = a++ + ++b;",
            "x = a + +b;",
            "x = a - -b;",
            "x = a-- - --b;",
            "(\"not a directive\");",
        ] {
            let once = parse_str(src).unwrap_or_else(|e| panic!("{src}: {e}"));
            let printed = print(&once).unwrap();
            let twice = parse_str(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
            assert!(once.structurally_eq(&twice), "{src} -> {printed}");
        }
    }
}
