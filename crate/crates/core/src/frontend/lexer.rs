use std::collections::HashSet;

use super::ast::{is_id_continue, is_id_start, Span};
use super::SyntaxError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    /// Identifier or keyword; the parser decides which.
    Word(String),
    Num(String),
    Str(String),
    Regex(String),
    Punct(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
    /// A line terminator occurs between the previous token and this one.
    pub newline_before: bool,
}

const PUNCTUATORS: &[&str] = &[
    ">>>=", "===", "!==", ">>>", "<<=", ">>=", "<=", ">=", "==", "!=", "++", "--", "<<", ">>",
    "&&", "||", "+=", "-=", "*=", "%=", "&=", "|=", "^=", "/=", "{", "}", "(", ")", "[", "]", ";",
    ",", "<", ">", "+", "-", "*", "%", "&", "|", "^", "!", "~", "?", ":", "=", ".", "/",
];

const REGEX_AFTER_WORD: &[&str] = &[
    "return",
    "typeof",
    "instanceof",
    "in",
    "new",
    "delete",
    "void",
    "throw",
    "case",
    "do",
    "else",
];

fn is_line_terminator(c: char) -> bool {
    matches!(c, '\n' | '\r' | '\u{2028}' | '\u{2029}')
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    Lexer {
        src,
        pos: 0,
        tokens: Vec::new(),
        groups: Vec::new(),
        body_next: None,
        stmt_after: HashSet::new(),
    }
    .run()
}

/// What an open `(` or `{` belongs to.
#[derive(Clone, Copy)]
enum Group {
    /// Head of `if`, `while`, `for`, `with`, `switch` or `catch`.
    Control,
    Params {
        decl: bool,
    },
    Paren,
    Block,
    Body {
        decl: bool,
    },
    Object,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    tokens: Vec<Token>,
    groups: Vec<Group>,
    /// Set after a parameter list: the next `{` opens a function body.
    body_next: Option<bool>,
    /// Indices of `)`, `{` and `}` tokens that a statement may follow.
    stmt_after: HashSet<usize>,
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn err(&self, start: usize, msg: impl Into<String>) -> SyntaxError {
        SyntaxError::new(
            Some(Span::new(start as u32, self.pos.max(start) as u32)),
            msg,
        )
    }

    fn regex_allowed(&self) -> bool {
        self.operand_expected(self.tokens.len())
    }

    fn word_at(&self, i: usize) -> Option<&str> {
        match &self.tokens.get(i)?.tok {
            Tok::Word(w) => Some(w),
            _ => None,
        }
    }

    /// Whether the token at index `n` starts an operand.
    fn operand_expected(&self, n: usize) -> bool {
        let Some(prev) = n.checked_sub(1).map(|i| &self.tokens[i]) else {
            return true;
        };
        match &prev.tok {
            // Postfix `++`/`--` end an operand; prefix ones start one.
            Tok::Punct("++" | "--") => prev.newline_before || self.operand_expected(n - 1),
            Tok::Punct(")" | "]" | "}") => self.stmt_after.contains(&(n - 1)),
            Tok::Punct(_) => true,
            // After a dot, keywords are property names.
            Tok::Word(w) => {
                REGEX_AFTER_WORD.contains(&w.as_str())
                    && !(n >= 2 && self.tokens[n - 2].tok == Tok::Punct("."))
            }
            _ => false,
        }
    }

    /// Whether the token at index `n` starts a statement.
    fn statement_start(&self, n: usize) -> bool {
        let Some(prev) = n.checked_sub(1).map(|i| &self.tokens[i]) else {
            return true;
        };
        match &prev.tok {
            Tok::Punct(";") => true,
            Tok::Punct("{" | "}" | ")") => self.stmt_after.contains(&(n - 1)),
            Tok::Word(w) => matches!(w.as_str(), "else" | "do" | "try" | "finally"),
            _ => false,
        }
    }

    /// Tracks brackets so that `)` and `}` know what they close.
    fn track(&mut self, tok: &Tok) {
        let n = self.tokens.len();
        match tok {
            Tok::Punct("(") => {
                let before = n.checked_sub(1).and_then(|i| self.word_at(i));
                let g = match before {
                    Some("if" | "while" | "for" | "with" | "switch" | "catch") => Group::Control,
                    Some("function") => Group::Params {
                        decl: self.statement_start(n - 1),
                    },
                    Some(_) if n >= 2 && self.word_at(n - 2) == Some("function") => Group::Params {
                        decl: self.statement_start(n - 2),
                    },
                    _ => Group::Paren,
                };
                self.groups.push(g);
            }
            Tok::Punct(")") => match self.groups.pop() {
                Some(Group::Control) => {
                    self.stmt_after.insert(n);
                }
                Some(Group::Params { decl }) => self.body_next = Some(decl),
                _ => {}
            },
            Tok::Punct("{") => {
                let g = match self.body_next.take() {
                    Some(decl) => Group::Body { decl },
                    None if self.statement_start(n) => Group::Block,
                    None => Group::Object,
                };
                if !matches!(g, Group::Object) {
                    self.stmt_after.insert(n);
                }
                self.groups.push(g);
            }
            Tok::Punct("}") => {
                if let Some(Group::Block | Group::Body { decl: true }) = self.groups.pop() {
                    self.stmt_after.insert(n);
                }
            }
            _ => {}
        }
    }

    /// Skips whitespace and comments; returns whether a line terminator was seen.
    fn skip_trivia(&mut self) -> Result<bool, SyntaxError> {
        let mut newline = false;
        loop {
            match self.peek() {
                Some(c) if is_line_terminator(c) => {
                    newline = true;
                    self.bump();
                }
                Some(c) if c.is_whitespace() || c == '\u{feff}' => {
                    self.bump();
                }
                Some('/') if self.peek_at(1) == Some('/') => {
                    while let Some(c) = self.peek() {
                        if is_line_terminator(c) {
                            break;
                        }
                        self.bump();
                    }
                }
                Some('/') if self.peek_at(1) == Some('*') => {
                    let start = self.pos;
                    self.pos += 2;
                    match self.src[self.pos..].find("*/") {
                        Some(off) => {
                            if self.src[self.pos..self.pos + off]
                                .chars()
                                .any(is_line_terminator)
                            {
                                newline = true;
                            }
                            self.pos += off + 2;
                        }
                        None => {
                            self.pos = self.src.len();
                            return Err(self.err(start, "unterminated comment"));
                        }
                    }
                }
                _ => return Ok(newline),
            }
        }
    }

    fn run(mut self) -> Result<Vec<Token>, SyntaxError> {
        loop {
            let newline_before = self.skip_trivia()?;
            let start = self.pos;
            let Some(c) = self.peek() else {
                self.tokens.push(Token {
                    tok: Tok::Eof,
                    span: Span::new(start as u32, start as u32),
                    newline_before,
                });
                return Ok(self.tokens);
            };
            let tok = if is_id_start(c) || c == '\\' {
                self.word(start)?
            } else if c.is_ascii_digit()
                || (c == '.' && self.peek_at(1).is_some_and(|d| d.is_ascii_digit()))
            {
                self.number(start)?
            } else if c == '"' || c == '\'' {
                self.string(start, c)?
            } else if c == '/' && self.regex_allowed() {
                self.regex(start)?
            } else {
                self.punct(start)?
            };
            self.track(&tok);
            self.tokens.push(Token {
                tok,
                span: Span::new(start as u32, self.pos as u32),
                newline_before,
            });
        }
    }

    fn word(&mut self, start: usize) -> Result<Tok, SyntaxError> {
        if self.peek() == Some('\\') {
            return Err(self.err(start, "unicode escapes in identifiers are not supported"));
        }
        while let Some(c) = self.peek() {
            if is_id_continue(c) {
                self.bump();
            } else {
                break;
            }
        }
        Ok(Tok::Word(self.src[start..self.pos].to_string()))
    }

    fn number(&mut self, start: usize) -> Result<Tok, SyntaxError> {
        if self.peek() == Some('0') && matches!(self.peek_at(1), Some('x' | 'X')) {
            self.pos += 2;
            let digits = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_hexdigit()) {
                self.bump();
            }
            if self.pos == digits {
                return Err(self.err(start, "malformed hexadecimal literal"));
            }
        } else {
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
            }
            if self.peek() == Some('.') {
                self.bump();
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
            }
            if matches!(self.peek(), Some('e' | 'E')) {
                self.bump();
                if matches!(self.peek(), Some('+' | '-')) {
                    self.bump();
                }
                let digits = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                if self.pos == digits {
                    return Err(self.err(start, "malformed exponent"));
                }
            }
        }
        if self
            .peek()
            .is_some_and(|c| is_id_start(c) || c.is_ascii_digit())
        {
            return Err(self.err(start, "identifier starts immediately after numeric literal"));
        }
        Ok(Tok::Num(self.src[start..self.pos].to_string()))
    }

    fn hex_digits(&mut self, start: usize, n: usize) -> Result<char, SyntaxError> {
        let mut value = 0u32;
        for _ in 0..n {
            match self.bump().and_then(|c| c.to_digit(16)) {
                Some(d) => value = value * 16 + d,
                None => return Err(self.err(start, "malformed escape sequence")),
            }
        }
        Ok(char::from_u32(value).unwrap_or('\u{fffd}'))
    }

    fn string(&mut self, start: usize, quote: char) -> Result<Tok, SyntaxError> {
        self.bump();
        let mut out = String::new();
        loop {
            let Some(c) = self.bump() else {
                return Err(self.err(start, "unterminated string literal"));
            };
            match c {
                c if c == quote => break,
                '\\' => {
                    let Some(e) = self.bump() else {
                        return Err(self.err(start, "unterminated string literal"));
                    };
                    match e {
                        'n' => out.push('\n'),
                        't' => out.push('\t'),
                        'r' => out.push('\r'),
                        'b' => out.push('\u{8}'),
                        'f' => out.push('\u{c}'),
                        'v' => out.push('\u{b}'),
                        '0'..='7' => {
                            let mut value = e.to_digit(8).unwrap_or(0);
                            for _ in 0..2 {
                                match self.peek().and_then(|d| d.to_digit(8)) {
                                    Some(d) if value * 8 + d <= 255 => {
                                        value = value * 8 + d;
                                        self.bump();
                                    }
                                    _ => break,
                                }
                            }
                            out.push(char::from_u32(value).unwrap_or('\0'));
                        }
                        'x' => out.push(self.hex_digits(start, 2)?),
                        'u' => {
                            let hi = self.hex_digits(start, 4)? as u32;
                            if (0xd800..0xdc00).contains(&hi)
                                && self.src[self.pos..].starts_with("\\u")
                            {
                                let save = self.pos;
                                self.pos += 2;
                                let lo = self.hex_digits(start, 4)? as u32;
                                if (0xdc00..0xe000).contains(&lo) {
                                    let cp = 0x10000 + ((hi - 0xd800) << 10) + (lo - 0xdc00);
                                    out.push(char::from_u32(cp).unwrap_or('\u{fffd}'));
                                } else {
                                    self.pos = save;
                                    out.push('\u{fffd}');
                                }
                            } else {
                                out.push(char::from_u32(hi).unwrap_or('\u{fffd}'));
                            }
                        }
                        '\r' => {
                            if self.peek() == Some('\n') {
                                self.bump();
                            }
                        }
                        c if is_line_terminator(c) => {}
                        other => out.push(other),
                    }
                }
                c if is_line_terminator(c) => {
                    return Err(self.err(start, "unterminated string literal"));
                }
                other => out.push(other),
            }
        }
        Ok(Tok::Str(out))
    }

    fn regex(&mut self, start: usize) -> Result<Tok, SyntaxError> {
        self.bump();
        let mut in_class = false;
        loop {
            match self.bump() {
                None => return Err(self.err(start, "unterminated regular expression")),
                Some(c) if is_line_terminator(c) => {
                    return Err(self.err(start, "unterminated regular expression"))
                }
                Some('\\') => {
                    if self.bump().is_none_or(is_line_terminator) {
                        return Err(self.err(start, "unterminated regular expression"));
                    }
                }
                Some('[') => in_class = true,
                Some(']') => in_class = false,
                Some('/') if !in_class => break,
                Some(_) => {}
            }
        }
        while self.peek().is_some_and(is_id_continue) {
            self.bump();
        }
        Ok(Tok::Regex(self.src[start..self.pos].to_string()))
    }

    fn punct(&mut self, start: usize) -> Result<Tok, SyntaxError> {
        let rest = &self.src[self.pos..];
        for p in PUNCTUATORS {
            if rest.starts_with(p) {
                self.pos += p.len();
                return Ok(Tok::Punct(p));
            }
        }
        self.bump();
        Err(self.err(
            start,
            format!("unexpected character {:?}", &self.src[start..self.pos]),
        ))
    }
}
