use std::fmt;
use std::sync::LazyLock;

use regex::Regex;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FileFormat {
    #[serde(rename = "AMD")]
    Amd,
    #[serde(rename = "CJS")]
    Cjs,
    #[serde(rename = "ES6")]
    Es6,
    Other,
}

impl FileFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            FileFormat::Amd => "AMD",
            FileFormat::Cjs => "CJS",
            FileFormat::Es6 => "ES6",
            FileFormat::Other => "Other",
        }
    }
}

impl fmt::Display for FileFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `import` and `export` statements at the start of a line.
pub const ES6_PATTERNS: &[&str] = &[
    r#"(?m)^[ \t]*import[ \t]*(?:["']|[\w$]+[ \t]*(?:,[ \t]*\{[^}]*\})?[ \t]+from[ \t]*["']|\{[^}]*\}[ \t]*from[ \t]*["']|\*[ \t]*as[ \t]+[\w$]+[ \t]+from[ \t]*["'])"#,
    r"(?m)^[ \t]*export[ \t]+(?:default\b|var\b|let\b|const\b|function\b|class\b|\{|\*)",
];

/// `define(...)` with a dependency array, factory or object, and the
/// array form of `require`.
pub const AMD_PATTERNS: &[&str] = &[
    r#"\bdefine[ \t]*\([ \t\r\n]*(?:["'][^"'\n]*["'][ \t\r\n]*,[ \t\r\n]*)?(?:\[|function\b|\{)"#,
    r"(?:^|[^.\w$])require(?:js)?[ \t]*\([ \t\r\n]*\[",
];

/// `module.exports`, `exports.<name> =` and `require("...")`.
pub const CJS_PATTERNS: &[&str] = &[
    r"\bmodule\.exports\b",
    r"(?:^|[^.\w$])exports\.[\w$]+[ \t]*=[^=]",
    r#"(?:^|[^.\w$])require[ \t]*\([ \t]*["'][^"'\n]+["'][ \t]*\)"#,
];

struct Suite {
    es6: Vec<Regex>,
    amd: Vec<Regex>,
    cjs: Vec<Regex>,
    comments: Regex,
}

fn compile(ps: &[&str]) -> Vec<Regex> {
    ps.iter()
        .map(|p| Regex::new(p).expect("valid pattern"))
        .collect()
}

static SUITE: LazyLock<Suite> = LazyLock::new(|| Suite {
    es6: compile(ES6_PATTERNS),
    amd: compile(AMD_PATTERNS),
    cjs: compile(CJS_PATTERNS),
    // Strings are matched first so that `//` inside them is not a comment.
    comments: Regex::new(r#""(?:\\.|[^"\\\n])*"|'(?:\\.|[^'\\\n])*'|/\*[\s\S]*?\*/|//[^\n]*"#)
        .expect("valid pattern"),
});

fn strip_comments(text: &str) -> String {
    SUITE
        .comments
        .replace_all(text, |c: &regex::Captures<'_>| {
            let m = &c[0];
            if m.starts_with('/') {
                // Keep line structure for the `^` anchors.
                m.chars().filter(|&ch| ch == '\n').collect::<String>() + " "
            } else {
                // Contents could look like module syntax.
                format!("{q}s{q}", q = &m[..1])
            }
        })
        .into_owned()
}

/// Classifies source text by the module syntax it uses. Exactly one format
/// is returned; when several match, ES6 wins over AMD and AMD over CJS.
/// Comments are ignored.
pub fn classify_file_format(text: &str) -> FileFormat {
    let code = strip_comments(text);
    let any = |rs: &[Regex]| rs.iter().any(|r| r.is_match(&code));
    if any(&SUITE.es6) {
        FileFormat::Es6
    } else if any(&SUITE.amd) {
        FileFormat::Amd
    } else if any(&SUITE.cjs) {
        FileFormat::Cjs
    } else {
        FileFormat::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn es6_forms() {
        for t in [
            "import x from \"y\";",
            "import \"./side\";",
            "import {a, b as c} from './m';",
            "import * as ns from 'm';",
            "import d, {e} from 'm';",
            "var a = 1;\nexport {a};",
            "export default function () {}",
            "export const k = 1;",
        ] {
            assert_eq!(classify_file_format(t), FileFormat::Es6, "{t}");
        }
    }

    #[test]
    fn amd_forms() {
        for t in [
            "define([\"a\"], function(a){});",
            "define(function (require) { var a = require('a'); });",
            "define('name', ['dep'], function (dep) {});",
            "define({ color: 'red' });",
            "require(['app'], function (app) { app.start(); });",
            "requirejs(['app']);",
        ] {
            assert_eq!(classify_file_format(t), FileFormat::Amd, "{t}");
        }
    }

    #[test]
    fn cjs_forms() {
        for t in [
            "module.exports = f;",
            "exports.x = 1;",
            "var fs = require('fs');",
            "var o = {}; module.exports.o = o;",
        ] {
            assert_eq!(classify_file_format(t), FileFormat::Cjs, "{t}");
        }
    }

    #[test]
    fn other_forms() {
        for t in [
            "var a = 1; function f() { return a; }",
            "",
            "obj.define(x);",
            "// module.exports = f;\nvar x;",
            "/* import x from 'y'; */ var z;",
            "var s = \"module.exports\".length;",
            "a.exports.b = 1; x.require('m');",
            "var important = 1;\nvar exported = 2;",
        ] {
            assert_eq!(classify_file_format(t), FileFormat::Other, "{t}");
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(
            classify_file_format("import a from 'a';\nmodule.exports = a;"),
            FileFormat::Es6
        );
        assert_eq!(
            classify_file_format("define(['a'], function (a) { module.exports = a; });"),
            FileFormat::Amd
        );
    }

    #[test]
    fn url_in_string_is_not_a_comment() {
        let t = "var u = 'http://x.org'; module.exports = u;";
        assert_eq!(classify_file_format(t), FileFormat::Cjs);
    }
}
