//! Tag-level scanning of `<script>` elements.

use super::{Origin, SourceFile};
use crate::paths;

const JS_TYPES: &[&str] = &[
    "",
    "text/javascript",
    "application/javascript",
    "text/ecmascript",
    "application/ecmascript",
    "module",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptExtraction {
    pub scripts: Vec<SourceFile>,
    /// `src` values that could not be resolved to a project path.
    pub unresolved: Vec<String>,
}

#[derive(Debug, Clone)]
struct ScriptTag {
    /// Byte offset of `<script`.
    open_start: usize,
    /// Byte offset just past the opening tag's `>`.
    open_end: usize,
    /// Byte offset of `</script`.
    close_start: usize,
    attrs: Vec<(String, Option<String>)>,
}

impl ScriptTag {
    fn attr(&self, name: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_deref().unwrap_or(""))
    }

    fn is_js(&self) -> bool {
        let ty = self.attr("type").unwrap_or("").trim().to_ascii_lowercase();
        JS_TYPES.contains(&ty.as_str())
    }
}

fn find_ci(hay: &str, needle: &str, from: usize) -> Option<usize> {
    let h = hay.as_bytes();
    let n = needle.as_bytes();
    if n.len() > h.len() {
        return None;
    }
    (from..=h.len() - n.len()).find(|&i| h[i..i + n.len()].eq_ignore_ascii_case(n))
}

fn parse_attrs(s: &str) -> Vec<(String, Option<String>)> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        while i < b.len() && (b[i].is_ascii_whitespace() || b[i] == b'/') {
            i += 1;
        }
        let start = i;
        while i < b.len() && !b[i].is_ascii_whitespace() && b[i] != b'=' && b[i] != b'/' {
            i += 1;
        }
        if start == i {
            break;
        }
        let name = s[start..i].to_ascii_lowercase();
        while i < b.len() && b[i].is_ascii_whitespace() {
            i += 1;
        }
        if i < b.len() && b[i] == b'=' {
            i += 1;
            while i < b.len() && b[i].is_ascii_whitespace() {
                i += 1;
            }
            let value = if i < b.len() && (b[i] == b'"' || b[i] == b'\'') {
                let q = b[i];
                let vs = i + 1;
                i = vs;
                while i < b.len() && b[i] != q {
                    i += 1;
                }
                let v = &s[vs..i];
                i = (i + 1).min(b.len());
                v
            } else {
                let vs = i;
                while i < b.len() && !b[i].is_ascii_whitespace() {
                    i += 1;
                }
                &s[vs..i]
            };
            out.push((name, Some(value.to_string())));
        } else {
            out.push((name, None));
        }
    }
    out
}

fn scan_tags(html: &str) -> Vec<ScriptTag> {
    let mut tags = Vec::new();
    let mut pos = 0;
    while let Some(open_start) = find_ci(html, "<script", pos) {
        let after = open_start + "<script".len();
        let next = html[after..].chars().next();
        if !matches!(next, Some(c) if c == '>' || c == '/' || c.is_ascii_whitespace()) {
            pos = after;
            continue;
        }
        let Some(gt) = html[after..].find('>') else {
            break;
        };
        let open_end = after + gt + 1;
        let close_start = find_ci(html, "</script", open_end).unwrap_or(html.len());
        tags.push(ScriptTag {
            open_start,
            open_end,
            close_start,
            attrs: parse_attrs(&html[after..after + gt]),
        });
        pos = close_start.max(open_end);
        if close_start == html.len() {
            break;
        }
    }
    tags
}

fn resolve_src(page_path: &str, src: &str) -> Option<String> {
    let src = src.split(['?', '#']).next().unwrap_or("");
    if src.is_empty() || src.starts_with("//") || src.contains("://") || src.starts_with("data:") {
        return None;
    }
    paths::join(paths::parent(page_path), src)
}

/// Virtual path given to the `k`-th inline script of a page.
pub fn inline_script_path(page_path: &str, k: usize) -> String {
    let dir = paths::parent(page_path);
    let stem = paths::file_stem(page_path);
    if dir.is_empty() {
        format!("{stem}.inline{k}.js")
    } else {
        format!("{dir}/{stem}.inline{k}.js")
    }
}

/// One entry per JavaScript `<script>` element in document order. Linked
/// scripts carry the resolved path and empty text; the caller loads them.
pub fn scan_scripts(html: &str, page_path: &str) -> ScriptExtraction {
    let mut scripts = Vec::new();
    let mut unresolved = Vec::new();
    let mut inline_count = 0;
    for (index, tag) in scan_tags(html).iter().filter(|t| t.is_js()).enumerate() {
        match tag.attr("src") {
            Some(src) => match resolve_src(page_path, src) {
                Some(path) => scripts.push(SourceFile {
                    path,
                    text: String::new(),
                    origin: Origin::HtmlLinked,
                    load_index: Some(index),
                }),
                None => {
                    log::warn!("{page_path}: cannot resolve script src {src:?}");
                    unresolved.push(src.to_string());
                }
            },
            None => {
                scripts.push(SourceFile {
                    path: inline_script_path(page_path, inline_count),
                    text: html[tag.open_end..tag.close_start].to_string(),
                    origin: Origin::HtmlInline,
                    load_index: Some(index),
                });
                inline_count += 1;
            }
        }
    }
    ScriptExtraction {
        scripts,
        unresolved,
    }
}

pub fn extract_scripts(html: &str, page_path: &str) -> Vec<SourceFile> {
    scan_scripts(html, page_path).scripts
}

/// Marks every JavaScript `<script>` element as `type="module"`. Inline
/// bodies are replaced by `inline_bodies[k]` for the `k`-th inline script
/// when provided.
pub fn rewrite_script_tags(html: &str, inline_bodies: &[Option<String>]) -> String {
    let mut out = String::with_capacity(html.len() + 64);
    let mut last = 0;
    let mut inline_count = 0;
    for tag in scan_tags(html).iter().filter(|t| t.is_js()) {
        out.push_str(&html[last..tag.open_start]);
        let mut open = String::from("<script");
        for (name, value) in &tag.attrs {
            if name == "type" {
                continue;
            }
            match value {
                Some(v) => open.push_str(&format!(" {name}=\"{v}\"")),
                None => open.push_str(&format!(" {name}")),
            }
        }
        open.push_str(" type=\"module\">");
        out.push_str(&open);
        let body = &html[tag.open_end..tag.close_start];
        if tag.attr("src").is_none() {
            match inline_bodies.get(inline_count).and_then(|b| b.as_ref()) {
                Some(new_body) => {
                    out.push('\n');
                    out.push_str(new_body);
                }
                None => out.push_str(body),
            }
            inline_count += 1;
        } else {
            out.push_str(body);
        }
        last = tag.close_start;
    }
    out.push_str(&html[last..]);
    out
}
