//! The `.efa` text format.
//!
//! ```text
//! efa 1
//! # comments run to the end of the line
//! elements 0 a b a' b' 1
//! zero 0
//! one 1
//! sum a a a'
//! sum a b b'
//! ```
//!
//! Each unordered pair appears at most once, and pairs involving zero are
//! implied, so a file has exactly one spelling per algebra up to line order.
//! Names are any run of non-whitespace characters other than `#`.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{BuildError, EffectAlgebra};

pub const FORMAT_VERSION: u32 = 1;

/// Parsed but not yet validated document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EfaDocument {
    pub version: u32,
    pub names: Vec<String>,
    pub zero: String,
    pub one: String,
    pub entries: Vec<(String, String, String)>,
    pub comments: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

pub fn parse_document(text: &str) -> Result<EfaDocument, ParseError> {
    let err = |line: usize, column: usize, message: String| ParseError { line, column, message };
    let mut version = None;
    let mut names: Option<Vec<String>> = None;
    let mut known: HashMap<String, usize> = HashMap::new();
    let mut zero: Option<String> = None;
    let mut one: Option<String> = None;
    let mut entries = Vec::new();
    let mut seen_pairs: HashMap<(usize, usize), (String, usize)> = HashMap::new();
    let mut comments = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let body = match raw.find('#') {
            Some(pos) => {
                comments.push(raw[pos + 1..].trim().to_string());
                &raw[..pos]
            }
            None => raw,
        };
        let toks = tokens(body);
        let Some(head) = toks.first() else { continue };
        let args = &toks[1..];

        if version.is_none() {
            if head.text != "efa" {
                return Err(err(line_no, head.column, "expected `efa <version>` header".into()));
            }
            let [v] = args else {
                return Err(err(line_no, head.column, "header takes exactly one version number".into()));
            };
            match v.text.parse::<u32>() {
                Ok(FORMAT_VERSION) => version = Some(FORMAT_VERSION),
                _ => return Err(err(line_no, v.column, format!("unsupported version `{}`", v.text))),
            }
            continue;
        }

        let resolve = |t: &Token| -> Result<usize, ParseError> {
            known
                .get(t.text)
                .copied()
                .ok_or_else(|| err(line_no, t.column, format!("unknown element `{}`", t.text)))
        };

        match head.text {
            "efa" => return Err(err(line_no, head.column, "duplicate header".into())),
            "elements" => {
                if names.is_some() {
                    return Err(err(line_no, head.column, "duplicate `elements` line".into()));
                }
                if args.is_empty() {
                    return Err(err(line_no, head.column, "`elements` needs at least one name".into()));
                }
                let mut list = Vec::with_capacity(args.len());
                for t in args {
                    if known.insert(t.text.to_string(), list.len()).is_some() {
                        return Err(err(line_no, t.column, format!("duplicate element `{}`", t.text)));
                    }
                    list.push(t.text.to_string());
                }
                names = Some(list);
            }
            "zero" | "one" => {
                if names.is_none() {
                    return Err(err(line_no, head.column, "`elements` must come first".into()));
                }
                let [t] = args else {
                    return Err(err(line_no, head.column, format!("`{}` takes exactly one name", head.text)));
                };
                resolve(t)?;
                let slot = if head.text == "zero" { &mut zero } else { &mut one };
                if slot.is_some() {
                    return Err(err(line_no, head.column, format!("duplicate `{}` line", head.text)));
                }
                *slot = Some(t.text.to_string());
            }
            "sum" => {
                let Some(z) = zero.as_ref() else {
                    return Err(err(line_no, head.column, "`zero` must come before `sum`".into()));
                };
                let [a, b, c] = args else {
                    return Err(err(line_no, head.column, "`sum` takes exactly three names".into()));
                };
                let (ia, ib, _) = (resolve(a)?, resolve(b)?, resolve(c)?);
                for t in [a, b] {
                    if t.text == z {
                        return Err(err(line_no, t.column, "sums with zero are implicit and must not be listed".into()));
                    }
                }
                let key = (ia.min(ib), ia.max(ib));
                if let Some((prev, prev_line)) = seen_pairs.get(&key) {
                    let what = if prev == c.text { "redundant" } else { "conflicting" };
                    return Err(err(
                        line_no,
                        head.column,
                        format!("{what} entry for {} ⊕ {} (first given on line {prev_line})", a.text, b.text),
                    ));
                }
                seen_pairs.insert(key, (c.text.to_string(), line_no));
                entries.push((a.text.to_string(), b.text.to_string(), c.text.to_string()));
            }
            other => return Err(err(line_no, head.column, format!("unknown directive `{other}`"))),
        }
    }

    let end = text.lines().count().max(1);
    let version = version.ok_or_else(|| err(end, 1, "missing `efa` header".into()))?;
    let names = names.ok_or_else(|| err(end, 1, "missing `elements` line".into()))?;
    let zero = zero.ok_or_else(|| err(end, 1, "missing `zero` line".into()))?;
    let one = one.ok_or_else(|| err(end, 1, "missing `one` line".into()))?;
    Ok(EfaDocument {
        version,
        names,
        zero,
        one,
        entries,
        comments,
    })
}

impl EfaDocument {
    pub fn to_algebra(&self) -> Result<EffectAlgebra, BuildError> {
        EffectAlgebra::build(&self.names, &self.zero, &self.one, &self.entries)
    }
}

pub fn parse(text: &str) -> Result<EffectAlgebra, FormatError> {
    Ok(parse_document(text)?.to_algebra()?)
}

pub fn serialize(e: &EffectAlgebra) -> String {
    serialize_with_comments(e, &[])
}

/// Canonical text: names in id order, entries sorted by summand ids.
pub fn serialize_with_comments(e: &EffectAlgebra, comments: &[&str]) -> String {
    let mut out = String::new();
    out.push_str("efa 1\n");
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "elements {}", e.names().join(" "));
    let _ = writeln!(out, "zero {}", e.name(e.zero()));
    let _ = writeln!(out, "one {}", e.name(e.one()));
    for (a, b, c) in e.canonical_entries() {
        let _ = writeln!(out, "sum {} {} {}", e.name(a), e.name(b), e.name(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Axiom;

    #[test]
    fn two_chain_document() {
        let e = parse("efa 1\nelements 0 1\nzero 0\none 1\n").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(serialize(&e), "efa 1\nelements 0 1\nzero 0\none 1\n");
    }

    #[test]
    fn comments_and_blank_lines() {
        let doc = parse_document("# leading\nefa 1 # header\n\nelements 0 a 1\nzero 0\none 1\nsum a a 1 # a' = a\n").unwrap();
        assert_eq!(doc.comments, vec!["leading", "header", "a' = a"]);
        assert!(doc.to_algebra().is_ok());
    }

    #[test]
    fn omitted_complement_is_e3() {
        match parse("efa 1\nelements 0 a 1\nzero 0\none 1\n") {
            Err(FormatError::Build(e)) => assert!(e.violations().iter().any(|v| v.axiom == Axiom::E3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn diagnostics_have_positions() {
        let e = parse_document("efa 1\nelements 0 a 1\nzero 0\none 1\nsum a  x 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (5, 8));
        let e = parse_document("efa 2\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse_document("elements 0 1\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_document("efa 1\nelements 0 1\nzero 0\none 1\nfoo\n").unwrap_err();
        assert!(e.message.contains("unknown directive"));
    }

    #[test]
    fn redundant_and_zero_entries_rejected() {
        let base = "efa 1\nelements 0 a 1\nzero 0\none 1\nsum a a 1\n";
        assert!(parse_document(&format!("{base}sum a a 1\n")).unwrap_err().message.contains("redundant"));
        assert!(parse_document(&format!("{base}sum a a a\n")).unwrap_err().message.contains("conflicting"));
        assert!(parse_document(&format!("{base}sum 0 a a\n")).unwrap_err().message.contains("implicit"));
        let sym = "efa 1\nelements 0 a b 1\nzero 0\none 1\nsum a b 1\nsum b a 1\n";
        assert!(parse_document(sym).unwrap_err().message.contains("redundant"));
    }

    #[test]
    fn primes_and_plus_are_names() {
        let text = "efa 1\nelements 0 a a' a+a' 1\nzero 0\none a+a'\nsum a a' a+a'\nsum 1 1 a+a'\n";
        // `1` is an ordinary name here and 1 ⊕ 1 = unit makes it its own complement.
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.one, "a+a'");
    }
}
