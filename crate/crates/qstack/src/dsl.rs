//! Line-oriented text format for quivers and shapes.
//!
//! ```text
//! # comment
//! quiver NAME
//! vertex ID [framed]
//! edge ID : SRC -> TGT [identity]
//! triangle ID : FIRST . SECOND => LONG
//! dim ID = N
//! ```
//!
//! `quiver` must come first and appear once. Ids start with a letter or
//! underscore and may continue with letters, digits, `_`, `'`, `*`. An
//! `identity` edge must be a loop. Printing is canonical: parsing the
//! printed form reproduces the document byte for byte.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quiver::FramingFn;
use crate::sset::SSet2;

#[derive(Clone, Debug, PartialEq)]
pub struct QuiverDoc {
    pub name: String,
    pub shape: SSet2,
    pub framing: FramingFn,
    /// Dimensions given in the file; vertices may be left unassigned.
    pub dims: BTreeMap<String, usize>,
}

impl QuiverDoc {
    pub fn new(
        name: impl Into<String>,
        shape: SSet2,
        framing: FramingFn,
        dims: BTreeMap<String, usize>,
    ) -> Result<QuiverDoc> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(Error::Invalid(format!("invalid quiver name {name:?}")));
        }
        framing.check_total(&shape)?;
        for v in dims.keys() {
            if !shape.has_vertex(v) {
                return Err(Error::Invalid(format!("dimension for unknown vertex {v:?}")));
            }
        }
        Ok(QuiverDoc {
            name,
            shape,
            framing,
            dims,
        })
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '*'))
}

struct Tok {
    text: String,
    col: usize,
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let col = i + 1;
        match c {
            ':' | '.' => {
                toks.push(Tok { text: c.to_string(), col });
                i += 1;
            }
            '=' => {
                if chars.get(i + 1) == Some(&'>') {
                    toks.push(Tok { text: "=>".to_string(), col });
                    i += 2;
                } else {
                    toks.push(Tok { text: "=".to_string(), col });
                    i += 1;
                }
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    toks.push(Tok { text: "->".to_string(), col });
                    i += 2;
                } else {
                    return Err(Error::Parse {
                        line: lineno,
                        col,
                        message: "expected \"->\"".to_string(),
                    });
                }
            }
            c if c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '*') => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || matches!(chars[i], '_' | '\'' | '*'))
                {
                    i += 1;
                }
                toks.push(Tok {
                    text: chars[start..i].iter().collect(),
                    col,
                });
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    col,
                    message: format!("unexpected character {other:?}"),
                });
            }
        }
    }
    Ok(toks)
}

fn expect<'a>(toks: &'a [Tok], idx: usize, what: &str, lineno: usize, line: &str) -> Result<&'a Tok> {
    toks.get(idx).ok_or_else(|| Error::Parse {
        line: lineno,
        col: line.len() + 1,
        message: format!("expected {what}"),
    })
}

fn expect_literal(toks: &[Tok], idx: usize, lit: &str, lineno: usize, line: &str) -> Result<()> {
    let t = expect(toks, idx, &format!("{lit:?}"), lineno, line)?;
    if t.text != lit {
        return Err(Error::Parse {
            line: lineno,
            col: t.col,
            message: format!("expected {lit:?}, found {:?}", t.text),
        });
    }
    Ok(())
}

fn expect_id<'a>(toks: &'a [Tok], idx: usize, what: &str, lineno: usize, line: &str) -> Result<&'a Tok> {
    let t = expect(toks, idx, what, lineno, line)?;
    if !is_identifier(&t.text) {
        return Err(Error::Parse {
            line: lineno,
            col: t.col,
            message: format!("{what} must be an identifier, found {:?}", t.text),
        });
    }
    Ok(t)
}

fn no_more(toks: &[Tok], idx: usize, lineno: usize) -> Result<()> {
    if let Some(t) = toks.get(idx) {
        return Err(Error::Parse {
            line: lineno,
            col: t.col,
            message: format!("unexpected trailing {:?}", t.text),
        });
    }
    Ok(())
}

pub fn parse_doc(text: &str) -> Result<QuiverDoc> {
    let mut name: Option<String> = None;
    let mut shape = SSet2::new();
    let mut framed: Vec<String> = Vec::new();
    let mut dims: BTreeMap<String, usize> = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokenize(raw, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let head = &toks[0];
        let wrap = |col: usize, e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                line: lineno,
                col,
                message: other.to_string(),
            },
        };
        match head.text.as_str() {
            "quiver" => {
                let id = expect_id(&toks, 1, "quiver name", lineno, raw)?;
                no_more(&toks, 2, lineno)?;
                if name.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        col: head.col,
                        message: "a document has exactly one \"quiver\" line".to_string(),
                    });
                }
                name = Some(id.text.clone());
            }
            _ if name.is_none() => {
                return Err(Error::Parse {
                    line: lineno,
                    col: head.col,
                    message: "the document must start with \"quiver NAME\"".to_string(),
                });
            }
            "vertex" => {
                let id = expect_id(&toks, 1, "vertex id", lineno, raw)?;
                let mut framed_here = false;
                if let Some(t) = toks.get(2) {
                    if t.text == "framed" {
                        framed_here = true;
                        no_more(&toks, 3, lineno)?;
                    } else {
                        return Err(Error::Parse {
                            line: lineno,
                            col: t.col,
                            message: format!("expected \"framed\" or end of line, found {:?}", t.text),
                        });
                    }
                }
                shape.add_vertex(&id.text).map_err(|e| wrap(id.col, e))?;
                if framed_here {
                    framed.push(id.text.clone());
                }
            }
            "edge" => {
                let id = expect_id(&toks, 1, "edge id", lineno, raw)?;
                expect_literal(&toks, 2, ":", lineno, raw)?;
                let src = expect_id(&toks, 3, "source vertex", lineno, raw)?;
                expect_literal(&toks, 4, "->", lineno, raw)?;
                let tgt = expect_id(&toks, 5, "target vertex", lineno, raw)?;
                let mut is_identity = false;
                if let Some(t) = toks.get(6) {
                    if t.text == "identity" {
                        is_identity = true;
                        no_more(&toks, 7, lineno)?;
                    } else {
                        return Err(Error::Parse {
                            line: lineno,
                            col: t.col,
                            message: format!(
                                "expected \"identity\" or end of line, found {:?}",
                                t.text
                            ),
                        });
                    }
                }
                if is_identity {
                    if src.text != tgt.text {
                        return Err(Error::Parse {
                            line: lineno,
                            col: tgt.col,
                            message: "an identity edge must be a loop".to_string(),
                        });
                    }
                    shape
                        .add_identity_edge(&id.text, &src.text)
                        .map_err(|e| wrap(id.col, e))?;
                } else {
                    shape
                        .add_edge(&id.text, &src.text, &tgt.text)
                        .map_err(|e| wrap(id.col, e))?;
                }
            }
            "triangle" => {
                let id = expect_id(&toks, 1, "triangle id", lineno, raw)?;
                expect_literal(&toks, 2, ":", lineno, raw)?;
                let first = expect_id(&toks, 3, "first edge", lineno, raw)?;
                expect_literal(&toks, 4, ".", lineno, raw)?;
                let second = expect_id(&toks, 5, "second edge", lineno, raw)?;
                expect_literal(&toks, 6, "=>", lineno, raw)?;
                let long = expect_id(&toks, 7, "long edge", lineno, raw)?;
                no_more(&toks, 8, lineno)?;
                shape
                    .add_triangle(&id.text, &first.text, &second.text, &long.text)
                    .map_err(|e| wrap(id.col, e))?;
            }
            "dim" => {
                let id = expect_id(&toks, 1, "vertex id", lineno, raw)?;
                expect_literal(&toks, 2, "=", lineno, raw)?;
                let num = expect(&toks, 3, "a dimension", lineno, raw)?;
                no_more(&toks, 4, lineno)?;
                let value: usize = num.text.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    col: num.col,
                    message: format!("expected a nonnegative integer, found {:?}", num.text),
                })?;
                if !shape.has_vertex(&id.text) {
                    return Err(Error::Parse {
                        line: lineno,
                        col: id.col,
                        message: format!("dimension for undeclared vertex {:?}", id.text),
                    });
                }
                if dims.insert(id.text.clone(), value).is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        col: id.col,
                        message: format!("duplicate dimension for vertex {:?}", id.text),
                    });
                }
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    col: head.col,
                    message: format!(
                        "unknown directive {other:?} (expected vertex, edge, triangle, or dim)"
                    ),
                });
            }
        }
    }

    let name = name.ok_or_else(|| Error::Parse {
        line: text.lines().count().max(1),
        col: 1,
        message: "the document must contain a \"quiver NAME\" line".to_string(),
    })?;
    let framing = FramingFn::with_framing(&shape, &framed)?;
    QuiverDoc::new(name, shape, framing, dims)
}

/// Canonical text for a document; `parse_doc(print_doc(d)) == d` and
/// printing is idempotent across a parse round trip.
pub fn print_doc(doc: &QuiverDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!("quiver {}\n", doc.name));
    for v in doc.shape.vertices() {
        if doc.framing.is_framing(v) {
            out.push_str(&format!("vertex {v} framed\n"));
        } else {
            out.push_str(&format!("vertex {v}\n"));
        }
    }
    for e in doc.shape.edges() {
        if e.identity {
            out.push_str(&format!("edge {} : {} -> {} identity\n", e.id, e.src, e.tgt));
        } else {
            out.push_str(&format!("edge {} : {} -> {}\n", e.id, e.src, e.tgt));
        }
    }
    for t in doc.shape.triangles() {
        out.push_str(&format!(
            "triangle {} : {} . {} => {}\n",
            t.id, t.first, t.second, t.long
        ));
    }
    for (v, d) in &doc.dims {
        out.push_str(&format!("dim {v} = {d}\n"));
    }
    out
}
