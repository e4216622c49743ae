//! The SGD text format.
//!
//! ```text
//! sgd 1
//! vertex a
//! edge e1 a a
//! crossing x1 over e1 0 under e2 0 sign +
//! ```
//!
//! Line oriented; `#` starts a comment, blank lines are ignored. The
//! version header must be the first non-blank line. Declarations come in
//! the order vertices, edges, crossings.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::diagram::{BuildError, Crossing, Diagram, Edge, Ident, Passage, Sign, Violation};

pub const HEADER: &str = "sgd 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SgdError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: duplicate {kind} identifier `{id}`")]
    Duplicate {
        line: usize,
        kind: &'static str,
        id: Ident,
    },
    #[error("invalid diagram: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Vertices,
    Edges,
    Crossings,
}

impl Section {
    fn name(self) -> &'static str {
        match self {
            Section::Vertices => "vertex",
            Section::Edges => "edge",
            Section::Crossings => "crossing",
        }
    }
}

struct Line<'a> {
    number: usize,
    content: &'a str,
    tokens: Vec<(usize, &'a str)>,
    end_column: usize,
}

impl<'a> Line<'a> {
    fn split(number: usize, raw: &'a str) -> Line<'a> {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in content.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s, &content[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            tokens.push((s, &content[s..]));
        }
        Line {
            number,
            content,
            tokens,
            end_column: content.chars().count() + 1,
        }
    }

    fn error(&self, token: usize, message: impl Into<String>) -> SgdError {
        let column = match self.tokens.get(token) {
            // 1-based character column.
            Some(&(byte, _)) => self.content[..byte].chars().count() + 1,
            None => self.end_column,
        };
        SgdError::Syntax {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn expect_len(&self, n: usize, form: &str) -> Result<(), SgdError> {
        if self.tokens.len() < n {
            Err(self.error(self.tokens.len(), format!("expected `{form}`")))
        } else if self.tokens.len() > n {
            Err(self.error(n, format!("unexpected trailing token, expected `{form}`")))
        } else {
            Ok(())
        }
    }

    fn keyword(&self, i: usize, kw: &str) -> Result<(), SgdError> {
        if self.tokens[i].1 == kw {
            Ok(())
        } else {
            Err(self.error(
                i,
                format!("expected keyword `{kw}`, found `{}`", self.tokens[i].1),
            ))
        }
    }

    fn ident(&self, i: usize) -> Result<Ident, SgdError> {
        Ident::new(self.tokens[i].1)
            .map_err(|_| self.error(i, format!("invalid identifier `{}`", self.tokens[i].1)))
    }

    fn index(&self, i: usize) -> Result<usize, SgdError> {
        let t = self.tokens[i].1;
        if !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.error(i, format!("invalid passage index `{t}`")));
        }
        t.parse()
            .map_err(|_| self.error(i, format!("invalid passage index `{t}`")))
    }
}

/// Parses SGD text without checking diagram invariants beyond identifier
/// uniqueness. Use [`parse_sgd`] for a validated diagram.
pub fn parse_sgd_unchecked(text: &str) -> Result<Diagram, SgdError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut crossings = Vec::new();
    let mut seen_header = false;
    let mut section = Section::Vertices;
    let mut lines_of = HashMap::new();

    for (n, raw) in text.lines().enumerate() {
        let line = Line::split(n + 1, raw);
        if line.tokens.is_empty() {
            continue;
        }
        if !seen_header {
            if line.tokens.len() != 2 || line.tokens[0].1 != "sgd" {
                return Err(line.error(0, "missing `sgd 1` header"));
            }
            if line.tokens[1].1 != "1" {
                return Err(line.error(1, format!("unsupported version `{}`", line.tokens[1].1)));
            }
            seen_header = true;
            continue;
        }

        let kw = line.tokens[0].1;
        let this = match kw {
            "vertex" => Section::Vertices,
            "edge" => Section::Edges,
            "crossing" => Section::Crossings,
            "sgd" => return Err(line.error(0, "duplicate header")),
            other => return Err(line.error(0, format!("unknown declaration `{other}`"))),
        };
        if this < section {
            return Err(line.error(
                0,
                format!(
                    "`{}` declaration after `{}` declarations",
                    this.name(),
                    section.name()
                ),
            ));
        }
        section = this;

        match this {
            Section::Vertices => {
                line.expect_len(2, "vertex <vid>")?;
                let v = line.ident(1)?;
                lines_of.insert(("vertex", v.clone()), line.number);
                vertices.push(v);
            }
            Section::Edges => {
                line.expect_len(4, "edge <eid> <tail> <head>")?;
                let e = Edge::new(line.ident(1)?, line.ident(2)?, line.ident(3)?);
                lines_of.insert(("edge", e.id.clone()), line.number);
                edges.push(e);
            }
            Section::Crossings => {
                let form = "crossing <xid> over <eid> <idx> under <eid> <idx> sign <+|->";
                line.expect_len(10, form)?;
                line.keyword(2, "over")?;
                line.keyword(5, "under")?;
                line.keyword(8, "sign")?;
                let sign = match line.tokens[9].1 {
                    "+" => Sign::Positive,
                    "-" => Sign::Negative,
                    s => return Err(line.error(9, format!("invalid sign `{s}`, expected + or -"))),
                };
                let c = Crossing {
                    id: line.ident(1)?,
                    over: Passage::new(line.ident(3)?, line.index(4)?),
                    under: Passage::new(line.ident(6)?, line.index(7)?),
                    sign,
                };
                lines_of.insert(("crossing", c.id.clone()), line.number);
                crossings.push(c);
            }
        }
    }
    if !seen_header {
        return Err(SgdError::Syntax {
            line: 1,
            column: 1,
            message: "missing `sgd 1` header".into(),
        });
    }

    // `lines_of` keeps the last declaration line, i.e. the duplicate.
    Diagram::from_parts_unchecked(vertices, edges, crossings).map_err(|e| match e {
        BuildError::Duplicate { kind, id } => {
            let line = lines_of.get(&(kind, id.clone())).copied().unwrap_or(0);
            SgdError::Duplicate { line, kind, id }
        }
        BuildError::Invalid(v) => SgdError::Invalid(v),
    })
}

/// Parses and validates SGD text.
pub fn parse_sgd(text: &str) -> Result<Diagram, SgdError> {
    let d = parse_sgd_unchecked(text)?;
    let violations = d.validate();
    if violations.is_empty() {
        Ok(d)
    } else {
        Err(SgdError::Invalid(violations))
    }
}

/// Canonical serialization: identifiers in ascending order, fixed field
/// order, `\n` line endings, no comments.
pub fn serialize_sgd(d: &Diagram) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for v in d.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for e in d.edges() {
        writeln!(out, "edge {} {} {}", e.id, e.tail, e.head).unwrap();
    }
    for c in d.crossings() {
        writeln!(
            out,
            "crossing {} over {} {} under {} {} sign {}",
            c.id,
            c.over.edge,
            c.over.index,
            c.under.edge,
            c.under.index,
            c.sign.symbol()
        )
        .unwrap();
    }
    out
}
