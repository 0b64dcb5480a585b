//! The line-oriented graph description format.
//!
//! ```text
//! graph T          # header, exactly once, before any declaration
//! vertex v
//! vertex w
//! edge e v v       # edge <id> <source> <range>
//! edge f v w
//! ```

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in code.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &code[s..i], column: code[..s].chars().count() + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &code[s..], column: code[..s].chars().count() + 1 });
    }
    out
}

/// Parses a graph description. Declaration order is preserved.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut builder: Option<GraphBuilder> = None;
    let mut last_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        let syntax = |column: usize, message: String| Error::Syntax { line: line_no, column, message };
        let ident = |t: &Token<'_>| -> Result<()> {
            if is_identifier(t.text) {
                Ok(())
            } else {
                Err(syntax(t.column, format!("invalid identifier `{}`", t.text)))
            }
        };
        let arity = |n: usize| -> Result<()> {
            match toks.len().cmp(&(n + 1)) {
                std::cmp::Ordering::Equal => Ok(()),
                std::cmp::Ordering::Less => Err(syntax(
                    line.chars().count() + 1,
                    format!("`{}` expects {n} argument(s)", head.text),
                )),
                std::cmp::Ordering::Greater => Err(syntax(toks[n + 1].column, "unexpected token".into())),
            }
        };
        match (head.text, builder.as_mut()) {
            ("graph", None) => {
                arity(1)?;
                ident(&toks[1])?;
                builder = Some(Graph::builder(toks[1].text));
            }
            ("graph", Some(_)) => return Err(syntax(head.column, "duplicate `graph` header".into())),
            ("vertex" | "edge", None) => {
                return Err(syntax(head.column, "expected `graph <name>` header first".into()))
            }
            ("vertex", Some(b)) => {
                arity(1)?;
                ident(&toks[1])?;
                b.vertex(toks[1].text)?;
            }
            ("edge", Some(b)) => {
                arity(3)?;
                for t in &toks[1..] {
                    ident(t)?;
                }
                b.edge(toks[1].text, toks[2].text, toks[3].text)?;
            }
            (other, _) => return Err(syntax(head.column, format!("unknown keyword `{other}`"))),
        }
    }
    builder.map(GraphBuilder::finish).ok_or(Error::Syntax {
        line: last_line.max(1),
        column: 1,
        message: "missing `graph <name>` header".into(),
    })
}
