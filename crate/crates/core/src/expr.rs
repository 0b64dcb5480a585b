//! Element expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := (scalar '*')? factor ('*' factor)*
//! factor := atom "'"*
//! atom   := identifier | '(' expr ')'
//! scalar := '-'? integer ('/' positive-integer)?
//! ```
//!
//! A postfix `'` applies the involution, so `e'` is the ghost edge `e*`.
//! Products of non-composable factors evaluate to zero. As an extension a
//! term may also start with a bare `-` (`-e` means `-1*e`), which is how
//! the printer writes a leading negative term. Identifiers may contain `:`
//! and `.` after the first character so derived graphs can be addressed.

use std::sync::Arc;

use num::bigint::BigInt;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::graph::{Generator, Graph};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Prime,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let advance = |n: usize, col: &mut usize| *col += n;
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut col);
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '\'' => Some(Tok::Prime),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, l0, c0));
            advance(1, &mut col);
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), l0, c0));
            advance(i - start, &mut col);
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || matches!(chars[i], '_' | ':' | '.')) {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), l0, c0));
            advance(i - start, &mut col);
        } else {
            return Err(Error::Syntax { line: l0, column: c0, message: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, line, col));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    graph: &'a Arc<Graph>,
    field: Field,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (_, line, column) = self.toks[self.pos];
        Error::Syntax { line, column, message: message.into() }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut coeff = self.field.one();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        if let Tok::Int(_) = self.peek() {
            let Tok::Int(num) = self.bump() else { unreachable!() };
            let den = if *self.peek() == Tok::Slash {
                self.bump();
                match self.bump() {
                    Tok::Int(d) if d > BigInt::from(0) => d,
                    _ => {
                        self.pos -= 1;
                        return Err(self.error("expected positive denominator"));
                    }
                }
            } else {
                BigInt::from(1)
            };
            coeff = self.field.from_fraction(&num, &den)?;
            // The printer writes the zero element as a bare `0`.
            if *self.peek() != Tok::Star && num == BigInt::from(0) {
                return Ok(Element::zero(self.graph, self.field));
            }
            self.expect(Tok::Star, "`*` after scalar")?;
        }
        if negative {
            coeff = -coeff;
        }
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc.scale(&coeff))
    }

    fn factor(&mut self) -> Result<Element> {
        let mut x = self.atom()?;
        while *self.peek() == Tok::Prime {
            self.bump();
            x = x.involution();
        }
        Ok(x)
    }

    fn atom(&mut self) -> Result<Element> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(match self.graph.generator(&name)? {
                    Generator::Vertex(v) => Element::vertex(self.graph, self.field, v),
                    Generator::Edge(e) => Element::edge(self.graph, self.field, e),
                })
            }
            Tok::LParen => {
                self.bump();
                let x = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(x)
            }
            Tok::Int(_) if matches!(self.peek_at(1), Tok::Star) => {
                Err(self.error("scalar only allowed at the start of a term"))
            }
            _ => Err(self.error("expected identifier or `(`")),
        }
    }
}

/// Parses an expression over `graph` with rational coefficients.
pub fn parse_element(graph: &Arc<Graph>, text: &str) -> Result<Element> {
    parse_element_in(graph, Field::Rationals, text)
}

pub fn parse_element_in(graph: &Arc<Graph>, field: Field, text: &str) -> Result<Element> {
    let mut p = Parser { toks: lex(text)?, pos: 0, graph, field };
    let x = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    fn t() -> Arc<Graph> {
        Arc::new(builders::toeplitz())
    }

    fn nf(g: &Arc<Graph>, s: &str) -> String {
        parse_element(g, s).unwrap().to_string()
    }

    #[test]
    fn cuntz_krieger_examples() {
        let g = t();
        assert_eq!(nf(&g, "e' * e"), "v");
        assert_eq!(nf(&g, "e' * f"), "0");
        assert_eq!(nf(&g, "e*e' + f*f'"), "v");
        assert_eq!(nf(&g, "v*w"), "0");
    }

    #[test]
    fn primes_and_parentheses() {
        let g = t();
        assert_eq!(nf(&g, "(e*f)'"), "f'*e'");
        assert_eq!(nf(&g, "(e*f)''"), "e*f");
        assert_eq!(nf(&g, "(e*f)*(e*f)'"), "e*e' - e*e*e'*e'");
        assert_eq!(nf(&g, "f*f'"), "v - e*e'");
    }

    #[test]
    fn scalars() {
        let g = t();
        assert_eq!(nf(&g, "2*e - 1/2*e"), "3/2*e");
        assert_eq!(nf(&g, "-3*w + e"), "-3*w + e");
        assert_eq!(nf(&g, "-w"), "-w");
        assert_eq!(nf(&g, "e - e"), "0");
        let f5 = parse_element_in(&g, Field::Prime(5), "7*e").unwrap();
        assert_eq!(f5.to_string(), "2*e");
    }

    #[test]
    fn printer_round_trips() {
        let g = t();
        for s in ["v - e*e'", "-3*w + 1/2*e", "e*e' - e*e*e'*e'", "0 * v"] {
            let Ok(x) = parse_element(&g, s) else { continue };
            assert_eq!(parse_element(&g, &x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn errors() {
        let g = t();
        assert_eq!(parse_element(&g, "x").unwrap_err(), Error::UnknownIdentifier("x".into()));
        assert!(matches!(parse_element(&g, "e +"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_element(&g, "(e"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_element(&g, "e $ f"), Err(Error::Syntax { line: 1, column: 3, .. })));
        assert!(matches!(parse_element(&g, "2 e"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_element(&g, "1/0*e"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_element(&g, "e*2*f"), Err(Error::Syntax { .. })));
    }
}
