//! Reader for the ground `.lp` dialect this crate emits: facts, rules
//! `head :- body.`, constraints `:- body.`, and cardinality choices
//! `lo { a ; b } hi.`. `%` starts a comment. Statements may span lines;
//! each ends with a period.

use crate::alm::ast::Term;
use crate::asp::program::{AspAtom, AspLiteral, GroundStatement};
use crate::span::Span;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("{span}: {message}")]
    Syntax { span: Span, message: String },
}

fn err(span: Span, message: impl Into<String>) -> LpError {
    LpError::Syntax {
        span,
        message: message.into(),
    }
}

struct Lp {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    col: u32,
}

impl Lp {
    fn new(text: &str) -> Self {
        Lp {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn here(&self) -> Span {
        Span::line(self.line, self.col, self.col)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_trivia();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), LpError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.here(), format!("expected `{c}`")))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_trivia();
        let saved = (self.pos, self.line, self.col);
        for c in s.chars() {
            if self.peek() == Some(c) {
                self.bump();
            } else {
                (self.pos, self.line, self.col) = saved;
                return false;
            }
        }
        true
    }

    fn ident(&mut self) -> Result<String, LpError> {
        self.skip_trivia();
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if out.is_empty() {
            return Err(err(self.here(), "expected identifier"));
        }
        Ok(out)
    }

    fn integer(&mut self) -> Result<i64, LpError> {
        self.skip_trivia();
        let mut out = String::new();
        if self.peek() == Some('-') {
            out.push('-');
            self.bump();
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        out.parse::<i64>()
            .map_err(|_| err(self.here(), "expected integer"))
    }

    fn term(&mut self) -> Result<Term, LpError> {
        self.skip_trivia();
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '-' => Ok(Term::Int(self.integer()?)),
            _ => {
                let name = self.ident()?;
                if self.eat('(') {
                    let mut args = vec![self.term()?];
                    while self.eat(',') {
                        args.push(self.term()?);
                    }
                    self.expect(')')?;
                    Ok(Term::App(name, args))
                } else {
                    Ok(Term::Const(name))
                }
            }
        }
    }

    fn atom(&mut self) -> Result<AspAtom, LpError> {
        self.skip_trivia();
        let strong_neg = self.eat('-');
        let pred = self.ident()?;
        let mut args = Vec::new();
        if self.eat('(') {
            args.push(self.term()?);
            while self.eat(',') {
                args.push(self.term()?);
            }
            self.expect(')')?;
        }
        Ok(AspAtom {
            strong_neg,
            pred,
            args,
        })
    }

    fn literal(&mut self) -> Result<AspLiteral, LpError> {
        if self.eat_str("not ") {
            Ok(AspLiteral::not(self.atom()?))
        } else {
            Ok(AspLiteral::pos(self.atom()?))
        }
    }

    fn body(&mut self) -> Result<Vec<AspLiteral>, LpError> {
        let mut out = vec![self.literal()?];
        while self.eat(',') {
            out.push(self.literal()?);
        }
        Ok(out)
    }

    fn statement(&mut self) -> Result<GroundStatement, LpError> {
        self.skip_trivia();
        // Constraint.
        if self.eat_str(":-") {
            let body = self.body()?;
            self.expect('.')?;
            return Ok(GroundStatement::Constraint { body });
        }
        // Choice with an explicit lower bound, or `{ ... }`.
        let saved = (self.pos, self.line, self.col);
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let lo = self.integer()? as u32;
            if self.eat('{') {
                return self.choice(lo);
            }
            (self.pos, self.line, self.col) = saved;
        }
        if self.eat('{') {
            return self.choice(0);
        }
        let head = self.atom()?;
        if self.eat_str(":-") {
            let body = self.body()?;
            self.expect('.')?;
            Ok(GroundStatement::Rule { head, body })
        } else {
            self.expect('.')?;
            Ok(GroundStatement::Fact(head))
        }
    }

    fn choice(&mut self, lo: u32) -> Result<GroundStatement, LpError> {
        let mut atoms = vec![self.atom()?];
        while self.eat(';') {
            atoms.push(self.atom()?);
        }
        self.expect('}')?;
        self.skip_trivia();
        let hi = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.integer()? as u32
        } else {
            atoms.len() as u32
        };
        let body = if self.eat_str(":-") {
            self.body()?
        } else {
            vec![]
        };
        self.expect('.')?;
        Ok(GroundStatement::Choice {
            lo,
            hi,
            atoms,
            body,
        })
    }
}

/// Parses ground program text into statements.
pub fn parse_lp(text: &str) -> Result<Vec<GroundStatement>, LpError> {
    let mut lp = Lp::new(text);
    let mut out = Vec::new();
    loop {
        lp.skip_trivia();
        if lp.peek().is_none() {
            return Ok(out);
        }
        out.push(lp.statement()?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_statement_kind() {
        let text = "\
% facts
p(a). -q(b,c). r.
1 { s(1) ; s(2) } 1.
p(b) :- p(a), not -q(b,c).
:- p(a), p(b).
";
        let stmts = parse_lp(text).unwrap();
        assert_eq!(stmts.len(), 6);
        assert!(matches!(&stmts[1], GroundStatement::Fact(a) if a.strong_neg));
        assert!(matches!(
            &stmts[3],
            GroundStatement::Choice { lo: 1, hi: 1, atoms, .. } if atoms.len() == 2
        ));
    }

    #[test]
    fn round_trips_through_display() {
        let text = "f(g(a),1) :- not h, -k(2).\n";
        let stmts = parse_lp(text).unwrap();
        let printed = format!("{}\n", stmts[0]);
        assert_eq!(parse_lp(&printed).unwrap(), stmts);
    }

    #[test]
    fn bad_statement_is_error() {
        assert!(parse_lp("p(a").is_err());
        assert!(parse_lp("p(a),").is_err());
    }
}
