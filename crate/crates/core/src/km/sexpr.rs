//! S-expression reader and printer for `.km` files.
//!
//! Atoms are symbols (case preserved, including keyword symbols like
//! `:triple` and starred markers like `*Inertial-Fluent`), double-quoted
//! strings, and integers. Comments run from `;` to end of line.

use crate::span::Span;
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SexprError {
    #[error("{span}: unbalanced parenthesis")]
    UnbalancedParen { span: Span },
    #[error("{span}: unterminated string")]
    UnterminatedString { span: Span },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExpr {
    Sym(String, Span),
    Str(String, Span),
    Int(i64, Span),
    List(Vec<SExpr>, Span),
}

impl SExpr {
    pub fn span(&self) -> Span {
        match self {
            SExpr::Sym(_, s) | SExpr::Str(_, s) | SExpr::Int(_, s) | SExpr::List(_, s) => *s,
        }
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self {
            SExpr::Sym(s, _) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items, _) => Some(items),
            _ => None,
        }
    }

    /// True when this is the symbol `word`.
    pub fn is_sym(&self, word: &str) -> bool {
        self.as_sym() == Some(word)
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Sym(s, _) => write!(f, "{s}"),
            SExpr::Str(s, _) => write!(f, "\"{s}\""),
            SExpr::Int(n, _) => write!(f, "{n}"),
            SExpr::List(items, _) => {
                write!(f, "(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, ")")
            }
        }
    }
}

pub fn print_sexprs(exprs: &[SExpr]) -> String {
    exprs
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

struct Reader<'a> {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    col: u32,
    _text: &'a str,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            _text: text,
        }
    }

    fn here(&self) -> Span {
        Span::line(self.line, self.col, self.col)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some(';') => {
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

    fn expr(&mut self) -> Result<SExpr, SexprError> {
        self.skip_trivia();
        let span = self.here();
        match self.peek() {
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.peek() {
                        Some(')') => {
                            self.bump();
                            return Ok(SExpr::List(items, span));
                        }
                        Some(_) => items.push(self.expr()?),
                        None => return Err(SexprError::UnbalancedParen { span }),
                    }
                }
            }
            Some(')') => Err(SexprError::UnbalancedParen { span: self.here() }),
            Some('"') => {
                self.bump();
                let mut out = String::new();
                loop {
                    match self.bump() {
                        Some('"') => return Ok(SExpr::Str(out, span)),
                        Some(c) => out.push(c),
                        None => return Err(SexprError::UnterminatedString { span }),
                    }
                }
            }
            Some(_) => {
                let mut out = String::new();
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == '"' || c == ';' {
                        break;
                    }
                    out.push(c);
                    self.bump();
                }
                if let Ok(n) = out.parse::<i64>() {
                    Ok(SExpr::Int(n, span))
                } else {
                    Ok(SExpr::Sym(out, span))
                }
            }
            None => Err(SexprError::UnbalancedParen { span }),
        }
    }
}

/// Parses a whole file into its top-level s-expressions.
pub fn parse_sexprs(text: &str) -> Result<Vec<SExpr>, SexprError> {
    let mut reader = Reader::new(text);
    let mut out = Vec::new();
    loop {
        reader.skip_trivia();
        if reader.peek().is_none() {
            return Ok(out);
        }
        out.push(reader.expr()?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_list_with_string_leaf() {
        let exprs = parse_sexprs(r#"(a (b "c"))"#).unwrap();
        assert_eq!(exprs.len(), 1);
        let items = exprs[0].as_list().unwrap();
        assert!(items[0].is_sym("a"));
        let inner = items[1].as_list().unwrap();
        assert_eq!(inner[1], SExpr::Str("c".into(), Span::default()));
    }

    #[test]
    fn figure_slot_definition_shape() {
        let text = "\
(is-at has
  (instance-of (Spatial-Relation))
  (domain (Spatial-Entity))
  (range (Spatial-Entity))
  (cardinality (N-to-N))
  (fluent-status (*Inertial-Fluent)))";
        let exprs = parse_sexprs(text).unwrap();
        assert_eq!(exprs.len(), 1);
        assert_eq!(exprs[0].as_list().unwrap().len(), 7);
    }

    #[test]
    fn unbalanced_is_error() {
        assert!(matches!(
            parse_sexprs("(a (b)"),
            Err(SexprError::UnbalancedParen { .. })
        ));
        assert!(parse_sexprs("a) b").is_err());
    }

    #[test]
    fn strings_preserve_case_and_comments_skipped() {
        let exprs = parse_sexprs("; header\n(\"CamelCase\" Be-Obstructed :triple)").unwrap();
        let items = exprs[0].as_list().unwrap();
        assert_eq!(items[0], SExpr::Str("CamelCase".into(), Span::default()));
        assert!(items[1].is_sym("Be-Obstructed"));
        assert!(items[2].is_sym(":triple"));
    }

    #[test]
    fn print_parse_identity() {
        let text = r#"(Obstruct has (superclasses (Make-Inaccessible)) (wn20-synset ((:set (:triple "obstruct" 2 "v")))))"#;
        let exprs = parse_sexprs(text).unwrap();
        let printed = print_sexprs(&exprs);
        assert_eq!(parse_sexprs(&printed).unwrap(), exprs);
    }
}
