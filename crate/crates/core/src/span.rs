//! Source positions for diagnostics.
//!
//! Every statement-level AST node carries a [`Span`]. Spans deliberately
//! compare equal to each other: two ASTs that differ only in where their
//! text came from are the same tree, which is what round-trip tests and
//! declaration deduplication need.

use std::fmt;

/// A half-open region of source text, 1-based lines and columns.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub line: u32,
    pub col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl Span {
    pub fn new(line: u32, col: u32, end_line: u32, end_col: u32) -> Self {
        Span {
            line,
            col,
            end_line,
            end_col,
        }
    }

    /// Span covering a whole 1-based line from `col` to `end_col`.
    pub fn line(line: u32, col: u32, end_col: u32) -> Self {
        Span::new(line, col, line, end_col)
    }
}

// Spans are metadata: they never participate in structural equality.
impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

impl std::hash::Hash for Span {
    fn hash<H: std::hash::Hasher>(&self, _: &mut H) {}
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}
