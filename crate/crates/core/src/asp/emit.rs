//! Text emission: one line per ground statement, in the canonical order
//! produced by grounding (facts and rules interleave in lexicographic
//! statement order within their kind). Classical negation prints as `-`,
//! default negation as `not`, constraints as headless rules, and choices
//! with cardinality bounds. The output loads in mainstream answer-set
//! solvers and re-reads through this crate's own reader.

use crate::asp::program::{AspProgram, GroundStatement};
use crate::engine::ground::ground;
use std::fmt::Write;

/// Emits the grounded program text. Deterministic for equal inputs.
pub fn emit_text(program: &AspProgram) -> String {
    let statements = ground(program);
    emit_statements(&statements)
}

pub fn emit_statements(statements: &[GroundStatement]) -> String {
    let mut facts = Vec::new();
    let mut choices = Vec::new();
    let mut rules = Vec::new();
    let mut constraints = Vec::new();
    for s in statements {
        match s {
            GroundStatement::Fact(_) => facts.push(s),
            GroundStatement::Choice { .. } => choices.push(s),
            GroundStatement::Rule { .. } => rules.push(s),
            GroundStatement::Constraint { .. } => constraints.push(s),
        }
    }
    let mut out = String::new();
    for group in [facts, choices, rules, constraints] {
        for s in group {
            let _ = writeln!(out, "{s}");
        }
    }
    out
}

/// Conventional output file name: `<sd-name>.h<horizon>.lp`.
pub fn output_file_name(program: &AspProgram) -> String {
    format!("{}.h{}.lp", program.name, program.horizon)
}
