//! Grounding: replacing schema variables by sort-table constants and the
//! step variable by `0..=horizon` (occurrence steps stop one earlier).
//! Guards are evaluated per substitution; failing instances are dropped.
//! The output is deduplicated and canonically ordered.

use crate::alm::ast::{CmpOp, Term};
use crate::asp::program::*;
use std::collections::{BTreeMap, BTreeSet};

/// Grounds a program into an ordered, deduplicated statement list.
pub fn ground(program: &AspProgram) -> Vec<GroundStatement> {
    let mut out: BTreeSet<GroundStatement> = BTreeSet::new();
    for fact in &program.facts {
        out.insert(GroundStatement::Fact(fact.clone()));
    }
    for stmt in &program.ground_rules {
        out.insert(stmt.clone());
    }
    for schema in &program.schemas {
        ground_schema(schema, program, &mut out);
    }
    out.into_iter().collect()
}

fn ground_schema(
    schema: &RuleSchema,
    program: &AspProgram,
    out: &mut BTreeSet<GroundStatement>,
) {
    let domains: Vec<(String, Vec<Term>)> = schema
        .vars
        .iter()
        .map(|(v, sorts)| {
            let mut candidates: Vec<Term> = sorts
                .first()
                .and_then(|s| program.sort_tables.get(s))
                .cloned()
                .unwrap_or_default();
            for s in &sorts[1..] {
                let table = program.sort_tables.get(s);
                candidates.retain(|t| table.is_some_and(|tab| tab.contains(t)));
            }
            (v.clone(), candidates)
        })
        .collect();
    let (max_offset, has_occurs) = schema.step_profile();
    let steps: Vec<u32> = match max_offset {
        None => vec![0],
        Some(k) => {
            let mut hi = program.horizon.saturating_sub(u32::from(k));
            if has_occurs {
                hi = hi.min(program.horizon.saturating_sub(1));
            }
            if program.horizon == 0 && has_occurs {
                vec![]
            } else {
                (0..=hi).collect()
            }
        }
    };
    let mut env: BTreeMap<String, Term> = BTreeMap::new();
    ground_rec(schema, program, &domains, 0, &steps, &mut env, out);
}

fn ground_rec(
    schema: &RuleSchema,
    program: &AspProgram,
    domains: &[(String, Vec<Term>)],
    idx: usize,
    steps: &[u32],
    env: &mut BTreeMap<String, Term>,
    out: &mut BTreeSet<GroundStatement>,
) {
    if idx == domains.len() {
        for &step in steps {
            if !guards_hold(schema, program, env, step) {
                continue;
            }
            out.insert(instantiate(schema, env, step));
        }
        return;
    }
    let (name, domain) = &domains[idx];
    for value in domain {
        env.insert(name.clone(), value.clone());
        ground_rec(schema, program, domains, idx + 1, steps, env, out);
    }
    env.remove(name);
}

fn guards_hold(
    schema: &RuleSchema,
    program: &AspProgram,
    env: &BTreeMap<String, Term>,
    step: u32,
) -> bool {
    schema.guards.iter().all(|g| match g {
        Guard::Member {
            term,
            sort,
            positive,
        } => {
            let t = eval(term, env, step);
            let member = program
                .sort_tables
                .get(sort)
                .is_some_and(|tab| tab.contains(&t));
            member == *positive
        }
        Guard::Cmp { op, left, right } => {
            let l = eval(left, env, step);
            let r = eval(right, env, step);
            match op {
                CmpOp::Eq => l == r,
                CmpOp::Neq => l != r,
            }
        }
    })
}

fn eval(term: &SchemaTerm, env: &BTreeMap<String, Term>, step: u32) -> Term {
    match term {
        SchemaTerm::Ground(t) => t.clone(),
        SchemaTerm::Var(v) => env.get(v).cloned().unwrap_or_else(|| Term::Var(v.clone())),
        SchemaTerm::Step(k) => Term::Int(i64::from(step + u32::from(*k))),
    }
}

fn instantiate(
    schema: &RuleSchema,
    env: &BTreeMap<String, Term>,
    step: u32,
) -> GroundStatement {
    let body: Vec<AspLiteral> = schema
        .body
        .iter()
        .map(|l| AspLiteral {
            default_neg: l.default_neg,
            atom: l.atom.substitute(env, step),
        })
        .collect();
    match &schema.head {
        SchemaHead::False => GroundStatement::Constraint { body },
        SchemaHead::Atom(a) => GroundStatement::Rule {
            head: a.substitute(env, step),
            body,
        },
        SchemaHead::Choice { lo, hi, atoms } => GroundStatement::Choice {
            lo: *lo,
            hi: *hi,
            atoms: atoms.iter().map(|a| a.substitute(env, step)).collect(),
            body,
        },
    }
}
