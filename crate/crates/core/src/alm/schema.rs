//! Instance schema expansion.
//!
//! A declaration like `go(X, Y) in move` with `actor = X`, `dest = Y`
//! stands for one ground instance per combination of values for its
//! variables. Variable sorts come from the attribute slots the variables
//! occupy; a variable not mentioned in any assignment ranges over
//! `universe`. Expansion quantifies over the ground instances declared in
//! the structure, so the result contains no schemas and re-running it is
//! the identity.

use crate::alm::ast::*;
use crate::alm::sorts::Symbols;
use crate::alm::validate::{attribute_slot_sorts, Diagnostic};
use std::collections::BTreeMap;

/// Replaces every instance schema by its ground instances. Returns the
/// expanded structure plus warnings (a schema variable whose sort has no
/// instances expands to nothing).
pub fn expand_schemas(structure: &Structure, symbols: &Symbols) -> (Structure, Vec<Diagnostic>) {
    let mut out = Structure {
        name: structure.name.clone(),
        instances: Vec::new(),
        statics: structure.statics.clone(),
    };
    let mut warnings = Vec::new();
    for inst in &structure.instances {
        if !inst.is_schema() {
            if !out.instances.contains(inst) {
                out.instances.push(inst.clone());
            }
            continue;
        }
        let mut vars = Vec::new();
        inst.head.variables(&mut vars);
        for a in &inst.assigns {
            for arg in &a.args {
                arg.variables(&mut vars);
            }
        }
        let domains: Vec<(String, Vec<Term>)> = vars
            .iter()
            .map(|v| (v.clone(), candidates(v, inst, symbols)))
            .collect();
        if let Some((v, _)) = domains.iter().find(|(_, d)| d.is_empty()) {
            warnings.push(Diagnostic {
                code: "empty-sort",
                message: format!(
                    "schema `{}` variable `{v}` ranges over a sort with no instances",
                    crate::alm::print::term(&inst.head)
                ),
                span: inst.span,
            });
            continue;
        }
        let mut assignment: BTreeMap<String, Term> = BTreeMap::new();
        expand_rec(inst, &domains, 0, &mut assignment, &mut out.instances);
    }
    (out, warnings)
}

/// Ground instances admissible for schema variable `v`: the intersection
/// of the sorts of every attribute slot it occupies, or all of `universe`
/// when it occupies none.
fn candidates(v: &str, inst: &InstanceDecl, symbols: &Symbols) -> Vec<Term> {
    let mut sorts: Vec<String> = Vec::new();
    for a in &inst.assigns {
        let Some(sig) = symbols.attribute_on(&inst.sort, &a.attr) else {
            continue;
        };
        let slots = attribute_slot_sorts(&sig.decl);
        for (arg, sort) in a.args.iter().zip(&slots) {
            if matches!(arg, Term::Var(name) if name == v) {
                sorts.push(sort.clone());
            }
        }
    }
    if sorts.is_empty() {
        sorts.push(SORT_UNIVERSE.to_string());
    }
    let first = symbols.hierarchy.instances_of(&sorts[0]);
    first
        .into_iter()
        .filter(|t| sorts[1..].iter().all(|s| symbols.hierarchy.is_instance_of(t, s)))
        .collect()
}

fn expand_rec(
    inst: &InstanceDecl,
    domains: &[(String, Vec<Term>)],
    idx: usize,
    assignment: &mut BTreeMap<String, Term>,
    out: &mut Vec<InstanceDecl>,
) {
    if idx == domains.len() {
        let ground = InstanceDecl {
            head: substitute(&inst.head, assignment),
            sort: inst.sort.clone(),
            assigns: inst
                .assigns
                .iter()
                .map(|a| AttrAssign {
                    attr: a.attr.clone(),
                    args: a.args.iter().map(|t| substitute(t, assignment)).collect(),
                    value: substitute(&a.value, assignment),
                    functional: a.functional,
                    span: a.span,
                })
                .collect(),
            span: inst.span,
        };
        if !out.contains(&ground) {
            out.push(ground);
        }
        return;
    }
    let (name, domain) = &domains[idx];
    for value in domain {
        assignment.insert(name.clone(), value.clone());
        expand_rec(inst, domains, idx + 1, assignment, out);
    }
    assignment.remove(name);
}

pub fn substitute(t: &Term, assignment: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(v) => assignment.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::App(head, args) => Term::App(
            head.clone(),
            args.iter().map(|a| substitute(a, assignment)).collect(),
        ),
        _ => t.clone(),
    }
}
