//! Canonical printer for ALM trees.
//!
//! Printing rules are bit-exact: one statement per line, two-space indent
//! per nesting level, no trailing periods, `, ` after commas in argument
//! and name lists, ` x ` between argument sorts, and `-` for classical
//! negation. `print` followed by `parse` yields an equal tree.

use crate::alm::ast::*;
use std::fmt::Write;

pub fn term(t: &Term) -> String {
    match t {
        Term::Const(c) => c.clone(),
        Term::Int(i) => i.to_string(),
        Term::Var(v) => v.clone(),
        Term::App(head, args) => format!("{}({})", head, join_terms(args)),
    }
}

fn join_terms(ts: &[Term]) -> String {
    ts.iter().map(term).collect::<Vec<_>>().join(", ")
}

pub fn literal(l: &Literal) -> String {
    let sign = if l.positive { "" } else { "-" };
    let body = match &l.atom {
        AlmAtom::Apply {
            symbol,
            args,
            value,
        } => {
            let call = if args.is_empty() {
                symbol.clone()
            } else {
                format!("{}({})", symbol, join_terms(args))
            };
            match value {
                Some(v) => format!("{} = {}", call, term(v)),
                None => call,
            }
        }
        AlmAtom::Instance { term: t, sort } => format!("instance({}, {})", term(t), sort),
        AlmAtom::Cmp { op, left, right } => {
            let op = match op {
                CmpOp::Eq => "=",
                CmpOp::Neq => "!=",
            };
            format!("{} {} {}", term(left), op, term(right))
        }
    };
    format!("{sign}{body}")
}

fn body_text(body: &[Literal]) -> String {
    body.iter().map(literal).collect::<Vec<_>>().join(", ")
}

pub fn axiom(a: &Axiom) -> String {
    match a {
        Axiom::DynamicCausal {
            trigger,
            head,
            body,
            ..
        } => {
            if body.is_empty() {
                format!("occurs({}) causes {}", trigger, literal(head))
            } else {
                format!(
                    "occurs({}) causes {} if {}",
                    trigger,
                    literal(head),
                    body_text(body)
                )
            }
        }
        Axiom::Executability { trigger, body, .. } => {
            format!("impossible occurs({}) if {}", trigger, body_text(body))
        }
        Axiom::StateConstraint { head, body, .. } => match head {
            Some(h) => format!("{} if {}", literal(h), body_text(body)),
            None => format!("false if {}", body_text(body)),
        },
        Axiom::Definition { head, body, .. } => {
            format!("{} if {}", literal(head), body_text(body))
        }
    }
}

fn signature(arg_sorts: &[String], range: &str) -> String {
    if arg_sorts.is_empty() {
        range.to_string()
    } else {
        format!("{} -> {}", arg_sorts.join(" x "), range)
    }
}

fn function_decl(f: &FunctionDecl) -> String {
    let kind = match f.kind {
        FunctionKind::BasicFluent => "fluent basic",
        FunctionKind::DefinedFluent => "fluent defined",
        FunctionKind::BasicStatic => "static basic",
        FunctionKind::DefinedStatic => "static defined",
    };
    format!("{} {} : {}", kind, f.name, signature(&f.arg_sorts, &f.range))
}

fn push_module(out: &mut String, m: &ModuleDecl, indent: usize) {
    let pad = "  ".repeat(indent);
    let inner = "  ".repeat(indent + 1);
    let nested = "  ".repeat(indent + 2);
    let deep = "  ".repeat(indent + 3);
    let _ = writeln!(out, "{pad}module {}", m.name);
    if !m.depends_on.is_empty() {
        let _ = writeln!(out, "{inner}depends on {}", m.depends_on.join(", "));
    }
    for sd in &m.sorts {
        let _ = writeln!(
            out,
            "{inner}{} :: {}",
            sd.names.join(", "),
            sd.parents.join(", ")
        );
        if !sd.attributes.is_empty() {
            let _ = writeln!(out, "{nested}attributes");
            for attr in &sd.attributes {
                let _ = writeln!(
                    out,
                    "{deep}{} : {}",
                    attr.name,
                    signature(&attr.arg_sorts, &attr.range)
                );
            }
        }
    }
    for f in &m.functions {
        let _ = writeln!(out, "{inner}{}", function_decl(f));
    }
    for a in &m.axioms {
        let _ = writeln!(out, "{inner}{}", axiom(a));
    }
}

/// Prints a single module declaration.
pub fn module(m: &ModuleDecl) -> String {
    let mut out = String::new();
    push_module(&mut out, m, 0);
    out
}

/// Prints a sequence of modules separated by blank lines.
pub fn modules(ms: &[ModuleDecl]) -> String {
    let mut out = String::new();
    for (i, m) in ms.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        push_module(&mut out, m, 0);
    }
    out
}

/// Prints a complete system description.
pub fn system_description(sd: &SystemDescription) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "system description {}", sd.name);
    let _ = writeln!(out, "  theory {}", sd.theory_name);
    for imp in &sd.imports {
        let _ = writeln!(
            out,
            "    import from {} module {}",
            imp.library, imp.module
        );
    }
    for m in &sd.modules {
        push_module(&mut out, m, 2);
    }
    let _ = writeln!(out, "  structure {}", sd.structure.name);
    if !sd.structure.instances.is_empty() {
        let _ = writeln!(out, "    instances");
        for inst in &sd.structure.instances {
            let _ = writeln!(out, "      {} in {}", term(&inst.head), inst.sort);
            for a in &inst.assigns {
                if a.functional && a.args.len() == 1 && a.value == Term::boolean(true) {
                    let _ = writeln!(out, "        {} = {}", a.attr, term(&a.args[0]));
                } else {
                    let _ = writeln!(
                        out,
                        "        {}({}) = {}",
                        a.attr,
                        join_terms(&a.args),
                        term(&a.value)
                    );
                }
            }
        }
    }
    if !sd.structure.statics.is_empty() {
        let _ = writeln!(out, "    statics");
        for st in &sd.structure.statics {
            if st.args.is_empty() {
                let _ = writeln!(out, "      {} = {}", st.symbol, term(&st.value));
            } else {
                let _ = writeln!(
                    out,
                    "      {}({}) = {}",
                    st.symbol,
                    join_terms(&st.args),
                    term(&st.value)
                );
            }
        }
    }
    out
}
