//! Semantic validation of system descriptions.
//!
//! Validation is pure and never fails: it returns a report of diagnostics,
//! empty exactly when every well-formedness invariant holds. Callers that
//! need a hard gate (like the ASP compiler) check `report.is_empty()`.

use crate::alm::ast::*;
use crate::alm::flatten;
use crate::alm::sorts::Symbols;
use crate::span::Span;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: &'static str,
    pub message: String,
    pub span: Span,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.span, self.code, self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.diagnostics.is_empty()
    }

    fn push(&mut self, code: &'static str, span: Span, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            code,
            message: message.into(),
            span,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.diagnostics {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Validates a system description whose imports have been resolved.
/// The theory is merged (optional modules excluded) and checked together
/// with the structure.
pub fn validate(sd: &SystemDescription) -> ValidationReport {
    let mut report = ValidationReport::default();
    for imp in &sd.imports {
        report.push(
            "unresolved-import",
            imp.span,
            format!("import of `{}` has not been resolved", imp.module),
        );
    }
    let merged = flatten::merge_all(&sd.modules, false);
    let symbols = Symbols::build(&merged, &sd.structure);
    check_sorts(&merged, &symbols, &mut report);
    check_declarations(&merged, &symbols, &mut report);
    check_structure(&sd.structure, &symbols, &mut report);
    for axiom in &merged.axioms {
        check_axiom(axiom, &symbols, &mut report);
    }
    report
}

/// Validates a merged module against an empty structure. Used for library
/// integrity checks.
pub fn validate_module(module: &ModuleDecl) -> ValidationReport {
    let sd = SystemDescription {
        name: module.name.clone(),
        theory_name: module.name.clone(),
        imports: vec![],
        modules: vec![module.clone()],
        structure: Structure {
            name: module.name.clone(),
            ..Default::default()
        },
    };
    validate(&sd)
}

fn check_sorts(module: &ModuleDecl, symbols: &Symbols, report: &mut ValidationReport) {
    if symbols.hierarchy.is_cyclic() {
        report.push("sort-cycle", module.span, "sort cycle in the hierarchy");
    }
    for decl in &module.sorts {
        for name in &decl.names {
            if name == SORT_UNIVERSE || name == SORT_BOOLEANS {
                report.push(
                    "reserved-sort",
                    decl.span,
                    format!("`{name}` is predefined and cannot be redeclared"),
                );
            }
            if name == SORT_ACTIONS
                && decl.parents.iter().any(|p| p != SORT_UNIVERSE)
            {
                report.push(
                    "reserved-sort",
                    decl.span,
                    "`actions` may only be redeclared under `universe`",
                );
            }
        }
        for parent in &decl.parents {
            if !symbols.hierarchy.is_declared(parent) {
                report.push(
                    "unknown-sort",
                    decl.span,
                    format!("parent sort `{parent}` is not declared"),
                );
            }
        }
    }
}

fn check_declarations(module: &ModuleDecl, symbols: &Symbols, report: &mut ValidationReport) {
    let mut fn_sigs: BTreeMap<&str, &FunctionDecl> = BTreeMap::new();
    for f in &module.functions {
        for s in f.arg_sorts.iter().chain([&f.range]) {
            if !symbols.hierarchy.is_declared(s) {
                report.push(
                    "unknown-sort",
                    f.span,
                    format!("function `{}` references undeclared sort `{s}`", f.name),
                );
            }
        }
        if f.kind.is_defined() && !f.boolean() {
            report.push(
                "defined-range",
                f.span,
                format!("defined function `{}` must have range booleans", f.name),
            );
        }
        match fn_sigs.get(f.name.as_str()) {
            Some(prev) if *prev != f => {
                report.push(
                    "signature-conflict",
                    f.span,
                    format!("function `{}` redeclared with a different signature", f.name),
                );
            }
            _ => {
                fn_sigs.insert(&f.name, f);
            }
        }
        if symbols.attributes.contains_key(&f.name) {
            report.push(
                "signature-conflict",
                f.span,
                format!("`{}` is declared both as a function and an attribute", f.name),
            );
        }
    }
    let mut attr_sigs: BTreeMap<&str, &AttributeDecl> = BTreeMap::new();
    for sd in &module.sorts {
        for attr in &sd.attributes {
            for s in attr.arg_sorts.iter().chain([&attr.range]) {
                if !symbols.hierarchy.is_declared(s) {
                    report.push(
                        "unknown-sort",
                        attr.span,
                        format!("attribute `{}` references undeclared sort `{s}`", attr.name),
                    );
                }
            }
            match attr_sigs.get(attr.name.as_str()) {
                Some(prev) if **prev != *attr => {
                    report.push(
                        "signature-conflict",
                        attr.span,
                        format!(
                            "attribute `{}` redeclared with a different signature",
                            attr.name
                        ),
                    );
                }
                _ => {
                    attr_sigs.insert(&attr.name, attr);
                }
            }
        }
    }
}

/// The sorts of the relational slots of an attribute: declared argument
/// sorts plus, for functional attributes, the range.
pub fn attribute_slot_sorts(decl: &AttributeDecl) -> Vec<String> {
    let mut slots = decl.arg_sorts.clone();
    if decl.functional() {
        slots.push(decl.range.clone());
    }
    slots
}

fn term_in_sort(symbols: &Symbols, t: &Term, sort: &str) -> bool {
    symbols.hierarchy.is_instance_of(t, sort)
}

fn check_structure(structure: &Structure, symbols: &Symbols, report: &mut ValidationReport) {
    for inst in &structure.instances {
        if !symbols.hierarchy.is_declared(&inst.sort) {
            report.push(
                "unknown-sort",
                inst.span,
                format!("instance declared in undeclared sort `{}`", inst.sort),
            );
            continue;
        }
        if inst.sort == SORT_BOOLEANS {
            report.push(
                "reserved-sort",
                inst.span,
                "instances cannot be declared in `booleans`",
            );
        }
        if inst.is_schema() {
            // Schemas are expanded before compilation; their assignments
            // are checked on the expanded instances.
            continue;
        }
        for assign in &inst.assigns {
            let Some(sig) = symbols.attribute_on(&inst.sort, &assign.attr) else {
                report.push(
                    "unknown-attribute",
                    assign.span,
                    format!(
                        "attribute `{}` is not declared for sort `{}`",
                        assign.attr, inst.sort
                    ),
                );
                continue;
            };
            let slots = attribute_slot_sorts(&sig.decl);
            if assign.args.len() != slots.len() {
                report.push(
                    "arity-mismatch",
                    assign.span,
                    format!(
                        "attribute `{}` expects {} argument(s), found {}",
                        assign.attr,
                        slots.len(),
                        assign.args.len()
                    ),
                );
                continue;
            }
            for (arg, sort) in assign.args.iter().zip(&slots) {
                if arg.is_ground() && !term_in_sort(symbols, arg, sort) {
                    report.push(
                        "sort-mismatch",
                        assign.span,
                        format!(
                            "sort mismatch: `{}` is not an instance of `{}` in attribute `{}`",
                            crate::alm::print::term(arg),
                            sort,
                            assign.attr
                        ),
                    );
                }
            }
            if assign.value != Term::boolean(true) && assign.value != Term::boolean(false) {
                report.push(
                    "sort-mismatch",
                    assign.span,
                    format!(
                        "attribute `{}` value must be true or false in relational form",
                        assign.attr
                    ),
                );
            }
        }
    }
    for st in &structure.statics {
        let Some(f) = symbols.functions.get(&st.symbol) else {
            report.push(
                "unknown-function",
                st.span,
                format!("static `{}` is not declared", st.symbol),
            );
            continue;
        };
        if f.kind != FunctionKind::BasicStatic {
            report.push(
                "kind-mismatch",
                st.span,
                format!("`{}` is not a basic static", st.symbol),
            );
        }
        if st.args.len() != f.arg_sorts.len() {
            report.push(
                "arity-mismatch",
                st.span,
                format!(
                    "static `{}` expects {} argument(s), found {}",
                    st.symbol,
                    f.arg_sorts.len(),
                    st.args.len()
                ),
            );
            continue;
        }
        for (arg, sort) in st.args.iter().zip(&f.arg_sorts) {
            if !term_in_sort(symbols, arg, sort) {
                report.push(
                    "sort-mismatch",
                    st.span,
                    format!(
                        "sort mismatch: `{}` is not an instance of `{}`",
                        crate::alm::print::term(arg),
                        sort
                    ),
                );
            }
        }
        if !term_in_sort(symbols, &st.value, &f.range) {
            report.push(
                "sort-mismatch",
                st.span,
                format!(
                    "sort mismatch: value `{}` is not an instance of `{}`",
                    crate::alm::print::term(&st.value),
                    f.range
                ),
            );
        }
    }
}

fn check_axiom(axiom: &Axiom, symbols: &Symbols, report: &mut ValidationReport) {
    let span = axiom.span();
    for lit in axiom.body() {
        check_literal(lit, symbols, span, report);
    }
    if let Some(head) = axiom.head() {
        check_literal(head, symbols, span, report);
    }
    match axiom {
        Axiom::DynamicCausal { head, .. } => {
            if let Some(sym) = head.symbol() {
                let ok = symbols
                    .functions
                    .get(sym)
                    .is_some_and(|f| f.kind == FunctionKind::BasicFluent);
                if !ok {
                    report.push(
                        "head-kind",
                        span,
                        format!("dynamic causal law head `{sym}` must be a basic fluent"),
                    );
                }
            } else {
                report.push("head-kind", span, "dynamic causal law head must be a fluent");
            }
        }
        Axiom::Definition { head, .. } => {
            let ok = head.positive
                && head
                    .symbol()
                    .and_then(|s| symbols.functions.get(s))
                    .is_some_and(|f| f.kind.is_defined());
            if !ok {
                report.push(
                    "head-kind",
                    span,
                    "definition head must be a positive defined function literal",
                );
            }
        }
        Axiom::StateConstraint {
            head: Some(head), ..
        } => {
            if let Some(sym) = head.symbol() {
                if symbols
                    .functions
                    .get(sym)
                    .is_some_and(|f| f.kind.is_defined())
                {
                    report.push(
                        "head-kind",
                        span,
                        format!("defined function `{sym}` in a constraint head; use a definition"),
                    );
                }
            }
        }
        _ => {}
    }
    check_safety(axiom, report);
}

fn check_literal(lit: &Literal, symbols: &Symbols, span: Span, report: &mut ValidationReport) {
    match &lit.atom {
        AlmAtom::Apply {
            symbol,
            args,
            value,
        } => {
            if let Some(f) = symbols.functions.get(symbol) {
                if args.len() != f.arg_sorts.len() {
                    report.push(
                        "arity-mismatch",
                        span,
                        format!(
                            "function `{symbol}` expects {} argument(s), found {}",
                            f.arg_sorts.len(),
                            args.len()
                        ),
                    );
                }
                match (f.boolean(), value) {
                    (true, Some(v))
                        if *v != Term::boolean(true) && *v != Term::boolean(false) =>
                    {
                        report.push(
                            "value-mismatch",
                            span,
                            format!("boolean function `{symbol}` compared to a non-boolean value"),
                        );
                    }
                    (false, None) => {
                        report.push(
                            "value-mismatch",
                            span,
                            format!("non-boolean function `{symbol}` used without a value"),
                        );
                    }
                    _ => {}
                }
            } else if let Some(sig) = symbols.attributes.get(symbol) {
                let slots = attribute_slot_sorts(&sig.decl);
                let expect = if sig.decl.functional() {
                    // Functional attributes appear as `attr(Owner) = V`.
                    slots.len()
                } else {
                    1 + slots.len()
                };
                let found = args.len() + usize::from(sig.decl.functional() && value.is_some());
                if found != expect {
                    report.push(
                        "arity-mismatch",
                        span,
                        format!("attribute `{symbol}` used with wrong arity"),
                    );
                }
            } else {
                report.push(
                    "unknown-function",
                    span,
                    format!("`{symbol}` is not a declared function or attribute"),
                );
            }
        }
        AlmAtom::Instance { sort, .. } => {
            if !symbols.hierarchy.is_declared(sort) {
                report.push(
                    "unknown-sort",
                    span,
                    format!("instance literal references undeclared sort `{sort}`"),
                );
            }
        }
        AlmAtom::Cmp { .. } => {}
    }
}

/// Safety: every variable of the head, of negative literals, and of
/// comparisons must occur in a positive body literal that can carry a sort
/// (a function/attribute application or an instance literal).
fn check_safety(axiom: &Axiom, report: &mut ValidationReport) {
    let mut bound: Vec<String> = Vec::new();
    if let Axiom::DynamicCausal { trigger, .. } | Axiom::Executability { trigger, .. } = axiom {
        bound.push(trigger.clone());
    }
    for lit in axiom.body() {
        if lit.positive && !matches!(lit.atom, AlmAtom::Cmp { .. }) {
            lit.variables(&mut bound);
        }
    }
    let mut used: Vec<String> = Vec::new();
    if let Some(head) = axiom.head() {
        head.variables(&mut used);
    }
    for lit in axiom.body() {
        if !lit.positive || matches!(lit.atom, AlmAtom::Cmp { .. }) {
            lit.variables(&mut used);
        }
    }
    for v in used {
        if !bound.contains(&v) {
            report.push(
                "unsafe-variable",
                axiom.span(),
                format!("variable `{v}` does not occur in a positive body literal"),
            );
        }
    }
}
