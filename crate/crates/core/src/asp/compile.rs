//! Compilation of a validated system description into an answer-set
//! program over a finite horizon.
//!
//! Encoding (fixed so that emitted text is stable across runs):
//!
//! - boolean basic fluent `f`: atoms `f(args, I)` and `-f(args, I)`;
//!   the initial value is a choice `1 { f(args,0) ; -f(args,0) } 1`,
//!   later steps follow inertia
//!   `f(args,I+1) :- f(args,I), not -f(args,I+1)` (and symmetrically);
//! - non-boolean basic fluent: `val(f, args, v, I)` with a choice over
//!   the range at step 0, inertia guarded by `overridden(f, args, v, I)`,
//!   and a single-value constraint;
//! - boolean statics and attributes: timeless atoms `f(args)`, completed
//!   explicitly (`-f(args)` facts for every sort-correct tuple not
//!   assigned true), since the structure is their full interpretation;
//! - non-boolean statics: `stat(f, args, v)` facts plus single-value
//!   constraints, no completion (statics may be partial);
//! - defined functions: closed world — positive literals are plain atoms,
//!   negated literals compile to default negation;
//! - hierarchy: `is_a(x, s)` facts for declared instances, `subsort(s, t)`
//!   facts for the strict transitive closure, and ground membership rules
//!   deriving `instance(x, t)`. Membership and comparison literals inside
//!   axiom bodies are decided during grounding.
//!
//! Occurrences `occurs(a, I)` have no generating rules here; reasoning
//! tasks add history facts or planning choices on top.

use crate::alm::ast::*;
use crate::alm::sorts::Symbols;
use crate::alm::validate::{attribute_slot_sorts, validate, ValidationReport};
use crate::alm::{expand_schemas, flatten};
use crate::asp::program::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum CompileError {
    #[error("system description does not validate:\n{0}")]
    Invalid(ValidationReport),
    #[error("unsupported construct: {0}")]
    Unsupported(String),
}

/// Compiles `sd` (imports resolved) at the given horizon. Schemas are
/// expanded and the description re-validated first.
pub fn compile(sd: &SystemDescription, horizon: u32) -> Result<AspProgram, CompileError> {
    let merged = flatten::merge_all(&sd.modules, true);
    let base_symbols = Symbols::build(&merged, &sd.structure);
    let (structure, expand_warnings) = expand_schemas(&sd.structure, &base_symbols);
    let expanded_sd = SystemDescription {
        structure: structure.clone(),
        ..sd.clone()
    };
    let report = validate(&expanded_sd);
    if !report.is_empty() {
        return Err(CompileError::Invalid(report));
    }
    let symbols = Symbols::build(&merged, &structure);

    let mut program = AspProgram {
        name: sd.name.clone(),
        horizon,
        ..Default::default()
    };
    for w in expand_warnings {
        program.warnings.push(w.to_string());
    }
    for sort in symbols.hierarchy.sorts() {
        program
            .sort_tables
            .insert(sort.clone(), symbols.hierarchy.instances_of(sort));
    }

    emit_hierarchy(&symbols, &mut program);
    emit_attribute_facts(&structure, &symbols, &mut program)?;
    emit_static_facts(&structure, &symbols, &mut program);
    emit_fluent_frames(&symbols, &mut program);
    for axiom in &merged.axioms {
        let schema = compile_axiom(axiom, &symbols)?;
        program.schemas.push(schema);
    }

    // A schema variable over an empty domain grounds to nothing.
    for schema in &program.schemas {
        for (var, sorts) in &schema.vars {
            let empty = sorts.iter().any(|s| {
                program
                    .sort_tables
                    .get(s)
                    .is_none_or(|t| t.is_empty())
            });
            if empty {
                program.warnings.push(format!(
                    "unbounded sort: variable {var} over {sorts:?} has no instances; empty grounding"
                ));
            }
        }
    }
    Ok(program)
}

fn emit_hierarchy(symbols: &Symbols, program: &mut AspProgram) {
    let h = &symbols.hierarchy;
    for (term, sort) in h.all_instances() {
        program.facts.push(AspAtom::new(
            "is_a",
            vec![term.clone(), Term::constant(sort.clone())],
        ));
    }
    for (sub, sup) in h.subsort_pairs() {
        program.facts.push(AspAtom::new(
            "subsort",
            vec![Term::constant(sub), Term::constant(sup)],
        ));
    }
    // instance(X, S) :- is_a(X, S).  instance(X, T) :- is_a(X, S), subsort(S, T).
    for (term, sort) in h.all_instances() {
        let is_a = AspAtom::new(
            "is_a",
            vec![term.clone(), Term::constant(sort.clone())],
        );
        program.push_rule(
            AspAtom::new(
                "instance",
                vec![term.clone(), Term::constant(sort.clone())],
            ),
            vec![AspLiteral::pos(is_a.clone())],
        );
        for sup in h.ancestors_of(sort) {
            if sup == sort {
                continue;
            }
            program.push_rule(
                AspAtom::new("instance", vec![term.clone(), Term::constant(sup.clone())]),
                vec![
                    AspLiteral::pos(is_a.clone()),
                    AspLiteral::pos(AspAtom::new(
                        "subsort",
                        vec![Term::constant(sort.clone()), Term::constant(sup.clone())],
                    )),
                ],
            );
        }
    }
}

/// Every sort-correct argument tuple for an attribute of `owner`.
fn attribute_grid(symbols: &Symbols, owner: &str, slots: &[String]) -> Vec<Vec<Term>> {
    let mut grids: Vec<Vec<Term>> = vec![vec![]];
    let owners = symbols.hierarchy.instances_of(owner);
    let mut columns = vec![owners];
    for s in slots {
        columns.push(symbols.hierarchy.instances_of(s));
    }
    for column in columns {
        let mut next = Vec::new();
        for prefix in &grids {
            for value in &column {
                let mut row = prefix.clone();
                row.push(value.clone());
                next.push(row);
            }
        }
        grids = next;
    }
    grids
}

fn emit_attribute_facts(
    structure: &Structure,
    symbols: &Symbols,
    program: &mut AspProgram,
) -> Result<(), CompileError> {
    let mut assigned_true: Vec<AspAtom> = Vec::new();
    let mut assigned_false: Vec<AspAtom> = Vec::new();
    for inst in &structure.instances {
        for assign in &inst.assigns {
            let mut args = vec![inst.head.clone()];
            args.extend(assign.args.iter().cloned());
            let atom = AspAtom::new(assign.attr.clone(), args);
            if assign.value == Term::boolean(true) {
                assigned_true.push(atom);
            } else {
                assigned_false.push(atom.negated());
            }
        }
    }
    for atom in &assigned_true {
        program.facts.push(atom.clone());
    }
    for atom in &assigned_false {
        program.facts.push(atom.clone());
    }
    // Explicit completion: the structure is the attributes' whole
    // interpretation.
    for (name, sig) in &symbols.attributes {
        let slots = attribute_slot_sorts(&sig.decl);
        for row in attribute_grid(symbols, &sig.owner, &slots) {
            let atom = AspAtom::new(name.clone(), row);
            if !assigned_true.contains(&atom) {
                let neg = atom.complement();
                if !assigned_false.contains(&neg) {
                    program.facts.push(neg);
                }
            }
        }
        // Functional attributes take at most one value per owner.
        if sig.decl.functional() {
            let x = SchemaTerm::Var("X0".into());
            let mk = |v: &str| SchemaAtom {
                strong_neg: false,
                pred: name.clone(),
                args: vec![x.clone(), SchemaTerm::Var(v.into())],
            };
            if slots.len() == 1 {
                program.schemas.push(RuleSchema {
                    head: SchemaHead::False,
                    body: vec![
                        SchemaLit {
                            default_neg: false,
                            atom: mk("V1"),
                        },
                        SchemaLit {
                            default_neg: false,
                            atom: mk("V2"),
                        },
                    ],
                    guards: vec![Guard::Cmp {
                        op: CmpOp::Neq,
                        left: SchemaTerm::Var("V1".into()),
                        right: SchemaTerm::Var("V2".into()),
                    }],
                    vars: vec![
                        ("X0".into(), vec![sig.owner.clone()]),
                        ("V1".into(), vec![slots[0].clone()]),
                        ("V2".into(), vec![slots[0].clone()]),
                    ],
                });
            }
        }
    }
    Ok(())
}

fn emit_static_facts(structure: &Structure, symbols: &Symbols, program: &mut AspProgram) {
    let mut boolean_true: Vec<AspAtom> = Vec::new();
    for st in &structure.statics {
        let f = &symbols.functions[&st.symbol];
        if f.boolean() {
            let atom = AspAtom::new(st.symbol.clone(), st.args.clone());
            if st.value == Term::boolean(true) {
                boolean_true.push(atom.clone());
                program.facts.push(atom);
            } else {
                program.facts.push(atom.negated());
            }
        } else {
            let mut args = vec![Term::constant(st.symbol.clone())];
            args.extend(st.args.iter().cloned());
            args.push(st.value.clone());
            program.facts.push(AspAtom::new("stat", args));
        }
    }
    for f in symbols.functions.values() {
        if f.kind != FunctionKind::BasicStatic {
            continue;
        }
        if f.boolean() {
            // Complete boolean statics like attributes.
            for row in static_grid(symbols, &f.arg_sorts) {
                let atom = AspAtom::new(f.name.clone(), row);
                if !boolean_true.contains(&atom) {
                    let neg = atom.complement();
                    if !program.facts.contains(&neg) {
                        program.facts.push(neg);
                    }
                }
            }
        } else {
            // stat(f, args, v) is single-valued.
            let mut args: Vec<SchemaTerm> = vec![SchemaTerm::Ground(Term::constant(f.name.clone()))];
            let mut vars: Vec<(String, Vec<String>)> = Vec::new();
            for (i, s) in f.arg_sorts.iter().enumerate() {
                let v = format!("X{i}");
                args.push(SchemaTerm::Var(v.clone()));
                vars.push((v, vec![s.clone()]));
            }
            let mk = |v: &str| {
                let mut a = args.clone();
                a.push(SchemaTerm::Var(v.into()));
                SchemaAtom {
                    strong_neg: false,
                    pred: "stat".into(),
                    args: a,
                }
            };
            vars.push(("V1".into(), vec![f.range.clone()]));
            vars.push(("V2".into(), vec![f.range.clone()]));
            program.schemas.push(RuleSchema {
                head: SchemaHead::False,
                body: vec![
                    SchemaLit {
                        default_neg: false,
                        atom: mk("V1"),
                    },
                    SchemaLit {
                        default_neg: false,
                        atom: mk("V2"),
                    },
                ],
                guards: vec![Guard::Cmp {
                    op: CmpOp::Neq,
                    left: SchemaTerm::Var("V1".into()),
                    right: SchemaTerm::Var("V2".into()),
                }],
                vars,
            });
        }
    }
}

fn static_grid(symbols: &Symbols, arg_sorts: &[String]) -> Vec<Vec<Term>> {
    let mut rows: Vec<Vec<Term>> = vec![vec![]];
    for s in arg_sorts {
        let col = symbols.hierarchy.instances_of(s);
        let mut next = Vec::new();
        for prefixin in &rows {
            for v in &col {
                let mut row = prefixin.clone();
                row.push(v.clone());
                next.push(row);
            }
        }
        rows = next;
    }
    rows
}

/// Choice, inertia, and consistency for every basic fluent.
fn emit_fluent_frames(symbols: &Symbols, program: &mut AspProgram) {
    for f in symbols.functions.values() {
        if f.kind != FunctionKind::BasicFluent {
            continue;
        }
        let mut vars: Vec<(String, Vec<String>)> = Vec::new();
        let mut arg_terms: Vec<SchemaTerm> = Vec::new();
        for (i, s) in f.arg_sorts.iter().enumerate() {
            let v = format!("X{i}");
            arg_terms.push(SchemaTerm::Var(v.clone()));
            vars.push((v, vec![s.clone()]));
        }
        if f.boolean() {
            let at = |neg: bool, step: u8| {
                let mut args = arg_terms.clone();
                args.push(SchemaTerm::Step(step));
                SchemaAtom {
                    strong_neg: neg,
                    pred: f.name.clone(),
                    args,
                }
            };
            // Complete initial values.
            program.schemas.push(RuleSchema {
                head: SchemaHead::Choice {
                    lo: 1,
                    hi: 1,
                    atoms: vec![at(false, 0), at(true, 0)],
                },
                body: vec![],
                guards: vec![],
                vars: vars.clone(),
            });
            // Inertia in both polarities.
            for neg in [false, true] {
                program.schemas.push(RuleSchema {
                    head: SchemaHead::Atom(at(neg, 1)),
                    body: vec![
                        SchemaLit {
                            default_neg: false,
                            atom: at(neg, 0),
                        },
                        SchemaLit {
                            default_neg: true,
                            atom: at(!neg, 1),
                        },
                    ],
                    guards: vec![],
                    vars: vars.clone(),
                });
            }
            // Coherence of the two polarities.
            program.schemas.push(RuleSchema {
                head: SchemaHead::False,
                body: vec![
                    SchemaLit {
                        default_neg: false,
                        atom: at(false, 0),
                    },
                    SchemaLit {
                        default_neg: false,
                        atom: at(true, 0),
                    },
                ],
                guards: vec![],
                vars: vars.clone(),
            });
        } else {
            let range = symbols.hierarchy.instances_of(&f.range);
            let val = |value: SchemaTerm, step: u8| {
                let mut args = vec![SchemaTerm::Ground(Term::constant(f.name.clone()))];
                args.extend(arg_terms.iter().cloned());
                args.push(value);
                args.push(SchemaTerm::Step(step));
                SchemaAtom {
                    strong_neg: false,
                    pred: "val".into(),
                    args,
                }
            };
            let over = |value: SchemaTerm, step: u8| {
                let mut args = vec![SchemaTerm::Ground(Term::constant(f.name.clone()))];
                args.extend(arg_terms.iter().cloned());
                args.push(value);
                args.push(SchemaTerm::Step(step));
                SchemaAtom {
                    strong_neg: false,
                    pred: "overridden".into(),
                    args,
                }
            };
            if range.is_empty() {
                program.warnings.push(format!(
                    "unbounded sort: fluent {} ranges over empty sort {}",
                    f.name, f.range
                ));
            } else {
                let atoms = range
                    .iter()
                    .map(|v| val(SchemaTerm::Ground(v.clone()), 0))
                    .collect();
                program.schemas.push(RuleSchema {
                    head: SchemaHead::Choice {
                        lo: 1,
                        hi: 1,
                        atoms,
                    },
                    body: vec![],
                    guards: vec![],
                    vars: vars.clone(),
                });
            }
            let mut with_v = vars.clone();
            with_v.push(("V".into(), vec![f.range.clone()]));
            // val persists unless a different value is derived.
            program.schemas.push(RuleSchema {
                head: SchemaHead::Atom(val(SchemaTerm::Var("V".into()), 1)),
                body: vec![
                    SchemaLit {
                        default_neg: false,
                        atom: val(SchemaTerm::Var("V".into()), 0),
                    },
                    SchemaLit {
                        default_neg: true,
                        atom: over(SchemaTerm::Var("V".into()), 1),
                    },
                ],
                guards: vec![],
                vars: with_v.clone(),
            });
            let mut with_vw = with_v.clone();
            with_vw.push(("W".into(), vec![f.range.clone()]));
            program.schemas.push(RuleSchema {
                head: SchemaHead::Atom(over(SchemaTerm::Var("V".into()), 0)),
                body: vec![SchemaLit {
                    default_neg: false,
                    atom: val(SchemaTerm::Var("W".into()), 0),
                }],
                guards: vec![Guard::Cmp {
                    op: CmpOp::Neq,
                    left: SchemaTerm::Var("V".into()),
                    right: SchemaTerm::Var("W".into()),
                }],
                vars: with_vw.clone(),
            });
            // Single value per step.
            program.schemas.push(RuleSchema {
                head: SchemaHead::False,
                body: vec![
                    SchemaLit {
                        default_neg: false,
                        atom: val(SchemaTerm::Var("V".into()), 0),
                    },
                    SchemaLit {
                        default_neg: false,
                        atom: val(SchemaTerm::Var("W".into()), 0),
                    },
                ],
                guards: vec![Guard::Cmp {
                    op: CmpOp::Neq,
                    left: SchemaTerm::Var("V".into()),
                    right: SchemaTerm::Var("W".into()),
                }],
                vars: with_vw,
            });
        }
    }
}

struct LitCx<'a> {
    symbols: &'a Symbols,
}

enum Compiled {
    Lit(SchemaLit),
    Guard(Guard),
}

impl<'a> LitCx<'a> {
    fn term(&self, t: &Term) -> SchemaTerm {
        match t {
            Term::Var(v) => SchemaTerm::Var(v.clone()),
            other => SchemaTerm::Ground(other.clone()),
        }
    }

    /// Compiles one ALM literal at step offset `step`.
    fn literal(&self, lit: &Literal, step: u8) -> Result<Compiled, CompileError> {
        match &lit.atom {
            AlmAtom::Instance { term, sort } => Ok(Compiled::Guard(Guard::Member {
                term: self.term(term),
                sort: sort.clone(),
                positive: lit.positive,
            })),
            AlmAtom::Cmp { op, left, right } => {
                let op = if lit.positive {
                    *op
                } else {
                    match op {
                        CmpOp::Eq => CmpOp::Neq,
                        CmpOp::Neq => CmpOp::Eq,
                    }
                };
                Ok(Compiled::Guard(Guard::Cmp {
                    op,
                    left: self.term(left),
                    right: self.term(right),
                }))
            }
            AlmAtom::Apply {
                symbol,
                args,
                value,
            } => self.apply(lit.positive, symbol, args, value.as_ref(), step),
        }
    }

    fn apply(
        &self,
        positive: bool,
        symbol: &str,
        args: &[Term],
        value: Option<&Term>,
        step: u8,
    ) -> Result<Compiled, CompileError> {
        // Boolean symbols compared to true/false fold into polarity.
        let fold = |positive: bool, value: Option<&Term>| match value {
            Some(v) if *v == Term::boolean(false) => !positive,
            _ => positive,
        };
        if let Some(f) = self.symbols.functions.get(symbol) {
            let mut sargs: Vec<SchemaTerm> = args.iter().map(|t| self.term(t)).collect();
            if f.boolean() {
                let positive = fold(positive, value);
                if f.kind.is_fluent() {
                    sargs.push(SchemaTerm::Step(step));
                }
                let atom = SchemaAtom {
                    strong_neg: if f.kind.is_defined() { false } else { !positive },
                    pred: symbol.to_string(),
                    args: sargs,
                };
                return Ok(Compiled::Lit(SchemaLit {
                    default_neg: f.kind.is_defined() && !positive,
                    atom,
                }));
            }
            let v = value.ok_or_else(|| {
                CompileError::Unsupported(format!("function {symbol} used without a value"))
            })?;
            let mut full = vec![SchemaTerm::Ground(Term::constant(symbol.to_string()))];
            full.append(&mut sargs);
            full.push(self.term(v));
            let pred = if f.kind.is_fluent() {
                full.push(SchemaTerm::Step(step));
                "val"
            } else {
                "stat"
            };
            let atom = SchemaAtom {
                strong_neg: false,
                pred: pred.into(),
                args: full,
            };
            // Negative literals over partial functions read as "does not
            // take this value".
            return Ok(Compiled::Lit(SchemaLit {
                default_neg: !positive,
                atom,
            }));
        }
        if let Some(sig) = self.symbols.attributes.get(symbol) {
            let mut sargs: Vec<SchemaTerm> = args.iter().map(|t| self.term(t)).collect();
            let mut positive = positive;
            if sig.decl.functional() {
                let v = value.ok_or_else(|| {
                    CompileError::Unsupported(format!("attribute {symbol} used without a value"))
                })?;
                sargs.push(self.term(v));
            } else {
                positive = fold(positive, value);
            }
            let atom = SchemaAtom {
                strong_neg: !positive,
                pred: symbol.to_string(),
                args: sargs,
            };
            return Ok(Compiled::Lit(SchemaLit {
                default_neg: false,
                atom,
            }));
        }
        Err(CompileError::Unsupported(format!(
            "unknown symbol {symbol}"
        )))
    }

    /// Sort constraints contributed by a positive body literal.
    fn position_sorts(&self, lit: &Literal, out: &mut BTreeMap<String, Vec<String>>) {
        let mut add = |t: &Term, sort: &str| {
            if let Term::Var(v) = t {
                let entry = out.entry(v.clone()).or_default();
                if !entry.iter().any(|s| s == sort) {
                    entry.push(sort.to_string());
                }
            }
        };
        if !lit.positive {
            return;
        }
        match &lit.atom {
            AlmAtom::Instance { term, sort } => add(term, sort),
            AlmAtom::Cmp { .. } => {}
            AlmAtom::Apply {
                symbol,
                args,
                value,
            } => {
                if let Some(f) = self.symbols.functions.get(symbol) {
                    for (a, s) in args.iter().zip(&f.arg_sorts) {
                        add(a, s);
                    }
                    if let Some(v) = value {
                        add(v, &f.range);
                    }
                } else if let Some(sig) = self.symbols.attributes.get(symbol) {
                    if let Some(owner) = args.first() {
                        add(owner, &sig.owner);
                    }
                    let slots = attribute_slot_sorts(&sig.decl);
                    for (a, s) in args.iter().skip(1).zip(&slots) {
                        add(a, s);
                    }
                    if sig.decl.functional() {
                        if let Some(v) = value {
                            add(v, slots.last().unwrap());
                        }
                    }
                }
            }
        }
    }
}

fn compile_axiom(axiom: &Axiom, symbols: &Symbols) -> Result<RuleSchema, CompileError> {
    let cx = LitCx { symbols };
    let mut body_lits: Vec<SchemaLit> = Vec::new();
    let mut guards: Vec<Guard> = Vec::new();
    let mut var_sorts: BTreeMap<String, Vec<String>> = BTreeMap::new();

    let occurs_atom = |v: &str| SchemaAtom {
        strong_neg: false,
        pred: "occurs".into(),
        args: vec![SchemaTerm::Var(v.into()), SchemaTerm::Step(0)],
    };

    for lit in axiom.body() {
        match cx.literal(lit, 0)? {
            Compiled::Lit(l) => body_lits.push(l),
            Compiled::Guard(g) => guards.push(g),
        }
        cx.position_sorts(lit, &mut var_sorts);
    }

    let head = match axiom {
        Axiom::DynamicCausal { trigger, head, .. } => {
            body_lits.insert(0, SchemaLit {
                default_neg: false,
                atom: occurs_atom(trigger),
            });
            var_sorts
                .entry(trigger.clone())
                .or_default()
                .push(SORT_ACTIONS.to_string());
            match cx.literal(head, 1)? {
                Compiled::Lit(l) => {
                    if l.default_neg {
                        return Err(CompileError::Unsupported(
                            "default negation in a causal-law head".into(),
                        ));
                    }
                    SchemaHead::Atom(l.atom)
                }
                Compiled::Guard(_) => {
                    return Err(CompileError::Unsupported(
                        "membership or comparison in a causal-law head".into(),
                    ))
                }
            }
        }
        Axiom::Executability { trigger, .. } => {
            body_lits.insert(0, SchemaLit {
                default_neg: false,
                atom: occurs_atom(trigger),
            });
            var_sorts
                .entry(trigger.clone())
                .or_default()
                .push(SORT_ACTIONS.to_string());
            SchemaHead::False
        }
        Axiom::StateConstraint { head: None, .. } => SchemaHead::False,
        Axiom::StateConstraint {
            head: Some(head), ..
        }
        | Axiom::Definition { head, .. } => match cx.literal(head, 0)? {
            Compiled::Lit(l) => {
                if l.default_neg {
                    return Err(CompileError::Unsupported(
                        "default negation in a rule head".into(),
                    ));
                }
                SchemaHead::Atom(l.atom)
            }
            Compiled::Guard(_) => {
                return Err(CompileError::Unsupported(
                    "membership or comparison in a rule head".into(),
                ))
            }
        },
    };

    // Deterministic variable order: first occurrence in body then head.
    let mut order: Vec<String> = Vec::new();
    {
        let mut note_atom = |a: &SchemaAtom| {
            for t in &a.args {
                if let SchemaTerm::Var(v) = t {
                    if !order.contains(v) {
                        order.push(v.clone());
                    }
                }
            }
        };
        for l in &body_lits {
            note_atom(&l.atom);
        }
        match &head {
            SchemaHead::Atom(a) => note_atom(a),
            SchemaHead::Choice { atoms, .. } => atoms.iter().for_each(&mut note_atom),
            SchemaHead::False => {}
        }
        for g in &guards {
            let mut note_term = |t: &SchemaTerm| {
                if let SchemaTerm::Var(v) = t {
                    if !order.contains(v) {
                        order.push(v.clone());
                    }
                }
            };
            match g {
                Guard::Member { term, .. } => note_term(term),
                Guard::Cmp { left, right, .. } => {
                    note_term(left);
                    note_term(right);
                }
            }
        }
    }
    let vars: Vec<(String, Vec<String>)> = order
        .into_iter()
        .map(|v| {
            let sorts = var_sorts
                .get(&v)
                .cloned()
                .unwrap_or_else(|| vec![SORT_UNIVERSE.to_string()]);
            (v, sorts)
        })
        .collect();

    Ok(RuleSchema {
        head,
        body: body_lits,
        guards,
        vars,
    })
}
