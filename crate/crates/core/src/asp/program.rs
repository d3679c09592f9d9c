//! Answer-set program representation.
//!
//! A compiled program holds rule *schemas*: rules whose terms may contain
//! sort-typed variables and a distinguished step variable `I` (with small
//! offsets). Grounding substitutes sort-table entries for variables and
//! steps `0..=horizon` for `I`, producing ground statements. Guards
//! (sort membership and term comparisons) are decided during grounding
//! and never reach the ground program.

use crate::alm::ast::{CmpOp, Term};
use std::collections::BTreeMap;
use std::fmt;

/// A ground atom, possibly classically negated (`-p(a, b)`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AspAtom {
    pub strong_neg: bool,
    pub pred: String,
    pub args: Vec<Term>,
}

impl AspAtom {
    pub fn new(pred: impl Into<String>, args: Vec<Term>) -> Self {
        AspAtom {
            strong_neg: false,
            pred: pred.into(),
            args,
        }
    }

    pub fn negated(mut self) -> Self {
        self.strong_neg = !self.strong_neg;
        self
    }

    pub fn complement(&self) -> Self {
        self.clone().negated()
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    write!(f, "(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{a}")?;
    }
    write!(f, ")")
}

impl fmt::Display for AspAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.strong_neg {
            write!(f, "-")?;
        }
        write!(f, "{}", self.pred)?;
        write_args(f, &self.args)
    }
}

/// A body literal: atom with optional default negation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AspLiteral {
    pub default_neg: bool,
    pub atom: AspAtom,
}

impl AspLiteral {
    pub fn pos(atom: AspAtom) -> Self {
        AspLiteral {
            default_neg: false,
            atom,
        }
    }

    pub fn not(atom: AspAtom) -> Self {
        AspLiteral {
            default_neg: true,
            atom,
        }
    }
}

impl fmt::Display for AspLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.default_neg {
            write!(f, "not ")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// A fully ground statement of the program text.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroundStatement {
    Fact(AspAtom),
    Rule {
        head: AspAtom,
        body: Vec<AspLiteral>,
    },
    Constraint {
        body: Vec<AspLiteral>,
    },
    Choice {
        lo: u32,
        hi: u32,
        atoms: Vec<AspAtom>,
        body: Vec<AspLiteral>,
    },
}

fn write_body(f: &mut fmt::Formatter<'_>, body: &[AspLiteral]) -> fmt::Result {
    for (i, l) in body.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

impl fmt::Display for GroundStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundStatement::Fact(a) => write!(f, "{a}."),
            GroundStatement::Rule { head, body } => {
                write!(f, "{head} :- ")?;
                write_body(f, body)?;
                write!(f, ".")
            }
            GroundStatement::Constraint { body } => {
                write!(f, ":- ")?;
                write_body(f, body)?;
                write!(f, ".")
            }
            GroundStatement::Choice {
                lo,
                hi,
                atoms,
                body,
            } => {
                write!(f, "{lo} {{ ")?;
                for (i, a) in atoms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ; ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, " }} {hi}")?;
                if !body.is_empty() {
                    write!(f, " :- ")?;
                    write_body(f, body)?;
                }
                write!(f, ".")
            }
        }
    }
}

/// A term inside a rule schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemaTerm {
    Ground(Term),
    Var(String),
    /// The step variable plus a small offset: `Step(1)` prints as `I+1`.
    Step(u8),
}

impl SchemaTerm {
    fn substitute(&self, env: &BTreeMap<String, Term>, step: u32) -> Term {
        match self {
            SchemaTerm::Ground(t) => t.clone(),
            SchemaTerm::Var(v) => env
                .get(v)
                .cloned()
                .unwrap_or_else(|| panic!("unbound schema variable {v}")),
            SchemaTerm::Step(k) => Term::Int(i64::from(step + u32::from(*k))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaAtom {
    pub strong_neg: bool,
    pub pred: String,
    pub args: Vec<SchemaTerm>,
}

impl SchemaAtom {
    pub fn substitute(&self, env: &BTreeMap<String, Term>, step: u32) -> AspAtom {
        AspAtom {
            strong_neg: self.strong_neg,
            pred: self.pred.clone(),
            args: self.args.iter().map(|t| t.substitute(env, step)).collect(),
        }
    }

    fn max_step_offset(&self) -> Option<u8> {
        self.args
            .iter()
            .filter_map(|t| match t {
                SchemaTerm::Step(k) => Some(*k),
                _ => None,
            })
            .max()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaLit {
    pub default_neg: bool,
    pub atom: SchemaAtom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemaHead {
    Atom(SchemaAtom),
    Choice {
        lo: u32,
        hi: u32,
        atoms: Vec<SchemaAtom>,
    },
    False,
}

/// Side conditions decided at grounding time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Guard {
    /// `instance(term, sort)` or its negation.
    Member {
        term: SchemaTerm,
        sort: String,
        positive: bool,
    },
    Cmp {
        op: CmpOp,
        left: SchemaTerm,
        right: SchemaTerm,
    },
}

/// A rule schema: head and body over schema terms, grounding guards, and
/// the enumeration domains of its variables (a variable constrained by
/// several sorts ranges over their intersection).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSchema {
    pub head: SchemaHead,
    pub body: Vec<SchemaLit>,
    pub guards: Vec<Guard>,
    pub vars: Vec<(String, Vec<String>)>,
}

impl RuleSchema {
    /// Largest step offset appearing in the rule, and whether any `occurs`
    /// atom appears (occurrences exist only for steps `0..horizon`).
    pub fn step_profile(&self) -> (Option<u8>, bool) {
        let mut max = None;
        let mut has_occurs = false;
        let mut note = |atom: &SchemaAtom| {
            if let Some(k) = atom.max_step_offset() {
                max = Some(max.map_or(k, |m: u8| m.max(k)));
            }
            if atom.pred == "occurs" {
                has_occurs = true;
            }
        };
        match &self.head {
            SchemaHead::Atom(a) => note(a),
            SchemaHead::Choice { atoms, .. } => atoms.iter().for_each(&mut note),
            SchemaHead::False => {}
        }
        for l in &self.body {
            note(&l.atom);
        }
        (max, has_occurs)
    }
}

/// A compiled answer-set program: ground facts, rule schemas, sort tables
/// for grounding, and task-level ground additions (histories, goals,
/// planning choices).
#[derive(Clone, Debug, Default)]
pub struct AspProgram {
    pub name: String,
    pub horizon: u32,
    pub sort_tables: BTreeMap<String, Vec<Term>>,
    pub facts: Vec<AspAtom>,
    pub schemas: Vec<RuleSchema>,
    /// Ground rules: sort-membership rules plus task-level additions
    /// (histories, observation checks, goals, planning choices).
    pub ground_rules: Vec<GroundStatement>,
    pub warnings: Vec<String>,
}

impl AspProgram {
    pub fn push_fact(&mut self, atom: AspAtom) {
        self.ground_rules.push(GroundStatement::Fact(atom));
    }

    pub fn push_rule(&mut self, head: AspAtom, body: Vec<AspLiteral>) {
        self.ground_rules.push(GroundStatement::Rule { head, body });
    }

    pub fn push_constraint(&mut self, body: Vec<AspLiteral>) {
        self.ground_rules.push(GroundStatement::Constraint { body });
    }

    pub fn push_choice(&mut self, lo: u32, hi: u32, atoms: Vec<AspAtom>) {
        self.ground_rules.push(GroundStatement::Choice {
            lo,
            hi,
            atoms,
            body: vec![],
        });
    }
}
