//! Abstract syntax for ALM system descriptions.
//!
//! A system description is a theory (a DAG of modules) plus a structure
//! (instances, attribute values, statics). Modules declare sorts, functions
//! and attributes, and state axioms of four kinds: dynamic causal laws,
//! state constraints, executability conditions, and definitions of defined
//! functions.
//!
//! Attribute values are stored in a single relational form `attr(args) = v`;
//! the unary functional surface syntax `attr = v` is sugar for
//! `attr(v) = true` with the attribute's `functional` flag set on its
//! declaration. Boolean-ranged attributes keep the relational surface.

use crate::span::Span;
use std::fmt;

/// Sorts predefined in every theory.
pub const SORT_UNIVERSE: &str = "universe";
pub const SORT_ACTIONS: &str = "actions";
pub const SORT_BOOLEANS: &str = "booleans";

pub const CONST_TRUE: &str = "true";
pub const CONST_FALSE: &str = "false";

/// A term: constant, integer, variable, or a structured instance name
/// such as `go(john, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(String),
    Int(i64),
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn boolean(b: bool) -> Self {
        Term::Const(if b { CONST_TRUE } else { CONST_FALSE }.to_string())
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Const(_) | Term::Int(_) => true,
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Collects variable names left to right.
    pub fn variables(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|t| t.variables(out)),
            _ => {}
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => write!(f, "{c}"),
            Term::Int(i) => write!(f, "{i}"),
            Term::Var(v) => write!(f, "{v}"),
            Term::App(head, args) => {
                write!(f, "{head}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Comparison operator between two terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Neq,
}

/// An atom inside an axiom body or head.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlmAtom {
    /// `f(args)` or `f(args) = v`. Boolean-ranged symbols omit the value.
    Apply {
        symbol: String,
        args: Vec<Term>,
        value: Option<Term>,
    },
    /// Sort membership `instance(t, s)`.
    Instance { term: Term, sort: String },
    /// Term comparison, e.g. `A1 != A2`.
    Cmp { op: CmpOp, left: Term, right: Term },
}

/// A possibly classically-negated atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub positive: bool,
    pub atom: AlmAtom,
}

impl Literal {
    pub fn pos(atom: AlmAtom) -> Self {
        Literal {
            positive: true,
            atom,
        }
    }

    pub fn neg(atom: AlmAtom) -> Self {
        Literal {
            positive: false,
            atom,
        }
    }

    pub fn apply(symbol: impl Into<String>, args: Vec<Term>) -> Self {
        Literal::pos(AlmAtom::Apply {
            symbol: symbol.into(),
            args,
            value: None,
        })
    }

    pub fn instance(term: Term, sort: impl Into<String>) -> Self {
        Literal::pos(AlmAtom::Instance {
            term,
            sort: sort.into(),
        })
    }

    pub fn negated(mut self) -> Self {
        self.positive = !self.positive;
        self
    }

    pub fn symbol(&self) -> Option<&str> {
        match &self.atom {
            AlmAtom::Apply { symbol, .. } => Some(symbol),
            _ => None,
        }
    }

    pub fn variables(&self, out: &mut Vec<String>) {
        match &self.atom {
            AlmAtom::Apply { args, value, .. } => {
                args.iter().for_each(|t| t.variables(out));
                if let Some(v) = value {
                    v.variables(out);
                }
            }
            AlmAtom::Instance { term, .. } => term.variables(out),
            AlmAtom::Cmp { left, right, .. } => {
                left.variables(out);
                right.variables(out);
            }
        }
    }
}

/// The four axiom kinds of ALM.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `occurs(X) causes head if body`. Heads mention basic fluents only.
    DynamicCausal {
        trigger: String,
        head: Literal,
        body: Vec<Literal>,
        span: Span,
    },
    /// `head if body`, or `false if body` when `head` is `None`.
    StateConstraint {
        head: Option<Literal>,
        body: Vec<Literal>,
        span: Span,
    },
    /// `impossible occurs(X) if body`.
    Executability {
        trigger: String,
        body: Vec<Literal>,
        span: Span,
    },
    /// `head if body` where the head symbol is a defined function.
    Definition {
        head: Literal,
        body: Vec<Literal>,
        span: Span,
    },
}

impl Axiom {
    pub fn span(&self) -> Span {
        match self {
            Axiom::DynamicCausal { span, .. }
            | Axiom::StateConstraint { span, .. }
            | Axiom::Executability { span, .. }
            | Axiom::Definition { span, .. } => *span,
        }
    }

    pub fn body(&self) -> &[Literal] {
        match self {
            Axiom::DynamicCausal { body, .. }
            | Axiom::StateConstraint { body, .. }
            | Axiom::Executability { body, .. }
            | Axiom::Definition { body, .. } => body,
        }
    }

    pub fn head(&self) -> Option<&Literal> {
        match self {
            Axiom::DynamicCausal { head, .. } | Axiom::Definition { head, .. } => Some(head),
            Axiom::StateConstraint { head, .. } => head.as_ref(),
            Axiom::Executability { .. } => None,
        }
    }
}

/// `names :: parents`, with an optional attribute block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortDecl {
    pub names: Vec<String>,
    pub parents: Vec<String>,
    pub attributes: Vec<AttributeDecl>,
    pub span: Span,
}

/// An attribute of a sort: a (possibly partial) function from owner
/// instances (and extra argument sorts) to the range sort. Boolean-ranged
/// attributes are relational; all others are functional (single-valued).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AttributeDecl {
    pub name: String,
    pub arg_sorts: Vec<String>,
    pub range: String,
    pub span: Span,
}

impl AttributeDecl {
    pub fn functional(&self) -> bool {
        self.range != SORT_BOOLEANS
    }
}

/// Function kinds: fluents change under actions, statics do not; defined
/// functions are closed-world shorthands with range `booleans`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    BasicFluent,
    DefinedFluent,
    BasicStatic,
    DefinedStatic,
}

impl FunctionKind {
    pub fn is_fluent(self) -> bool {
        matches!(self, FunctionKind::BasicFluent | FunctionKind::DefinedFluent)
    }

    pub fn is_defined(self) -> bool {
        matches!(
            self,
            FunctionKind::DefinedFluent | FunctionKind::DefinedStatic
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionDecl {
    pub name: String,
    pub kind: FunctionKind,
    pub arg_sorts: Vec<String>,
    pub range: String,
    pub span: Span,
}

impl FunctionDecl {
    pub fn boolean(&self) -> bool {
        self.range == SORT_BOOLEANS
    }
}

/// A module: named collection of declarations and axioms, with
/// dependencies on other modules.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModuleDecl {
    pub name: String,
    pub depends_on: Vec<String>,
    pub sorts: Vec<SortDecl>,
    pub functions: Vec<FunctionDecl>,
    pub axioms: Vec<Axiom>,
    /// Leaf modules holding defeasible-axiom translations; excluded from
    /// flattening unless explicitly requested.
    pub optional: bool,
    pub span: Span,
}

/// Attribute value assignment inside an instance declaration, stored
/// relationally: `attr(args) = value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttrAssign {
    pub attr: String,
    pub args: Vec<Term>,
    pub value: Term,
    /// True when the surface syntax was the functional form `attr = v`.
    pub functional: bool,
    pub span: Span,
}

/// `head in sort` with attribute assignments. When `head` contains
/// variables this is an instance schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDecl {
    pub head: Term,
    pub sort: String,
    pub assigns: Vec<AttrAssign>,
    pub span: Span,
}

impl InstanceDecl {
    pub fn is_schema(&self) -> bool {
        !self.head.is_ground()
    }
}

/// Ground value assignment for a static function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticAssign {
    pub symbol: String,
    pub args: Vec<Term>,
    pub value: Term,
    pub span: Span,
}

/// The second half of a system description: instances and static values.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Structure {
    pub name: String,
    pub instances: Vec<InstanceDecl>,
    pub statics: Vec<StaticAssign>,
}

impl Structure {
    pub fn schemas(&self) -> impl Iterator<Item = &InstanceDecl> {
        self.instances.iter().filter(|i| i.is_schema())
    }
}

/// `import from <library> module <name>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImportDecl {
    pub library: String,
    pub module: String,
    pub span: Span,
}

/// A complete system description: theory (imports plus inline modules)
/// and structure.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SystemDescription {
    pub name: String,
    pub theory_name: String,
    pub imports: Vec<ImportDecl>,
    pub modules: Vec<ModuleDecl>,
    pub structure: Structure,
}

impl SystemDescription {
    pub fn module(&self, name: &str) -> Option<&ModuleDecl> {
        self.modules.iter().find(|m| m.name == name)
    }
}

/// True for identifiers that denote variables (uppercase-initial).
pub fn is_variable_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}
