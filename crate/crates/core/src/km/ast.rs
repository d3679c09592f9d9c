//! Typed view of the KM fragment used by the component-library subset:
//! slot definitions and class declarations with `every`-clauses.

use crate::span::Span;

/// Built-in KM class names.
pub const KM_THING: &str = "Thing";
pub const KM_ACTION: &str = "Action";
pub const KM_STATE: &str = "State";
pub const KM_EVENT: &str = "Event";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cardinality {
    NToN,
    NTo1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FluentStatus {
    InertialFluent,
    NonFluent,
}

/// A slot definition: a binary relation with domain, range, cardinality
/// and fluent status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotDef {
    pub name: String,
    pub instance_of: String,
    pub domain: String,
    pub range: String,
    pub cardinality: Cardinality,
    pub fluent_status: FluentStatus,
    pub span: Span,
}

/// WordNet 2.0 sense reference attached to a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WnSense {
    pub word: String,
    pub sense: i64,
    pub pos: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Action,
    State,
    Entity,
}

/// Value specification for an attribute inside an `every`-clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttrSpec {
    /// `(a <c>)` — constructive existential; becomes constraints in ALM.
    A(String),
    MustBeA(String),
    MustntBeA(String),
    AtMost(u8, String),
    AtLeast(u8, String),
    Exactly(u8, String),
    /// `(the <attr2> of Self)` — same value as another attribute.
    TheAttrOfSelf(String),
    /// `(excluded-values (the <attr2> of Self))`.
    ExcludedValues(String),
    /// `(constraint (TheValue & (the <attr2> of Self)))`.
    UnifyConstraint(String),
}

/// One item of an add-list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EffectItem {
    /// `(:triple (the resulting-state of Self) <rel> (the <attr> of Self))`
    ResultTriple { rel: String, attr: String },
    /// `(if (has-value (the <attr2> of Self)) then <item> [else <item>])`
    IfHasValue {
        attr2: String,
        then: Box<EffectItem>,
        els: Option<Box<EffectItem>>,
    },
    /// `(forall (the <attr> of Self) (:triple It <rel>-of (the resulting-state of Self)))`
    ForallInverse { attr: String, rel: String },
}

/// One item of a del-list:
/// `(forall (the defeats of Self) (:triple (It) <rel> (the <attr> of Self)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelItem {
    pub rel: String,
    pub attr: String,
}

/// One item of a pcs-, ncs- or soft-pcs-list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrecondItem {
    /// `(forall (the <attr> of Self) (:triple It object-of (a <State>)))`
    InState { attr: String, state: String },
    /// Same with `(a <State> with (<attr2> ((the <attr2> of Self))))`.
    InStateWith {
        attr1: String,
        state: String,
        attr2: String,
    },
}

/// A default preparatory event of the co-location shape:
/// `(:default (if (has-value (the <guard> of Self)) then (a <Action> with
/// (object ((the <guard> of Self))) (destination ((a <c> with (<slot>
/// ((the <object_attr> of Self)))))))))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrepItem {
    pub guard_attr: String,
    pub action: String,
    pub via_slot: String,
    pub object_attr: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EveryClause {
    AttrSpec {
        attr: String,
        spec: AttrSpec,
        span: Span,
    },
    ResultingState {
        state: String,
        span: Span,
    },
    AddList {
        items: Vec<EffectItem>,
        span: Span,
    },
    DelList {
        items: Vec<DelItem>,
        span: Span,
    },
    Defeats {
        attr: String,
        state: String,
        span: Span,
    },
    PcsList {
        items: Vec<PrecondItem>,
        span: Span,
    },
    NcsList {
        items: Vec<PrecondItem>,
        span: Span,
    },
    SoftPcsList {
        items: Vec<PrecondItem>,
        span: Span,
    },
    PreparatoryEvent {
        items: Vec<PrepItem>,
        span: Span,
    },
}

/// A class declaration assembled from its `has` frame and `every` frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecl {
    pub name: String,
    pub superclasses: Vec<String>,
    pub synset: Vec<WnSense>,
    pub kind: ClassKind,
    pub every: Vec<EveryClause>,
    pub span: Span,
}

/// A parsed KM knowledge base.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KmKb {
    pub slots: Vec<SlotDef>,
    pub classes: Vec<ClassDecl>,
}

impl KmKb {
    pub fn class(&self, name: &str) -> Option<&ClassDecl> {
        self.classes.iter().find(|c| c.name == name)
    }

    pub fn slot(&self, name: &str) -> Option<&SlotDef> {
        self.slots.iter().find(|s| s.name == name)
    }

    /// Superclass chain of `name` (not including itself), following
    /// declared classes; built-ins terminate the walk.
    pub fn ancestors(&self, name: &str) -> Vec<String> {
        let mut out = Vec::new();
        let mut stack = vec![name.to_string()];
        while let Some(n) = stack.pop() {
            if let Some(c) = self.class(&n) {
                for s in &c.superclasses {
                    if !out.contains(s) {
                        out.push(s.clone());
                        stack.push(s.clone());
                    }
                }
            }
        }
        out
    }

    /// Class kind from the superclass chain. State classes follow the
    /// `Be-<f>` naming convention, which also classifies states whose
    /// superclass chain is not part of the knowledge base.
    pub fn kind_of(&self, name: &str) -> ClassKind {
        if name == KM_ACTION {
            return ClassKind::Action;
        }
        if name == KM_STATE || name.starts_with("Be-") {
            return ClassKind::State;
        }
        let ancestors = self.ancestors(name);
        if ancestors.iter().any(|a| a == KM_ACTION) {
            ClassKind::Action
        } else if ancestors.iter().any(|a| a == KM_STATE || a.starts_with("Be-")) {
            ClassKind::State
        } else {
            ClassKind::Entity
        }
    }
}
