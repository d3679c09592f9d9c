//! Translation from the KM fragment into ALM.
//!
//! The pipeline runs in three passes over a knowledge base:
//!
//! Pass 1 — slots. `N-to-N` slots become boolean functions
//! `s : c1 x c2 -> booleans`, `N-to-1` slots `s : c1 -> c2`; `*Non-Fluent`
//! gives a basic static, anything else a basic fluent — except participant
//! relations and spatial relations over events, which become attributes of
//! the predefined sort `actions`.
//!
//! Pass 2 — states. A state class `Be-<f>` becomes a basic fluent
//! `is_<f> : c1 -> booleans` over the most specific class of its `object`
//! participant. A secondary (required or associated) participant relation
//! `r` adds `<f>_<prep> : c1 x c2 -> booleans` and two connecting state
//! constraints; each superclass state adds a subclass constraint. States
//! named in the negation map translate to the negated literal of their
//! counterpart and emit nothing themselves.
//!
//! Pass 3 — actions. Superclasses become a specialization declaration;
//! attribute value specifications become constraints (plus `defined_<attr>`
//! machinery for constructive existentials); pcs/ncs lists become
//! executability conditions; add/del lists become dynamic causal laws; and
//! defeasible clauses (soft preconditions, preparatory events) translate
//! like preconditions but are routed to a separate optional-axiom set.

pub mod config;

use crate::alm::ast::*;
use crate::km::ast::*;
use crate::span::Span;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub use config::{Groups, Patch, PatchSpecKind, PrepositionMap, TranslationConfig};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("state `{0}` has no required `object` participant relation")]
    MissingObjectRelation(String),
    #[error("state `{0}` has more than one secondary participant relation: {1:?}")]
    MultipleSecondary(String, Vec<String>),
    #[error("no preposition known for relation `{relation}` of state `{state}`")]
    UnknownPreposition { state: String, relation: String },
    #[error("class `{class}`: unsupported value specification for `{attr}`: {detail}")]
    UnsupportedSpec {
        class: String,
        attr: String,
        detail: String,
    },
    #[error("class `{class}`: unrecognized triple pattern: {detail}")]
    UnrecognizedTriplePattern { class: String, detail: String },
    #[error("reference to unknown class `{0}`")]
    UnknownClass(String),
    #[error("reference to unknown slot or function `{0}`")]
    UnknownSlot(String),
}

/// One emitted declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Declaration {
    Sort(SortDecl),
    Function(FunctionDecl),
    Attribute { owner: String, decl: AttributeDecl },
}

/// Everything the translation of one slot or class produces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TranslationOutput {
    pub declarations: Vec<Declaration>,
    pub axioms: Vec<Axiom>,
    pub optional_axioms: Vec<Axiom>,
    pub notes: Vec<String>,
}

impl TranslationOutput {
    fn merge(&mut self, other: TranslationOutput) {
        for d in other.declarations {
            if !self.declarations.contains(&d) {
                self.declarations.push(d);
            }
        }
        for a in other.axioms {
            if !self.axioms.contains(&a) {
                self.axioms.push(a);
            }
        }
        for a in other.optional_axioms {
            if !self.optional_axioms.contains(&a) {
                self.optional_axioms.push(a);
            }
        }
        self.notes.extend(other.notes);
    }
}

/// Converts a KM name to an ALM constant symbol: lowercase, `-` to `_`.
/// `Action` and `Event` map to the predefined sort `actions`, `Thing` to
/// `universe`.
pub fn mangle(name: &str) -> String {
    match name {
        KM_ACTION | KM_EVENT => SORT_ACTIONS.to_string(),
        KM_THING => SORT_UNIVERSE.to_string(),
        _ => name.to_ascii_lowercase().replace('-', "_"),
    }
}

/// Fluent name for a state class: `Be-Obstructed` -> `is_obstructed`,
/// with the bare root `obstructed` as the binary-fluent stem.
fn state_stem(name: &str) -> String {
    mangle(name.strip_prefix("Be-").unwrap_or(name))
}

/// How a state class is rendered as a literal over a unary fluent.
#[derive(Clone, Debug)]
struct StateFluents {
    positive: bool,
    unary: String,
    binary: Option<BinaryFluent>,
}

#[derive(Clone, Debug)]
struct BinaryFluent {
    name: String,
    relation: String,
}

/// The whole-knowledge-base translation result.
#[derive(Clone, Debug, Default)]
pub struct KbTranslation {
    /// (KM symbol, its output), in translation order: slots, states, actions.
    pub outputs: Vec<(String, TranslationOutput)>,
    /// Advisory findings of the opposite-action consistency pass.
    pub opposite_report: Vec<String>,
}

impl KbTranslation {
    pub fn output_for(&self, symbol: &str) -> Option<&TranslationOutput> {
        self.outputs
            .iter()
            .find(|(s, _)| s == symbol)
            .map(|(_, o)| o)
    }
}

pub struct Translator<'a> {
    kb: &'a KmKb,
    config: &'a TranslationConfig,
    renames: &'a BTreeMap<String, String>,
    /// ALM attribute table: name -> (owner sort, decl).
    attrs: BTreeMap<String, (String, AttributeDecl)>,
    /// ALM function table (fluents and statics from slots and states).
    functions: BTreeMap<String, FunctionDecl>,
    /// state class -> its fluent rendering.
    states: BTreeMap<String, StateFluents>,
    /// defined statics already declared (name).
    defined_emitted: BTreeSet<String>,
}

impl<'a> Translator<'a> {
    pub fn new(
        kb: &'a KmKb,
        config: &'a TranslationConfig,
        renames: &'a BTreeMap<String, String>,
    ) -> Self {
        Translator {
            kb,
            config,
            renames,
            attrs: BTreeMap::new(),
            functions: BTreeMap::new(),
            states: BTreeMap::new(),
            defined_emitted: BTreeSet::new(),
        }
    }

    fn class_name(&self, km_name: &str) -> String {
        self.renames
            .get(km_name)
            .cloned()
            .unwrap_or_else(|| mangle(km_name))
    }

    // -- Pass 1: slots -----------------------------------------------------

    /// Translates one slot definition.
    pub fn translate_slot(&mut self, slot: &SlotDef) -> TranslationOutput {
        let mut out = TranslationOutput::default();
        let name = mangle(&slot.name);
        let domain = mangle(&slot.domain);
        let range = mangle(&slot.range);
        let is_attribute = slot.instance_of == "Participant-Relation"
            || (slot.instance_of == "Spatial-Relation" && slot.domain == KM_EVENT);
        if is_attribute {
            let decl = match slot.cardinality {
                Cardinality::NToN => AttributeDecl {
                    name: name.clone(),
                    arg_sorts: vec![range],
                    range: SORT_BOOLEANS.to_string(),
                    span: Span::default(),
                },
                Cardinality::NTo1 => AttributeDecl {
                    name: name.clone(),
                    arg_sorts: vec![],
                    range,
                    span: Span::default(),
                },
            };
            self.attrs
                .insert(name, (SORT_ACTIONS.to_string(), decl.clone()));
            out.declarations.push(Declaration::Attribute {
                owner: SORT_ACTIONS.to_string(),
                decl,
            });
            return out;
        }
        let kind = match slot.fluent_status {
            FluentStatus::NonFluent => FunctionKind::BasicStatic,
            FluentStatus::InertialFluent => FunctionKind::BasicFluent,
        };
        let decl = match slot.cardinality {
            Cardinality::NToN => FunctionDecl {
                name: name.clone(),
                kind,
                arg_sorts: vec![domain, range],
                range: SORT_BOOLEANS.to_string(),
                span: Span::default(),
            },
            Cardinality::NTo1 => FunctionDecl {
                name: name.clone(),
                kind,
                arg_sorts: vec![domain],
                range,
                span: Span::default(),
            },
        };
        self.functions.insert(name, decl.clone());
        out.declarations.push(Declaration::Function(decl));
        out
    }

    // -- Pass 2: states ----------------------------------------------------

    /// The most specific class constraining participant relation `rel`
    /// across the state and its state superclasses.
    fn most_specific_participant(&self, state: &ClassDecl, rel: &str) -> Option<String> {
        let mut candidates: Vec<String> = Vec::new();
        let mut chain = vec![state.name.clone()];
        chain.extend(self.kb.ancestors(&state.name));
        for class_name in &chain {
            let Some(class) = self.kb.class(class_name) else {
                continue;
            };
            for clause in &class.every {
                if let EveryClause::AttrSpec { attr, spec, .. } = clause {
                    if attr == rel {
                        match spec {
                            AttrSpec::A(c) | AttrSpec::MustBeA(c) => candidates.push(c.clone()),
                            _ => {}
                        }
                    }
                }
            }
        }
        let mut best: Option<String> = None;
        for c in candidates {
            best = Some(match best {
                None => c,
                Some(b) => {
                    if self.km_is_subclass(&c, &b) {
                        c
                    } else {
                        b
                    }
                }
            });
        }
        best
    }

    fn km_is_subclass(&self, sub: &str, sup: &str) -> bool {
        sub == sup || self.kb.ancestors(sub).iter().any(|a| a == sup)
    }

    /// Secondary participant relations of a state: those declared on the
    /// state itself beyond `object`, plus those associated with it through
    /// action axioms that reference the state together with a second
    /// attribute.
    fn secondary_relations(&self, state: &ClassDecl) -> Vec<String> {
        let mut rels: Vec<String> = Vec::new();
        let mut add = |r: &str| {
            if r != "object" && !rels.iter().any(|x| x == r) {
                rels.push(r.to_string());
            }
        };
        for clause in &state.every {
            if let EveryClause::AttrSpec { attr, spec, .. } = clause {
                if matches!(spec, AttrSpec::A(_)) {
                    add(attr);
                }
            }
        }
        for class in &self.kb.classes {
            if class.kind != ClassKind::Action {
                continue;
            }
            let resulting = class.every.iter().find_map(|c| match c {
                EveryClause::ResultingState { state: s, .. } => Some(s.clone()),
                _ => None,
            });
            for clause in &class.every {
                match clause {
                    EveryClause::AddList { items, .. }
                        if resulting.as_deref() == Some(state.name.as_str()) =>
                    {
                        for item in items {
                            match item {
                                EffectItem::IfHasValue { then, .. } => {
                                    if let EffectItem::ResultTriple { rel, .. } = then.as_ref() {
                                        add(rel);
                                    }
                                    if let EffectItem::ForallInverse { rel, .. } = then.as_ref() {
                                        add(rel);
                                    }
                                }
                                EffectItem::ForallInverse { rel, .. } => add(rel),
                                EffectItem::ResultTriple { .. } => {}
                            }
                        }
                    }
                    EveryClause::PcsList { items, .. }
                    | EveryClause::NcsList { items, .. }
                    | EveryClause::SoftPcsList { items, .. } => {
                        for item in items {
                            if let PrecondItem::InStateWith { state: s, attr2, .. } = item {
                                if s == &state.name {
                                    add(attr2);
                                }
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        rels
    }

    /// Translates one state class. States in the negation map register
    /// their literal and emit nothing.
    pub fn translate_state(&mut self, state: &ClassDecl) -> Result<TranslationOutput, TranslateError> {
        let mut out = TranslationOutput::default();
        if let Some(target) = self.config.state_negations.get(&state.name) {
            let target_fluents = self
                .states
                .get(target)
                .ok_or_else(|| TranslateError::UnknownClass(target.clone()))?
                .clone();
            self.states.insert(
                state.name.clone(),
                StateFluents {
                    positive: !target_fluents.positive,
                    ..target_fluents
                },
            );
            out.notes.push(format!(
                "state {} is the negation of {}; no fluent emitted",
                state.name, target
            ));
            return Ok(out);
        }
        let object_class = self
            .most_specific_participant(state, "object")
            .ok_or_else(|| TranslateError::MissingObjectRelation(state.name.clone()))?;
        let domain = mangle(&object_class);
        let stem = state_stem(&state.name);
        let unary = format!("is_{stem}");
        let unary_decl = FunctionDecl {
            name: unary.clone(),
            kind: FunctionKind::BasicFluent,
            arg_sorts: vec![domain.clone()],
            range: SORT_BOOLEANS.to_string(),
            span: Span::default(),
        };
        self.functions.insert(unary.clone(), unary_decl.clone());
        out.declarations.push(Declaration::Function(unary_decl));

        let secondary = self.secondary_relations(state);
        let binary = match secondary.as_slice() {
            [] => None,
            [rel] => {
                let prep = self
                    .config
                    .prepositions
                    .lookup(&state.name, rel)
                    .ok_or_else(|| TranslateError::UnknownPreposition {
                        state: state.name.clone(),
                        relation: rel.clone(),
                    })?
                    .to_string();
                let second_domain = self
                    .attrs
                    .get(&mangle(rel))
                    .map(|(_, d)| {
                        d.arg_sorts
                            .first()
                            .cloned()
                            .unwrap_or_else(|| d.range.clone())
                    })
                    .ok_or_else(|| TranslateError::UnknownSlot(rel.clone()))?;
                let name = format!("{stem}_{prep}");
                let decl = FunctionDecl {
                    name: name.clone(),
                    kind: FunctionKind::BasicFluent,
                    arg_sorts: vec![domain.clone(), second_domain.clone()],
                    range: SORT_BOOLEANS.to_string(),
                    span: Span::default(),
                };
                self.functions.insert(name.clone(), decl.clone());
                out.declarations.push(Declaration::Function(decl));
                // Connect the two arities.
                out.axioms.push(Axiom::StateConstraint {
                    head: Some(Literal::apply(unary.clone(), vec![Term::var("O")])),
                    body: vec![Literal::apply(
                        name.clone(),
                        vec![Term::var("O"), Term::var("I")],
                    )],
                    span: Span::default(),
                });
                out.axioms.push(Axiom::StateConstraint {
                    head: Some(
                        Literal::apply(name.clone(), vec![Term::var("O"), Term::var("I")])
                            .negated(),
                    ),
                    body: vec![Literal::apply(unary.clone(), vec![Term::var("O")]).negated()],
                    span: Span::default(),
                });
                Some(BinaryFluent {
                    name,
                    relation: rel.clone(),
                })
            }
            more => {
                return Err(TranslateError::MultipleSecondary(
                    state.name.clone(),
                    more.to_vec(),
                ))
            }
        };
        self.states.insert(
            state.name.clone(),
            StateFluents {
                positive: true,
                unary: unary.clone(),
                binary,
            },
        );
        // Subclass relationship between states.
        for sup in &state.superclasses {
            if self.kb.kind_of(sup) != ClassKind::State || sup == KM_STATE {
                continue;
            }
            let parent = self.state_literal(sup, vec![Term::var("O")])?;
            out.axioms.push(Axiom::StateConstraint {
                head: Some(parent),
                body: vec![Literal::apply(unary.clone(), vec![Term::var("O")])],
                span: Span::default(),
            });
        }
        Ok(out)
    }

    /// Literal for membership in a state, honoring negation states.
    fn state_literal(&self, state: &str, args: Vec<Term>) -> Result<Literal, TranslateError> {
        let fluents = self
            .states
            .get(state)
            .ok_or_else(|| TranslateError::UnknownClass(state.to_string()))?;
        let lit = Literal::apply(fluents.unary.clone(), args);
        Ok(if fluents.positive { lit } else { lit.negated() })
    }

    fn state_fluents(&self, state: &str) -> Result<&StateFluents, TranslateError> {
        self.states
            .get(state)
            .ok_or_else(|| TranslateError::UnknownClass(state.to_string()))
    }

    // -- Pass 3: actions ---------------------------------------------------

    pub fn translate_action(
        &mut self,
        action: &ClassDecl,
    ) -> Result<TranslationOutput, TranslateError> {
        let mut out = TranslationOutput::default();
        let name = self.class_name(&action.name);
        let parents: Vec<String> = if action.superclasses.is_empty() {
            vec![SORT_ACTIONS.to_string()]
        } else {
            action
                .superclasses
                .iter()
                .map(|s| self.class_name(s))
                .collect()
        };
        out.declarations.push(Declaration::Sort(SortDecl {
            names: vec![name.clone()],
            parents,
            attributes: vec![],
            span: Span::default(),
        }));

        let resulting = action.every.iter().find_map(|c| match c {
            EveryClause::ResultingState { state, .. } => Some(state.clone()),
            _ => None,
        });
        let defeats = action.every.iter().find_map(|c| match c {
            EveryClause::Defeats { attr, state, .. } => Some((attr.clone(), state.clone())),
            _ => None,
        });

        for clause in &action.every {
            match clause {
                EveryClause::AttrSpec { attr, spec, .. } => {
                    let o = self.translate_attr_spec(&name, attr, spec)?;
                    out.merge(o);
                }
                EveryClause::ResultingState { .. } | EveryClause::Defeats { .. } => {}
                EveryClause::AddList { items, .. } => {
                    let state = resulting.as_deref().ok_or_else(|| {
                        TranslateError::UnrecognizedTriplePattern {
                            class: action.name.clone(),
                            detail: "add-list without resulting-state".into(),
                        }
                    })?;
                    let o = self.translate_add_list(&action.name, &name, state, items)?;
                    out.merge(o);
                }
                EveryClause::DelList { items, .. } => {
                    let (dattr, dstate) = defeats.as_ref().ok_or_else(|| {
                        TranslateError::UnrecognizedTriplePattern {
                            class: action.name.clone(),
                            detail: "del-list without defeats".into(),
                        }
                    })?;
                    let o = self.translate_del_list(&action.name, &name, dattr, dstate, items)?;
                    out.merge(o);
                }
                EveryClause::PcsList { items, .. } => {
                    let o = self.translate_precondition(&action.name, &name, items, false)?;
                    out.merge(o);
                }
                EveryClause::NcsList { items, .. } => {
                    let o = self.translate_precondition(&action.name, &name, items, true)?;
                    out.merge(o);
                }
                EveryClause::SoftPcsList { items, .. } => {
                    let mut o = self.translate_precondition(&action.name, &name, items, false)?;
                    out.optional_axioms.append(&mut o.axioms);
                    out.merge(o);
                }
                EveryClause::PreparatoryEvent { items, .. } => {
                    let o = self.translate_preparatory(&action.name, &name, items)?;
                    out.merge(o);
                }
            }
        }
        Ok(out)
    }

    /// The attribute visible on action class `c`, if any. Attributes are
    /// declared on `actions` (or on an action class) and inherited down.
    fn attribute_of(&self, attr: &str) -> Option<&(String, AttributeDecl)> {
        self.attrs.get(&mangle(attr))
    }

    /// Ensures `defined_<attr> : <owner> -> booleans` with its definition
    /// exists; returns the defined static's name.
    fn ensure_defined_attr(&mut self, attr: &str, out: &mut TranslationOutput) -> String {
        let attr = mangle(attr);
        let name = format!("defined_{attr}");
        if self.defined_emitted.contains(&name) {
            return name;
        }
        let owner = self
            .attrs
            .get(&attr)
            .map(|(o, _)| o.clone())
            .unwrap_or_else(|| SORT_ACTIONS.to_string());
        let decl = FunctionDecl {
            name: name.clone(),
            kind: FunctionKind::DefinedStatic,
            arg_sorts: vec![owner],
            range: SORT_BOOLEANS.to_string(),
            span: Span::default(),
        };
        self.functions.insert(name.clone(), decl.clone());
        out.declarations.push(Declaration::Function(decl));
        out.axioms.push(Axiom::Definition {
            head: Literal::apply(name.clone(), vec![Term::var("X")]),
            body: vec![Literal::apply(
                attr,
                vec![Term::var("X"), Term::var("A")],
            )],
            span: Span::default(),
        });
        self.defined_emitted.insert(name.clone());
        name
    }

    pub fn translate_attr_spec(
        &mut self,
        class: &str,
        attr: &str,
        spec: &AttrSpec,
    ) -> Result<TranslationOutput, TranslateError> {
        let mut out = TranslationOutput::default();
        let attr_name = mangle(attr);
        let x = Term::var("X");
        let inst_c = Literal::instance(x.clone(), class.to_string());
        let unknown_attr = || TranslateError::UnsupportedSpec {
            class: class.to_string(),
            attr: attr.to_string(),
            detail: "attribute is not declared".into(),
        };
        match spec {
            AttrSpec::A(c1) | AttrSpec::AtLeast(1, c1) => {
                let c1_alm = mangle(c1);
                if let Some((_, decl)) = self.attribute_of(attr).cloned().map(|p| (p.0, p.1)) {
                    let inherited_sort = decl
                        .arg_sorts
                        .first()
                        .cloned()
                        .unwrap_or_else(|| decl.range.clone());
                    if matches!(spec, AttrSpec::A(_)) && inherited_sort != c1_alm {
                        out.axioms.push(Axiom::StateConstraint {
                            head: None,
                            body: vec![
                                inst_c.clone(),
                                Literal::apply(
                                    attr_name.clone(),
                                    vec![x.clone(), Term::var("A")],
                                ),
                                Literal::instance(Term::var("A"), c1_alm).negated(),
                            ],
                            span: Span::default(),
                        });
                    }
                } else {
                    // Fresh attribute on this class.
                    let decl = AttributeDecl {
                        name: attr_name.clone(),
                        arg_sorts: vec![c1_alm],
                        range: SORT_BOOLEANS.to_string(),
                        span: Span::default(),
                    };
                    self.attrs
                        .insert(attr_name.clone(), (class.to_string(), decl.clone()));
                    out.declarations.push(Declaration::Attribute {
                        owner: class.to_string(),
                        decl,
                    });
                }
                let defined = self.ensure_defined_attr(attr, &mut out);
                out.axioms.push(Axiom::StateConstraint {
                    head: None,
                    body: vec![
                        inst_c,
                        Literal::apply(defined, vec![x]).negated(),
                    ],
                    span: Span::default(),
                });
            }
            AttrSpec::MustBeA(c1) => {
                self.attribute_of(attr).ok_or_else(unknown_attr)?;
                out.axioms.push(Axiom::StateConstraint {
                    head: None,
                    body: vec![
                        inst_c,
                        Literal::apply(attr_name, vec![x, Term::var("A")]),
                        Literal::instance(Term::var("A"), mangle(c1)).negated(),
                    ],
                    span: Span::default(),
                });
            }
            AttrSpec::MustntBeA(c1) => {
                self.attribute_of(attr).ok_or_else(unknown_attr)?;
                out.axioms.push(Axiom::StateConstraint {
                    head: None,
                    body: vec![
                        inst_c,
                        Literal::apply(attr_name, vec![x, Term::var("A")]),
                        Literal::instance(Term::var("A"), mangle(c1)),
                    ],
                    span: Span::default(),
                });
            }
            AttrSpec::AtMost(1, c1) => {
                self.attribute_of(attr).ok_or_else(unknown_attr)?;
                out.axioms.push(self.at_most_one(class, &attr_name, c1));
            }
            AttrSpec::AtMost(2, c1) => {
                self.attribute_of(attr).ok_or_else(unknown_attr)?;
                out.axioms.push(self.at_most_two(class, &attr_name, c1));
            }
            AttrSpec::AtLeast(2, c1) => {
                self.attribute_of(attr).ok_or_else(unknown_attr)?;
                let o = self.at_least_two(class, attr, c1);
                out.merge(o);
            }
            AttrSpec::Exactly(0, c1) => {
                self.attribute_of(attr).ok_or_else(unknown_attr)?;
                out.axioms.push(Axiom::StateConstraint {
                    head: None,
                    body: vec![
                        inst_c,
                        Literal::apply(attr_name, vec![x, Term::var("A")]),
                        Literal::instance(Term::var("A"), mangle(c1)),
                    ],
                    span: Span::default(),
                });
            }
            AttrSpec::Exactly(1, c1) => {
                let o = self.translate_attr_spec(class, attr, &AttrSpec::AtLeast(1, c1.clone()))?;
                out.merge(o);
                out.axioms.push(self.at_most_one(class, &attr_name, c1));
            }
            AttrSpec::Exactly(2, c1) => {
                let o = self.translate_attr_spec(class, attr, &AttrSpec::AtLeast(2, c1.clone()))?;
                out.merge(o);
                out.axioms.push(self.at_most_two(class, &attr_name, c1));
            }
            AttrSpec::TheAttrOfSelf(attr2) => {
                self.attribute_of(attr).ok_or_else(unknown_attr)?;
                self.attribute_of(attr2)
                    .ok_or_else(|| TranslateError::UnsupportedSpec {
                        class: class.to_string(),
                        attr: attr.to_string(),
                        detail: format!("unknown attribute `{attr2}`"),
                    })?;
                out.axioms.push(Axiom::StateConstraint {
                    head: Some(Literal::apply(
                        attr_name,
                        vec![x.clone(), Term::var("V")],
                    )),
                    body: vec![
                        Literal::apply(mangle(attr2), vec![x, Term::var("V")]),
                        inst_c,
                    ],
                    span: Span::default(),
                });
            }
            AttrSpec::ExcludedValues(attr2) => {
                self.attribute_of(attr).ok_or_else(unknown_attr)?;
                out.axioms.push(Axiom::StateConstraint {
                    head: None,
                    body: vec![
                        inst_c,
                        Literal::apply(attr_name, vec![x.clone(), Term::var("A")]),
                        Literal::apply(mangle(attr2), vec![x, Term::var("A")]),
                    ],
                    span: Span::default(),
                });
            }
            AttrSpec::UnifyConstraint(attr2) => {
                self.attribute_of(attr).ok_or_else(unknown_attr)?;
                let differ = format!("differ_{}_{}", attr_name, mangle(attr2));
                if !self.defined_emitted.contains(&differ) {
                    let owner = self
                        .attrs
                        .get(&attr_name)
                        .map(|(o, _)| o.clone())
                        .unwrap_or_else(|| SORT_ACTIONS.to_string());
                    let decl = FunctionDecl {
                        name: differ.clone(),
                        kind: FunctionKind::DefinedStatic,
                        arg_sorts: vec![owner],
                        range: SORT_BOOLEANS.to_string(),
                        span: Span::default(),
                    };
                    self.functions.insert(differ.clone(), decl.clone());
                    out.declarations.push(Declaration::Function(decl));
                    for (one, two) in [(&attr_name, &mangle(attr2)), (&mangle(attr2), &attr_name)]
                    {
                        out.axioms.push(Axiom::Definition {
                            head: Literal::apply(differ.clone(), vec![x.clone()]),
                            body: vec![
                                Literal::apply(one.clone(), vec![x.clone(), Term::var("V")]),
                                Literal::apply(two.clone(), vec![x.clone(), Term::var("V")])
                                    .negated(),
                            ],
                            span: Span::default(),
                        });
                    }
                    self.defined_emitted.insert(differ.clone());
                }
                out.axioms.push(Axiom::StateConstraint {
                    head: None,
                    body: vec![inst_c, Literal::apply(differ, vec![x]).negated()],
                    span: Span::default(),
                });
            }
            AttrSpec::AtMost(n, _) | AttrSpec::AtLeast(n, _) | AttrSpec::Exactly(n, _) => {
                return Err(TranslateError::UnsupportedSpec {
                    class: class.to_string(),
                    attr: attr.to_string(),
                    detail: format!("cardinality bound {n} outside 0..=2"),
                });
            }
        }
        Ok(out)
    }

    fn at_most_one(&self, class: &str, attr: &str, c1: &str) -> Axiom {
        let x = Term::var("X");
        Axiom::StateConstraint {
            head: Some(
                Literal::apply(attr.to_string(), vec![x.clone(), Term::var("A1")]).negated(),
            ),
            body: vec![
                Literal::apply(attr.to_string(), vec![x.clone(), Term::var("A2")]),
                Literal::pos(AlmAtom::Cmp {
                    op: CmpOp::Neq,
                    left: Term::var("A1"),
                    right: Term::var("A2"),
                }),
                Literal::instance(x, class.to_string()),
                Literal::instance(Term::var("A1"), mangle(c1)),
                Literal::instance(Term::var("A2"), mangle(c1)),
            ],
            span: Span::default(),
        }
    }

    fn at_most_two(&self, class: &str, attr: &str, c1: &str) -> Axiom {
        let x = Term::var("X");
        let neq = |a: &str, b: &str| {
            Literal::pos(AlmAtom::Cmp {
                op: CmpOp::Neq,
                left: Term::var(a),
                right: Term::var(b),
            })
        };
        Axiom::StateConstraint {
            head: Some(
                Literal::apply(attr.to_string(), vec![x.clone(), Term::var("A1")]).negated(),
            ),
            body: vec![
                Literal::apply(attr.to_string(), vec![x.clone(), Term::var("A2")]),
                Literal::apply(attr.to_string(), vec![x.clone(), Term::var("A3")]),
                neq("A1", "A2"),
                neq("A1", "A3"),
                neq("A2", "A3"),
                Literal::instance(x, class.to_string()),
                Literal::instance(Term::var("A1"), mangle(c1)),
                Literal::instance(Term::var("A2"), mangle(c1)),
                Literal::instance(Term::var("A3"), mangle(c1)),
            ],
            span: Span::default(),
        }
    }

    fn at_least_two(&mut self, class: &str, attr: &str, c1: &str) -> TranslationOutput {
        let mut out = TranslationOutput::default();
        let attr_name = mangle(attr);
        let name = format!("at_least_2_{attr_name}");
        let x = Term::var("X");
        if !self.defined_emitted.contains(&name) {
            let owner = self
                .attrs
                .get(&attr_name)
                .map(|(o, _)| o.clone())
                .unwrap_or_else(|| SORT_ACTIONS.to_string());
            let decl = FunctionDecl {
                name: name.clone(),
                kind: FunctionKind::DefinedStatic,
                arg_sorts: vec![owner],
                range: SORT_BOOLEANS.to_string(),
                span: Span::default(),
            };
            self.functions.insert(name.clone(), decl.clone());
            out.declarations.push(Declaration::Function(decl));
            out.axioms.push(Axiom::Definition {
                head: Literal::apply(name.clone(), vec![x.clone()]),
                body: vec![
                    Literal::apply(attr_name.clone(), vec![x.clone(), Term::var("A1")]),
                    Literal::apply(attr_name.clone(), vec![x.clone(), Term::var("A2")]),
                    Literal::pos(AlmAtom::Cmp {
                        op: CmpOp::Neq,
                        left: Term::var("A1"),
                        right: Term::var("A2"),
                    }),
                    Literal::instance(Term::var("A1"), mangle(c1)),
                    Literal::instance(Term::var("A2"), mangle(c1)),
                ],
                span: Span::default(),
            });
            self.defined_emitted.insert(name.clone());
        }
        out.axioms.push(Axiom::StateConstraint {
            head: None,
            body: vec![
                Literal::instance(x.clone(), class.to_string()),
                Literal::apply(name, vec![x]).negated(),
            ],
            span: Span::default(),
        });
        out
    }

    pub fn translate_precondition(
        &mut self,
        km_class: &str,
        class: &str,
        items: &[PrecondItem],
        negated: bool,
    ) -> Result<TranslationOutput, TranslateError> {
        let mut out = TranslationOutput::default();
        for item in items {
            let axiom = match item {
                PrecondItem::InState { attr, state } => {
                    let state_lit = self.state_literal(state, vec![Term::var("A")])?;
                    let lit = if negated { state_lit } else { state_lit.negated() };
                    Axiom::Executability {
                        trigger: "X".into(),
                        body: vec![
                            Literal::instance(Term::var("X"), class.to_string()),
                            Literal::apply(mangle(attr), vec![Term::var("X"), Term::var("A")]),
                            lit,
                        ],
                        span: Span::default(),
                    }
                }
                PrecondItem::InStateWith {
                    attr1,
                    state,
                    attr2,
                } => {
                    let fluents = self.state_fluents(state)?;
                    let binary = fluents.binary.as_ref().ok_or_else(|| {
                        TranslateError::UnrecognizedTriplePattern {
                            class: km_class.to_string(),
                            detail: format!(
                                "state {state} has no binary fluent for `{attr2}`"
                            ),
                        }
                    })?;
                    let lit = Literal::apply(
                        binary.name.clone(),
                        vec![Term::var("A1"), Term::var("A2")],
                    );
                    let lit = if negated { lit } else { lit.negated() };
                    Axiom::Executability {
                        trigger: "X".into(),
                        body: vec![
                            Literal::instance(Term::var("X"), class.to_string()),
                            Literal::apply(mangle(attr1), vec![Term::var("X"), Term::var("A1")]),
                            Literal::apply(mangle(attr2), vec![Term::var("X"), Term::var("A2")]),
                            lit,
                        ],
                        span: Span::default(),
                    }
                }
            };
            out.axioms.push(axiom);
        }
        Ok(out)
    }

    fn translate_add_list(
        &mut self,
        km_class: &str,
        class: &str,
        state: &str,
        items: &[EffectItem],
    ) -> Result<TranslationOutput, TranslateError> {
        let mut out = TranslationOutput::default();
        // The attribute holding the state's object, from the plain triple
        // when present.
        let object_attr = items
            .iter()
            .find_map(|i| match i {
                EffectItem::ResultTriple { rel, attr } if rel == "object" => Some(attr.clone()),
                _ => None,
            })
            .unwrap_or_else(|| "object".to_string());
        for item in items {
            match item {
                EffectItem::ResultTriple { rel, attr } if rel == "object" => {
                    let head = self.state_literal(state, vec![Term::var("A")])?;
                    out.axioms.push(Axiom::DynamicCausal {
                        trigger: "X".into(),
                        head,
                        body: vec![
                            Literal::instance(Term::var("X"), class.to_string()),
                            Literal::apply(mangle(attr), vec![Term::var("X"), Term::var("A")]),
                        ],
                        span: Span::default(),
                    });
                }
                EffectItem::ResultTriple { rel, .. } => {
                    return Err(TranslateError::UnrecognizedTriplePattern {
                        class: km_class.to_string(),
                        detail: format!("bare add-list triple over `{rel}`"),
                    });
                }
                EffectItem::IfHasValue { attr2, then, els } => {
                    let binary = {
                        let fluents = self.state_fluents(state)?;
                        fluents.binary.clone().ok_or_else(|| {
                            TranslateError::UnrecognizedTriplePattern {
                                class: km_class.to_string(),
                                detail: format!("state {state} has no binary fluent"),
                            }
                        })?
                    };
                    // Binding attribute for the state's object position.
                    let attr1 = match els.as_deref() {
                        Some(EffectItem::ResultTriple { rel, attr }) if rel == "object" => {
                            attr.clone()
                        }
                        None => object_attr.clone(),
                        _ => {
                            return Err(TranslateError::UnrecognizedTriplePattern {
                                class: km_class.to_string(),
                                detail: "unsupported else branch".into(),
                            })
                        }
                    };
                    let second = match then.as_ref() {
                        EffectItem::ResultTriple { attr, .. } => attr.clone(),
                        EffectItem::ForallInverse { attr, .. } => attr.clone(),
                        _ => {
                            return Err(TranslateError::UnrecognizedTriplePattern {
                                class: km_class.to_string(),
                                detail: "unsupported then branch".into(),
                            })
                        }
                    };
                    if mangle(&second) != mangle(attr2) {
                        return Err(TranslateError::UnrecognizedTriplePattern {
                            class: km_class.to_string(),
                            detail: format!(
                                "if-then condition on `{attr2}` but triple over `{second}`"
                            ),
                        });
                    }
                    out.axioms.push(Axiom::DynamicCausal {
                        trigger: "X".into(),
                        head: Literal::apply(
                            binary.name.clone(),
                            vec![Term::var("A1"), Term::var("A2")],
                        ),
                        body: vec![
                            Literal::instance(Term::var("X"), class.to_string()),
                            Literal::apply(mangle(&attr1), vec![Term::var("X"), Term::var("A1")]),
                            Literal::apply(mangle(attr2), vec![Term::var("X"), Term::var("A2")]),
                        ],
                        span: Span::default(),
                    });
                    // With an else branch the unary effect applies exactly
                    // when the second attribute has no value.
                    if els.is_some() {
                        let defined = self.ensure_defined_attr(attr2, &mut out);
                        let head = self.state_literal(state, vec![Term::var("A")])?;
                        out.axioms.push(Axiom::DynamicCausal {
                            trigger: "X".into(),
                            head,
                            body: vec![
                                Literal::instance(Term::var("X"), class.to_string()),
                                Literal::apply(
                                    mangle(&attr1),
                                    vec![Term::var("X"), Term::var("A")],
                                ),
                                Literal::apply(defined, vec![Term::var("X")]).negated(),
                            ],
                            span: Span::default(),
                        });
                    }
                }
                EffectItem::ForallInverse { attr, rel } => {
                    let binary = {
                        let fluents = self.state_fluents(state)?;
                        fluents.binary.clone().ok_or_else(|| {
                            TranslateError::UnrecognizedTriplePattern {
                                class: km_class.to_string(),
                                detail: format!("state {state} has no binary fluent"),
                            }
                        })?
                    };
                    if binary.relation != *rel {
                        return Err(TranslateError::UnrecognizedTriplePattern {
                            class: km_class.to_string(),
                            detail: format!("inverse triple over `{rel}`"),
                        });
                    }
                    out.axioms.push(Axiom::DynamicCausal {
                        trigger: "X".into(),
                        head: Literal::apply(
                            binary.name.clone(),
                            vec![Term::var("A1"), Term::var("A2")],
                        ),
                        body: vec![
                            Literal::instance(Term::var("X"), class.to_string()),
                            Literal::apply(
                                mangle(&object_attr),
                                vec![Term::var("X"), Term::var("A1")],
                            ),
                            Literal::apply(mangle(attr), vec![Term::var("X"), Term::var("A2")]),
                        ],
                        span: Span::default(),
                    });
                }
            }
        }
        Ok(out)
    }

    fn translate_del_list(
        &mut self,
        km_class: &str,
        class: &str,
        defeats_attr: &str,
        defeats_state: &str,
        items: &[DelItem],
    ) -> Result<TranslationOutput, TranslateError> {
        let mut out = TranslationOutput::default();
        for item in items {
            if item.rel != "object" || item.attr != defeats_attr {
                return Err(TranslateError::UnrecognizedTriplePattern {
                    class: km_class.to_string(),
                    detail: format!("del-list triple over `{}`/`{}`", item.rel, item.attr),
                });
            }
            let state_lit = self.state_literal(defeats_state, vec![Term::var("A")])?;
            out.axioms.push(Axiom::DynamicCausal {
                trigger: "X".into(),
                head: state_lit.clone().negated(),
                body: vec![
                    Literal::instance(Term::var("X"), class.to_string()),
                    Literal::apply(mangle(&item.attr), vec![Term::var("X"), Term::var("A")]),
                    state_lit,
                ],
                span: Span::default(),
            });
        }
        Ok(out)
    }

    fn translate_preparatory(
        &mut self,
        km_class: &str,
        class: &str,
        items: &[PrepItem],
    ) -> Result<TranslationOutput, TranslateError> {
        let mut out = TranslationOutput::default();
        for item in items {
            let slot = mangle(&item.via_slot);
            if !self.functions.contains_key(&slot) {
                return Err(TranslateError::UnknownSlot(item.via_slot.clone()));
            }
            out.optional_axioms.push(Axiom::Executability {
                trigger: "X".into(),
                body: vec![
                    Literal::instance(Term::var("X"), class.to_string()),
                    Literal::apply(
                        mangle(&item.guard_attr),
                        vec![Term::var("X"), Term::var("A1")],
                    ),
                    Literal::apply(
                        mangle(&item.object_attr),
                        vec![Term::var("X"), Term::var("A2")],
                    ),
                    Literal::apply(slot, vec![Term::var("A1"), Term::var("A2")]).negated(),
                ],
                span: Span::default(),
            });
            out.notes.push(format!(
                "{km_class}: default preparatory {} becomes an optional co-location precondition",
                item.action
            ));
        }
        Ok(out)
    }
}

/// Entity classes become plain sort declarations.
fn translate_entity(class: &ClassDecl) -> TranslationOutput {
    let parents: Vec<String> = if class.superclasses.is_empty() {
        vec![SORT_UNIVERSE.to_string()]
    } else {
        class.superclasses.iter().map(|s| mangle(s)).collect()
    };
    TranslationOutput {
        declarations: vec![Declaration::Sort(SortDecl {
            names: vec![mangle(&class.name)],
            parents,
            attributes: vec![],
            span: Span::default(),
        })],
        ..Default::default()
    }
}

/// Topological order by superclass: ancestors first. Stable for inputs
/// already in order.
fn topo_classes<'k>(classes: Vec<&'k ClassDecl>, kb: &KmKb) -> Vec<&'k ClassDecl> {
    let mut out: Vec<&ClassDecl> = Vec::new();
    let mut placed: BTreeSet<&str> = BTreeSet::new();
    let names: BTreeSet<&str> = classes.iter().map(|c| c.name.as_str()).collect();
    let mut pending: Vec<&ClassDecl> = classes;
    let mut guard = 0usize;
    while !pending.is_empty() {
        guard += 1;
        let mut rest = Vec::new();
        for c in pending {
            let ready = kb
                .ancestors(&c.name)
                .iter()
                .all(|a| !names.contains(a.as_str()) || placed.contains(a.as_str()));
            if ready || guard > 64 {
                placed.insert(c.name.as_str());
                out.push(c);
            } else {
                rest.push(c);
            }
        }
        pending = rest;
    }
    out
}

/// Translates a whole knowledge base: slots, then states, then actions in
/// superclass-topological order, with the patch's extra specifications
/// appended and the opposite-action consistency report computed.
pub fn translate_kb(
    kb: &KmKb,
    config: &TranslationConfig,
    patch: &Patch,
) -> Result<KbTranslation, TranslateError> {
    let mut translation = KbTranslation::default();
    let mut translator = Translator::new(kb, config, &patch.renames);

    for slot in &kb.slots {
        let out = translator.translate_slot(slot);
        translation.outputs.push((slot.name.clone(), out));
    }

    let entities: Vec<&ClassDecl> = kb
        .classes
        .iter()
        .filter(|c| c.kind == ClassKind::Entity)
        .collect();
    for class in topo_classes(entities, kb) {
        translation
            .outputs
            .push((class.name.clone(), translate_entity(class)));
    }

    // States translate once their state superclasses and, for negation
    // states, their positive counterparts are available.
    let mut pending: Vec<&ClassDecl> = kb
        .classes
        .iter()
        .filter(|c| c.kind == ClassKind::State)
        .collect();
    let mut done: BTreeSet<String> = BTreeSet::new();
    while !pending.is_empty() {
        let mut progressed = false;
        let mut rest = Vec::new();
        for class in pending {
            let supers_ready = class
                .superclasses
                .iter()
                .filter(|s| kb.kind_of(s) == ClassKind::State && *s != KM_STATE)
                .all(|s| done.contains(s));
            let negation_ready = config
                .state_negations
                .get(&class.name)
                .is_none_or(|target| done.contains(target));
            if supers_ready && negation_ready {
                let out = translator.translate_state(class)?;
                translation.outputs.push((class.name.clone(), out));
                done.insert(class.name.clone());
                progressed = true;
            } else {
                rest.push(class);
            }
        }
        if !progressed {
            // Cyclic or dangling references: translate in input order so
            // the lookup error names the missing class.
            for class in rest {
                let out = translator.translate_state(class)?;
                translation.outputs.push((class.name.clone(), out));
            }
            break;
        }
        pending = rest;
    }

    let actions: Vec<&ClassDecl> = kb
        .classes
        .iter()
        .filter(|c| c.kind == ClassKind::Action)
        .collect();
    for class in topo_classes(actions, kb) {
        let mut out = translator.translate_action(class)?;
        for extra in patch.attr_specs.iter().filter(|p| p.class == class.name) {
            let spec = patch_spec(&extra.spec);
            let o = translator.translate_attr_spec(
                &translator.class_name(&class.name),
                &extra.attr,
                &spec,
            )?;
            out.merge(o);
        }
        translation.outputs.push((class.name.clone(), out));
    }

    translation.opposite_report = opposite_report(&translation, config, &patch.renames);
    Ok(translation)
}


fn patch_spec(p: &PatchSpecKind) -> AttrSpec {
    match p {
        PatchSpecKind::A(c) => AttrSpec::A(c.clone()),
        PatchSpecKind::MustBeA(c) => AttrSpec::MustBeA(c.clone()),
        PatchSpecKind::MustntBeA(c) => AttrSpec::MustntBeA(c.clone()),
        PatchSpecKind::AtMost(n, c) => AttrSpec::AtMost(*n, c.clone()),
        PatchSpecKind::AtLeast(n, c) => AttrSpec::AtLeast(*n, c.clone()),
        PatchSpecKind::Exactly(n, c) => AttrSpec::Exactly(*n, c.clone()),
        PatchSpecKind::TheAttrOfSelf(a) => AttrSpec::TheAttrOfSelf(a.clone()),
        PatchSpecKind::ExcludedValues(a) => AttrSpec::ExcludedValues(a.clone()),
        PatchSpecKind::UnifyConstraint(a) => AttrSpec::UnifyConstraint(a.clone()),
    }
}

/// Advisory check: for each opposites pair, flag it when one action has an
/// executability condition over some fluent and the other has none over
/// the same fluent.
fn opposite_report(
    translation: &KbTranslation,
    config: &TranslationConfig,
    renames: &BTreeMap<String, String>,
) -> Vec<String> {
    let exec_fluents = |sym: &str| -> BTreeSet<String> {
        translation
            .output_for(sym)
            .map(|o| {
                o.axioms
                    .iter()
                    .filter_map(|a| match a {
                        Axiom::Executability { body, .. } => Some(body),
                        _ => None,
                    })
                    .flatten()
                    .filter_map(|l| l.symbol().map(str::to_string))
                    .filter(|s| s.starts_with("is_") || s.contains('_'))
                    .collect()
            })
            .unwrap_or_default()
    };
    let display = |name: &str| renames.get(name).cloned().unwrap_or_else(|| mangle(name));
    let mut report = Vec::new();
    for (a, b) in &config.action_opposites {
        let fa = exec_fluents(a);
        let fb = exec_fluents(b);
        for f in fa.difference(&fb) {
            report.push(format!(
                "{} has an executability condition over {f} but its opposite {} has none",
                display(a),
                display(b)
            ));
        }
        for f in fb.difference(&fa) {
            report.push(format!(
                "{} has an executability condition over {f} but its opposite {} has none",
                display(b),
                display(a)
            ));
        }
    }
    report.sort();
    report
}

/// Assembles translation outputs into a module (plus an optional-axiom
/// leaf module when any defeasible axioms were produced). Attribute
/// declarations are attached to the sort declaration of their owner,
/// creating one (`actions :: universe` for the predefined sort) when the
/// module does not declare the owner itself.
pub fn assemble_module(
    name: &str,
    depends_on: &[String],
    outputs: &[&TranslationOutput],
) -> (ModuleDecl, Option<ModuleDecl>) {
    let mut module = ModuleDecl {
        name: name.to_string(),
        depends_on: depends_on.to_vec(),
        span: Span::default(),
        ..Default::default()
    };
    let mut attr_decls: Vec<(String, AttributeDecl)> = Vec::new();
    for out in outputs {
        for decl in &out.declarations {
            match decl {
                Declaration::Sort(s) => {
                    if !module.sorts.contains(s) {
                        module.sorts.push(s.clone());
                    }
                }
                Declaration::Function(f) => {
                    if !module.functions.contains(f) {
                        module.functions.push(f.clone());
                    }
                }
                Declaration::Attribute { owner, decl } => {
                    let pair = (owner.clone(), decl.clone());
                    if !attr_decls.contains(&pair) {
                        attr_decls.push(pair);
                    }
                }
            }
        }
        for a in &out.axioms {
            if !module.axioms.contains(a) {
                module.axioms.push(a.clone());
            }
        }
    }
    for (owner, decl) in attr_decls {
        let target = module
            .sorts
            .iter_mut()
            .find(|s| s.names.contains(&owner));
        match target {
            Some(s) => s.attributes.push(decl),
            None => module.sorts.push(SortDecl {
                names: vec![owner],
                parents: vec![SORT_UNIVERSE.to_string()],
                attributes: vec![decl],
                span: Span::default(),
            }),
        }
    }
    let optional: Vec<Axiom> = outputs
        .iter()
        .flat_map(|o| o.optional_axioms.iter().cloned())
        .collect();
    let leaf = if optional.is_empty() {
        None
    } else {
        Some(ModuleDecl {
            name: format!("{name}_defaults"),
            depends_on: vec![name.to_string()],
            axioms: optional,
            optional: true,
            span: Span::default(),
            ..Default::default()
        })
    };
    (module, leaf)
}

/// Generates the library's modules from a knowledge base and the curated
/// grouping: one module per group (dependencies from the grouping), plus
/// one optional leaf per module that produced defeasible axioms.
pub fn generate_library(
    kb: &KmKb,
    config: &TranslationConfig,
    patch: &Patch,
    groups: &Groups,
) -> Result<Vec<ModuleDecl>, TranslateError> {
    let translation = translate_kb(kb, config, patch)?;
    let mut modules = Vec::new();
    for group in &groups.modules {
        let outputs: Vec<&TranslationOutput> = group
            .symbols
            .iter()
            .filter_map(|s| translation.output_for(s))
            .collect();
        let (module, leaf) = assemble_module(&group.name, &group.depends_on, &outputs);
        modules.push(module);
        modules.extend(leaf);
    }
    Ok(modules)
}
