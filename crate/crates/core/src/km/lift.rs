//! Lifting parsed s-expressions into the typed KM fragment.
//!
//! Recognized top-level frames:
//!
//! - slot definitions `(<s> has (instance-of ...) (domain ...) (range ...)
//!   (cardinality ...) (fluent-status ...))`,
//! - class property frames `(<C> has (superclasses ...) (wn20-synset ...))`,
//! - instance property frames `(every <C> has <clause>...)`.
//!
//! Clauses outside the supported fragment (subevents, text generation,
//! test cases, ...) are reported as unsupported rather than silently
//! dropped: the number of lifted clauses plus the number of unsupported
//! reports equals the number of input clauses.

use crate::km::ast::*;
use crate::km::sexpr::SExpr;
use crate::span::Span;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("{span}: malformed frame: {message}")]
    Malformed { span: Span, message: String },
}

/// A clause or item outside the supported KM fragment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsupportedConstruct {
    pub name: String,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftOutcome {
    pub kb: KmKb,
    pub unsupported: Vec<UnsupportedConstruct>,
    pub lifted_clauses: usize,
    pub total_clauses: usize,
}

struct Lifter {
    slots: Vec<SlotDef>,
    classes: BTreeMap<String, ClassDecl>,
    class_order: Vec<String>,
    unsupported: Vec<UnsupportedConstruct>,
    lifted: usize,
    total: usize,
}

pub fn lift_km(exprs: &[SExpr]) -> Result<LiftOutcome, LiftError> {
    let mut lifter = Lifter {
        slots: vec![],
        classes: BTreeMap::new(),
        class_order: vec![],
        unsupported: vec![],
        lifted: 0,
        total: 0,
    };
    for expr in exprs {
        lifter.frame(expr)?;
    }
    let mut kb = KmKb {
        slots: lifter.slots,
        classes: lifter
            .class_order
            .iter()
            .map(|n| lifter.classes[n].clone())
            .collect(),
    };
    // Kinds need the whole class table.
    let kinds: Vec<ClassKind> = kb.classes.iter().map(|c| kb.kind_of(&c.name)).collect();
    for (c, k) in kb.classes.iter_mut().zip(kinds) {
        c.kind = k;
    }
    Ok(LiftOutcome {
        kb,
        unsupported: lifter.unsupported,
        lifted_clauses: lifter.lifted,
        total_clauses: lifter.total,
    })
}

fn err(span: Span, message: impl Into<String>) -> LiftError {
    LiftError::Malformed {
        span,
        message: message.into(),
    }
}

/// Strips layers of single-element list nesting (KM filler sets are often
/// written with an extra pair of parentheses).
fn unwrap_singletons(e: &SExpr) -> &SExpr {
    let mut cur = e;
    while let Some([only]) = cur.as_list() {
        cur = only;
    }
    cur
}

/// `(the <attr> of Self)` -> attr
fn the_attr_of_self(e: &SExpr) -> Option<String> {
    let items = unwrap_singletons(e).as_list()?;
    match items {
        [the, attr, of, s]
            if the.is_sym("the") && of.is_sym("of") && s.is_sym("Self") =>
        {
            attr.as_sym().map(str::to_string)
        }
        _ => None,
    }
}

/// `(a <c>)` -> c
fn a_class(e: &SExpr) -> Option<String> {
    let items = unwrap_singletons(e).as_list()?;
    match items {
        [a, c] if a.is_sym("a") => c.as_sym().map(str::to_string),
        _ => None,
    }
}

/// `It` or `(It)`
fn is_it(e: &SExpr) -> bool {
    unwrap_singletons(e).is_sym("It")
}

impl Lifter {
    fn class_entry(&mut self, name: &str, span: Span) -> &mut ClassDecl {
        if !self.classes.contains_key(name) {
            self.class_order.push(name.to_string());
            self.classes.insert(
                name.to_string(),
                ClassDecl {
                    name: name.to_string(),
                    superclasses: vec![],
                    synset: vec![],
                    kind: ClassKind::Entity,
                    every: vec![],
                    span,
                },
            );
        }
        self.classes.get_mut(name).unwrap()
    }

    fn frame(&mut self, expr: &SExpr) -> Result<(), LiftError> {
        let span = expr.span();
        let items = expr
            .as_list()
            .ok_or_else(|| err(span, "expected a frame list"))?;
        match items {
            [every, name, has, clauses @ ..]
                if every.is_sym("every") && has.is_sym("has") =>
            {
                let name = name
                    .as_sym()
                    .ok_or_else(|| err(span, "expected class name"))?
                    .to_string();
                self.class_entry(&name, span);
                for clause in clauses {
                    self.every_clause(&name, clause)?;
                }
                Ok(())
            }
            [name, has, clauses @ ..] if has.is_sym("has") => {
                let name = name
                    .as_sym()
                    .ok_or_else(|| err(span, "expected frame name"))?
                    .to_string();
                if let Some(slot) = self.try_slot_def(&name, clauses, span)? {
                    self.lifted += clauses.len();
                    self.total += clauses.len();
                    self.slots.push(slot);
                    return Ok(());
                }
                for clause in clauses {
                    self.has_clause(&name, clause)?;
                }
                Ok(())
            }
            _ => Err(err(span, "expected `(<name> has ...)` or `(every <name> has ...)`")),
        }
    }

    fn try_slot_def(
        &mut self,
        name: &str,
        clauses: &[SExpr],
        span: Span,
    ) -> Result<Option<SlotDef>, LiftError> {
        let mut fields: BTreeMap<&str, &SExpr> = BTreeMap::new();
        for clause in clauses {
            let Some([head, filler]) = clause.as_list() else {
                return Ok(None);
            };
            let Some(head) = head.as_sym() else {
                return Ok(None);
            };
            fields.insert(head, filler);
        }
        let all = ["instance-of", "domain", "range", "cardinality", "fluent-status"];
        if !all.iter().all(|k| fields.contains_key(k)) {
            return Ok(None);
        }
        let sym = |key: &str| -> Result<String, LiftError> {
            unwrap_singletons(fields[key])
                .as_sym()
                .map(str::to_string)
                .ok_or_else(|| err(span, format!("slot `{name}`: bad `{key}` filler")))
        };
        let cardinality = match sym("cardinality")?.as_str() {
            "N-to-N" => Cardinality::NToN,
            "N-to-1" => Cardinality::NTo1,
            other => {
                // Reported at translation as UnsupportedCardinality; the
                // lifter refuses it outright since SlotDef cannot hold it.
                return Err(err(span, format!("slot `{name}`: cardinality `{other}`")));
            }
        };
        let fluent_status = match sym("fluent-status")?.as_str() {
            "*Inertial-Fluent" => FluentStatus::InertialFluent,
            "*Non-Fluent" => FluentStatus::NonFluent,
            other => return Err(err(span, format!("slot `{name}`: fluent-status `{other}`"))),
        };
        Ok(Some(SlotDef {
            name: name.to_string(),
            instance_of: sym("instance-of")?,
            domain: sym("domain")?,
            range: sym("range")?,
            cardinality,
            fluent_status,
            span,
        }))
    }

    fn has_clause(&mut self, class: &str, clause: &SExpr) -> Result<(), LiftError> {
        self.total += 1;
        let span = clause.span();
        let Some([head, filler]) = clause.as_list() else {
            return Err(err(span, "expected `(slot filler)` clause"));
        };
        let Some(head_sym) = head.as_sym() else {
            return Err(err(span, "expected a slot name"));
        };
        match head_sym {
            "superclasses" => {
                let supers: Vec<String> = filler
                    .as_list()
                    .map(|items| {
                        items
                            .iter()
                            .filter_map(|s| s.as_sym().map(str::to_string))
                            .collect()
                    })
                    .unwrap_or_default();
                self.class_entry(class, span).superclasses.extend(supers);
                self.lifted += 1;
            }
            "wn20-synset" => {
                let mut senses = Vec::new();
                let set = unwrap_singletons(filler);
                if let Some(items) = set.as_list() {
                    let triples = if items.first().is_some_and(|h| h.is_sym(":set")) {
                        &items[1..]
                    } else {
                        items
                    };
                    for t in triples {
                        if let Some([kw, word, sense, pos]) = t.as_list() {
                            if kw.is_sym(":triple") {
                                if let (SExpr::Str(w, _), SExpr::Int(n, _), SExpr::Str(p, _)) =
                                    (word, sense, pos)
                                {
                                    senses.push(WnSense {
                                        word: w.clone(),
                                        sense: *n,
                                        pos: p.clone(),
                                    });
                                }
                            }
                        }
                    }
                }
                self.class_entry(class, span).synset.extend(senses);
                self.lifted += 1;
            }
            other => {
                self.unsupported.push(UnsupportedConstruct {
                    name: format!("{class}.{other}"),
                    span,
                });
            }
        }
        Ok(())
    }

    fn every_clause(&mut self, class: &str, clause: &SExpr) -> Result<(), LiftError> {
        self.total += 1;
        let span = clause.span();
        let Some([head, filler]) = clause.as_list() else {
            return Err(err(span, "expected `(slot filler)` clause"));
        };
        let Some(head_sym) = head.as_sym().map(str::to_string) else {
            return Err(err(span, "expected a slot name"));
        };
        let lifted = match head_sym.as_str() {
            "resulting-state" => a_class(filler).map(|state| EveryClause::ResultingState {
                state,
                span,
            }),
            "add-list" => self.add_list(filler).map(|items| EveryClause::AddList {
                items,
                span,
            }),
            "del-list" => self.del_list(filler).map(|items| EveryClause::DelList {
                items,
                span,
            }),
            "defeats" => defeats(filler).map(|(attr, state)| EveryClause::Defeats {
                attr,
                state,
                span,
            }),
            "pcs-list" => precond_list(filler).map(|items| EveryClause::PcsList { items, span }),
            "ncs-list" => precond_list(filler).map(|items| EveryClause::NcsList { items, span }),
            "soft-pcs-list" => {
                precond_list(filler).map(|items| EveryClause::SoftPcsList { items, span })
            }
            "preparatory-event" => {
                prep_list(filler).map(|items| EveryClause::PreparatoryEvent { items, span })
            }
            attr => attr_spec(filler).map(|spec| EveryClause::AttrSpec {
                attr: attr.to_string(),
                spec,
                span,
            }),
        };
        match lifted {
            Some(c) => {
                self.class_entry(class, span).every.push(c);
                self.lifted += 1;
            }
            None => self.unsupported.push(UnsupportedConstruct {
                name: format!("{class}.{head_sym}"),
                span,
            }),
        }
        Ok(())
    }

    fn add_list(&self, filler: &SExpr) -> Option<Vec<EffectItem>> {
        let items = filler.as_list()?;
        items.iter().map(effect_item).collect()
    }

    fn del_list(&self, filler: &SExpr) -> Option<Vec<DelItem>> {
        let items = filler.as_list()?;
        items
            .iter()
            .map(|item| {
                // (forall (the defeats of Self) (:triple (It) <rel> (the <attr> of Self)))
                let parts = unwrap_singletons(item).as_list()?;
                match parts {
                    [forall, defeats_path, triple] if forall.is_sym("forall") => {
                        if the_attr_of_self(defeats_path)? != "defeats" {
                            return None;
                        }
                        let t = triple.as_list()?;
                        match t {
                            [kw, it, rel, attr_path] if kw.is_sym(":triple") && is_it(it) => {
                                Some(DelItem {
                                    rel: rel.as_sym()?.to_string(),
                                    attr: the_attr_of_self(attr_path)?,
                                })
                            }
                            _ => None,
                        }
                    }
                    _ => None,
                }
            })
            .collect()
    }
}

fn attr_spec(filler: &SExpr) -> Option<AttrSpec> {
    let inner = unwrap_singletons(filler);
    if let Some(attr2) = the_attr_of_self(inner) {
        return Some(AttrSpec::TheAttrOfSelf(attr2));
    }
    let items = inner.as_list()?;
    match items {
        [a, c] if a.is_sym("a") => Some(AttrSpec::A(c.as_sym()?.to_string())),
        [k, c] if k.is_sym("must-be-a") => Some(AttrSpec::MustBeA(c.as_sym()?.to_string())),
        [k, c] if k.is_sym("mustnt-be-a") => Some(AttrSpec::MustntBeA(c.as_sym()?.to_string())),
        [k, SExpr::Int(n, _), c] if k.is_sym("at-most") && (0..=2).contains(n) => {
            Some(AttrSpec::AtMost(*n as u8, c.as_sym()?.to_string()))
        }
        [k, SExpr::Int(n, _), c] if k.is_sym("at-least") && (0..=2).contains(n) => {
            Some(AttrSpec::AtLeast(*n as u8, c.as_sym()?.to_string()))
        }
        [k, SExpr::Int(n, _), c] if k.is_sym("exactly") && (0..=2).contains(n) => {
            Some(AttrSpec::Exactly(*n as u8, c.as_sym()?.to_string()))
        }
        [k, path] if k.is_sym("excluded-values") => {
            Some(AttrSpec::ExcludedValues(the_attr_of_self(path)?))
        }
        [k, expr] if k.is_sym("constraint") => {
            // (constraint (TheValue & (the <attr2> of Self)))
            let parts = unwrap_singletons(expr).as_list()?;
            match parts {
                [tv, amp, path] if tv.is_sym("TheValue") && amp.is_sym("&") => {
                    Some(AttrSpec::UnifyConstraint(the_attr_of_self(path)?))
                }
                _ => None,
            }
        }
        _ => None,
    }
}

fn effect_item(item: &SExpr) -> Option<EffectItem> {
    let parts = unwrap_singletons(item).as_list()?;
    match parts {
        [kw, target, rel, attr_path] if kw.is_sym(":triple") => {
            if the_attr_of_self(target)? != "resulting-state" {
                return None;
            }
            Some(EffectItem::ResultTriple {
                rel: rel.as_sym()?.to_string(),
                attr: the_attr_of_self(attr_path)?,
            })
        }
        [iff, cond, then_kw, then_item, rest @ ..] if iff.is_sym("if") && then_kw.is_sym("then") => {
            // (if (has-value (the <attr2> of Self)) then <item> [else <item>])
            let cond_parts = unwrap_singletons(cond).as_list()?;
            let attr2 = match cond_parts {
                [hv, path] if hv.is_sym("has-value") => the_attr_of_self(path)?,
                _ => return None,
            };
            let then = Box::new(effect_item(then_item)?);
            let els = match rest {
                [] => None,
                [else_kw, else_item] if else_kw.is_sym("else") => {
                    Some(Box::new(effect_item(else_item)?))
                }
                _ => return None,
            };
            Some(EffectItem::IfHasValue { attr2, then, els })
        }
        [forall, attr_path, triple] if forall.is_sym("forall") => {
            // (forall (the <attr> of Self) (:triple It <rel>-of (the resulting-state of Self)))
            let attr = the_attr_of_self(attr_path)?;
            let t = triple.as_list()?;
            match t {
                [kw, it, rel_of, target] if kw.is_sym(":triple") && is_it(it) => {
                    if the_attr_of_self(target)? != "resulting-state" {
                        return None;
                    }
                    let rel = rel_of.as_sym()?.strip_suffix("-of")?.to_string();
                    Some(EffectItem::ForallInverse { attr, rel })
                }
                _ => None,
            }
        }
        _ => None,
    }
}

fn defeats(filler: &SExpr) -> Option<(String, String)> {
    // (allof (the object-of of (the <attr> of Self)) where ((the classes of It) = <State>))
    let parts = unwrap_singletons(filler).as_list()?;
    match parts {
        [allof, path, where_kw, cond] if allof.is_sym("allof") && where_kw.is_sym("where") => {
            let path_parts = path.as_list()?;
            let attr = match path_parts {
                [the, _rel_of, of, inner] if the.is_sym("the") && of.is_sym("of") => {
                    the_attr_of_self(inner)?
                }
                _ => return None,
            };
            let cond_parts = unwrap_singletons(cond).as_list()?;
            let state = match cond_parts {
                [classes_path, eq, state] if eq.is_sym("=") => {
                    let cp = classes_path.as_list()?;
                    match cp {
                        [the, cl, of, it]
                            if the.is_sym("the") && cl.is_sym("classes") && of.is_sym("of")
                                && is_it(it) =>
                        {
                            state.as_sym()?.to_string()
                        }
                        _ => return None,
                    }
                }
                _ => return None,
            };
            Some((attr, state))
        }
        _ => None,
    }
}

fn precond_list(filler: &SExpr) -> Option<Vec<PrecondItem>> {
    let items = filler.as_list()?;
    items
        .iter()
        .map(|item| {
            let parts = unwrap_singletons(item).as_list()?;
            match parts {
                [forall, attr_path, triple] if forall.is_sym("forall") => {
                    let attr = the_attr_of_self(attr_path)?;
                    let t = triple.as_list()?;
                    match t {
                        [kw, it, obj_of, state_expr]
                            if kw.is_sym(":triple") && is_it(it) && obj_of.is_sym("object-of") =>
                        {
                            let se = unwrap_singletons(state_expr).as_list()?;
                            match se {
                                [a, state] if a.is_sym("a") => Some(PrecondItem::InState {
                                    attr,
                                    state: state.as_sym()?.to_string(),
                                }),
                                [a, state, with, attr2_clause]
                                    if a.is_sym("a") && with.is_sym("with") =>
                                {
                                    let ac = attr2_clause.as_list()?;
                                    match ac {
                                        [attr2, path] => {
                                            let attr2 = attr2.as_sym()?.to_string();
                                            if the_attr_of_self(path)? != attr2 {
                                                return None;
                                            }
                                            Some(PrecondItem::InStateWith {
                                                attr1: attr,
                                                state: state.as_sym()?.to_string(),
                                                attr2,
                                            })
                                        }
                                        _ => None,
                                    }
                                }
                                _ => None,
                            }
                        }
                        _ => None,
                    }
                }
                _ => None,
            }
        })
        .collect()
}

fn prep_list(filler: &SExpr) -> Option<Vec<PrepItem>> {
    let items = filler.as_list()?;
    items
        .iter()
        .map(|item| {
            // (:default (if (has-value (the <g> of Self)) then (a <Act> with
            //   (object ((the <g> of Self)))
            //   (destination ((a <c> with (<slot> ((the <o> of Self)))))))))
            let parts = unwrap_singletons(item).as_list()?;
            let if_expr = match parts {
                [kw, e] if kw.is_sym(":default") => unwrap_singletons(e).as_list()?,
                _ => return None,
            };
            match if_expr {
                [iff, cond, then_kw, act] if iff.is_sym("if") && then_kw.is_sym("then") => {
                    let cond_parts = unwrap_singletons(cond).as_list()?;
                    let guard = match cond_parts {
                        [hv, path] if hv.is_sym("has-value") => the_attr_of_self(path)?,
                        _ => return None,
                    };
                    let act_parts = unwrap_singletons(act).as_list()?;
                    match act_parts {
                        [a, action, with, object_clause, dest_clause]
                            if a.is_sym("a") && with.is_sym("with") =>
                        {
                            let oc = object_clause.as_list()?;
                            let [obj_kw, obj_path] = oc else { return None };
                            if !obj_kw.is_sym("object") || the_attr_of_self(obj_path)? != guard {
                                return None;
                            }
                            let dc = dest_clause.as_list()?;
                            let [dest_kw, dest_expr] = dc else { return None };
                            if !dest_kw.is_sym("destination") {
                                return None;
                            }
                            let de = unwrap_singletons(dest_expr).as_list()?;
                            match de {
                                [a2, _c, with2, slot_clause]
                                    if a2.is_sym("a") && with2.is_sym("with") =>
                                {
                                    let sc = slot_clause.as_list()?;
                                    let [slot, path] = sc else { return None };
                                    Some(PrepItem {
                                        guard_attr: guard,
                                        action: action.as_sym()?.to_string(),
                                        via_slot: slot.as_sym()?.to_string(),
                                        object_attr: the_attr_of_self(path)?,
                                    })
                                }
                                _ => None,
                            }
                        }
                        _ => None,
                    }
                }
                _ => None,
            }
        })
        .collect()
}
