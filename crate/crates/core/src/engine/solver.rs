//! Desk-scale stable-model solver.
//!
//! The ground program is interned: atoms become integers, choice rules are
//! expanded into pairs of rules with auxiliary atoms plus cardinality
//! constraints, and a constraint `:- a, -a.` is added for every
//! complementary classical pair. Search is depth-first over atom
//! assignments with three propagation rules (forced heads, constraint
//! narrowing, loss of potential support); every total assignment that
//! survives is accepted exactly when it equals the least model of the
//! program reduct, so non-tight programs (even and odd loops, positive
//! cycles) are handled correctly.
//!
//! With a projection, the solver returns one witness per distinct
//! assignment of the projection atoms and prunes the rest of the subtree,
//! which keeps plan extraction independent of how many completions of the
//! unobserved fluents exist.

use crate::asp::program::{AspLiteral, GroundStatement};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("unsupported construct: {0}")]
    Unsupported(String),
}

/// A stable model, projected to visible atoms.
pub type AnswerSet = BTreeSet<String>;

type Lit = (u32, bool); // (atom, default-negated)

#[derive(Clone, Debug)]
struct Rule {
    head: Option<u32>, // None: constraint
    body: Vec<Lit>,
}

/// Interned ground program with expanded choice rules.
#[derive(Clone, Debug, Default)]
pub struct GroundProgram {
    names: Vec<String>,
    index: BTreeMap<String, u32>,
    visible: Vec<bool>,
    rules: Vec<Rule>,
}

impl GroundProgram {
    pub fn build(statements: &[GroundStatement]) -> Result<Self, SolveError> {
        let mut gp = GroundProgram::default();
        let mut choice_no = 0usize;
        let mut seen: BTreeSet<(Option<u32>, Vec<Lit>)> = BTreeSet::new();
        let push = |gp: &mut GroundProgram,
                        seen: &mut BTreeSet<(Option<u32>, Vec<Lit>)>,
                        head: Option<u32>,
                        body: Vec<Lit>| {
            if seen.insert((head, body.clone())) {
                gp.rules.push(Rule { head, body });
            }
        };
        for stmt in statements {
            match stmt {
                GroundStatement::Fact(a) => {
                    let id = gp.intern(&a.to_string());
                    push(&mut gp, &mut seen, Some(id), vec![]);
                }
                GroundStatement::Rule { head, body } => {
                    let h = gp.intern(&head.to_string());
                    let b = gp.intern_body(body);
                    push(&mut gp, &mut seen, Some(h), b);
                }
                GroundStatement::Constraint { body } => {
                    let b = gp.intern_body(body);
                    push(&mut gp, &mut seen, None, b);
                }
                GroundStatement::Choice {
                    lo,
                    hi,
                    atoms,
                    body,
                } => {
                    let ids: Vec<u32> =
                        atoms.iter().map(|a| gp.intern(&a.to_string())).collect();
                    let base = gp.intern_body(body);
                    for (i, &a) in ids.iter().enumerate() {
                        let aux = gp.intern(&format!("__ch{choice_no}_{i}"));
                        let mut b1 = base.clone();
                        b1.push((aux, true));
                        push(&mut gp, &mut seen, Some(a), b1);
                        let mut b2 = base.clone();
                        b2.push((a, true));
                        push(&mut gp, &mut seen, Some(aux), b2);
                    }
                    choice_no += 1;
                    let k = ids.len() as u32;
                    let hi = (*hi).min(k);
                    match hi {
                        _ if hi >= k => {}
                        0 => {
                            for &a in &ids {
                                let mut b = base.clone();
                                b.push((a, false));
                                push(&mut gp, &mut seen, None, b);
                            }
                        }
                        1 => {
                            for i in 0..ids.len() {
                                for j in i + 1..ids.len() {
                                    let mut b = base.clone();
                                    b.push((ids[i], false));
                                    b.push((ids[j], false));
                                    push(&mut gp, &mut seen, None, b);
                                }
                            }
                        }
                        2 => {
                            for i in 0..ids.len() {
                                for j in i + 1..ids.len() {
                                    for l in j + 1..ids.len() {
                                        let mut b = base.clone();
                                        b.push((ids[i], false));
                                        b.push((ids[j], false));
                                        b.push((ids[l], false));
                                        push(&mut gp, &mut seen, None, b);
                                    }
                                }
                            }
                        }
                        _ => {
                            return Err(SolveError::Unsupported(format!(
                                "choice upper bound {hi} (supported: 0, 1, 2, or no bound)"
                            )))
                        }
                    }
                    match lo {
                        0 => {}
                        1 => {
                            let mut b = base.clone();
                            for &a in &ids {
                                b.push((a, true));
                            }
                            push(&mut gp, &mut seen, None, b);
                        }
                        2 => {
                            let mut b = base.clone();
                            for &a in &ids {
                                b.push((a, true));
                            }
                            push(&mut gp, &mut seen, None, b);
                            for i in 0..ids.len() {
                                let mut b = base.clone();
                                b.push((ids[i], false));
                                for (j, &a) in ids.iter().enumerate() {
                                    if j != i {
                                        b.push((a, true));
                                    }
                                }
                                push(&mut gp, &mut seen, None, b);
                            }
                        }
                        _ => {
                            return Err(SolveError::Unsupported(format!(
                                "choice lower bound {lo} (supported: 0, 1, 2)"
                            )))
                        }
                    }
                }
            }
        }
        // Classical complements cannot both hold.
        let negs: Vec<(u32, String)> = gp
            .names
            .iter()
            .enumerate()
            .filter_map(|(i, n)| {
                n.strip_prefix('-')
                    .map(|stripped| (i as u32, stripped.to_string()))
            })
            .collect();
        for (neg_id, pos_name) in negs {
            if let Some(&pos_id) = gp.index.get(&pos_name) {
                let body = vec![(pos_id, false), (neg_id, false)];
                push(&mut gp, &mut seen, None, body);
            }
        }
        Ok(gp)
    }

    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        self.visible.push(!name.starts_with("__"));
        id
    }

    fn intern_body(&mut self, body: &[AspLiteral]) -> Vec<Lit> {
        body.iter()
            .map(|l| (self.intern(&l.atom.to_string()), l.default_neg))
            .collect()
    }

    pub fn atom_count(&self) -> usize {
        self.names.len()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn atom_id(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn atom_name(&self, id: u32) -> &str {
        &self.names[id as usize]
    }

    pub fn atoms(&self) -> impl Iterator<Item = &String> {
        self.names.iter()
    }

    /// Iterates rules as (head, body) pairs for independent checking.
    pub fn rules_view(&self) -> impl Iterator<Item = (Option<u32>, &[Lit])> {
        self.rules.iter().map(|r| (r.head, r.body.as_slice()))
    }

    fn model_from(&self, assign: &[Tri]) -> AnswerSet {
        assign
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v == Tri::True && self.visible[i])
            .map(|(i, _)| self.names[i].clone())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tri {
    Unknown,
    True,
    False,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Stop after this many models (silently).
    pub max_models: Option<usize>,
    /// Hard cap on interned atoms.
    pub atom_cap: usize,
    /// Hard cap on enumerated models when `max_models` is `None`.
    pub model_cap: usize,
    /// Enumerate distinct assignments of these atoms only, with one
    /// witness model each.
    pub projection: Option<Vec<String>>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_models: None,
            atom_cap: 200_000,
            model_cap: 100_000,
            projection: None,
        }
    }
}

pub fn solve(gp: &GroundProgram, options: &SolveOptions) -> Result<Vec<AnswerSet>, SolveError> {
    if gp.atom_count() > options.atom_cap {
        return Err(SolveError::ResourceLimit(format!(
            "{} ground atoms exceed the cap of {}",
            gp.atom_count(),
            options.atom_cap
        )));
    }
    let mut search = Search::new(gp, options)?;
    search.run()?;
    let mut models = search.models;
    models.sort();
    models.dedup();
    Ok(models)
}

struct Search<'a> {
    gp: &'a GroundProgram,
    options: &'a SolveOptions,
    assign: Vec<Tri>,
    /// Decision order: projection atoms first, then the rest.
    order: Vec<u32>,
    projection_ids: Vec<u32>,
    models: Vec<AnswerSet>,
    seen_projections: BTreeSet<Vec<bool>>,
    // occurrence indices
    head_rules: Vec<Vec<u32>>,
    body_rules: Vec<Vec<u32>>,
}

enum Walk {
    Continue,
    /// A witness for the current projection class was found; unwind to
    /// the innermost projection decision.
    PruneToProjection,
    Stop,
}

impl<'a> Search<'a> {
    fn new(gp: &'a GroundProgram, options: &'a SolveOptions) -> Result<Self, SolveError> {
        let n = gp.atom_count();
        let mut head_rules = vec![Vec::new(); n];
        let mut body_rules = vec![Vec::new(); n];
        for (ri, rule) in gp.rules.iter().enumerate() {
            if let Some(h) = rule.head {
                head_rules[h as usize].push(ri as u32);
            }
            for &(a, _) in &rule.body {
                body_rules[a as usize].push(ri as u32);
            }
        }
        let projection_ids: Vec<u32> = match &options.projection {
            None => vec![],
            Some(names) => {
                let mut ids: Vec<u32> =
                    names.iter().filter_map(|s| gp.atom_id(s)).collect();
                ids.sort_unstable();
                ids.dedup();
                ids
            }
        };
        let mut order: Vec<u32> = projection_ids.clone();
        for i in 0..n as u32 {
            if !projection_ids.contains(&i) {
                order.push(i);
            }
        }
        Ok(Search {
            gp,
            options,
            assign: vec![Tri::Unknown; n],
            order,
            projection_ids,
            models: Vec::new(),
            seen_projections: BTreeSet::new(),
            head_rules,
            body_rules,
        })
    }

    fn run(&mut self) -> Result<(), SolveError> {
        let mut trail: Vec<u32> = Vec::new();
        if !self.propagate(&mut trail) {
            return Ok(());
        }
        let _ = self.dive(0)?;
        Ok(())
    }

    fn limit_reached(&self) -> Result<bool, SolveError> {
        if let Some(k) = self.options.max_models {
            return Ok(self.models.len() >= k);
        }
        if self.models.len() >= self.options.model_cap {
            return Err(SolveError::ResourceLimit(format!(
                "more than {} models",
                self.options.model_cap
            )));
        }
        Ok(false)
    }

    fn dive(&mut self, depth: usize) -> Result<Walk, SolveError> {
        if self.limit_reached()? {
            return Ok(Walk::Stop);
        }
        // Next unassigned atom in decision order.
        let mut pick: Option<u32> = None;
        let mut at_projection = false;
        for (i, &a) in self.order.iter().enumerate() {
            if self.assign[a as usize] == Tri::Unknown {
                pick = Some(a);
                at_projection = i < self.projection_ids.len();
                break;
            }
        }
        let Some(atom) = pick else {
            return self.leaf();
        };
        for value in [Tri::True, Tri::False] {
            let mut trail = vec![];
            self.set(atom, value, &mut trail);
            let ok = self.propagate(&mut trail);
            let walk = if ok { self.dive(depth + 1)? } else { Walk::Continue };
            for a in trail.drain(..) {
                self.assign[a as usize] = Tri::Unknown;
            }
            match walk {
                Walk::Stop => return Ok(Walk::Stop),
                Walk::PruneToProjection if !at_projection => {
                    return Ok(Walk::PruneToProjection)
                }
                _ => {}
            }
        }
        Ok(Walk::Continue)
    }

    fn leaf(&mut self) -> Result<Walk, SolveError> {
        if !self.satisfies_all() || !self.is_stable() {
            return Ok(Walk::Continue);
        }
        if !self.projection_ids.is_empty() {
            let signature: Vec<bool> = self
                .projection_ids
                .iter()
                .map(|&a| self.assign[a as usize] == Tri::True)
                .collect();
            if !self.seen_projections.insert(signature) {
                return Ok(Walk::PruneToProjection);
            }
            self.models.push(self.gp.model_from(&self.assign));
            return Ok(Walk::PruneToProjection);
        }
        self.models.push(self.gp.model_from(&self.assign));
        Ok(Walk::Continue)
    }

    fn set(&mut self, atom: u32, value: Tri, trail: &mut Vec<u32>) {
        debug_assert_eq!(self.assign[atom as usize], Tri::Unknown);
        self.assign[atom as usize] = value;
        trail.push(atom);
    }

    fn lit_state(&self, (atom, neg): Lit) -> Tri {
        match (self.assign[atom as usize], neg) {
            (Tri::Unknown, _) => Tri::Unknown,
            (Tri::True, false) | (Tri::False, true) => Tri::True,
            _ => Tri::False,
        }
    }

    /// Fixpoint propagation; false on conflict.
    fn propagate(&mut self, trail: &mut Vec<u32>) -> bool {
        loop {
            let mut changed = false;
            for ri in 0..self.gp.rules.len() {
                let rule = &self.gp.rules[ri];
                let mut unassigned: Option<Lit> = None;
                let mut n_unassigned = 0;
                let mut any_false = false;
                for &lit in &rule.body {
                    match self.lit_state(lit) {
                        Tri::Unknown => {
                            n_unassigned += 1;
                            unassigned = Some(lit);
                        }
                        Tri::False => {
                            any_false = true;
                            break;
                        }
                        Tri::True => {}
                    }
                }
                if any_false {
                    continue;
                }
                let head_state = rule.head.map(|h| self.assign[h as usize]);
                if n_unassigned == 0 {
                    // Body satisfied: the head must hold.
                    match head_state {
                        None => return false,
                        Some(Tri::False) => return false,
                        Some(Tri::Unknown) => {
                            self.set(rule.head.unwrap(), Tri::True, trail);
                            changed = true;
                        }
                        Some(Tri::True) => {}
                    }
                } else if n_unassigned == 1 && matches!(head_state, None | Some(Tri::False)) {
                    // The rule must not fire: falsify the remaining literal.
                    let (atom, neg) = unassigned.unwrap();
                    let forced = if neg { Tri::True } else { Tri::False };
                    if self.assign[atom as usize] == Tri::Unknown {
                        self.set(atom, forced, trail);
                        changed = true;
                    }
                }
            }
            // Loss of support: an atom with no rule that could still
            // derive it is false.
            for a in 0..self.gp.atom_count() as u32 {
                if self.assign[a as usize] == Tri::False {
                    continue;
                }
                let viable = self.head_rules[a as usize].iter().any(|&ri| {
                    self.gp.rules[ri as usize]
                        .body
                        .iter()
                        .all(|&l| self.lit_state(l) != Tri::False)
                });
                if !viable {
                    match self.assign[a as usize] {
                        Tri::True => return false,
                        Tri::Unknown => {
                            self.set(a, Tri::False, trail);
                            changed = true;
                        }
                        Tri::False => {}
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn satisfies_all(&self) -> bool {
        self.gp.rules.iter().all(|rule| {
            let body_true = rule.body.iter().all(|&l| self.lit_state(l) == Tri::True);
            match rule.head {
                None => !body_true,
                Some(h) => !body_true || self.assign[h as usize] == Tri::True,
            }
        })
    }

    /// Gelfond-Lifschitz check: the true atoms equal the least model of
    /// the reduct.
    fn is_stable(&self) -> bool {
        let n = self.gp.atom_count();
        let mut derived = vec![false; n];
        let mut changed = true;
        while changed {
            changed = false;
            'rules: for rule in &self.gp.rules {
                let Some(h) = rule.head else { continue };
                if derived[h as usize] {
                    continue;
                }
                for &(a, neg) in &rule.body {
                    if neg {
                        if self.assign[a as usize] == Tri::True {
                            continue 'rules; // deleted by the reduct
                        }
                    } else if !derived[a as usize] {
                        continue 'rules;
                    }
                }
                derived[h as usize] = true;
                changed = true;
            }
        }
        (0..n).all(|i| derived[i] == (self.assign[i] == Tri::True))
    }

    // body_rules index currently informs nothing beyond construction; it
    // is kept for the checker's occurrence queries.
    #[allow(dead_code)]
    fn body_occurrences(&self, atom: u32) -> &[u32] {
        &self.body_rules[atom as usize]
    }
}
