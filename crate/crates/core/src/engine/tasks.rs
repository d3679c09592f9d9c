//! Reasoning tasks over compiled system descriptions: temporal projection,
//! postdiction, and planning, in the usual history style — `hpd(a, i)`
//! records that action `a` happened at step `i`, `obs(term, value, i)`
//! that a fluent was observed. Occurrences follow from `occurs(A, I) :-
//! hpd(A, I)`; observations become reality-check constraints that prune
//! the choice of initial values (step 0) and reject inconsistent futures
//! (later steps).

use crate::alm::ast::{FunctionKind, SystemDescription, Term, SORT_ACTIONS};
use crate::alm::sorts::Symbols;
use crate::alm::{expand_schemas, flatten};
use crate::asp::compile::{compile, CompileError};
use crate::asp::program::{AspAtom, AspLiteral, AspProgram, GroundStatement};
use crate::asp::reader::{parse_lp, LpError};
use crate::engine::ground::ground;
use crate::engine::solver::{solve, AnswerSet, GroundProgram, SolveError, SolveOptions};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum TaskError {
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("bad history: {0}")]
    BadHistory(String),
    #[error("history/goal syntax: {0}")]
    Lp(#[from] LpError),
    #[error("observations are inconsistent with the system description")]
    Inconsistent,
    #[error("no plan within horizon {0}")]
    NoPlanWithinHorizon(u32),
}

/// An observed fluent value at a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observation {
    pub term: Term,
    pub value: Term,
    pub step: u32,
}

/// Recorded history: happened actions and observations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct History {
    pub happened: Vec<(Term, u32)>,
    pub observed: Vec<Observation>,
}

impl History {
    /// First step after all recorded occurrences.
    pub fn end(&self) -> u32 {
        self.happened.iter().map(|&(_, i)| i + 1).max().unwrap_or(0)
    }
}

/// Parses history text: one `hpd(a, i).` or `obs(term, value, i).` per
/// statement.
pub fn parse_history(text: &str) -> Result<History, TaskError> {
    let mut history = History::default();
    for stmt in parse_lp(text)? {
        let GroundStatement::Fact(atom) = stmt else {
            return Err(TaskError::BadHistory(
                "history files contain only hpd/obs facts".into(),
            ));
        };
        let step = |t: &Term| -> Result<u32, TaskError> {
            match t {
                Term::Int(i) if *i >= 0 => Ok(*i as u32),
                other => Err(TaskError::BadHistory(format!("bad step `{other}`"))),
            }
        };
        match (atom.pred.as_str(), atom.args.as_slice()) {
            ("hpd", [action, i]) => history.happened.push((action.clone(), step(i)?)),
            ("obs", [term, value, i]) => history.observed.push(Observation {
                term: term.clone(),
                value: value.clone(),
                step: step(i)?,
            }),
            _ => {
                return Err(TaskError::BadHistory(format!(
                    "unrecognized history fact `{atom}`"
                )))
            }
        }
    }
    Ok(history)
}

/// Parses a comma-separated goal list: `fluent(args)=value, ...`.
pub fn parse_goal(text: &str) -> Result<Vec<(Term, Term)>, TaskError> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (lhs, rhs) = part.split_once('=').ok_or_else(|| {
            TaskError::BadHistory(format!("goal `{part}` is not of the form term=value"))
        })?;
        let parse_term = |s: &str| -> Result<Term, TaskError> {
            let stmts = parse_lp(&format!("{}.", s.trim()))?;
            match stmts.as_slice() {
                [GroundStatement::Fact(a)] if !a.strong_neg => Ok(if a.args.is_empty() {
                    Term::Const(a.pred.clone())
                } else {
                    Term::App(a.pred.clone(), a.args.clone())
                }),
                _ => Err(TaskError::BadHistory(format!("bad goal term `{s}`"))),
            }
        };
        out.push((parse_term(lhs)?, parse_term(rhs)?));
    }
    Ok(out)
}

/// Symbol context shared by the tasks: merged theory and expanded
/// structure.
pub fn symbols_for(sd: &SystemDescription) -> Symbols {
    let merged = flatten::merge_all(&sd.modules, true);
    let base = Symbols::build(&merged, &sd.structure);
    let (structure, _) = expand_schemas(&sd.structure, &base);
    Symbols::build(&merged, &structure)
}

/// The reality-check constraint for one observation.
fn obs_constraint(
    symbols: &Symbols,
    obs: &Observation,
    horizon: u32,
) -> Result<GroundStatement, TaskError> {
    if obs.step > horizon {
        return Err(TaskError::BadHistory(format!(
            "observation at step {} beyond horizon {horizon}",
            obs.step
        )));
    }
    let (name, args) = split_apply(&obs.term);
    let f = symbols
        .functions
        .get(name)
        .ok_or_else(|| TaskError::BadHistory(format!("unknown fluent `{name}`")))?;
    if !f.kind.is_fluent() {
        return Err(TaskError::BadHistory(format!("`{name}` is not a fluent")));
    }
    let step = Term::Int(i64::from(obs.step));
    let body = if f.boolean() {
        let mut full = args.to_vec();
        full.push(step);
        let atom = AspAtom::new(name, full);
        match (f.kind.is_defined(), obs.value == Term::boolean(true)) {
            (false, true) => vec![AspLiteral::not(atom)],
            (false, false) => vec![AspLiteral::not(atom.negated())],
            (true, true) => vec![AspLiteral::not(atom)],
            (true, false) => vec![AspLiteral::pos(atom)],
        }
    } else {
        let mut full = vec![Term::constant(name.to_string())];
        full.extend(args.iter().cloned());
        full.push(obs.value.clone());
        full.push(step);
        vec![AspLiteral::not(AspAtom::new("val", full))]
    };
    Ok(GroundStatement::Constraint { body })
}

fn split_apply(term: &Term) -> (&str, &[Term]) {
    match term {
        Term::App(f, args) => (f, args),
        Term::Const(c) => (c, &[]),
        _ => ("", &[]),
    }
}

/// Adds history facts, occurrence rules, and observation constraints.
fn inject_history(
    program: &mut AspProgram,
    symbols: &Symbols,
    history: &History,
) -> Result<(), TaskError> {
    for (action, step) in &history.happened {
        if !symbols.hierarchy.is_instance_of(action, SORT_ACTIONS) {
            return Err(TaskError::BadHistory(format!(
                "`{action}` is not an action instance"
            )));
        }
        if *step + 1 > program.horizon {
            return Err(TaskError::BadHistory(format!(
                "hpd at step {step} beyond horizon {}",
                program.horizon
            )));
        }
        let hpd = AspAtom::new(
            "hpd",
            vec![action.clone(), Term::Int(i64::from(*step))],
        );
        program.push_fact(hpd.clone());
        program.push_rule(
            AspAtom::new(
                "occurs",
                vec![action.clone(), Term::Int(i64::from(*step))],
            ),
            vec![AspLiteral::pos(hpd)],
        );
    }
    for obs in &history.observed {
        let c = obs_constraint(symbols, obs, program.horizon)?;
        program.ground_rules.push(c);
    }
    Ok(())
}

/// Fluent values per step, extracted from one answer set.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Trajectory {
    pub steps: Vec<BTreeMap<String, Term>>,
}

impl Trajectory {
    pub fn value(&self, step: usize, term: &str) -> Option<&Term> {
        self.steps.get(step).and_then(|m| m.get(term))
    }
}

/// Parses an atom's canonical text back into structure.
fn atom_of(name: &str) -> Option<AspAtom> {
    match parse_lp(&format!("{name}.")) {
        Ok(stmts) => match stmts.into_iter().next() {
            Some(GroundStatement::Fact(a)) => Some(a),
            _ => None,
        },
        Err(_) => None,
    }
}

fn term_text(pred: &str, args: &[Term]) -> String {
    if args.is_empty() {
        pred.to_string()
    } else {
        let inner: Vec<String> = args.iter().map(|t| t.to_string()).collect();
        format!("{pred}({})", inner.join(","))
    }
}

/// Reads the per-step fluent values out of a model.
pub fn trajectory_of(symbols: &Symbols, horizon: u32, model: &AnswerSet) -> Trajectory {
    let mut steps = vec![BTreeMap::new(); horizon as usize + 1];
    for name in model {
        let Some(atom) = atom_of(name) else { continue };
        if atom.pred == "val" {
            // val(f, args.., v, i)
            if atom.args.len() < 3 {
                continue;
            }
            let Term::Const(f) = &atom.args[0] else { continue };
            let Some(Term::Int(i)) = atom.args.last() else { continue };
            let v = &atom.args[atom.args.len() - 2];
            let args = &atom.args[1..atom.args.len() - 2];
            if let Some(step) = steps.get_mut(*i as usize) {
                step.insert(term_text(f, args), v.clone());
            }
            continue;
        }
        let Some(f) = symbols.functions.get(&atom.pred) else {
            continue;
        };
        if !f.kind.is_fluent() || !f.boolean() {
            continue;
        }
        let Some(Term::Int(i)) = atom.args.last() else { continue };
        let args = &atom.args[..atom.args.len() - 1];
        if let Some(step) = steps.get_mut(*i as usize) {
            step.insert(
                term_text(&atom.pred, args),
                Term::boolean(!atom.strong_neg),
            );
        }
    }
    Trajectory { steps }
}

/// Builds the ground program for a projection-style task.
pub fn ground_task_program(
    sd: &SystemDescription,
    history: &History,
    horizon: u32,
) -> Result<(GroundProgram, Symbols), TaskError> {
    let mut program = compile(sd, horizon)?;
    let symbols = symbols_for(sd);
    inject_history(&mut program, &symbols, history)?;
    let gp = GroundProgram::build(&ground(&program))?;
    Ok((gp, symbols))
}

/// Temporal projection: one trajectory per answer set (bounded by
/// `max_models` when given).
pub fn project(
    sd: &SystemDescription,
    history: &History,
    horizon: u32,
    max_models: Option<usize>,
) -> Result<Vec<Trajectory>, TaskError> {
    let (gp, symbols) = ground_task_program(sd, history, horizon)?;
    let models = solve(
        &gp,
        &SolveOptions {
            max_models,
            ..Default::default()
        },
    )?;
    if models.is_empty() {
        return Err(TaskError::Inconsistent);
    }
    let mut out: Vec<Trajectory> = models
        .iter()
        .map(|m| trajectory_of(&symbols, horizon, m))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Fluent values shared by every answer set, computed by iterated
/// intersection with refutation queries rather than full enumeration.
pub fn cautious_trajectory(
    sd: &SystemDescription,
    history: &History,
    horizon: u32,
) -> Result<Trajectory, TaskError> {
    let mut program = compile(sd, horizon)?;
    let symbols = symbols_for(sd);
    inject_history(&mut program, &symbols, history)?;
    let base = ground(&program);
    let first = {
        let gp = GroundProgram::build(&base)?;
        let mut models = solve(
            &gp,
            &SolveOptions {
                max_models: Some(1),
                ..Default::default()
            },
        )?;
        models.pop().ok_or(TaskError::Inconsistent)?
    };
    let mut candidate: Vec<AspAtom> = first.iter().filter_map(|n| atom_of(n)).collect();
    loop {
        if candidate.is_empty() {
            break;
        }
        let mut statements = base.clone();
        statements.push(GroundStatement::Constraint {
            body: candidate.iter().cloned().map(AspLiteral::pos).collect(),
        });
        let gp = GroundProgram::build(&statements)?;
        let mut models = solve(
            &gp,
            &SolveOptions {
                max_models: Some(1),
                ..Default::default()
            },
        )?;
        match models.pop() {
            None => break,
            Some(m) => {
                candidate.retain(|a| m.contains(&a.to_string()));
            }
        }
    }
    let shared: AnswerSet = candidate.iter().map(|a| a.to_string()).collect();
    Ok(trajectory_of(&symbols, horizon, &shared))
}

/// A sequential plan: at most one action per step.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Plan(pub Vec<(u32, Term)>);

impl std::fmt::Display for Plan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(empty plan)");
        }
        for (i, (step, action)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{action} @ {step}")?;
        }
        Ok(())
    }
}

/// Iterative-deepening planner: for each number of future steps
/// `0..=max_horizon` past the history, one `0 {occurs...} 1` choice per
/// step and the goal at the final step; all plans of the first length
/// with answer sets are returned in lexicographic action order. Every
/// returned plan is replayed through the projection program to confirm it
/// can achieve the goal.
pub fn plan(
    sd: &SystemDescription,
    history: &History,
    goal: &[(Term, Term)],
    max_horizon: u32,
) -> Result<Vec<Plan>, TaskError> {
    let start = history.end();
    let symbols = symbols_for(sd);
    let actions = symbols.hierarchy.instances_of(SORT_ACTIONS);
    for extra in 0..=max_horizon {
        let horizon = (start + extra).max(1);
        let mut program = compile(sd, horizon)?;
        inject_history(&mut program, &symbols, history)?;
        let mut occurs_atoms: Vec<String> = Vec::new();
        for step in start..start + extra {
            let atoms: Vec<AspAtom> = actions
                .iter()
                .map(|a| {
                    AspAtom::new("occurs", vec![a.clone(), Term::Int(i64::from(step))])
                })
                .collect();
            occurs_atoms.extend(atoms.iter().map(|a| a.to_string()));
            program.push_choice(0, 1, atoms);
        }
        for (term, value) in goal {
            let c = obs_constraint(
                &symbols,
                &Observation {
                    term: term.clone(),
                    value: value.clone(),
                    step: start + extra,
                },
                horizon,
            )?;
            program.ground_rules.push(c);
        }
        let gp = GroundProgram::build(&ground(&program))?;
        let models = solve(
            &gp,
            &SolveOptions {
                projection: Some(occurs_atoms),
                ..Default::default()
            },
        )?;
        if models.is_empty() {
            continue;
        }
        let mut plans: Vec<Plan> = models
            .iter()
            .map(|m| extract_plan(m, start))
            .collect();
        plans.sort_by_key(plan_sort_key);
        plans.dedup();
        let confirmed: Vec<Plan> = plans
            .into_iter()
            .filter(|p| replay_achieves(sd, history, goal, p, horizon).unwrap_or(false))
            .collect();
        if !confirmed.is_empty() {
            return Ok(confirmed);
        }
    }
    Err(TaskError::NoPlanWithinHorizon(max_horizon))
}

fn plan_sort_key(plan: &Plan) -> Vec<(String, u32)> {
    plan.0
        .iter()
        .map(|(step, action)| (action.to_string(), *step))
        .collect()
}

fn extract_plan(model: &AnswerSet, start: u32) -> Plan {
    let mut steps: Vec<(u32, Term)> = Vec::new();
    for name in model {
        let Some(atom) = atom_of(name) else { continue };
        if atom.pred != "occurs" || atom.args.len() != 2 {
            continue;
        }
        let Term::Int(i) = atom.args[1] else { continue };
        if (i as u32) < start {
            continue; // history occurrences are not part of the plan
        }
        steps.push((i as u32, atom.args[0].clone()));
    }
    steps.sort_by_key(|(i, _)| *i);
    Plan(steps)
}

/// Replays a plan as history and checks that some answer set reaches the
/// goal at the final step.
fn replay_achieves(
    sd: &SystemDescription,
    history: &History,
    goal: &[(Term, Term)],
    plan: &Plan,
    horizon: u32,
) -> Result<bool, TaskError> {
    let mut extended = history.clone();
    for (step, action) in &plan.0 {
        extended.happened.push((action.clone(), *step));
    }
    for (term, value) in goal {
        extended.observed.push(Observation {
            term: term.clone(),
            value: value.clone(),
            step: horizon,
        });
    }
    match project(sd, &extended, horizon, Some(1)) {
        Ok(trajectories) => Ok(!trajectories.is_empty()),
        Err(TaskError::Inconsistent) => Ok(false),
        Err(e) => Err(e),
    }
}

/// One consistent assignment of initial values to basic fluents not fixed
/// by step-0 observations.
pub type Completion = BTreeMap<String, Term>;

/// Postdiction: the initial-state completions consistent with a history
/// whose observations may come later than step 0. `focus` restricts the
/// reported fluent terms.
pub fn postdict(
    sd: &SystemDescription,
    history: &History,
    horizon: u32,
    focus: Option<&[Term]>,
) -> Result<Vec<Completion>, TaskError> {
    let (gp, symbols) = ground_task_program(sd, history, horizon)?;
    let observed_at_zero: Vec<String> = history
        .observed
        .iter()
        .filter(|o| o.step == 0)
        .map(|o| {
            let (name, args) = split_apply(&o.term);
            term_text(name, args)
        })
        .collect();
    let keep = |text: &str| -> bool {
        if observed_at_zero.iter().any(|t| t == text) {
            return false;
        }
        match focus {
            None => true,
            Some(terms) => terms.iter().any(|t| {
                let (name, args) = split_apply(t);
                term_text(name, args) == text
            }),
        }
    };
    // Projection onto the step-0 atoms of basic fluents.
    let mut projection: Vec<String> = Vec::new();
    for atom_name in gp.atoms() {
        let Some(atom) = atom_of(atom_name) else { continue };
        let (is_fluent0, text) = step_zero_fluent(&symbols, &atom);
        if is_fluent0 && keep(&text) {
            projection.push(atom_name.clone());
        }
    }
    let models = solve(
        &gp,
        &SolveOptions {
            projection: Some(projection),
            ..Default::default()
        },
    )?;
    if models.is_empty() {
        return Err(TaskError::Inconsistent);
    }
    let mut out: Vec<Completion> = models
        .iter()
        .map(|m| {
            let t = trajectory_of(&symbols, horizon, m);
            t.steps[0]
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect()
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Recognizes step-0 atoms of basic fluents; returns the fluent term text.
fn step_zero_fluent(symbols: &Symbols, atom: &AspAtom) -> (bool, String) {
    if atom.pred == "val" {
        if atom.args.len() >= 3 && *atom.args.last().unwrap() == Term::Int(0) {
            if let Term::Const(f) = &atom.args[0] {
                let args = &atom.args[1..atom.args.len() - 2];
                return (true, term_text(f, args));
            }
        }
        return (false, String::new());
    }
    let Some(f) = symbols.functions.get(&atom.pred) else {
        return (false, String::new());
    };
    if f.kind != FunctionKind::BasicFluent || !f.boolean() {
        return (false, String::new());
    }
    if atom.args.last() != Some(&Term::Int(0)) {
        return (false, String::new());
    }
    let args = &atom.args[..atom.args.len() - 1];
    (true, term_text(&atom.pred, args))
}
