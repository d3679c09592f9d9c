//! Post-hoc model checking, independent of the solver's search: does a
//! returned answer set satisfy every ground rule and constraint of the
//! program it came from?

use crate::engine::solver::{AnswerSet, GroundProgram};

/// True when `model` (visible atoms) satisfies every rule. Auxiliary
/// choice atoms are reconstructed from their defining rules: `__ch` atoms
/// hold exactly when their counterpart atom is out of the model and their
/// rule body's other literals hold.
pub fn check_model(gp: &GroundProgram, model: &AnswerSet) -> bool {
    // Fix a total truth assignment: visible atoms from the model,
    // auxiliary atoms by least fixpoint over their defining rules.
    let n = gp.atom_count();
    let mut truth = vec![false; n];
    for (i, truth_i) in truth.iter_mut().enumerate() {
        let name = gp.atom_name(i as u32);
        if !name.starts_with("__") {
            *truth_i = model.contains(name);
        }
    }
    loop {
        let mut changed = false;
        for (head, body) in gp.rules_view() {
            let Some(h) = head else { continue };
            if !gp.atom_name(h).starts_with("__") || truth[h as usize] {
                continue;
            }
            let fires = body.iter().all(|&(a, neg)| truth[a as usize] != neg);
            if fires {
                truth[h as usize] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    gp.rules_view().all(|(head, body)| {
        let body_true = body.iter().all(|&(a, neg)| truth[a as usize] != neg);
        match head {
            None => !body_true,
            Some(h) => !body_true || truth[h as usize],
        }
    })
}
