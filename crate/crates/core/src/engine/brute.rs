//! Brute-force stable-model enumeration, used as a test oracle.
//!
//! Enumerates all 2^n interpretations of the ground atoms and keeps
//! exactly those that satisfy every rule and equal the least model of
//! their reduct. Deliberately naive and written independently of the
//! search-based solver so the two can check each other.

use crate::engine::solver::{AnswerSet, GroundProgram};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BruteError {
    #[error("program too large for exhaustive enumeration: {atoms} atoms > limit {limit}")]
    TooLarge { atoms: usize, limit: usize },
}

pub const DEFAULT_ATOM_LIMIT: usize = 20;

pub fn brute_force(gp: &GroundProgram, atom_limit: usize) -> Result<Vec<AnswerSet>, BruteError> {
    let n = gp.atom_count();
    if n > atom_limit {
        return Err(BruteError::TooLarge {
            atoms: n,
            limit: atom_limit,
        });
    }
    let mut models: Vec<AnswerSet> = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let truth: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
        if satisfies(gp, &truth) && is_minimal_reduct_model(gp, &truth) {
            let model: AnswerSet = (0..n)
                .filter(|&i| truth[i])
                .map(|i| gp.atom_name(i as u32).to_string())
                .filter(|name| !name.starts_with("__"))
                .collect();
            models.push(model);
        }
    }
    models.sort();
    models.dedup();
    Ok(models)
}

fn satisfies(gp: &GroundProgram, truth: &[bool]) -> bool {
    gp.rules_view().all(|(head, body)| {
        let body_true = body
            .iter()
            .all(|&(a, neg)| truth[a as usize] != neg);
        match head {
            None => !body_true,
            Some(h) => !body_true || truth[h as usize],
        }
    })
}

fn is_minimal_reduct_model(gp: &GroundProgram, truth: &[bool]) -> bool {
    // Reduct: drop rules with a default-negated literal that is true in
    // the interpretation; strip the remaining default negation. Then the
    // interpretation must be the least model of what is left.
    let mut least = vec![false; truth.len()];
    loop {
        let mut changed = false;
        for (head, body) in gp.rules_view() {
            let Some(h) = head else { continue };
            if least[h as usize] {
                continue;
            }
            let deleted = body
                .iter()
                .any(|&(a, neg)| neg && truth[a as usize]);
            if deleted {
                continue;
            }
            let fires = body
                .iter()
                .filter(|&&(_, neg)| !neg)
                .all(|&(a, _)| least[a as usize]);
            if fires {
                least[h as usize] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    least == truth
}
