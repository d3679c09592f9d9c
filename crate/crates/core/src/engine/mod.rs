//! Grounding, stable-model solving, the brute-force oracle, model
//! checking, and the reasoning tasks.

pub mod brute;
pub mod check;
pub mod ground;
pub mod solver;
pub mod tasks;

pub use brute::{brute_force, BruteError, DEFAULT_ATOM_LIMIT};
pub use check::check_model;
pub use ground::ground;
pub use solver::{solve, AnswerSet, GroundProgram, SolveError, SolveOptions};
pub use tasks::*;
