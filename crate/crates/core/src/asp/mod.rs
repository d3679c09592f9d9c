//! Compilation of ALM system descriptions into answer-set programs, text
//! emission, and the ground `.lp` dialect reader.

pub mod compile;
pub mod emit;
pub mod program;
pub mod reader;

pub use compile::{compile, CompileError};
pub use emit::{emit_text, output_file_name};
pub use program::*;
pub use reader::{parse_lp, LpError};
