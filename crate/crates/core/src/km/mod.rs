//! The KM fragment: s-expression reader, typed AST, and lifter.

pub mod ast;
pub mod lift;
pub mod sexpr;

pub use ast::*;
pub use lift::{lift_km, LiftError, LiftOutcome, UnsupportedConstruct};
pub use sexpr::{parse_sexprs, print_sexprs, SExpr, SexprError};
