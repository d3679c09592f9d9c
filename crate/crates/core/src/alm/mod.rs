//! ALM system descriptions: abstract syntax, concrete syntax, validation,
//! theory flattening, and instance schema expansion.

pub mod ast;
pub mod flatten;
pub mod parser;
pub mod print;
pub mod schema;
pub mod sorts;
pub mod validate;

pub use ast::*;
pub use flatten::{closure_order, flatten_theory, FlattenError};
pub use parser::{parse_module, parse_modules, parse_system_description, ParseError};
pub use schema::expand_schemas;
pub use sorts::{SortHierarchy, Symbols};
pub use validate::{validate, validate_module, Diagnostic, ValidationReport};
