//! Toolchain for the modular action language ALM: a reader and printer for
//! `.alm` system descriptions, a translator from the KM knowledge
//! representation fragment used by the component library into ALM, a
//! compiler from ALM to answer-set programs, a desk-scale stable-model
//! solver with temporal projection, postdiction and planning harnesses,
//! and a searchable module library shipped as data.

pub mod alm;
pub mod asp;
pub mod engine;
pub mod km;
pub mod translate;
pub mod span;

pub use span::Span;
