//! Batch interface to the engine: the expression grammar, scenario files,
//! the built-in example suite and report emission.

pub mod expr;
pub mod golden;
pub mod scenario;
