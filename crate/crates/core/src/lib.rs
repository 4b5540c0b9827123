//! Kernel for multi-level contextual LF.
//!
//! Terms are kept in canonical form throughout: hereditary substitution
//! removes redices as they arise, and the bidirectional checker enforces
//! η-longness. Variables carry levels; level 0 is an ordinary bound variable,
//! level 1 a meta-variable and so on.

pub mod approx;
pub mod budget;
pub mod contexts;
pub mod hsub;
pub mod oracle;
pub mod parse;
pub mod print;
pub mod selftest;
pub mod syntax;
pub mod typer;

pub use syntax::*;
