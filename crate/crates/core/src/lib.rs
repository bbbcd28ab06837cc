//! Transitive Boolean functions built from pointer matrices and
//! permutation-invariant cell codes, the group actions that witness their
//! transitivity, and an exact engine for the classical query measures.

pub mod bits;
pub mod boolean;
pub mod cli;
pub mod codec;
pub mod constructions;
pub mod error;
pub mod groups;
pub mod measures;
pub mod pointer;

pub use bits::BitString;
pub use boolean::{BooleanFunction, TruthTable};
pub use error::{Error, Result};
