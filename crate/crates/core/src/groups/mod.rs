//! Index permutations generating the transitive groups of the composed
//! functions, orbit computation and index-mapping words.

mod action;
mod invariance;
mod mapping;

pub use action::{
    bt_generators, orbit, CellGenerator, CellMove, Generator, GeneratorClass, Geometry, GroupAction, IndexAddress,
};
pub use invariance::{invariance_check, InvarianceReport, Violation};
pub use mapping::map_index;
