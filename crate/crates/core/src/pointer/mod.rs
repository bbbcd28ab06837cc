//! Pointer matrices, the tree-walk functions over them, their tagged Mod
//! forms and instance builders.

mod build;
mod eval;
mod matrix;

pub use build::{build_instance, matrix_type, random_symbol, BuildOptions, Instance};
pub use eval::{
    a1_certificate, a1_eval, a2_certificate, a2_eval, a3_certificate, a3_eval, find_marked_columns,
    mod_a1_eval, mod_a2_eval, mod_a3star_eval, mod_eval, path_sequence, Direction, ModOutcome, Outer,
    Symmetry,
};
pub use matrix::{
    brick_of, brick_rot_coord, from_brick, BackPointer, BrickRotation, CellSymbol, Coord, MatrixType,
    PointerMatrix, Tag, TagGrid,
};
