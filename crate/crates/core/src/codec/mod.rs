//! Bit-level encodings: balanced codes, pointer codes, the cell codecs and
//! the k-sum gadget codec.

mod blockgroup;
mod cell;
mod ksum;
mod primitives;
mod scheme;

pub use blockgroup::{BlockElement, BlockGroup, BlockOp};
pub use cell::{
    apply_block_element, apply_block_op, apply_offset_map, apply_part_perm, decode_cell,
    encode_cell, random_invalid_cell, random_valid_word, tag_transform, DecodedCell,
};
pub use ksum::{ksum_decode_block, ksum_encode_value, KSumParams};
pub use primitives::{
    bb, bb_decode, decode_e, decode_e3, decode_pointer, encode_e, encode_e3, encode_pointer,
    flip, log2_exact, rotation1, rotation2, swap_half, Axis,
};
pub use scheme::{Field, Role, Scheme, SchemeKind};
