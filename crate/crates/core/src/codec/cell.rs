use rand::seq::{index, SliceRandom};
use rand::{Rng, RngCore};

use super::blockgroup::{BlockElement, BlockGroup, BlockOp};
use super::primitives::{decode_pointer, encode_pointer, lowest_ones, weight, Axis};
use super::scheme::{Field, PartVariant, Role, Scheme};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::pointer::{BackPointer, CellSymbol, Coord, MatrixType, Tag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DecodedCell {
    pub valid: bool,
    pub symbol: CellSymbol,
    pub tag: Tag,
}

impl DecodedCell {
    pub const INVALID: DecodedCell = DecodedCell {
        valid: false,
        symbol: CellSymbol::ZERO_NULL,
        tag: Tag::Vdash,
    };

    /// The tag as seen by the tag checks: `None` for an invalid cell.
    pub fn grid_tag(&self) -> Option<Tag> {
        self.valid.then_some(self.tag)
    }
}

/// Position `t` of the transformed block holds original segment `order[t]`.
fn segment_order(tag: Tag, segments: usize) -> &'static [usize] {
    match (tag, segments) {
        (Tag::Vdash, 2) => &[0, 1],
        (Tag::Vdash, _) => &[0, 1, 2],
        (_, 2) => &[1, 0],
        (Tag::Top, _) => &[2, 0, 1],
        (Tag::Dashv, _) => &[1, 2, 0],
    }
}

/// The per-block move a tag stands for: Swap½ for `⊣` on two segments,
/// Rotation1 for `⊤` and Rotation2 for `⊣` on three.
pub fn tag_transform(block: &[bool], tag: Tag, segments: usize) -> Vec<bool> {
    let seg = block.len() / segments;
    let order = segment_order(tag, segments);
    let mut out = Vec::with_capacity(block.len());
    for &src in order {
        out.extend_from_slice(&block[src * seg..(src + 1) * seg]);
    }
    out
}

fn tag_inverse(block: &[bool], tag: Tag, segments: usize) -> Vec<bool> {
    let seg = block.len() / segments;
    let order = segment_order(tag, segments);
    let mut out = vec![false; block.len()];
    for (t, &src) in order.iter().enumerate() {
        out[src * seg..(src + 1) * seg].copy_from_slice(&block[t * seg..(t + 1) * seg]);
    }
    out
}

fn fixed_weight(len: usize, w: usize, rng: &mut Option<&mut dyn RngCore>) -> Vec<bool> {
    match rng {
        None => lowest_ones(len, w),
        Some(r) => {
            let mut out = vec![false; len];
            for i in index::sample(r, len, w) {
                out[i] = true;
            }
            out
        }
    }
}

/// Per-axis 1-based indices of a cell coordinate.
fn coord_indices(scheme: &Scheme, c: Coord) -> Result<[usize; 3]> {
    let (rows, cols) = scheme.matrix_shape();
    if c.row >= rows || c.col >= cols {
        return Err(Error::Code(format!(
            "pointer ({},{}) outside a {rows}x{cols} matrix",
            c.row + 1,
            c.col + 1
        )));
    }
    let n = scheme.n();
    Ok([c.row + 1, c.col % n + 1, c.col / n + 1])
}

fn field_indices(scheme: &Scheme, sym: &CellSymbol, field: Field) -> Result<Option<[usize; 3]>> {
    let c = match field {
        Field::Left => sym.left,
        Field::Right => sym.right,
        Field::Back => match (sym.back, scheme.matrix_type()) {
            (None, _) => None,
            (Some(BackPointer::Column(j)), MatrixType::Type1) => {
                if j >= scheme.matrix_shape().1 {
                    return Err(Error::Code(format!("back column {} out of range", j + 1)));
                }
                return Ok(Some([0, j + 1, 0]));
            }
            (Some(BackPointer::Cell(c)), MatrixType::Type2) => Some(c),
            (Some(b), _) => {
                return Err(Error::Code(format!(
                    "back pointer {b:?} does not fit a {} scheme",
                    scheme.kind()
                )))
            }
        },
    };
    c.map(|c| coord_indices(scheme, c)).transpose()
}

/// Standard-form encoding of `(sym, tag)`; fillers of prescribed weight come
/// from `rng`, or are the lowest positions when no rng is given.
pub fn encode_cell(
    scheme: &Scheme,
    sym: &CellSymbol,
    tag: Tag,
    mut rng: Option<&mut dyn RngCore>,
) -> Result<BitString> {
    if !scheme.tags().contains(&tag) {
        return Err(Error::Code(format!("tag {tag:?} is not used by {}", scheme.kind())));
    }
    let segments = scheme.segments();
    let seg = scheme.segment_len();
    let bl = scheme.block_len();
    let log_n = scheme.log_n();
    let mut out = Vec::with_capacity(scheme.cell_len());
    for (part, role) in scheme.roles().iter().enumerate() {
        let (b1, b2) = match *role {
            Role::Value => {
                let mut b1 = Vec::with_capacity(bl);
                for w in scheme.value_segment_weights(sym.value) {
                    b1.extend(fixed_weight(seg, w, &mut rng));
                }
                (b1, vec![true; bl])
            }
            Role::Pointer(field, axis) => {
                let b1 = match field_indices(scheme, sym, field)? {
                    None => vec![false; bl],
                    Some(idx) => encode_pointer(axis, idx[axis as usize], log_n, segments)?,
                };
                (b1, fixed_weight(bl, scheme.pointer_b2_weight(part), &mut rng))
            }
        };
        let b3 = fixed_weight(bl, scheme.b3_weight(), &mut rng);
        let b4 = fixed_weight(bl, scheme.b4_weight(), &mut rng);
        for block in [b1, b2, b3, b4] {
            out.extend(tag_transform(&block, tag, segments));
        }
    }
    Ok(BitString::new(out))
}

/// Decodes one cell codeword; anything that is not a valid encoding reads as
/// `(0,-,-,-)`.
pub fn decode_cell(scheme: &Scheme, bits: &[bool]) -> DecodedCell {
    decode_inner(scheme, bits).unwrap_or(DecodedCell::INVALID)
}

fn decode_inner(scheme: &Scheme, bits: &[bool]) -> Option<DecodedCell> {
    if bits.len() != scheme.cell_len() {
        return None;
    }
    let parts = scheme.parts();
    let bl = scheme.block_len();
    let pl = scheme.part_len();
    let segments = scheme.segments();
    let group = BlockGroup::get();
    let mut b1s: Vec<Option<(Vec<bool>, PartVariant)>> = vec![None; parts];
    for p in 0..parts {
        let part = &bits[p * pl..(p + 1) * pl];
        let mut w = [0usize; 4];
        for (s, ws) in w.iter_mut().enumerate() {
            *ws = weight(&part[s * bl..(s + 1) * bl]);
        }
        let mut key = w;
        key.sort_unstable();
        let profile = scheme.profile(&key)?;
        if b1s[profile.part].is_some() {
            return None;
        }
        let mut source = [0u8; 4];
        for s in 0..4 {
            source[s] = profile.weights.iter().position(|&x| x == w[s])? as u8;
        }
        let element = group.by_source(source)?;
        let slot = source.iter().position(|&b| b == 0)?;
        let mut b1 = part[slot * bl..(slot + 1) * bl].to_vec();
        if element.flipped[slot] {
            b1 = super::primitives::flip(&b1);
        }
        b1s[profile.part] = Some((b1, profile.variant));
    }

    let (value_b1, value_variant) = b1s[0].as_ref()?;
    let v = match value_variant {
        PartVariant::Value { v } => *v,
        PartVariant::Pointer { .. } => return None,
    };
    let seg = scheme.segment_len();
    let seg_weights: Vec<usize> = (0..segments)
        .map(|s| weight(&value_b1[s * seg..(s + 1) * seg]))
        .collect();
    let standard = scheme.value_segment_weights(v);
    let tag = *scheme.tags().iter().find(|&&t| {
        let order = segment_order(t, segments);
        (0..segments).all(|i| seg_weights[i] == standard[order[i]])
    })?;

    let mut fields: [[Option<usize>; 3]; 3] = [[None; 3]; 3];
    let mut present: [[bool; 3]; 3] = [[false; 3]; 3];
    for (part, role) in scheme.roles().iter().enumerate().skip(1) {
        let Role::Pointer(field, axis) = *role else {
            return None;
        };
        let (b1, variant) = b1s[part].as_ref()?;
        let fi = field as usize;
        present[fi][axis as usize] = true;
        if let PartVariant::Pointer { null: false } = variant {
            let (got, l) = decode_pointer(&tag_inverse(b1, tag, segments), segments).ok()?;
            if got != axis {
                return None;
            }
            fields[fi][axis as usize] = Some(l);
        }
    }
    let n = scheme.n();
    let mut coords: [Option<Coord>; 3] = [None; 3];
    for f in 0..3 {
        let used: Vec<usize> = (0..3).filter(|&a| present[f][a]).collect();
        let got: Vec<Option<usize>> = used.iter().map(|&a| fields[f][a]).collect();
        if got.iter().all(Option::is_none) {
            continue;
        }
        if got.iter().any(Option::is_none) {
            return None;
        }
        let idx = |a: usize| fields[f][a].map_or(1, |l| l);
        coords[f] = Some(Coord::new(idx(0) - 1, (idx(1) - 1) + (idx(2) - 1) * n));
    }
    let back = match scheme.matrix_type() {
        MatrixType::Type1 => fields[Field::Back as usize][Axis::Col as usize]
            .map(|l| BackPointer::Column(l - 1)),
        MatrixType::Type2 => coords[Field::Back as usize].map(BackPointer::Cell),
    };
    Some(DecodedCell {
        valid: true,
        symbol: CellSymbol {
            value: v,
            left: coords[Field::Left as usize],
            right: coords[Field::Right as usize],
            back,
        },
        tag,
    })
}

/// Moves the content of part `i` to part `perm[i]`.
pub fn apply_part_perm(scheme: &Scheme, bits: &mut [bool], perm: &[usize]) {
    let pl = scheme.part_len();
    let old = bits.to_vec();
    for (i, &to) in perm.iter().enumerate() {
        bits[to * pl..(to + 1) * pl].copy_from_slice(&old[i * pl..(i + 1) * pl]);
    }
}

pub fn apply_block_op(scheme: &Scheme, bits: &mut [bool], part: usize, op: BlockOp) {
    let bl = scheme.block_len();
    let base = part * scheme.part_len();
    let old = bits[base..base + 4 * bl].to_vec();
    for s in 0..4 {
        let (to, flipped) = op.slot_image(s);
        for o in 0..bl {
            let src = old[s * bl + o];
            let dst = if flipped { o ^ 1 } else { o };
            bits[base + to * bl + dst] = src;
        }
    }
}

/// Rearranges a standard-layout part into the arrangement `e`.
pub fn apply_block_element(scheme: &Scheme, bits: &mut [bool], part: usize, e: BlockElement) {
    let bl = scheme.block_len();
    let base = part * scheme.part_len();
    let old = bits[base..base + 4 * bl].to_vec();
    for s in 0..4 {
        let src = e.source[s] as usize;
        for o in 0..bl {
            let dst = if e.flipped[s] { o ^ 1 } else { o };
            bits[base + s * bl + dst] = old[src * bl + o];
        }
    }
}

/// Moves offset `o` of every block to `map[o]`.
pub fn apply_offset_map(scheme: &Scheme, bits: &mut [bool], map: &[usize]) {
    let bl = scheme.block_len();
    for block in bits.chunks_exact_mut(bl) {
        let old = block.to_vec();
        for (o, &to) in map.iter().enumerate() {
            block[to] = old[o];
        }
    }
}

/// Applies a random part permutation and a random block-group element to
/// every part.
pub fn random_valid_word(scheme: &Scheme, bits: &mut [bool], rng: &mut dyn RngCore) {
    let mut perm: Vec<usize> = (0..scheme.parts()).collect();
    perm.shuffle(rng);
    apply_part_perm(scheme, bits, &perm);
    let elements = &BlockGroup::get().elements;
    for part in 0..scheme.parts() {
        let e = elements[rng.gen_range(0..elements.len())];
        apply_block_element(scheme, bits, part, e);
    }
}

/// A random codeword that does not decode.
pub fn random_invalid_cell(scheme: &Scheme, rng: &mut dyn RngCore) -> BitString {
    loop {
        let bits: Vec<bool> = (0..scheme.cell_len()).map(|_| rng.gen()).collect();
        if !decode_cell(scheme, &bits).valid {
            return BitString::new(bits);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::scheme::SchemeKind;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sym2() -> CellSymbol {
        CellSymbol {
            value: true,
            left: Some(Coord::new(2, 5)),
            right: Some(Coord::new(15, 0)),
            back: Some(BackPointer::Cell(Coord::new(7, 7))),
        }
    }

    #[test]
    fn standard_roundtrip_all_tags() {
        let s = Scheme::new(SchemeKind::Dec112, 16).unwrap();
        for &tag in s.tags() {
            let w = encode_cell(&s, &sym2(), tag, None).unwrap();
            let d = decode_cell(&s, w.as_slice());
            assert!(d.valid);
            assert_eq!(d.symbol, sym2());
            assert_eq!(d.tag, tag);
        }
    }

    #[test]
    fn permuted_words_decode() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = Scheme::new(SchemeKind::Dec240, 8).unwrap();
        let sym = CellSymbol {
            value: false,
            left: Some(Coord::new(1, 63)),
            right: None,
            back: Some(BackPointer::Cell(Coord::new(0, 9))),
        };
        for _ in 0..50 {
            let mut w = encode_cell(&s, &sym, Tag::Top, Some(&mut rng)).unwrap().into_vec();
            random_valid_word(&s, &mut w, &mut rng);
            let d = decode_cell(&s, &w);
            assert_eq!((d.valid, d.symbol, d.tag), (true, sym, Tag::Top));
        }
    }

    #[test]
    fn swap_half_per_block_flips_tag() {
        let s = Scheme::new(SchemeKind::Dec96, 16).unwrap();
        let sym = CellSymbol {
            value: false,
            left: None,
            right: Some(Coord::new(3, 4)),
            back: Some(BackPointer::Column(9)),
        };
        let w = encode_cell(&s, &sym, Tag::Vdash, None).unwrap();
        let swapped: Vec<bool> = w
            .as_slice()
            .chunks(s.block_len())
            .flat_map(|b| tag_transform(b, Tag::Dashv, 2))
            .collect();
        let d = decode_cell(&s, &swapped);
        assert_eq!((d.valid, d.symbol, d.tag), (true, sym, Tag::Dashv));
    }

    #[test]
    fn zeros_are_invalid() {
        let s = Scheme::new(SchemeKind::Dec96, 16).unwrap();
        assert_eq!(decode_cell(&s, &vec![false; s.cell_len()]), DecodedCell::INVALID);
    }

    #[test]
    fn half_null_pointer_is_invalid() {
        let s = Scheme::new(SchemeKind::Dec112, 16).unwrap();
        let mut w = encode_cell(&s, &sym2(), Tag::Vdash, None).unwrap().into_vec();
        // Part 1 holds the left row; blank its pointer code.
        let bl = s.block_len();
        let base = s.part_len();
        for b in &mut w[base..base + bl] {
            *b = false;
        }
        assert!(!decode_cell(&s, &w).valid);
    }
}
