use rand::seq::{index, SliceRandom};
use rand::{Rng, RngCore};

use super::primitives::{log2_exact, lowest_ones, weight};
use crate::bits::BitString;
use crate::error::{Error, Result};

/// Gadget codec for elements of an alphabet of size `b^k`: each of the
/// `m = k log b` value bits becomes four slots of `m + 2` bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KSumParams {
    pub b: usize,
    pub k: usize,
}

/// The Klein four-group on slots, as slot images.
const KLEIN: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

impl KSumParams {
    pub fn new(b: usize, k: usize) -> Result<KSumParams> {
        let log_b = log2_exact(b).map_err(|_| Error::params("KSUM", "b must be a power of two >= 2"))?;
        if k == 0 || k * log_b > 16 {
            return Err(Error::params("KSUM", "need 1 <= k log b <= 16"));
        }
        Ok(KSumParams { b, k })
    }

    /// Value bits per block.
    pub fn bits(&self) -> usize {
        self.k * self.b.trailing_zeros() as usize
    }

    pub fn slot_len(&self) -> usize {
        self.bits() + 2
    }

    pub fn gadget_len(&self) -> usize {
        4 * self.slot_len()
    }

    pub fn block_len(&self) -> usize {
        self.bits() * self.gadget_len()
    }

    pub fn alphabet(&self) -> usize {
        1 << self.bits()
    }

    /// Weight threshold below which a block counts as light.
    pub fn heavy_weight(&self) -> usize {
        6 * self.bits()
    }

    pub fn input_len(&self) -> usize {
        self.b * self.block_len()
    }
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

/// Gadget `i` (1-based) carries bit `i` of `v`, most significant first, as
/// slot weights `(1,0,2,i+2)` for a one and `(0,1,2,i+2)` for a zero. With an
/// rng the slot contents, the Klein-four arrangement of each gadget and the
/// gadget order are randomized.
pub fn ksum_encode_value(v: usize, p: &KSumParams, mut rng: Option<&mut dyn RngCore>) -> Result<BitString> {
    if v >= p.alphabet() {
        return Err(Error::Code(format!("value {v} outside 0..{}", p.alphabet())));
    }
    let m = p.bits();
    let sl = p.slot_len();
    let mut gadgets = Vec::with_capacity(m);
    for i in 1..=m {
        let bit = (v >> (m - i)) & 1 == 1;
        let weights = [bit as usize, !bit as usize, 2, i + 2];
        let klein = match rng.as_mut() {
            Some(r) => KLEIN[r.gen_range(0..4)],
            None => KLEIN[0],
        };
        let mut g = vec![false; 4 * sl];
        for (s, &w) in weights.iter().enumerate() {
            let t = klein[s];
            g[t * sl..(t + 1) * sl].copy_from_slice(&fixed_weight(sl, w, &mut rng));
        }
        gadgets.push(g);
    }
    if let Some(r) = rng.as_mut() {
        gadgets.shuffle(r);
    }
    Ok(BitString::new(gadgets.concat()))
}

/// Value of a block, or `None` if any gadget breaks the weight profile.
pub fn ksum_decode_block(bits: &[bool], p: &KSumParams) -> Option<usize> {
    if bits.len() != p.block_len() {
        return None;
    }
    let m = p.bits();
    let sl = p.slot_len();
    let mut seen = vec![false; m + 1];
    let mut v = 0usize;
    for g in bits.chunks_exact(p.gadget_len()) {
        let w: Vec<usize> = (0..4).map(|s| weight(&g[s * sl..(s + 1) * sl])).collect();
        let big: Vec<usize> = (0..4).filter(|&s| w[s] >= 3).collect();
        let [pos] = big[..] else { return None };
        let i = w[pos] - 2;
        if i > m || seen[i] {
            return None;
        }
        seen[i] = true;
        let klein = KLEIN.iter().find(|e| e[3] == pos)?;
        if w[klein[2]] != 2 {
            return None;
        }
        let bit = match (w[klein[0]], w[klein[1]]) {
            (1, 0) => true,
            (0, 1) => false,
            _ => return None,
        };
        if bit {
            v |= 1 << (m - i);
        }
    }
    Some(v)
}
