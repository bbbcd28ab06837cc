use rand::seq::index;
use rand::{Rng, RngCore};

use crate::bits::BitString;
use crate::boolean::k_subset_sums_to_zero;
use crate::codec::{ksum_decode_block, ksum_encode_value, KSumParams};
use crate::error::Result;

/// Decoded value of every block, `None` for blocks that do not decode.
pub fn enc_values(p: &KSumParams, x: &[bool]) -> Vec<Option<usize>> {
    x.chunks_exact(p.block_len()).map(|b| ksum_decode_block(b, p)).collect()
}

/// Whether `k` distinct valid blocks have values summing to 0 mod `b^k`.
pub fn enc_ksum_eval(p: &KSumParams, x: &[bool]) -> bool {
    let values: Vec<usize> = enc_values(p, x).into_iter().flatten().collect();
    k_subset_sums_to_zero(&values, p.k, p.alphabet())
}

/// [`enc_ksum_eval`], and no block lighter than `6 k log b` ones outside the
/// chosen blocks. Valid blocks are always heavier than that, so any light
/// block rejects.
pub fn enc_block_ksum_eval(p: &KSumParams, x: &[bool]) -> bool {
    let heavy = p.heavy_weight();
    x.chunks_exact(p.block_len())
        .all(|b| b.iter().filter(|&&v| v).count() >= heavy)
        && enc_ksum_eval(p, x)
}

/// A random 1-input: `k` blocks carry values summing to 0 and the rest are
/// uniform noise, resampled until heavy for the block variant.
pub fn build_enc_input(p: &KSumParams, block: bool, rng: &mut dyn RngCore) -> Result<BitString> {
    let bl = p.block_len();
    let modulus = p.alphabet();
    let mut out: Vec<bool> = Vec::with_capacity(p.input_len());
    for _ in 0..p.b {
        loop {
            let blk: Vec<bool> = (0..bl).map(|_| rng.gen()).collect();
            if !block || blk.iter().filter(|&&v| v).count() >= p.heavy_weight() {
                out.extend(blk);
                break;
            }
        }
    }
    let chosen = index::sample(rng, p.b, p.k).into_vec();
    let mut values: Vec<usize> = (0..p.k - 1).map(|_| rng.gen_range(0..modulus)).collect();
    let sum: usize = values.iter().sum();
    values.push((modulus - sum % modulus) % modulus);
    for (&blk, &v) in chosen.iter().zip(&values) {
        let code = ksum_encode_value(v, p, Some(&mut *rng))?;
        out[blk * bl..(blk + 1) * bl].copy_from_slice(code.as_slice());
    }
    Ok(BitString::new(out))
}
