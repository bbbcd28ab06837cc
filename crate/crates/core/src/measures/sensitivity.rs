use super::certificate::certificate_sizes;
use crate::boolean::TruthTable;
use crate::error::{Error, Result};

pub const SENSITIVITY_CAP: usize = 24;
pub const BLOCK_CAP: usize = 16;

/// `(s, s0, s1)`.
pub fn sensitivity(t: &TruthTable) -> Result<(usize, usize, usize)> {
    let n = t.arity();
    if n > SENSITIVITY_CAP {
        return Err(Error::Cap {
            what: "sensitivity",
            arity: n,
            cap: SENSITIVITY_CAP,
        });
    }
    let mut s = [0usize; 2];
    for row in 0..t.rows() {
        let v = t.get(row);
        let count = (0..n).filter(|&i| t.get(row ^ (1 << i)) != v).count();
        s[v as usize] = s[v as usize].max(count);
    }
    Ok((s[0].max(s[1]), s[0], s[1]))
}

/// Block sensitivity. Inputs are visited in decreasing order of their
/// certificate size, which bounds their block sensitivity from above, so
/// the scan stops as soon as no remaining input can beat the best packing.
pub fn block_sensitivity(t: &TruthTable) -> Result<usize> {
    let n = t.arity();
    if n > BLOCK_CAP {
        return Err(Error::Cap {
            what: "block sensitivity",
            arity: n,
            cap: BLOCK_CAP,
        });
    }
    let bound = certificate_sizes(t)?;
    let mut order: Vec<usize> = (0..t.rows()).collect();
    order.sort_by_key(|&r| std::cmp::Reverse(bound[r]));
    let mut scratch = Scratch::new(n);
    let mut best = 0;
    for row in order {
        if bound[row] as usize <= best {
            break;
        }
        best = best.max(scratch.at(t, row));
    }
    Ok(best)
}

/// `bs(f, x)` for the input with row index `row`.
pub fn block_sensitivity_at(t: &TruthTable, row: usize) -> Result<usize> {
    if t.arity() > BLOCK_CAP {
        return Err(Error::Cap {
            what: "block sensitivity",
            arity: t.arity(),
            cap: BLOCK_CAP,
        });
    }
    Ok(Scratch::new(t.arity()).at(t, row))
}

/// Minimal sensitive blocks of `f` at `row`, as bit masks.
pub fn minimal_sensitive_blocks(t: &TruthTable, row: usize) -> Vec<u32> {
    let mut clean = vec![false; t.rows()];
    minimal_blocks(t, row, &mut clean)
}

fn minimal_blocks(t: &TruthTable, row: usize, clean: &mut [bool]) -> Vec<u32> {
    let fx = t.get(row);
    let mut blocks = Vec::new();
    clean[0] = true;
    // Masks in increasing order visit every subset before its supersets. A
    // mask is a candidate only if all its maximal proper subsets are clean
    // (insensitive with no sensitive subset).
    for mask in 1..t.rows() {
        clean[mask] = false;
        let mut rest = mask;
        let mut candidate = true;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if !clean[mask ^ bit] {
                candidate = false;
                break;
            }
            rest ^= bit;
        }
        if !candidate {
            continue;
        }
        if t.get(row ^ mask) != fx {
            blocks.push(mask as u32);
        } else {
            clean[mask] = true;
        }
    }
    blocks
}

struct Scratch {
    clean: Vec<bool>,
    memo: Vec<u8>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            clean: vec![false; 1 << n],
            memo: vec![u8::MAX; 1 << n],
        }
    }

    fn at(&mut self, t: &TruthTable, row: usize) -> usize {
        let blocks = minimal_blocks(t, row, &mut self.clean);
        if blocks.is_empty() {
            return 0;
        }
        let n = t.arity();
        let mut containing: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &b in &blocks {
            for (i, list) in containing.iter_mut().enumerate() {
                if b >> i & 1 == 1 {
                    list.push(b);
                }
            }
        }
        self.memo.iter_mut().for_each(|m| *m = u8::MAX);
        let usable = blocks.iter().fold(0u32, |acc, &b| acc | b);
        pack(usable, &containing, &mut self.memo) as usize
    }
}

/// Maximum number of disjoint blocks inside `avail`.
fn pack(avail: u32, containing: &[Vec<u32>], memo: &mut [u8]) -> u8 {
    if avail == 0 {
        return 0;
    }
    if memo[avail as usize] != u8::MAX {
        return memo[avail as usize];
    }
    let e = avail.trailing_zeros() as usize;
    let without = avail & !(1 << e);
    let mut best = pack(without, containing, memo);
    for &b in &containing[e] {
        if b & avail == b {
            best = best.max(1 + pack(avail & !b, containing, memo));
        }
    }
    memo[avail as usize] = best;
    best
}
