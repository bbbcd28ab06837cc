use crate::error::{Error, Result};

/// Coordinate axes; the discriminant is the segment a pointer code occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Row = 0,
    Col = 1,
    Brick = 2,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Row, Axis::Col, Axis::Brick];

    pub fn from_segment(s: usize) -> Axis {
        Axis::ALL[s]
    }
}

pub fn log2_exact(n: usize) -> Result<usize> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::Scheme(format!("n = {n} is not a power of two >= 2")));
    }
    Ok(n.trailing_zeros() as usize)
}

/// Balanced binary code of `l` in `1..=2^log_n`: the `log_n`-bit binary form
/// of `l mod 2^log_n`, most significant bit first, with 1 -> 10 and 0 -> 01.
pub fn bb(l: usize, log_n: usize) -> Result<Vec<bool>> {
    let n = 1usize << log_n;
    if l == 0 || l > n {
        return Err(Error::Code(format!("index {l} outside 1..={n}")));
    }
    Ok(bb_residue(l % n, log_n))
}

pub(crate) fn bb_residue(r: usize, log_n: usize) -> Vec<bool> {
    let mut out = Vec::with_capacity(2 * log_n);
    for k in (0..log_n).rev() {
        let bit = (r >> k) & 1 == 1;
        out.push(bit);
        out.push(!bit);
    }
    out
}

/// Inverse of [`bb`]; residue 0 decodes to `n`.
pub fn bb_decode(s: &[bool]) -> Result<usize> {
    let r = bb_decode_residue(s)?;
    let log_n = s.len() / 2;
    Ok(if r == 0 { 1 << log_n } else { r })
}

pub(crate) fn bb_decode_residue(s: &[bool]) -> Result<usize> {
    if !s.len().is_multiple_of(2) {
        return Err(Error::Code("odd-length balanced code".into()));
    }
    let mut r = 0usize;
    for pair in s.chunks_exact(2) {
        r <<= 1;
        match (pair[0], pair[1]) {
            (true, false) => r |= 1,
            (false, true) => {}
            _ => return Err(Error::Code("pair outside {10, 01}".into())),
        }
    }
    Ok(r)
}

/// Swaps each pair `(2i, 2i+1)`.
pub fn flip(x: &[bool]) -> Vec<bool> {
    let mut out = x.to_vec();
    for pair in out.chunks_exact_mut(2) {
        pair.swap(0, 1);
    }
    out
}

pub fn swap_half(x: &[bool]) -> Vec<bool> {
    let h = x.len() / 2;
    let mut out = x[h..].to_vec();
    out.extend_from_slice(&x[..h]);
    out
}

/// Third 3, third 1, third 2.
pub fn rotation1(x: &[bool]) -> Vec<bool> {
    let k = x.len() / 3;
    let mut out = x[2 * k..].to_vec();
    out.extend_from_slice(&x[..2 * k]);
    out
}

/// Third 2, third 3, third 1.
pub fn rotation2(x: &[bool]) -> Vec<bool> {
    let k = x.len() / 3;
    let mut out = x[k..].to_vec();
    out.extend_from_slice(&x[..k]);
    out
}

/// Pointer code over `segments` segments of `2 log_n` bits: `bb(l)` in the
/// axis' segment, zeros elsewhere.
pub fn encode_pointer(axis: Axis, l: usize, log_n: usize, segments: usize) -> Result<Vec<bool>> {
    if axis as usize >= segments {
        return Err(Error::Code(format!("{axis:?} code needs 3 segments")));
    }
    let code = bb(l, log_n)?;
    let seg = 2 * log_n;
    let mut out = vec![false; segments * seg];
    out[axis as usize * seg..(axis as usize + 1) * seg].copy_from_slice(&code);
    Ok(out)
}

/// Inverse of [`encode_pointer`]: exactly one segment must be nonzero and a
/// valid balanced code.
pub fn decode_pointer(x: &[bool], segments: usize) -> Result<(Axis, usize)> {
    let seg = x.len() / segments;
    if seg * segments != x.len() || !seg.is_multiple_of(2) {
        return Err(Error::Code("pointer code has a bad length".into()));
    }
    let nonzero: Vec<usize> = (0..segments)
        .filter(|&s| x[s * seg..(s + 1) * seg].iter().any(|&b| b))
        .collect();
    match nonzero.as_slice() {
        [s] => {
            let l = bb_decode(&x[s * seg..(s + 1) * seg])?;
            Ok((Axis::from_segment(*s), l))
        }
        _ => Err(Error::Code(format!(
            "{} nonzero segments in a pointer code",
            nonzero.len()
        ))),
    }
}

/// Row/column code of length `4 log n`.
pub fn encode_e(axis: Axis, l: usize, n: usize) -> Result<Vec<bool>> {
    encode_pointer(axis, l, log2_exact(n)?, 2)
}

pub fn decode_e(x: &[bool]) -> Result<(Axis, usize)> {
    decode_pointer(x, 2)
}

/// Row/column/brick code of length `6 log n`.
pub fn encode_e3(axis: Axis, l: usize, n: usize) -> Result<Vec<bool>> {
    encode_pointer(axis, l, log2_exact(n)?, 3)
}

pub fn decode_e3(x: &[bool]) -> Result<(Axis, usize)> {
    decode_pointer(x, 3)
}

/// Bits set at the lowest positions.
pub(crate) fn lowest_ones(len: usize, weight: usize) -> Vec<bool> {
    (0..len).map(|i| i < weight).collect()
}

pub(crate) fn weight(x: &[bool]) -> usize {
    x.iter().filter(|&&b| b).count()
}
