use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite sequence of bits, indexed from 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString { bits }
    }

    pub fn zeros(len: usize) -> Self {
        BitString {
            bits: vec![false; len],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, v: bool) {
        self.bits[i] = v;
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn as_mut_slice(&mut self) -> &mut [bool] {
        &mut self.bits
    }

    pub fn into_vec(self) -> Vec<bool> {
        self.bits
    }

    pub fn extend_from(&mut self, other: &[bool]) {
        self.bits.extend_from_slice(other);
    }

    /// Bits `0..len` read as a little-endian integer (bit 0 least significant).
    pub fn to_index(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    pub fn from_index(index: u64, len: usize) -> Self {
        BitString {
            bits: (0..len).map(|i| (index >> i) & 1 == 1).collect(),
        }
    }

    /// Hex rendering with the first bit as the most significant bit of the
    /// first nibble. Lengths that are not a multiple of 4 are zero-padded at
    /// the end.
    pub fn to_hex(&self) -> String {
        self.bits
            .chunks(4)
            .map(|c| {
                let v = c
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &b)| acc | ((b as u32) << (3 - i)));
                std::char::from_digit(v, 16).unwrap()
            })
            .collect()
    }

    /// Inverse of [`BitString::to_hex`]; `len` trims the padding.
    pub fn from_hex(s: &str, len: usize) -> Result<Self> {
        let s = s.trim();
        if s.len() * 4 < len {
            return Err(Error::Parse(format!(
                "hex string of {} nibbles is too short for {len} bits",
                s.len()
            )));
        }
        let mut bits = Vec::with_capacity(s.len() * 4);
        for ch in s.chars() {
            let v = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit `{ch}`")))?;
            for i in 0..4 {
                bits.push((v >> (3 - i)) & 1 == 1);
            }
        }
        if bits[len..].iter().any(|&b| b) {
            return Err(Error::Parse("nonzero padding after the last bit".into()));
        }
        bits.truncate(len);
        Ok(BitString { bits })
    }

    /// Packs 8 bits per byte, bit `i` of the string at bit `i % 8` of byte `i / 8`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.bits.len().div_ceil(8)];
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                out[i / 8] |= 1 << (i % 8);
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if bytes.len() * 8 < len {
            return Err(Error::Length {
                expected: len,
                got: bytes.len() * 8,
            });
        }
        Ok(BitString {
            bits: (0..len).map(|i| (bytes[i / 8] >> (i % 8)) & 1 == 1).collect(),
        })
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        BitString { bits }
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("bad bit `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() {
            return Err(Error::Parse("empty bit string".into()));
        }
        Ok(BitString { bits })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}
