use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::primitives::{log2_exact, Axis};
use crate::error::{Error, Result};
use crate::pointer::{MatrixType, Tag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// Six parts of two-segment blocks; type-1 back pointers.
    Dec96,
    /// Seven parts of two-segment blocks; type-2 back pointers.
    Dec112,
    /// Ten parts of three-segment blocks over `n x n^2` matrices.
    Dec240,
}

impl SchemeKind {
    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Dec96 => "DEC96",
            SchemeKind::Dec112 => "DEC112",
            SchemeKind::Dec240 => "DEC240",
        }
    }

    /// Bits per cell in units of `log n`.
    pub fn bits_per_log(self) -> usize {
        match self {
            SchemeKind::Dec96 => 96,
            SchemeKind::Dec112 => 112,
            SchemeKind::Dec240 => 240,
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            SchemeKind::Dec96 | SchemeKind::Dec112 => 16,
            SchemeKind::Dec240 => 8,
        }
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "DEC96" => Ok(SchemeKind::Dec96),
            "DEC112" => Ok(SchemeKind::Dec112),
            "DEC240" => Ok(SchemeKind::Dec240),
            _ => Err(Error::Scheme(format!("unknown scheme `{s}`"))),
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Left,
    Right,
    Back,
}

/// What a part stores: the value, or one coordinate of one pointer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Value,
    Pointer(Field, Axis),
}

/// Which standard-form variant of a part a weight profile belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum PartVariant {
    Value { v: bool },
    Pointer { null: bool },
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Profile {
    pub part: usize,
    pub variant: PartVariant,
    /// Expected weight of blocks B1..B4.
    pub weights: [usize; 4],
}

#[derive(Clone, Debug)]
pub struct Scheme {
    kind: SchemeKind,
    n: usize,
    log_n: usize,
    roles: Vec<Role>,
    profiles: HashMap<[usize; 4], Profile>,
}

impl Scheme {
    pub fn new(kind: SchemeKind, n: usize) -> Result<Scheme> {
        let log_n = log2_exact(n)?;
        if n < kind.min_n() {
            return Err(Error::Scheme(format!(
                "{kind} needs n >= {}, got {n}",
                kind.min_n()
            )));
        }
        use Axis::*;
        use Field::*;
        let roles = match kind {
            SchemeKind::Dec96 => vec![
                Role::Value,
                Role::Pointer(Left, Row),
                Role::Pointer(Left, Col),
                Role::Pointer(Right, Row),
                Role::Pointer(Right, Col),
                Role::Pointer(Back, Col),
            ],
            SchemeKind::Dec112 => vec![
                Role::Value,
                Role::Pointer(Left, Row),
                Role::Pointer(Left, Col),
                Role::Pointer(Right, Row),
                Role::Pointer(Right, Col),
                Role::Pointer(Back, Row),
                Role::Pointer(Back, Col),
            ],
            SchemeKind::Dec240 => {
                let mut r = vec![Role::Value];
                for f in [Left, Right, Back] {
                    for a in [Row, Col, Brick] {
                        r.push(Role::Pointer(f, a));
                    }
                }
                r
            }
        };
        let mut scheme = Scheme {
            kind,
            n,
            log_n,
            roles,
            profiles: HashMap::new(),
        };
        scheme.build_profiles()?;
        Ok(scheme)
    }

    fn build_profiles(&mut self) -> Result<()> {
        let bl = self.block_len();
        let mut all = Vec::new();
        for v in [false, true] {
            all.push(Profile {
                part: 0,
                variant: PartVariant::Value { v },
                weights: [self.value_b1_weight(v), bl, self.b3_weight(), self.b4_weight()],
            });
        }
        for part in 1..self.parts() {
            for null in [false, true] {
                all.push(Profile {
                    part,
                    variant: PartVariant::Pointer { null },
                    weights: [
                        if null { 0 } else { self.log_n },
                        self.pointer_b2_weight(part),
                        self.b3_weight(),
                        self.b4_weight(),
                    ],
                });
            }
        }
        for p in all {
            let w = p.weights;
            if w.iter().any(|&x| x > bl) {
                return Err(Error::Scheme(format!("block weight exceeds {bl} bits")));
            }
            if (0..4).any(|i| (i + 1..4).any(|j| w[i] == w[j])) {
                return Err(Error::Scheme(format!("repeated block weight in {w:?}")));
            }
            let mut key = w;
            key.sort_unstable();
            if self.profiles.insert(key, p).is_some() {
                return Err(Error::Scheme(format!("weight profile {key:?} is ambiguous")));
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn log_n(&self) -> usize {
        self.log_n
    }

    pub fn segments(&self) -> usize {
        match self.kind {
            SchemeKind::Dec240 => 3,
            _ => 2,
        }
    }

    pub fn segment_len(&self) -> usize {
        2 * self.log_n
    }

    pub fn block_len(&self) -> usize {
        self.segments() * self.segment_len()
    }

    pub fn part_len(&self) -> usize {
        4 * self.block_len()
    }

    pub fn parts(&self) -> usize {
        self.roles.len()
    }

    pub fn cell_len(&self) -> usize {
        self.parts() * self.part_len()
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn matrix_type(&self) -> MatrixType {
        match self.kind {
            SchemeKind::Dec96 => MatrixType::Type1,
            _ => MatrixType::Type2,
        }
    }

    /// Matrix shape the scheme addresses: `n x n` or `n x n^2`.
    pub fn matrix_shape(&self) -> (usize, usize) {
        match self.kind {
            SchemeKind::Dec240 => (self.n, self.n * self.n),
            _ => (self.n, self.n),
        }
    }

    pub fn tags(&self) -> &'static [Tag] {
        match self.segments() {
            3 => &[Tag::Vdash, Tag::Top, Tag::Dashv],
            _ => &[Tag::Vdash, Tag::Dashv],
        }
    }

    pub fn value_b1_weight(&self, v: bool) -> usize {
        self.value_segment_weights(v).iter().sum()
    }

    pub fn pointer_b2_weight(&self, part: usize) -> usize {
        2 * self.log_n + 2 + part
    }

    pub fn b3_weight(&self) -> usize {
        2 * self.log_n + 1
    }

    pub fn b4_weight(&self) -> usize {
        2 * self.log_n + 2
    }

    /// Weights of the value block's segments in standard form.
    pub fn value_segment_weights(&self, v: bool) -> Vec<usize> {
        let s = self.segment_len();
        match self.segments() {
            2 => vec![s, s - 1 - v as usize],
            _ => vec![s, s - 1, s - 2 - v as usize],
        }
    }

    /// Total standard-form weight of a part.
    pub fn part_weight(&self, part: usize, v: bool, null: bool) -> usize {
        if part == 0 {
            self.value_b1_weight(v) + self.block_len() + self.b3_weight() + self.b4_weight()
        } else {
            let b1 = if null { 0 } else { self.log_n };
            b1 + self.pointer_b2_weight(part) + self.b3_weight() + self.b4_weight()
        }
    }

    pub(crate) fn profile(&self, sorted_weights: &[usize; 4]) -> Option<&Profile> {
        self.profiles.get(sorted_weights)
    }

    /// `(part, block, offset)` of a bit inside a cell codeword.
    pub fn address(&self, i: usize) -> (usize, usize, usize) {
        let pl = self.part_len();
        let bl = self.block_len();
        (i / pl, (i % pl) / bl, i % bl)
    }

    pub fn flat(&self, part: usize, block: usize, offset: usize) -> usize {
        part * self.part_len() + block * self.block_len() + offset
    }
}
