//! The composed functions: tagged pointer functions over cell codes, the
//! gadget-encoded k-sum family, the desensitized transform, and instance
//! files.

mod desens;
mod io;
mod ksum;
mod verify;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::bits::BitString;
use crate::codec::{decode_cell, encode_cell, random_invalid_cell, random_valid_word, KSumParams, Scheme, SchemeKind};
use crate::error::{Error, Result};
use crate::groups::{Geometry, GroupAction};
use crate::pointer::{build_instance, mod_eval, BuildOptions, ModOutcome, Outer, PointerMatrix, Symmetry, TagGrid};

pub use desens::{
    desensitize, desensitized_generators, sensitivity_witness, validate_unambiguous, CertificateCollection,
    UnambiguityReport,
};
pub use io::{read_instance, write_instance, InstanceHeader};
pub use ksum::{build_enc_input, enc_block_ksum_eval, enc_ksum_eval, enc_values};
pub use verify::{invariance_suite, InvarianceSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionId {
    F1,
    F2,
    F3a,
    F3b,
    F3c,
    EncKSum,
    EncBlockKSum,
    FQvsC,
}

impl ConstructionId {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionId::F1 => "F1",
            ConstructionId::F2 => "F2",
            ConstructionId::F3a => "F3a",
            ConstructionId::F3b => "F3b",
            ConstructionId::F3c => "F3c",
            ConstructionId::EncKSum => "ENC_KSUM",
            ConstructionId::EncBlockKSum => "ENC_BLOCK_KSUM",
            ConstructionId::FQvsC => "F_QVSC",
        }
    }

    pub fn is_pointer(self) -> bool {
        matches!(
            self,
            ConstructionId::F1 | ConstructionId::F2 | ConstructionId::F3a | ConstructionId::F3b | ConstructionId::F3c
        )
    }
}

impl FromStr for ConstructionId {
    type Err = Error;

    /// `F3` alone names the `n x n^2` brick construction with `n` marked columns.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "F1" => ConstructionId::F1,
            "F2" => ConstructionId::F2,
            "F3" | "F3B" => ConstructionId::F3b,
            "F3A" => ConstructionId::F3a,
            "F3C" => ConstructionId::F3c,
            "ENC_KSUM" => ConstructionId::EncKSum,
            "ENC_BLOCK_KSUM" => ConstructionId::EncBlockKSum,
            "F_QVSC" => ConstructionId::FQvsC,
            _ => return Err(Error::Parse(format!("unknown construction `{s}`"))),
        })
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub enum ConstructionKind {
    Pointer {
        geometry: Geometry,
        outer: Outer,
        sym: Symmetry,
    },
    KSum {
        params: KSumParams,
        block: bool,
    },
    /// Block k-sum over the outputs of disjoint k-sum copies, `k = log b`.
    QvsC {
        params: KSumParams,
    },
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub id: ConstructionId,
    pub kind: ConstructionKind,
}

impl Construction {
    /// `n` sizes the pointer constructions; `b` and `k` the k-sum ones
    /// (`F_QVSC` ignores `k`).
    pub fn new(id: ConstructionId, n: usize, k: usize, b: usize) -> Result<Construction> {
        let pointer = |kind: SchemeKind, outer: Outer, sym: Symmetry| -> Result<ConstructionKind> {
            Ok(ConstructionKind::Pointer {
                geometry: Geometry::new(Scheme::new(kind, n)?),
                outer,
                sym,
            })
        };
        let kind = match id {
            ConstructionId::F1 => pointer(SchemeKind::Dec96, Outer::A1, Symmetry::Transpose)?,
            ConstructionId::F2 => pointer(SchemeKind::Dec112, Outer::A2, Symmetry::Transpose)?,
            ConstructionId::F3a => pointer(SchemeKind::Dec112, Outer::A3 { k: 1 }, Symmetry::Transpose)?,
            ConstructionId::F3b => pointer(SchemeKind::Dec240, Outer::A3 { k: n }, Symmetry::Brick)?,
            ConstructionId::F3c => pointer(SchemeKind::Dec240, Outer::A3 { k: 1 }, Symmetry::Brick)?,
            ConstructionId::EncKSum | ConstructionId::EncBlockKSum => ConstructionKind::KSum {
                params: KSumParams::new(b, k)?,
                block: id == ConstructionId::EncBlockKSum,
            },
            ConstructionId::FQvsC => ConstructionKind::QvsC {
                params: KSumParams::new(b, b.trailing_zeros() as usize)?,
            },
        };
        Ok(Construction { id, kind })
    }

    pub fn len(&self) -> usize {
        match &self.kind {
            ConstructionKind::Pointer { geometry, .. } => geometry.len(),
            ConstructionKind::KSum { params, .. } => params.input_len(),
            ConstructionKind::QvsC { params } => params.input_len() * params.input_len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn geometry(&self) -> Option<&Geometry> {
        match &self.kind {
            ConstructionKind::Pointer { geometry, .. } => Some(geometry),
            _ => None,
        }
    }

    pub fn scheme(&self) -> Option<&Scheme> {
        self.geometry().map(Geometry::scheme)
    }

    /// The generator set of the pointer constructions.
    pub fn group(&self) -> Result<GroupAction> {
        match &self.kind {
            ConstructionKind::Pointer { geometry, .. } => GroupAction::new(geometry.clone()),
            _ => Err(Error::params(self.id.name(), "no group action for this construction")),
        }
    }

    fn check_len(&self, x: &[bool]) -> Result<()> {
        if x.len() != self.len() {
            return Err(Error::Length {
                expected: self.len(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Decodes every cell into the symbol matrix and the tag grid.
    pub fn decode(&self, x: &[bool]) -> Result<(PointerMatrix, TagGrid)> {
        self.check_len(x)?;
        let ConstructionKind::Pointer { geometry, .. } = &self.kind else {
            return Err(Error::params(self.id.name(), "not a pointer construction"));
        };
        let scheme = geometry.scheme();
        let cells: Vec<_> = x.chunks_exact(scheme.cell_len()).map(|c| decode_cell(scheme, c)).collect();
        let matrix = PointerMatrix::from_cells(
            geometry.rows(),
            geometry.cols(),
            scheme.matrix_type(),
            cells.iter().map(|c| c.symbol).collect(),
        )?;
        let tags = TagGrid::from_tags(geometry.rows(), geometry.cols(), cells.iter().map(|c| c.grid_tag()).collect())?;
        Ok((matrix, tags))
    }

    /// Branch-by-branch outcome of a pointer construction.
    pub fn mod_outcome(&self, x: &[bool]) -> Result<ModOutcome> {
        let ConstructionKind::Pointer { outer, sym, .. } = &self.kind else {
            return Err(Error::params(self.id.name(), "not a pointer construction"));
        };
        let (m, t) = self.decode(x)?;
        mod_eval(*outer, *sym, &m, &t)
    }

    pub fn eval(&self, x: &[bool]) -> Result<bool> {
        self.check_len(x)?;
        match &self.kind {
            ConstructionKind::Pointer { .. } => Ok(self.mod_outcome(x)?.value()),
            ConstructionKind::KSum { params, block } => Ok(if *block {
                enc_block_ksum_eval(params, x)
            } else {
                enc_ksum_eval(params, x)
            }),
            ConstructionKind::QvsC { params } => {
                let inner_len = params.input_len();
                let outer: Vec<bool> = x.chunks_exact(inner_len).map(|c| enc_ksum_eval(params, c)).collect();
                Ok(enc_block_ksum_eval(params, &outer))
            }
        }
    }

    /// A random 1-input. Pointer cells get random fillers and a random
    /// valid rearrangement of parts and blocks.
    pub fn build_one_input(&self, rng: &mut dyn RngCore) -> Result<BitString> {
        match &self.kind {
            ConstructionKind::Pointer { geometry, outer, sym } => {
                let branch = *sym.tags().choose(rng).expect("at least one branch");
                let inst = build_instance(
                    *outer,
                    *sym,
                    geometry.rows(),
                    geometry.cols(),
                    branch,
                    BuildOptions::default(),
                    rng,
                )?;
                self.encode_instance(&inst.matrix, &inst.tags, rng)
            }
            ConstructionKind::KSum { params, block } => build_enc_input(params, *block, rng),
            ConstructionKind::QvsC { params } => {
                let outer = build_enc_input(params, true, rng)?;
                let mut out = Vec::with_capacity(self.len());
                for &bit in outer.as_slice() {
                    let inner = if bit {
                        build_enc_input(params, false, rng)?.into_vec()
                    } else {
                        loop {
                            let v: Vec<bool> = (0..params.input_len()).map(|_| rng.gen()).collect();
                            if !enc_ksum_eval(params, &v) {
                                break v;
                            }
                        }
                    };
                    out.extend(inner);
                }
                Ok(BitString::new(out))
            }
        }
    }

    /// Encodes a decoded matrix and tag grid, cell by cell; `None` tags
    /// become random undecodable words.
    pub fn encode_instance(&self, m: &PointerMatrix, tags: &TagGrid, rng: &mut dyn RngCore) -> Result<BitString> {
        let ConstructionKind::Pointer { geometry, .. } = &self.kind else {
            return Err(Error::params(self.id.name(), "not a pointer construction"));
        };
        if m.rows() != geometry.rows() || m.cols() != geometry.cols() {
            return Err(Error::Dimensions(format!(
                "{}x{} matrix for a {}x{} construction",
                m.rows(),
                m.cols(),
                geometry.rows(),
                geometry.cols()
            )));
        }
        let scheme = geometry.scheme();
        let mut out = Vec::with_capacity(self.len());
        for (i, sym) in m.cells().iter().enumerate() {
            let at = crate::pointer::Coord::new(i / m.cols(), i % m.cols());
            match tags.get(at) {
                None => out.extend(random_invalid_cell(scheme, rng).into_vec()),
                Some(tag) => {
                    let mut cell = encode_cell(scheme, sym, tag, Some(&mut *rng))?.into_vec();
                    random_valid_word(scheme, &mut cell, rng);
                    out.extend(cell);
                }
            }
        }
        Ok(BitString::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lengths() {
        let len = |id, n| Construction::new(id, n, 0, 0).unwrap().len();
        assert_eq!(len(ConstructionId::F1, 16), 98_304);
        assert_eq!(len(ConstructionId::F2, 16), 114_688);
        assert_eq!(len(ConstructionId::F3b, 8), 368_640);
        assert!(Construction::new(ConstructionId::F1, 8, 0, 0).is_err());
    }

    #[test]
    fn ids_parse() {
        assert_eq!("F3".parse::<ConstructionId>().unwrap(), ConstructionId::F3b);
        assert_eq!("f3a".parse::<ConstructionId>().unwrap(), ConstructionId::F3a);
        assert!("F4".parse::<ConstructionId>().is_err());
    }

    #[test]
    fn builder_inputs_accept_and_zeros_reject() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (id, n) in [
            (ConstructionId::F1, 16),
            (ConstructionId::F2, 16),
            (ConstructionId::F3a, 16),
            (ConstructionId::F3b, 8),
            (ConstructionId::F3c, 8),
        ] {
            let c = Construction::new(id, n, 0, 0).unwrap();
            let x = c.build_one_input(&mut rng).unwrap();
            assert!(c.eval(x.as_slice()).unwrap(), "{id}");
            assert!(!c.eval(&vec![false; c.len()]).unwrap(), "{id}");
        }
    }

    #[test]
    fn zeroing_a_certificate_cell_rejects() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = Construction::new(ConstructionId::F1, 16, 0, 0).unwrap();
        let x = c.build_one_input(&mut rng).unwrap().into_vec();
        let out = c.mod_outcome(&x).unwrap();
        let tag = out.accepting[0];
        let cert = out.certificate.unwrap();
        // Certificate coordinates are in the accepting branch's view.
        let at = match tag {
            crate::pointer::Tag::Vdash => cert[0],
            _ => crate::pointer::Coord::new(cert[0].col, cert[0].row),
        };
        let cl = c.scheme().unwrap().cell_len();
        let cell = at.row * 16 + at.col;
        let mut y = x.clone();
        y[cell * cl..(cell + 1) * cl].fill(false);
        assert!(!c.eval(&y).unwrap());
    }
}
