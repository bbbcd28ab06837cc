use std::fmt;

use crate::error::{Error, Result};

/// Largest arity a dense table may have.
pub const TABLE_CAP: usize = 26;

/// Dense truth table. Row `r` holds `f(x)` where `x_i = (r >> i) & 1`, so the
/// first variable is the least significant bit of the row index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    outputs: Vec<bool>,
}

impl TruthTable {
    pub fn new(arity: usize, outputs: Vec<bool>) -> Result<Self> {
        if arity > TABLE_CAP {
            return Err(Error::Cap {
                what: "truth table",
                arity,
                cap: TABLE_CAP,
            });
        }
        if outputs.len() != 1usize << arity {
            return Err(Error::Length {
                expected: 1 << arity,
                got: outputs.len(),
            });
        }
        Ok(TruthTable { arity, outputs })
    }

    pub fn from_fn(arity: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        if arity > TABLE_CAP {
            return Err(Error::Cap {
                what: "truth table",
                arity,
                cap: TABLE_CAP,
            });
        }
        Ok(TruthTable {
            arity,
            outputs: (0..1usize << arity).map(f).collect(),
        })
    }

    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        Self::from_fn(arity, |_| value)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn rows(&self) -> usize {
        self.outputs.len()
    }

    #[inline]
    pub fn get(&self, row: usize) -> bool {
        self.outputs[row]
    }

    pub fn outputs(&self) -> &[bool] {
        &self.outputs
    }

    pub fn eval_bits(&self, x: &[bool]) -> bool {
        let row = x
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &b)| acc | ((b as usize) << i));
        self.outputs[row]
    }

    pub fn is_constant(&self) -> bool {
        self.outputs.iter().all(|&v| v == self.outputs[0])
    }

    /// Relabels variables: the new table's variable `perm[i]` plays the role
    /// of the old variable `i`.
    pub fn permute_vars(&self, perm: &[usize]) -> TruthTable {
        assert_eq!(perm.len(), self.arity);
        let mut out = vec![false; self.outputs.len()];
        for (row, &v) in self.outputs.iter().enumerate() {
            let mut r = 0usize;
            for (i, &p) in perm.iter().enumerate() {
                r |= ((row >> i) & 1) << p;
            }
            out[r] = v;
        }
        TruthTable {
            arity: self.arity,
            outputs: out,
        }
    }

    /// Serialization: `arity=<k>` on one line, then the `2^k` output bits.
    pub fn to_text(&self) -> String {
        let mut s = format!("arity={}\n", self.arity);
        s.extend(self.outputs.iter().map(|&b| if b { '1' } else { '0' }));
        s.push('\n');
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty truth-table file".into()))?
            .trim();
        let arity: usize = header
            .strip_prefix("arity=")
            .ok_or_else(|| Error::Parse(format!("expected `arity=<k>`, got `{header}`")))?
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad arity in `{header}`")))?;
        let body: String = lines.flat_map(|l| l.chars()).filter(|c| !c.is_whitespace()).collect();
        let outputs = body
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("bad output `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        TruthTable::new(arity, outputs)
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(arity={}, ", self.arity)?;
        for &b in &self.outputs {
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}
