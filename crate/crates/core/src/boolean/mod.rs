//! Boolean functions: dense tables, the named base functions, composition
//! and iteration.

mod named;
mod parse;
mod table;

use std::fmt;
use std::sync::Arc;

pub use named::{edge_list, k_subset_sums_to_zero, Named};
pub use table::{TruthTable, TABLE_CAP};

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Evaluation rule for functions defined outside this module.
pub trait Evaluate: Send + Sync + fmt::Debug {
    fn arity(&self) -> usize;
    fn eval_bits(&self, x: &[bool]) -> bool;
    fn describe(&self) -> String;
}

#[derive(Clone, Debug)]
pub enum BooleanFunction {
    Named(Named),
    Table(Arc<TruthTable>),
    /// `outer(inner(block_0), ..., inner(block_{m-1}))` on disjoint blocks.
    Compose(Arc<BooleanFunction>, Arc<BooleanFunction>),
    /// `f^d`, with `f^1 = f` and `f^d = f o f^(d-1)`.
    Iterate(Arc<BooleanFunction>, u32),
    Custom(Arc<dyn Evaluate>),
}

impl BooleanFunction {
    pub fn arity(&self) -> usize {
        match self {
            BooleanFunction::Named(n) => n.arity(),
            BooleanFunction::Table(t) => t.arity(),
            BooleanFunction::Compose(f, g) => f.arity() * g.arity(),
            BooleanFunction::Iterate(f, d) => f.arity().pow(*d),
            BooleanFunction::Custom(c) => c.arity(),
        }
    }

    pub fn eval(&self, x: &BitString) -> Result<bool> {
        if x.len() != self.arity() {
            return Err(Error::Length {
                expected: self.arity(),
                got: x.len(),
            });
        }
        Ok(self.eval_bits(x.as_slice()))
    }

    /// Evaluation on a slice of exactly `arity` bits.
    pub fn eval_bits(&self, x: &[bool]) -> bool {
        match self {
            BooleanFunction::Named(n) => n.eval(x),
            BooleanFunction::Table(t) => t.eval_bits(x),
            BooleanFunction::Compose(f, g) => {
                let m = g.arity();
                let inner: Vec<bool> = x.chunks(m).map(|b| g.eval_bits(b)).collect();
                f.eval_bits(&inner)
            }
            BooleanFunction::Iterate(f, d) => eval_iterate(f, *d, x),
            BooleanFunction::Custom(c) => c.eval_bits(x),
        }
    }

    pub fn truth_table(&self) -> Result<TruthTable> {
        if let BooleanFunction::Table(t) = self {
            return Ok((**t).clone());
        }
        let n = self.arity();
        if n > TABLE_CAP {
            return Err(Error::Cap {
                what: "truth table",
                arity: n,
                cap: TABLE_CAP,
            });
        }
        let mut x = vec![false; n];
        let mut out = Vec::with_capacity(1 << n);
        for row in 0..1usize << n {
            for (i, b) in x.iter_mut().enumerate() {
                *b = (row >> i) & 1 == 1;
            }
            out.push(self.eval_bits(&x));
        }
        TruthTable::new(n, out)
    }

    pub fn from_table(t: TruthTable) -> Self {
        BooleanFunction::Table(Arc::new(t))
    }

    /// Parses a descriptor such as `OR:2 o AND:3`, `NAND^3` or `RUB:4`.
    pub fn parse(spec: &str) -> Result<Self> {
        parse::parse_spec(spec)
    }
}

fn eval_iterate(f: &BooleanFunction, d: u32, x: &[bool]) -> bool {
    if d == 1 {
        return f.eval_bits(x);
    }
    let m = f.arity().pow(d - 1);
    let inner: Vec<bool> = x.chunks(m).map(|b| eval_iterate(f, d - 1, b)).collect();
    f.eval_bits(&inner)
}

pub fn make_named(name: &str, params: &[usize]) -> Result<BooleanFunction> {
    let upper = name.to_ascii_uppercase();
    let tree = |base: Named| -> Result<BooleanFunction> {
        let depth = match params {
            [] => 1,
            [d] if *d >= 1 => *d as u32,
            _ => return Err(Error::params(&upper, "expects an optional depth >= 1")),
        };
        iterate(&BooleanFunction::Named(base), depth)
    };
    match upper.as_str() {
        "XNOR_TREE" => tree(Named::Xnor),
        "NAND_TREE" => tree(Named::Nand),
        _ => Ok(BooleanFunction::Named(Named::build(name, params)?)),
    }
}

pub fn compose(f: &BooleanFunction, g: &BooleanFunction) -> BooleanFunction {
    BooleanFunction::Compose(Arc::new(f.clone()), Arc::new(g.clone()))
}

pub fn iterate(f: &BooleanFunction, d: u32) -> Result<BooleanFunction> {
    if d == 0 {
        return Err(Error::params("iterate", "depth must be at least 1"));
    }
    if d == 1 {
        return Ok(f.clone());
    }
    Ok(BooleanFunction::Iterate(Arc::new(f.clone()), d))
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BooleanFunction::Named(n) => write!(f, "{n}"),
            BooleanFunction::Table(t) => write!(f, "TABLE[{}]", t.arity()),
            BooleanFunction::Compose(a, b) => write!(f, "({a} o {b})"),
            BooleanFunction::Iterate(a, d) => write!(f, "{a}^{d}"),
            BooleanFunction::Custom(c) => f.write_str(&c.describe()),
        }
    }
}
