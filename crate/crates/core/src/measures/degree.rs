use crate::boolean::TruthTable;
use crate::error::{Error, Result};

pub const DEGREE_CAP: usize = 24;

/// Coefficients `c(S)` of the multilinear polynomial `sum_S c(S) prod_{i in S} x_i`
/// agreeing with `f` on `{0,1}^n`, indexed by the mask of `S`.
pub fn mobius_coefficients(t: &TruthTable) -> Result<Vec<i64>> {
    let n = t.arity();
    if n > DEGREE_CAP {
        return Err(Error::Cap {
            what: "degree",
            arity: n,
            cap: DEGREE_CAP,
        });
    }
    let mut c: Vec<i64> = t.outputs().iter().map(|&b| b as i64).collect();
    for i in 0..n {
        let bit = 1usize << i;
        for mask in 0..c.len() {
            if mask & bit != 0 {
                c[mask] -= c[mask ^ bit];
            }
        }
    }
    Ok(c)
}

pub fn degree(t: &TruthTable) -> Result<usize> {
    let c = mobius_coefficients(t)?;
    Ok(c.iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(m, _)| m.count_ones() as usize)
        .max()
        .unwrap_or(0))
}
