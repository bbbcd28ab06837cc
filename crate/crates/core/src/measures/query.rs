use super::subcube::{constancy, increment, pow3, MIXED};
use crate::boolean::TruthTable;
use crate::error::{Error, Result};

pub const QUERY_CAP: usize = 14;

/// Deterministic query complexity: exact minimax depth of an optimal
/// decision tree, by dynamic programming over all subcubes.
pub fn deterministic_qc(t: &TruthTable) -> Result<usize> {
    let n = t.arity();
    if n > QUERY_CAP {
        return Err(Error::Cap {
            what: "deterministic query complexity",
            arity: n,
            cap: QUERY_CAP,
        });
    }
    let val = constancy(t);
    let p3 = pow3(n);
    let total = p3[n];
    let mut depth = vec![0u8; total];
    let mut digits = vec![0u8; n];
    for sigma in 0..total {
        if val[sigma] == MIXED {
            let mut best = u8::MAX;
            for (i, &d) in digits.iter().enumerate() {
                if d == 2 {
                    let a = depth[sigma - 2 * p3[i]];
                    let b = depth[sigma - p3[i]];
                    best = best.min(1 + a.max(b));
                }
            }
            depth[sigma] = best;
        }
        increment(&mut digits);
    }
    Ok(depth[total - 1] as usize)
}
