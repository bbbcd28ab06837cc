use super::subcube::{constancy, decrement, point_index, pow3, MIXED};
use crate::boolean::TruthTable;
use crate::error::{Error, Result};

pub const CERTIFICATE_CAP: usize = 16;

/// `(C, C0, C1)`.
pub fn certificate_complexity(t: &TruthTable) -> Result<(usize, usize, usize)> {
    let per_input = certificate_sizes(t)?;
    let mut c = [0usize; 2];
    for (row, &size) in per_input.iter().enumerate() {
        let v = t.get(row) as usize;
        c[v] = c[v].max(size as usize);
    }
    Ok((c[0].max(c[1]), c[0], c[1]))
}

/// `C(f, x)` for every input `x`: the fewest coordinates of `x` whose values
/// force `f`.
pub fn certificate_sizes(t: &TruthTable) -> Result<Vec<u8>> {
    let n = t.arity();
    if n > CERTIFICATE_CAP {
        return Err(Error::Cap {
            what: "certificate complexity",
            arity: n,
            cap: CERTIFICATE_CAP,
        });
    }
    let val = constancy(t);
    let p3 = pow3(n);
    let total = p3[n];
    // widest[s]: most free variables of a constant subcube containing s.
    let mut widest = vec![0u8; total];
    let mut digits = vec![2u8; n];
    for sigma in (0..total).rev() {
        if val[sigma] != MIXED {
            let mut best = digits.iter().filter(|&&d| d == 2).count() as u8;
            for (i, &d) in digits.iter().enumerate() {
                if d != 2 {
                    let parent = sigma + (2 - d as usize) * p3[i];
                    if val[parent] != MIXED {
                        best = best.max(widest[parent]);
                    }
                }
            }
            widest[sigma] = best;
        }
        decrement(&mut digits);
    }
    Ok((0..1usize << n)
        .map(|row| n as u8 - widest[point_index(row, &p3)])
        .collect())
}
