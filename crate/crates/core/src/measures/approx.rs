use super::degree::degree;
use super::lp::{LinearProgram, Outcome, Relation};
use crate::boolean::TruthTable;
use crate::error::{Error, Result};

pub const APPROX_CAP: usize = 8;
pub const DEFAULT_EPS: f64 = 1.0 / 3.0;
const MARGIN: f64 = 1e-7;

/// Smallest `d` such that some multilinear polynomial of degree at most `d`
/// is within `eps` of `f` on every input.
pub fn approx_degree(t: &TruthTable, eps: f64) -> Result<usize> {
    let n = t.arity();
    if n > APPROX_CAP {
        return Err(Error::Cap {
            what: "approximate degree",
            arity: n,
            cap: APPROX_CAP,
        });
    }
    let exact = degree(t)?;
    for d in 0..exact {
        if best_deviation(t, d)? <= eps + MARGIN {
            return Ok(d);
        }
    }
    Ok(exact)
}

/// `min_p max_x |p(x) - f(x)|` over multilinear `p` of degree at most `d`.
pub fn best_deviation(t: &TruthTable, d: usize) -> Result<f64> {
    let n = t.arity();
    let monomials: Vec<usize> = (0..1usize << n)
        .filter(|m| m.count_ones() as usize <= d)
        .collect();
    let k = monomials.len();
    // Variables: positive parts, negative parts, then the deviation bound.
    let mut objective = vec![0.0; 2 * k + 1];
    objective[2 * k] = 1.0;
    let mut lp = LinearProgram::minimize(objective);
    for x in 0..1usize << n {
        let fx = t.get(x) as u8 as f64;
        let mut upper = vec![0.0; 2 * k + 1];
        for (j, &m) in monomials.iter().enumerate() {
            if x & m == m {
                upper[j] = 1.0;
                upper[k + j] = -1.0;
            }
        }
        let mut lower: Vec<f64> = upper.iter().map(|v| -v).collect();
        upper[2 * k] = -1.0;
        lower[2 * k] = -1.0;
        lp.add(upper, Relation::Le, fx);
        lp.add(lower, Relation::Le, -fx);
    }
    match lp.solve() {
        Ok(Outcome::Optimal { value, .. }) => Ok(value),
        Ok(other) => Err(Error::Lp {
            degree: d,
            reason: format!("unexpected outcome {other:?}"),
        }),
        Err(reason) => Err(Error::Lp { degree: d, reason }),
    }
}
