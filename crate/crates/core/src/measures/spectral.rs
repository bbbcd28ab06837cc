use crate::boolean::TruthTable;
use crate::error::{Error, Result};

pub const SPECTRAL_CAP: usize = 20;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const ITERATION_CAP: usize = 100_000;

/// Largest eigenvalue of the sensitivity graph (`x ~ x^i` iff `f(x) != f(x^i)`).
///
/// Power iteration on `A + I` from the all-ones vector; the shift keeps the
/// bipartite spectrum from oscillating. Stops when successive Rayleigh
/// quotients differ by less than `tol`.
pub fn spectral_sensitivity(t: &TruthTable, tol: f64) -> Result<f64> {
    let n = t.arity();
    if n > SPECTRAL_CAP {
        return Err(Error::Cap {
            what: "spectral sensitivity",
            arity: n,
            cap: SPECTRAL_CAP,
        });
    }
    let size = t.rows();
    let neighbours: Vec<u32> = (0..size)
        .map(|x| {
            let v = t.get(x);
            (0..n).fold(0u32, |acc, i| acc | (((t.get(x ^ (1 << i)) != v) as u32) << i))
        })
        .collect();
    let mut v = vec![1.0 / (size as f64).sqrt(); size];
    let mut w = vec![0.0; size];
    let mut previous = f64::NAN;
    for _ in 0..ITERATION_CAP {
        for x in 0..size {
            let mut acc = v[x];
            let mut m = neighbours[x];
            while m != 0 {
                let i = m.trailing_zeros();
                acc += v[x ^ (1 << i)];
                m &= m - 1;
            }
            w[x] = acc;
        }
        let rq: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        if (rq - previous).abs() < tol {
            return Ok((rq - 1.0).max(0.0));
        }
        previous = rq;
        let norm = w.iter().map(|a| a * a).sum::<f64>().sqrt();
        for (a, b) in v.iter_mut().zip(&w) {
            *a = b / norm;
        }
    }
    Err(Error::NoConvergence(ITERATION_CAP))
}
