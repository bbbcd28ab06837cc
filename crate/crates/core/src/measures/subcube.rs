//! Ternary indexing of subcubes: digit `i` of a base-3 index is the value of
//! variable `i` (0 or 1) or 2 when the variable is free.

use crate::boolean::TruthTable;

pub(crate) const MIXED: u8 = 2;

pub(crate) fn pow3(n: usize) -> Vec<usize> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(1usize);
    for i in 0..n {
        p.push(p[i] * 3);
    }
    p
}

/// Value of `f` on every subcube: 0 or 1 when constant, [`MIXED`] otherwise.
pub(crate) fn constancy(t: &TruthTable) -> Vec<u8> {
    let n = t.arity();
    let p3 = pow3(n);
    let total = p3[n];
    let mut val = vec![0u8; total];
    let mut digits = vec![0u8; n];
    for sigma in 0..total {
        match digits.iter().position(|&d| d == 2) {
            None => {
                let row = digits
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (i, &d)| acc | ((d as usize) << i));
                val[sigma] = t.get(row) as u8;
            }
            Some(i) => {
                let a = val[sigma - 2 * p3[i]];
                let b = val[sigma - p3[i]];
                val[sigma] = if a == b { a } else { MIXED };
            }
        }
        increment(&mut digits);
    }
    val
}

pub(crate) fn increment(digits: &mut [u8]) {
    for d in digits.iter_mut() {
        if *d == 2 {
            *d = 0;
        } else {
            *d += 1;
            return;
        }
    }
}

pub(crate) fn decrement(digits: &mut [u8]) {
    for d in digits.iter_mut() {
        if *d == 0 {
            *d = 2;
        } else {
            *d -= 1;
            return;
        }
    }
}

/// Ternary index of the point `row`.
pub(crate) fn point_index(row: usize, p3: &[usize]) -> usize {
    let n = p3.len() - 1;
    (0..n).map(|i| ((row >> i) & 1) * p3[i]).sum()
}
