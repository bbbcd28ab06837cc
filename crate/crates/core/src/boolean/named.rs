use std::fmt;

use crate::error::{Error, Result};

/// The built-in base functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Named {
    And(usize),
    Or(usize),
    Parity(usize),
    /// 1 iff more than half of the inputs are 1.
    Majority(usize),
    /// Standard two-input NAND.
    Nand,
    /// Two-input gate that is 0 iff its inputs differ (an XNOR).
    Xnor,
    /// Three inputs, 1 iff they are not all equal.
    Nw,
    /// `k` groups of `k` bits; 1 iff some group has exactly two ones, sitting
    /// on an aligned pair `(2j, 2j+1)`.
    Rub(usize),
    /// `n` bits in `n / (2 sqrt n)` groups of `2 sqrt n`; 1 iff at least
    /// `sqrt n` ones, all inside one group.
    Gss1(usize),
    /// Edge indicators of the complete graph on `t` vertices (lexicographic
    /// edge order); 1 iff the edge set is nonempty and every edge shares a
    /// common vertex.
    Gss2 { t: usize },
    /// `count` elements of `width` bits each (little-endian); 1 iff some `k`
    /// distinct elements sum to 0 modulo `2^width`.
    KSum { count: usize, k: usize, width: usize },
    Identity,
    Const { arity: usize, value: bool },
}

impl Named {
    pub fn arity(&self) -> usize {
        match *self {
            Named::And(n) | Named::Or(n) | Named::Parity(n) | Named::Majority(n) => n,
            Named::Nand | Named::Xnor => 2,
            Named::Nw => 3,
            Named::Rub(k) => k * k,
            Named::Gss1(n) => n,
            Named::Gss2 { t } => t * (t - 1) / 2,
            Named::KSum { count, width, .. } => count * width,
            Named::Identity => 1,
            Named::Const { arity, .. } => arity,
        }
    }

    pub fn build(name: &str, params: &[usize]) -> Result<Named> {
        let upper = name.to_ascii_uppercase();
        let want = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::params(
                    &upper,
                    format!("expected {n} parameter(s), got {}", params.len()),
                ))
            }
        };
        let positive = |n: usize| -> Result<usize> {
            if n == 0 {
                Err(Error::params(&upper, "arity must be positive"))
            } else {
                Ok(n)
            }
        };
        let named = match upper.as_str() {
            "AND" => {
                want(1)?;
                Named::And(positive(params[0])?)
            }
            "OR" => {
                want(1)?;
                Named::Or(positive(params[0])?)
            }
            "PARITY" | "XOR" => {
                want(1)?;
                Named::Parity(positive(params[0])?)
            }
            "MAJORITY" | "MAJ" => {
                want(1)?;
                Named::Majority(positive(params[0])?)
            }
            "NAND" => {
                if !(params.is_empty() || params == [2]) {
                    return Err(Error::params(&upper, "NAND takes no parameter (or 2)"));
                }
                Named::Nand
            }
            "XNOR" => {
                if !(params.is_empty() || params == [2]) {
                    return Err(Error::params(&upper, "takes no parameter (or 2)"));
                }
                Named::Xnor
            }
            "NW" => {
                want(0)?;
                Named::Nw
            }
            "RUB" => {
                want(1)?;
                if params[0] < 2 {
                    return Err(Error::params(&upper, "k must be at least 2"));
                }
                Named::Rub(params[0])
            }
            "GSS1" => {
                want(1)?;
                let n = params[0];
                let s = isqrt(n);
                if n == 0 || s * s != n || !n.is_multiple_of(2) {
                    return Err(Error::params(&upper, "n must be an even perfect square"));
                }
                Named::Gss1(n)
            }
            "GSS2" => {
                want(1)?;
                let n = params[0];
                let t = (2..=n + 1).find(|t| t * (t - 1) / 2 >= n).unwrap_or(0);
                if n == 0 || t * (t - 1) / 2 != n {
                    return Err(Error::params(&upper, "n must equal C(t,2) for some t >= 2"));
                }
                Named::Gss2 { t }
            }
            "KSUM" => {
                want(3)?;
                let (count, k, width) = (params[0], params[1], params[2]);
                if count == 0 || width == 0 || k == 0 || k > count || width > 20 {
                    return Err(Error::params(
                        &upper,
                        "need count >= k >= 1 and 1 <= width <= 20",
                    ));
                }
                Named::KSum { count, k, width }
            }
            "ID" => {
                want(0)?;
                Named::Identity
            }
            "CONST0" | "ZERO" => {
                want(1)?;
                Named::Const {
                    arity: params[0],
                    value: false,
                }
            }
            "CONST1" | "ONE" => {
                want(1)?;
                Named::Const {
                    arity: params[0],
                    value: true,
                }
            }
            _ => return Err(Error::UnknownFunction(name.to_string())),
        };
        Ok(named)
    }

    pub fn eval(&self, x: &[bool]) -> bool {
        debug_assert_eq!(x.len(), self.arity());
        let weight = || x.iter().filter(|&&b| b).count();
        match *self {
            Named::And(_) => x.iter().all(|&b| b),
            Named::Or(_) => x.iter().any(|&b| b),
            Named::Parity(_) => weight() % 2 == 1,
            Named::Majority(n) => 2 * weight() > n,
            Named::Nand => !(x[0] && x[1]),
            Named::Xnor => x[0] == x[1],
            Named::Nw => !(x[0] == x[1] && x[1] == x[2]),
            Named::Rub(k) => x.chunks(k).any(rub_group),
            Named::Gss1(n) => {
                let s = isqrt(n);
                let group = 2 * s;
                let w = weight();
                w >= s && x.chunks(group).filter(|g| g.iter().any(|&b| b)).count() == 1
            }
            Named::Gss2 { t } => {
                let edges = edge_list(t);
                let present: Vec<(usize, usize)> = edges
                    .iter()
                    .zip(x)
                    .filter(|(_, &b)| b)
                    .map(|(&e, _)| e)
                    .collect();
                if present.is_empty() {
                    return false;
                }
                let (a, b) = present[0];
                [a, b]
                    .iter()
                    .any(|&v| present.iter().all(|&(p, q)| p == v || q == v))
            }
            Named::KSum { count, k, width } => {
                let values: Vec<usize> = (0..count)
                    .map(|j| {
                        x[j * width..(j + 1) * width]
                            .iter()
                            .enumerate()
                            .fold(0usize, |acc, (i, &b)| acc | ((b as usize) << i))
                    })
                    .collect();
                k_subset_sums_to_zero(&values, k, 1 << width)
            }
            Named::Identity => x[0],
            Named::Const { value, .. } => value,
        }
    }
}

fn rub_group(g: &[bool]) -> bool {
    g.iter().filter(|&&b| b).count() == 2
        && g.chunks_exact(2).any(|pair| pair[0] && pair[1])
}

/// Edges of the complete graph on `t` vertices in lexicographic order.
pub fn edge_list(t: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(t * t.saturating_sub(1) / 2);
    for a in 0..t {
        for b in a + 1..t {
            v.push((a, b));
        }
    }
    v
}

/// Whether `k` distinct entries of `values` sum to 0 modulo `modulus`.
pub fn k_subset_sums_to_zero(values: &[usize], k: usize, modulus: usize) -> bool {
    if k == 0 {
        return true;
    }
    if values.len() < k {
        return false;
    }
    // reach[c][r]: some c of the elements seen so far sum to r.
    let mut reach = vec![vec![false; modulus]; k + 1];
    reach[0][0] = true;
    for &v in values {
        let v = v % modulus;
        for c in (0..k).rev() {
            let (lo, hi) = reach.split_at_mut(c + 1);
            let src = &lo[c];
            let dst = &mut hi[0];
            for r in 0..modulus {
                if src[r] {
                    dst[(r + v) % modulus] = true;
                }
            }
        }
    }
    reach[k][0]
}

pub(crate) fn isqrt(n: usize) -> usize {
    let mut s = (n as f64).sqrt() as usize;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Named::And(n) => write!(f, "AND:{n}"),
            Named::Or(n) => write!(f, "OR:{n}"),
            Named::Parity(n) => write!(f, "PARITY:{n}"),
            Named::Majority(n) => write!(f, "MAJORITY:{n}"),
            Named::Nand => write!(f, "NAND"),
            Named::Xnor => write!(f, "XNOR"),
            Named::Nw => write!(f, "NW"),
            Named::Rub(k) => write!(f, "RUB:{k}"),
            Named::Gss1(n) => write!(f, "GSS1:{n}"),
            Named::Gss2 { t } => write!(f, "GSS2:{}", t * (t - 1) / 2),
            Named::KSum { count, k, width } => write!(f, "KSUM:{count},{k},{width}"),
            Named::Identity => write!(f, "ID"),
            Named::Const { arity, value } => {
                write!(f, "{}:{arity}", if value { "CONST1" } else { "CONST0" })
            }
        }
    }
}
