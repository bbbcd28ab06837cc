use std::fmt;
use std::sync::Arc;

use crate::boolean::{compose, make_named, BooleanFunction, Evaluate};
use crate::error::{Error, Result};
use crate::measures::Restriction;

const MAX_ARITY: usize = 16;

/// Partial assignments meant to be pairwise inconsistent 1-certificates
/// covering every 1-input.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateCollection {
    pub certs: Vec<Restriction>,
}

impl CertificateCollection {
    pub fn new(certs: Vec<Restriction>) -> Self {
        CertificateCollection { certs }
    }

    pub fn max_size(&self) -> usize {
        self.certs.iter().map(Restriction::len).max().unwrap_or(0)
    }

    /// Index of the first certificate `x` satisfies.
    pub fn find(&self, x: &[bool]) -> Option<usize> {
        self.certs.iter().position(|p| p.matches(x))
    }
}

/// First violation of each condition, if any.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnambiguityReport {
    /// `(certificate, input row)` where the certificate holds but `f = 0`.
    pub not_forcing: Option<(usize, usize)>,
    /// A 1-input that satisfies no certificate.
    pub uncovered: Option<usize>,
    /// Two certificates that can hold together.
    pub consistent_pair: Option<(usize, usize)>,
}

impl UnambiguityReport {
    pub fn is_valid(&self) -> bool {
        self.not_forcing.is_none() && self.uncovered.is_none() && self.consistent_pair.is_none()
    }
}

impl fmt::Display for UnambiguityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((c, row)) = self.not_forcing {
            return write!(f, "certificate {c} holds on 0-input row {row}");
        }
        if let Some(row) = self.uncovered {
            return write!(f, "1-input row {row} satisfies no certificate");
        }
        if let Some((a, b)) = self.consistent_pair {
            return write!(f, "certificates {a} and {b} are consistent");
        }
        f.write_str("valid")
    }
}

fn row_bits(row: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| (row >> i) & 1 == 1).collect()
}

pub fn validate_unambiguous(f: &BooleanFunction, u: &CertificateCollection) -> Result<UnambiguityReport> {
    let n = f.arity();
    if n > MAX_ARITY {
        return Err(Error::Cap {
            what: "unambiguity check",
            arity: n,
            cap: MAX_ARITY,
        });
    }
    if let Some(p) = u.certs.iter().find(|p| p.max_var().is_some_and(|v| v >= n)) {
        return Err(Error::Certificates(format!("{p} mentions a variable beyond arity {n}")));
    }
    let mut report = UnambiguityReport::default();
    for row in 0..1usize << n {
        let x = row_bits(row, n);
        let fx = f.eval_bits(&x);
        let hit = u.find(&x);
        if !fx && report.not_forcing.is_none() {
            if let Some(c) = hit {
                report.not_forcing = Some((c, row));
            }
        }
        if fx && hit.is_none() && report.uncovered.is_none() {
            report.uncovered = Some(row);
        }
    }
    'pairs: for a in 0..u.certs.len() {
        for b in a + 1..u.certs.len() {
            if !u.certs[a].conflicts_with(&u.certs[b]) {
                report.consistent_pair = Some((a, b));
                break 'pairs;
            }
        }
    }
    Ok(report)
}

#[derive(Debug)]
struct Desensitized {
    f: BooleanFunction,
    u: CertificateCollection,
}

impl Evaluate for Desensitized {
    fn arity(&self) -> usize {
        3 * self.f.arity()
    }

    fn eval_bits(&self, x: &[bool]) -> bool {
        let n = self.f.arity();
        let mut cert = None;
        for copy in x.chunks_exact(n) {
            if !self.f.eval_bits(copy) {
                return false;
            }
            let c = self.u.find(copy);
            if c.is_none() || (cert.is_some() && cert != c) {
                return false;
            }
            cert = c;
        }
        true
    }

    fn describe(&self) -> String {
        format!("DT({})", self.f)
    }
}

/// Three copies of `f`, accepted when all are 1-inputs satisfying the same
/// certificate of `u`.
pub fn desensitize(f: &BooleanFunction, u: &CertificateCollection) -> Result<BooleanFunction> {
    let report = validate_unambiguous(f, u)?;
    if !report.is_valid() {
        return Err(Error::Certificates(report.to_string()));
    }
    Ok(BooleanFunction::Custom(Arc::new(Desensitized {
        f: f.clone(),
        u: u.clone(),
    })))
}

/// OR of `3 max|p|` disjoint copies of the desensitized function.
pub fn sensitivity_witness(f: &BooleanFunction, u: &CertificateCollection) -> Result<BooleanFunction> {
    let dt = desensitize(f, u)?;
    let w = (3 * u.max_size()).max(1);
    Ok(compose(&make_named("OR", &[w])?, &dt))
}

/// Generators on `3n` indices from generators of `f`'s group on `n`: the
/// swaps of copies 0,1 and 1,2, and each generator applied to all copies.
pub fn desensitized_generators(base: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let swap = |a: usize, b: usize| -> Vec<usize> {
        (0..3 * n)
            .map(|i| match i / n {
                c if c == a => b * n + i % n,
                c if c == b => a * n + i % n,
                _ => i,
            })
            .collect()
    };
    let mut out = vec![swap(0, 1), swap(1, 2)];
    for g in base {
        out.push((0..3 * n).map(|i| (i / n) * n + g[i % n]).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(pairs: &[(usize, bool)]) -> Restriction {
        Restriction::from_pairs(pairs).unwrap()
    }

    #[test]
    fn validation_examples() {
        let and2 = make_named("AND", &[2]).unwrap();
        let or2 = make_named("OR", &[2]).unwrap();
        let single = CertificateCollection::new(vec![r(&[(0, true), (1, true)])]);
        assert!(validate_unambiguous(&and2, &single).unwrap().is_valid());
        let both = CertificateCollection::new(vec![r(&[(0, true)]), r(&[(1, true)])]);
        let rep = validate_unambiguous(&or2, &both).unwrap();
        assert_eq!(rep.consistent_pair, Some((0, 1)));
        let split = CertificateCollection::new(vec![r(&[(0, true)]), r(&[(0, false), (1, true)])]);
        assert!(validate_unambiguous(&or2, &split).unwrap().is_valid());
    }

    #[test]
    fn or2_desensitized_values() {
        let or2 = make_named("OR", &[2]).unwrap();
        let split = CertificateCollection::new(vec![r(&[(0, true)]), r(&[(0, false), (1, true)])]);
        let dt = desensitize(&or2, &split).unwrap();
        // Variable 0 is the first bit of each copy.
        let x = |s: &str| s.chars().map(|c| c == '1').collect::<Vec<bool>>();
        assert!(dt.eval_bits(&x("010101")));
        assert!(!dt.eval_bits(&x("011001")));
    }

    #[test]
    fn witness_width() {
        let and2 = make_named("AND", &[2]).unwrap();
        let single = CertificateCollection::new(vec![r(&[(0, true), (1, true)])]);
        assert_eq!(sensitivity_witness(&and2, &single).unwrap().arity(), 6 * 6);
    }
}
