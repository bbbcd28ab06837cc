//! Exact complexity measures of small truth tables.

mod approx;
mod certificate;
mod degree;
pub mod lp;
mod query;
mod sensitivity;
mod spectral;
mod subcube;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use approx::{approx_degree, best_deviation, APPROX_CAP, DEFAULT_EPS};
pub use certificate::{certificate_complexity, certificate_sizes, CERTIFICATE_CAP};
pub use degree::{degree, mobius_coefficients, DEGREE_CAP};
pub use query::{deterministic_qc, QUERY_CAP};
pub use sensitivity::{
    block_sensitivity, block_sensitivity_at, minimal_sensitive_blocks, sensitivity, BLOCK_CAP,
    SENSITIVITY_CAP,
};
pub use spectral::{spectral_sensitivity, DEFAULT_TOL, ITERATION_CAP, SPECTRAL_CAP};

use crate::boolean::TruthTable;
use crate::error::{Error, Result};

/// A partial assignment: some variables fixed, the rest free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Restriction {
    assigned: BTreeMap<usize, bool>,
}

impl Restriction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(usize, bool)]) -> Result<Self> {
        let mut r = Restriction::new();
        for &(i, v) in pairs {
            if r.assigned.insert(i, v).is_some() {
                return Err(Error::Parse(format!("variable {i} assigned twice")));
            }
        }
        Ok(r)
    }

    pub fn assign(&mut self, var: usize, value: bool) {
        self.assigned.insert(var, value);
    }

    pub fn get(&self, var: usize) -> Option<bool> {
        self.assigned.get(&var).copied()
    }

    pub fn len(&self) -> usize {
        self.assigned.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assigned.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.assigned.iter().map(|(&i, &v)| (i, v))
    }

    pub fn max_var(&self) -> Option<usize> {
        self.assigned.keys().next_back().copied()
    }

    /// Whether `x` agrees with every fixed variable.
    pub fn matches(&self, x: &[bool]) -> bool {
        self.assigned.iter().all(|(&i, &v)| x[i] == v)
    }

    pub fn matches_row(&self, row: usize) -> bool {
        self.assigned
            .iter()
            .all(|(&i, &v)| ((row >> i) & 1 == 1) == v)
    }

    /// Some variable is fixed to different values by the two restrictions.
    pub fn conflicts_with(&self, other: &Restriction) -> bool {
        self.assigned
            .iter()
            .any(|(i, v)| other.assigned.get(i).is_some_and(|w| w != v))
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, v)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{}={}", i + 1, v as u8)?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    D,
    S,
    S0,
    S1,
    Bs,
    C,
    C0,
    C1,
    Deg,
    Lambda,
    Adeg,
}

impl Measure {
    pub const ALL: [Measure; 11] = [
        Measure::D,
        Measure::S,
        Measure::S0,
        Measure::S1,
        Measure::Bs,
        Measure::C,
        Measure::C0,
        Measure::C1,
        Measure::Deg,
        Measure::Lambda,
        Measure::Adeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::D => "D",
            Measure::S => "s",
            Measure::S0 => "s0",
            Measure::S1 => "s1",
            Measure::Bs => "bs",
            Measure::C => "C",
            Measure::C0 => "C0",
            Measure::C1 => "C1",
            Measure::Deg => "deg",
            Measure::Lambda => "lambda",
            Measure::Adeg => "adeg",
        }
    }

    pub fn parse_list(s: &str) -> Result<Vec<Measure>> {
        s.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse())
            .collect()
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown measure `{s}`")))
    }
}

/// Measures of one function; `None` marks a measure that was not requested
/// or whose arity cap was exceeded.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MeasureReport {
    pub arity: usize,
    pub d: Option<usize>,
    pub s: Option<usize>,
    pub s0: Option<usize>,
    pub s1: Option<usize>,
    pub bs: Option<usize>,
    pub c: Option<usize>,
    pub c0: Option<usize>,
    pub c1: Option<usize>,
    pub deg: Option<usize>,
    pub lambda: Option<f64>,
    pub adeg: Option<usize>,
}

impl MeasureReport {
    pub fn value(&self, m: Measure) -> Option<String> {
        let int = |v: Option<usize>| v.map(|x| x.to_string());
        match m {
            Measure::D => int(self.d),
            Measure::S => int(self.s),
            Measure::S0 => int(self.s0),
            Measure::S1 => int(self.s1),
            Measure::Bs => int(self.bs),
            Measure::C => int(self.c),
            Measure::C0 => int(self.c0),
            Measure::C1 => int(self.c1),
            Measure::Deg => int(self.deg),
            Measure::Lambda => self.lambda.map(|l| format!("{l:.6}")),
            Measure::Adeg => int(self.adeg),
        }
    }

    /// `name=value` pairs separated by spaces; absent values print as `NA`.
    pub fn line(&self, measures: &[Measure]) -> String {
        measures
            .iter()
            .map(|&m| format!("{}={}", m.name(), self.value(m).unwrap_or_else(|| "NA".into())))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Checks `s <= bs <= C <= D <= n`, `deg <= D`, `adeg <= deg` and
    /// `lambda <= s` on the fields that are present; returns the violated
    /// relations.
    pub fn order_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let mut le = |a: Option<usize>, b: Option<usize>, what: &str| {
            if let (Some(a), Some(b)) = (a, b) {
                if a > b {
                    bad.push(format!("{what}: {a} > {b}"));
                }
            }
        };
        le(self.s, self.bs, "s <= bs");
        le(self.bs, self.c, "bs <= C");
        le(self.c, self.d, "C <= D");
        le(self.d, Some(self.arity), "D <= n");
        le(self.deg, self.d, "deg <= D");
        le(self.adeg, self.deg, "adeg <= deg");
        if let (Some(l), Some(s)) = (self.lambda, self.s) {
            if l > s as f64 + 1e-6 {
                bad.push(format!("lambda <= s: {l} > {s}"));
            }
        }
        bad
    }
}

/// Computes the requested measures, leaving out those whose cap the arity
/// exceeds.
pub fn measure_report(t: &TruthTable, measures: &[Measure]) -> Result<MeasureReport> {
    let n = t.arity();
    let wants = |ms: &[Measure]| ms.iter().any(|m| measures.contains(m));
    let mut r = MeasureReport {
        arity: n,
        ..Default::default()
    };
    if wants(&[Measure::D]) && n <= QUERY_CAP {
        r.d = Some(deterministic_qc(t)?);
    }
    if wants(&[Measure::S, Measure::S0, Measure::S1]) && n <= SENSITIVITY_CAP {
        let (s, s0, s1) = sensitivity(t)?;
        r.s = Some(s);
        r.s0 = Some(s0);
        r.s1 = Some(s1);
    }
    if wants(&[Measure::Bs]) && n <= BLOCK_CAP {
        r.bs = Some(block_sensitivity(t)?);
    }
    if wants(&[Measure::C, Measure::C0, Measure::C1]) && n <= CERTIFICATE_CAP {
        let (c, c0, c1) = certificate_complexity(t)?;
        r.c = Some(c);
        r.c0 = Some(c0);
        r.c1 = Some(c1);
    }
    if wants(&[Measure::Deg]) && n <= DEGREE_CAP {
        r.deg = Some(degree(t)?);
    }
    if wants(&[Measure::Lambda]) && n <= SPECTRAL_CAP {
        r.lambda = Some(spectral_sensitivity(t, DEFAULT_TOL)?);
    }
    if wants(&[Measure::Adeg]) && n <= APPROX_CAP {
        r.adeg = Some(approx_degree(t, DEFAULT_EPS)?);
    }
    Ok(r)
}
