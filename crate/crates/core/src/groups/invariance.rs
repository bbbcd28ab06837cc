use std::collections::BTreeMap;

use rayon::prelude::*;

use super::action::{Generator, GeneratorClass, GroupAction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub generator: Generator,
    pub input: usize,
}

#[derive(Clone, Debug, Default)]
pub struct InvarianceReport {
    pub checks: usize,
    pub per_class: BTreeMap<GeneratorClass, usize>,
    pub violations: Vec<Violation>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: InvarianceReport) {
        self.checks += other.checks;
        for (c, k) in other.per_class {
            *self.per_class.entry(c).or_default() += k;
        }
        self.violations.extend(other.violations);
    }
}

/// Checks `f(g(x)) = f(x)` for every input and each of its generators;
/// `cases[i]` lists the generators tried on `inputs[i]`.
pub fn invariance_check<F>(
    action: &GroupAction,
    f: F,
    inputs: &[Vec<bool>],
    cases: &[Vec<Generator>],
) -> InvarianceReport
where
    F: Fn(&[bool]) -> bool + Sync,
{
    let partial: Vec<InvarianceReport> = inputs
        .par_iter()
        .zip(cases.par_iter())
        .enumerate()
        .map(|(i, (x, gens))| {
            let mut r = InvarianceReport::default();
            let fx = f(x);
            for &g in gens {
                let y = action.apply_input(g, x);
                r.checks += 1;
                *r.per_class.entry(action.class(g)).or_default() += 1;
                if f(&y) != fx {
                    r.violations.push(Violation { generator: g, input: i });
                }
            }
            r
        })
        .collect();
    let mut out = InvarianceReport::default();
    for r in partial {
        out.merge(r);
    }
    out
}
