//! Dense two-phase simplex for small linear programs over non-negative
//! variables.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    n_vars: usize,
    objective: Vec<f64>,
    rows: Vec<(Vec<f64>, Relation, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Optimal { value: f64, x: Vec<f64> },
    Infeasible,
    Unbounded,
}

const EPS: f64 = 1e-9;
const PIVOT_CAP: usize = 200_000;
const STALL_LIMIT: usize = 50;

impl LinearProgram {
    /// Minimize `objective . x` subject to the added rows and `x >= 0`.
    pub fn minimize(objective: Vec<f64>) -> Self {
        LinearProgram {
            n_vars: objective.len(),
            objective,
            rows: Vec::new(),
        }
    }

    pub fn add(&mut self, coeffs: Vec<f64>, rel: Relation, rhs: f64) {
        assert_eq!(coeffs.len(), self.n_vars);
        self.rows.push((coeffs, rel, rhs));
    }

    pub fn solve(&self) -> Result<Outcome, String> {
        let n = self.n_vars;
        let m = self.rows.len();
        let rows: Vec<(Vec<f64>, Relation, f64)> = self
            .rows
            .iter()
            .map(|(a, rel, b)| {
                if *b < 0.0 {
                    let flipped = match rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (a.iter().map(|v| -v).collect(), flipped, -b)
                } else {
                    (a.clone(), *rel, *b)
                }
            })
            .collect();
        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let width = n + n_slack + n_art;
        let mut t = Tableau {
            m,
            width,
            a: vec![0.0; m * (width + 1)],
            basis: vec![0; m],
        };
        let (mut s, mut art) = (n, n + n_slack);
        for (i, (coeffs, rel, rhs)) in rows.iter().enumerate() {
            t.row_mut(i)[..n].copy_from_slice(coeffs);
            t.row_mut(i)[width] = *rhs;
            match rel {
                Relation::Le => {
                    t.row_mut(i)[s] = 1.0;
                    t.basis[i] = s;
                    s += 1;
                }
                Relation::Ge => {
                    t.row_mut(i)[s] = -1.0;
                    t.row_mut(i)[art] = 1.0;
                    t.basis[i] = art;
                    s += 1;
                    art += 1;
                }
                Relation::Eq => {
                    t.row_mut(i)[art] = 1.0;
                    t.basis[i] = art;
                    art += 1;
                }
            }
        }
        let art_start = n + n_slack;

        if n_art > 0 {
            let mut cost = vec![0.0; width];
            cost[art_start..].iter_mut().for_each(|c| *c = 1.0);
            let allowed = vec![true; width];
            match t.optimize(&cost, &allowed)? {
                Phase::Unbounded => return Err("phase one reported unbounded".into()),
                Phase::Optimal(z) => {
                    if z > 1e-7 {
                        return Ok(Outcome::Infeasible);
                    }
                }
            }
            // Drive zero-level artificials out of the basis where possible.
            for i in 0..m {
                if t.basis[i] >= art_start {
                    if let Some(j) = (0..art_start).find(|&j| t.row(i)[j].abs() > 1e-7) {
                        t.pivot(i, j, None);
                    }
                }
            }
        }

        let mut cost = vec![0.0; width];
        cost[..n].copy_from_slice(&self.objective);
        let mut allowed = vec![true; width];
        allowed[art_start..].iter_mut().for_each(|a| *a = false);
        match t.optimize(&cost, &allowed)? {
            Phase::Unbounded => Ok(Outcome::Unbounded),
            Phase::Optimal(value) => {
                let mut x = vec![0.0; n];
                for i in 0..m {
                    if t.basis[i] < n {
                        x[t.basis[i]] = t.row(i)[width];
                    }
                }
                Ok(Outcome::Optimal { value, x })
            }
        }
    }
}

enum Phase {
    Optimal(f64),
    Unbounded,
}

struct Tableau {
    m: usize,
    width: usize,
    a: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn row(&self, i: usize) -> &[f64] {
        let w = self.width + 1;
        &self.a[i * w..(i + 1) * w]
    }

    fn row_mut(&mut self, i: usize) -> &mut [f64] {
        let w = self.width + 1;
        &mut self.a[i * w..(i + 1) * w]
    }

    /// Minimizes `cost . x` from the current basic feasible solution.
    fn optimize(&mut self, cost: &[f64], allowed: &[bool]) -> Result<Phase, String> {
        let w = self.width;
        // Reduced costs, with the objective value kept at index `w` as `-z`.
        let mut obj = vec![0.0; w + 1];
        obj[..w].copy_from_slice(cost);
        for i in 0..self.m {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for (o, a) in obj.iter_mut().zip(self.row(i)) {
                    *o -= cb * a;
                }
            }
        }
        let mut bland = false;
        let mut stall = 0usize;
        for _ in 0..PIVOT_CAP {
            let entering = if bland {
                (0..w).find(|&j| allowed[j] && obj[j] < -EPS)
            } else {
                (0..w)
                    .filter(|&j| allowed[j] && obj[j] < -EPS)
                    .min_by(|&x, &y| obj[x].total_cmp(&obj[y]))
            };
            let Some(j) = entering else {
                return Ok(Phase::Optimal(-obj[w]));
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let aij = self.row(i)[j];
                if aij > EPS {
                    let ratio = self.row(i)[w] / aij;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - EPS
                                || (ratio <= br + EPS && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            let Some((i, _)) = leave else {
                return Ok(Phase::Unbounded);
            };
            let before = obj[w];
            self.pivot(i, j, Some(&mut obj));
            if (obj[w] - before).abs() < 1e-12 {
                stall += 1;
                if stall > STALL_LIMIT {
                    bland = true;
                }
            } else {
                stall = 0;
            }
        }
        Err(format!("simplex exceeded {PIVOT_CAP} pivots"))
    }

    fn pivot(&mut self, r: usize, c: usize, obj: Option<&mut Vec<f64>>) {
        let w = self.width + 1;
        let p = self.row(r)[c];
        for v in self.row_mut(r) {
            *v /= p;
        }
        let pivot_row: Vec<f64> = self.row(r).to_vec();
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.a[i * w + c];
            if f != 0.0 {
                for (v, pr) in self.a[i * w..(i + 1) * w].iter_mut().zip(&pivot_row) {
                    *v -= f * pr;
                }
            }
        }
        if let Some(obj) = obj {
            let f = obj[c];
            if f != 0.0 {
                for (v, pr) in obj.iter_mut().zip(&pivot_row) {
                    *v -= f * pr;
                }
            }
        }
        self.basis[r] = c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_maximization() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  -> 36 at (2, 6).
        let mut lp = LinearProgram::minimize(vec![-3.0, -5.0]);
        lp.add(vec![1.0, 0.0], Relation::Le, 4.0);
        lp.add(vec![0.0, 2.0], Relation::Le, 12.0);
        lp.add(vec![3.0, 2.0], Relation::Le, 18.0);
        match lp.solve().unwrap() {
            Outcome::Optimal { value, x } => {
                assert!((value + 36.0).abs() < 1e-9);
                assert!((x[0] - 2.0).abs() < 1e-9 && (x[1] - 6.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equality_and_ge_rows() {
        // min x + y s.t. x + y >= 2, x - y = 0 -> 2.
        let mut lp = LinearProgram::minimize(vec![1.0, 1.0]);
        lp.add(vec![1.0, 1.0], Relation::Ge, 2.0);
        lp.add(vec![1.0, -1.0], Relation::Eq, 0.0);
        match lp.solve().unwrap() {
            Outcome::Optimal { value, .. } => assert!((value - 2.0).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::minimize(vec![1.0]);
        lp.add(vec![1.0], Relation::Le, 1.0);
        lp.add(vec![1.0], Relation::Ge, 2.0);
        assert_eq!(lp.solve().unwrap(), Outcome::Infeasible);

        let mut lp = LinearProgram::minimize(vec![-1.0]);
        lp.add(vec![1.0], Relation::Ge, 1.0);
        assert_eq!(lp.solve().unwrap(), Outcome::Unbounded);
    }
}
