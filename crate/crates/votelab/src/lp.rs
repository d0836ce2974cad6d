//! Exact rational linear programming via two-phase simplex with Bland's rule.
//!
//! Problem sizes in this crate are tiny (variables are mixture weights or
//! m!-vectors), so a dense tableau over `BigRational` is the right tool:
//! no scaling, no tolerances, guaranteed termination.

use num::{Signed, Zero};

use crate::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

/// Maximize `objective . x` subject to constraints, `x >= 0`.
#[derive(Debug, Clone)]
pub struct Lp {
    pub num_vars: usize,
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    /// Optimal objective value and an optimal point.
    Optimal(Rat, Vec<Rat>),
}

struct Tableau {
    // rows x cols coefficient matrix; col layout: structural | slack/artificial
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    cost: Vec<Rat>,
    cost_const: Rat,
    basis: Vec<usize>,
    num_cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.a[row][col].clone();
        for v in self.a[row].iter_mut() {
            *v /= &piv;
        }
        self.b[row] /= &piv;
        for r in 0..self.a.len() {
            if r != row && !self.a[r][col].is_zero() {
                let factor = self.a[r][col].clone();
                for c in 0..self.num_cols {
                    let delta = &factor * &self.a[row][c];
                    self.a[r][c] -= delta;
                }
                let delta = &factor * &self.b[row];
                self.b[r] -= delta;
            }
        }
        if !self.cost[col].is_zero() {
            let factor = self.cost[col].clone();
            for c in 0..self.num_cols {
                let delta = &factor * &self.a[row][c];
                self.cost[c] -= delta;
            }
            let delta = &factor * &self.b[row];
            self.cost_const -= delta;
        }
        self.basis[row] = col;
    }

    /// Runs simplex to optimality (maximization). Returns false on unbounded.
    fn optimize(&mut self, allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            // Bland: entering = lowest-index allowed column with positive reduced cost.
            let mut entering = None;
            for c in 0..self.num_cols {
                if allowed(c) && self.cost[c].is_positive() {
                    entering = Some(c);
                    break;
                }
            }
            let Some(col) = entering else {
                return true;
            };
            // Ratio test; Bland tie-break on smallest basic variable index.
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.a.len() {
                if self.a[r][col].is_positive() {
                    let ratio = &self.b[r] / &self.a[r][col];
                    match &leave {
                        None => leave = Some((r, ratio)),
                        Some((br, best)) => {
                            if ratio < *best
                                || (ratio == *best && self.basis[r] < self.basis[*br])
                            {
                                leave = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, col);
        }
    }
}

impl Lp {
    pub fn new(num_vars: usize) -> Self {
        Lp {
            num_vars,
            objective: vec![Rat::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<Rat>, rel: Rel, rhs: Rat) {
        debug_assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        let n = self.num_vars;
        let rows = self.constraints.len();

        // Normalize to b >= 0.
        let mut norm: Vec<Constraint> = Vec::with_capacity(rows);
        for c in &self.constraints {
            if c.rhs.is_negative() {
                norm.push(Constraint {
                    coeffs: c.coeffs.iter().map(|v| -v.clone()).collect(),
                    rel: match c.rel {
                        Rel::Le => Rel::Ge,
                        Rel::Eq => Rel::Eq,
                        Rel::Ge => Rel::Le,
                    },
                    rhs: -c.rhs.clone(),
                });
            } else {
                norm.push(c.clone());
            }
        }

        // Column layout: structural (n) | one slack/surplus per Le/Ge | artificials.
        let mut num_slack = 0;
        for c in &norm {
            if c.rel != Rel::Eq {
                num_slack += 1;
            }
        }
        let mut num_art = 0;
        for c in &norm {
            match c.rel {
                Rel::Le => {}
                Rel::Eq | Rel::Ge => num_art += 1,
            }
        }
        let num_cols = n + num_slack + num_art;
        let mut a = vec![vec![Rat::zero(); num_cols]; rows];
        let mut b = vec![Rat::zero(); rows];
        let mut basis = vec![usize::MAX; rows];
        let mut slack_at = n;
        let mut art_at = n + num_slack;
        let mut artificials = Vec::new();

        for (r, c) in norm.iter().enumerate() {
            for (j, v) in c.coeffs.iter().enumerate() {
                a[r][j] = v.clone();
            }
            b[r] = c.rhs.clone();
            match c.rel {
                Rel::Le => {
                    a[r][slack_at] = Rat::from_integer(1.into());
                    basis[r] = slack_at;
                    slack_at += 1;
                }
                Rel::Ge => {
                    a[r][slack_at] = Rat::from_integer((-1).into());
                    slack_at += 1;
                    a[r][art_at] = Rat::from_integer(1.into());
                    basis[r] = art_at;
                    artificials.push(art_at);
                    art_at += 1;
                }
                Rel::Eq => {
                    a[r][art_at] = Rat::from_integer(1.into());
                    basis[r] = art_at;
                    artificials.push(art_at);
                    art_at += 1;
                }
            }
        }

        let mut t = Tableau {
            a,
            b,
            cost: vec![Rat::zero(); num_cols],
            cost_const: Rat::zero(),
            basis,
            num_cols,
        };

        // Phase 1: maximize -(sum of artificials).
        if !artificials.is_empty() {
            for &j in &artificials {
                t.cost[j] = Rat::from_integer((-1).into());
            }
            // Price out basic artificials.
            for r in 0..rows {
                if artificials.contains(&t.basis[r]) {
                    let factor = t.cost[t.basis[r]].clone();
                    for c in 0..num_cols {
                        let delta = &factor * &t.a[r][c];
                        t.cost[c] -= delta;
                    }
                    let delta = &factor * &t.b[r];
                    t.cost_const -= delta;
                }
            }
            let ok = t.optimize(&|_| true);
            debug_assert!(ok, "phase 1 cannot be unbounded");
            // Phase-1 objective value is -cost_const; negative means some
            // artificial variable is stuck above zero.
            if t.cost_const.is_positive() {
                return LpOutcome::Infeasible;
            }
            // Pivot remaining artificials out of the basis where possible.
            let art_start = n + num_slack;
            for r in 0..rows {
                if t.basis[r] >= art_start {
                    if let Some(col) = (0..art_start).find(|&c| !t.a[r][c].is_zero()) {
                        t.pivot(r, col);
                    }
                }
            }
        }

        // Phase 2: original objective over non-artificial columns.
        let art_start = n + num_slack;
        t.cost = vec![Rat::zero(); num_cols];
        t.cost_const = Rat::zero();
        for j in 0..n {
            t.cost[j] = self.objective[j].clone();
        }
        for r in 0..rows {
            let bj = t.basis[r];
            if bj < num_cols && !t.cost[bj].is_zero() {
                let factor = t.cost[bj].clone();
                for c in 0..num_cols {
                    let delta = &factor * &t.a[r][c];
                    t.cost[c] -= delta;
                }
                let delta = &factor * &t.b[r];
                t.cost_const -= delta;
            }
        }
        // Redundant rows may still carry a basic artificial pinned at zero;
        // freezing artificial columns keeps them out of the optimization.
        let ok = t.optimize(&|c| c < art_start);
        if !ok {
            return LpOutcome::Unbounded;
        }

        let mut x = vec![Rat::zero(); n];
        for r in 0..rows {
            if t.basis[r] < n {
                x[t.basis[r]] = t.b[r].clone();
            }
        }
        LpOutcome::Optimal(-t.cost_const.clone(), x)
    }

    /// Convenience: is the constraint system feasible (objective ignored)?
    pub fn feasible_point(&self) -> Option<Vec<Rat>> {
        let mut probe = self.clone();
        probe.objective = vec![Rat::zero(); self.num_vars];
        match probe.solve() {
            LpOutcome::Optimal(_, x) => Some(x),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    #[test]
    fn simple_max() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = Lp::new(2);
        lp.objective = vec![rat(1), rat(1)];
        lp.constrain(vec![rat(1), rat(2)], Rel::Le, rat(4));
        lp.constrain(vec![rat(3), rat(1)], Rel::Le, rat(6));
        match lp.solve() {
            LpOutcome::Optimal(v, x) => {
                assert_eq!(v, ratio(14, 5));
                assert_eq!(x, vec![ratio(8, 5), ratio(6, 5)]);
            }
            o => panic!("unexpected {o:?}"),
        }
    }

    #[test]
    fn infeasible_system() {
        let mut lp = Lp::new(1);
        lp.constrain(vec![rat(1)], Rel::Ge, rat(2));
        lp.constrain(vec![rat(1)], Rel::Le, rat(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_objective() {
        let mut lp = Lp::new(1);
        lp.objective = vec![rat(1)];
        lp.constrain(vec![rat(-1)], Rel::Le, rat(0));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_constraints() {
        // max x s.t. x + y = 1
        let mut lp = Lp::new(2);
        lp.objective = vec![rat(1), rat(0)];
        lp.constrain(vec![rat(1), rat(1)], Rel::Eq, rat(1));
        match lp.solve() {
            LpOutcome::Optimal(v, x) => {
                assert_eq!(v, rat(1));
                assert_eq!(x[0], rat(1));
            }
            o => panic!("unexpected {o:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        // x = 1 stated twice plus a consistent sum row.
        let mut lp = Lp::new(2);
        lp.objective = vec![rat(0), rat(1)];
        lp.constrain(vec![rat(1), rat(0)], Rel::Eq, rat(1));
        lp.constrain(vec![rat(1), rat(0)], Rel::Eq, rat(1));
        lp.constrain(vec![rat(1), rat(1)], Rel::Le, rat(3));
        match lp.solve() {
            LpOutcome::Optimal(v, _) => assert_eq!(v, rat(2)),
            o => panic!("unexpected {o:?}"),
        }
    }

    #[test]
    fn degenerate_terminates() {
        // Classic degeneracy-prone instance; Bland must terminate.
        let mut lp = Lp::new(4);
        lp.objective = vec![ratio(3, 4), rat(-150), ratio(1, 50), rat(-6)];
        lp.constrain(
            vec![ratio(1, 4), rat(-60), ratio(-1, 25), rat(9)],
            Rel::Le,
            rat(0),
        );
        lp.constrain(
            vec![ratio(1, 2), rat(-90), ratio(-1, 50), rat(3)],
            Rel::Le,
            rat(0),
        );
        lp.constrain(vec![rat(0), rat(0), rat(1), rat(0)], Rel::Le, rat(1));
        match lp.solve() {
            LpOutcome::Optimal(v, _) => assert_eq!(v, ratio(1, 20)),
            o => panic!("unexpected {o:?}"),
        }
    }
}
