//! Exact rational linear programming.
//!
//! Problems are `max c^T x` subject to `a_j x <= b_j` with free variables.
//! Every program handed to [`LinearProgram::maximize`] must have a bounded
//! feasible region (callers always include box rows), which lets the solver
//! work on the dual `min b^T y, A^T y = c, y >= 0`: that tableau has one row per
//! variable instead of one per constraint, and the arrangement code only ever
//! uses a handful of variables. Pivoting follows Bland's rule, so the method
//! terminates on degenerate programs.

use crate::rational::RationalExt;

use crate::linalg;
use crate::rational::{dot, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        point: Vec<Rational>,
        value: Rational,
    },
    Infeasible,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<(Vec<Rational>, Rational)> {
        match self {
            LpOutcome::Optimal { point, value } => Some((point, value)),
            LpOutcome::Infeasible => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        Self {
            objective,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// `coeffs . x <= rhs`
    pub fn add_le(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        debug_assert_eq!(coeffs.len(), self.dim());
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }

    /// `coeffs . x >= rhs`
    pub fn add_ge(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.add_le(coeffs.into_iter().map(|c| -c).collect(), -rhs);
    }

    pub fn add_eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.add_ge(coeffs.clone(), rhs.clone());
        self.add_le(coeffs, rhs);
    }

    /// `lo <= x_i <= hi`
    pub fn add_bounds(&mut self, var: usize, lo: Rational, hi: Rational) {
        let mut unit = vec![Rational::zero(); self.dim()];
        unit[var] = Rational::one();
        self.add_ge(unit.clone(), lo);
        self.add_le(unit, hi);
    }

    pub fn maximize(&self) -> LpOutcome {
        let n = self.dim();
        if n == 0 {
            let ok = self.rhs.iter().all(|b| !b.is_negative());
            return if ok {
                LpOutcome::Optimal {
                    point: Vec::new(),
                    value: Rational::zero(),
                }
            } else {
                LpOutcome::Infeasible
            };
        }
        let mut tableau = DualTableau::new(self);
        if !tableau.phase_one() {
            return LpOutcome::Infeasible;
        }
        let Some(basis) = tableau.phase_two(&self.rhs) else {
            return LpOutcome::Infeasible;
        };
        let a: Vec<Vec<Rational>> = basis.iter().map(|&j| self.rows[j].clone()).collect();
        let b: Vec<Rational> = basis.iter().map(|&j| self.rhs[j].clone()).collect();
        let point = linalg::solve(&a, &b).expect("dual basis of a bounded program is nonsingular");
        debug_assert!(self
            .rows
            .iter()
            .zip(&self.rhs)
            .all(|(row, rhs)| dot(row, &point) <= *rhs));
        let value = dot(&self.objective, &point);
        LpOutcome::Optimal { point, value }
    }
}

/// Dense tableau for `A^T y = c, y >= 0` with one artificial per row.
struct DualTableau {
    /// `rows x (cols + 1)`, last entry is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Number of structural columns (primal constraints).
    cols: usize,
    /// Reduced costs of the current objective.
    reduced: Vec<Rational>,
}

impl DualTableau {
    fn new(lp: &LinearProgram) -> Self {
        let n = lp.dim();
        let m = lp.rows.len();
        let mut t = Vec::with_capacity(n);
        for i in 0..n {
            let negate = lp.objective[i].is_negative();
            let mut row = Vec::with_capacity(m + n + 1);
            for j in 0..m {
                let v = lp.rows[j][i].clone();
                row.push(if negate { -v } else { v });
            }
            for k in 0..n {
                row.push(if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                });
            }
            row.push(lp.objective[i].abs());
            t.push(row);
        }
        Self {
            t,
            basis: (m..m + n).collect(),
            cols: m,
            reduced: Vec::new(),
        }
    }

    fn width(&self) -> usize {
        self.t.first().map_or(0, |r| r.len() - 1)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.t[row][col].recip();
        let width = self.width();
        let nz: Vec<usize> = (0..=width).filter(|&k| !self.t[row][k].is_zero()).collect();
        for &k in &nz {
            self.t[row][k] *= &inv;
        }
        let pivot_row = std::mem::take(&mut self.t[row]);
        for r in self.t.iter_mut().chain(std::iter::once(&mut self.reduced)) {
            if r.is_empty() || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for &k in &nz {
                r[k] -= &factor * &pivot_row[k];
            }
        }
        self.t[row] = pivot_row;
        self.basis[row] = col;
    }

    /// Bland's rule ratio test; `None` when the column is unbounded.
    fn leaving_row(&self, col: usize) -> Option<usize> {
        let width = self.width();
        let mut best: Option<(usize, Rational)> = None;
        for r in 0..self.t.len() {
            let a = &self.t[r][col];
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.t[r][width] / a;
            best = match best {
                None => Some((r, ratio)),
                Some((br, bv)) => {
                    if ratio < bv || (ratio == bv && self.basis[r] < self.basis[br]) {
                        Some((r, ratio))
                    } else {
                        Some((br, bv))
                    }
                }
            };
        }
        best.map(|(r, _)| r)
    }

    /// Runs the simplex loop for `min cost^T y` over columns `< limit`.
    /// Returns `false` if unbounded.
    fn optimize(&mut self, cost: &[Rational], limit: usize) -> bool {
        let width = self.width();
        let mut reduced: Vec<Rational> = cost.to_vec();
        reduced.resize(width + 1, Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (k, v) in self.t[r].iter().enumerate() {
                if !v.is_zero() {
                    reduced[k] -= &cost[b] * v;
                }
            }
        }
        self.reduced = reduced;
        loop {
            let Some(col) = (0..limit).find(|&j| self.reduced[j].is_negative()) else {
                return true;
            };
            let Some(row) = self.leaving_row(col) else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    /// Minimizes the artificial sum; `false` if `A^T y = c` has no solution.
    fn phase_one(&mut self) -> bool {
        let width = self.width();
        let one = Rational::one();
        let cost: Vec<Rational> = (0..width)
            .map(|j| {
                if j >= self.cols {
                    one.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let bounded = self.optimize(&cost, width);
        debug_assert!(bounded, "phase one objective is bounded below");
        let residual: Rational = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= self.cols)
            .map(|(r, _)| self.t[r][width].clone())
            .fold(Rational::zero(), |a, b| a + b);
        if residual.is_positive() {
            return false;
        }
        // drive zero-level artificials out of the basis
        let mut r = 0;
        while r < self.t.len() {
            if self.basis[r] >= self.cols {
                match (0..self.cols).find(|&j| !self.t[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j),
                    None => {
                        // redundant equation
                        self.t.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        true
    }

    /// Minimizes `rhs^T y`; returns the optimal basis (primal tight rows).
    fn phase_two(&mut self, rhs: &[Rational]) -> Option<Vec<usize>> {
        let width = self.width();
        let mut cost: Vec<Rational> = rhs.to_vec();
        cost.resize(width, Rational::zero());
        if !self.optimize(&cost, self.cols) {
            return None;
        }
        Some(self.basis.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn unit_box(lp: &mut LinearProgram, lo: i64, hi: i64) {
        for i in 0..lp.dim() {
            lp.add_bounds(i, int(lo), int(hi));
        }
    }

    #[test]
    fn simple_optimum() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6, box [0,10]
        let mut lp = LinearProgram::new(vec![int(1), int(1)]);
        lp.add_le(vec![int(1), int(2)], int(4));
        lp.add_le(vec![int(3), int(1)], int(6));
        unit_box(&mut lp, 0, 10);
        let (x, v) = lp.maximize().optimal().unwrap();
        assert_eq!(x, vec![ratio(8, 5), ratio(6, 5)]);
        assert_eq!(v, ratio(14, 5));
    }

    #[test]
    fn detects_infeasibility() {
        let mut lp = LinearProgram::new(vec![int(1)]);
        lp.add_le(vec![int(1)], int(-1));
        lp.add_ge(vec![int(1)], int(1));
        unit_box(&mut lp, -5, 5);
        assert_eq!(lp.maximize(), LpOutcome::Infeasible);
    }

    #[test]
    fn negative_objective_and_equalities() {
        // min x (max -x) on the line x + y = 1 inside [-3,3]^2
        let mut lp = LinearProgram::new(vec![int(-1), int(0)]);
        lp.add_eq(vec![int(1), int(1)], int(1));
        unit_box(&mut lp, -3, 3);
        let (x, v) = lp.maximize().optimal().unwrap();
        assert_eq!(v, int(2));
        assert_eq!(x[0], int(-2));
        assert_eq!(x[1], int(3));
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // many constraints through the same optimal vertex (1,1)
        let mut lp = LinearProgram::new(vec![int(1), int(1)]);
        for k in 1..8 {
            lp.add_le(vec![int(k), int(1)], int(k + 1));
            lp.add_le(vec![int(1), int(k)], int(k + 1));
        }
        unit_box(&mut lp, 0, 5);
        let (x, v) = lp.maximize().optimal().unwrap();
        assert_eq!(v, int(2));
        assert_eq!(x, vec![int(1), int(1)]);
    }

    #[test]
    fn zero_objective_gives_feasible_point() {
        let mut lp = LinearProgram::new(vec![int(0), int(0), int(0)]);
        lp.add_ge(vec![int(1), int(1), int(1)], int(2));
        unit_box(&mut lp, 0, 1);
        let (x, _) = lp.maximize().optimal().unwrap();
        assert!(x.iter().cloned().fold(int(0), |a, b| a + b) >= int(2));
    }
}
