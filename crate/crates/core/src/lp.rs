//! Exact primal simplex over rationals.
//!
//! Solves `max c·x` subject to `A x ≤ b`, `x ≥ 0`, with `b ≥ 0`, so the
//! all-slack basis is feasible and no phase one is needed. The basis inverse
//! is kept dense (the row count is the vertex count, which is small) while
//! columns stay sparse. Entering and leaving variables follow Bland's rule,
//! which rules out cycling and makes the final basis deterministic.

use num_traits::{Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct LinearProgram {
    rows: usize,
    objective: Vec<Rational>,
    columns: Vec<Vec<(usize, Rational)>>,
    rhs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    /// One entry per structural column.
    pub primal: Vec<Rational>,
    /// One entry per row; an optimal solution of the dual LP.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

impl LinearProgram {
    pub fn new(rhs: Vec<Rational>) -> Result<Self> {
        if rhs.iter().any(|b| b.is_negative()) {
            return Err(invalid("right-hand side must be nonnegative"));
        }
        Ok(LinearProgram { rows: rhs.len(), objective: Vec::new(), columns: Vec::new(), rhs })
    }

    /// Adds a structural column with objective coefficient `cost` and the
    /// given sparse entries `(row, coefficient)`.
    pub fn add_column(&mut self, cost: Rational, entries: Vec<(usize, Rational)>) -> Result<usize> {
        if let Some((r, _)) = entries.iter().find(|(r, _)| *r >= self.rows) {
            return Err(invalid(format!("row {r} out of range")));
        }
        self.objective.push(cost);
        self.columns.push(entries.into_iter().filter(|(_, a)| !a.is_zero()).collect());
        Ok(self.columns.len() - 1)
    }

    pub fn solve(&self) -> Result<LpSolution> {
        Tableau::new(self).run()
    }
}

struct Tableau<'a> {
    lp: &'a LinearProgram,
    /// Variable index basic in each row; slacks are `cols + row`.
    basic: Vec<usize>,
    is_basic: Vec<bool>,
    binv: Vec<Vec<Rational>>,
    values: Vec<Rational>,
}

impl<'a> Tableau<'a> {
    fn new(lp: &'a LinearProgram) -> Self {
        let m = lp.rows;
        let cols = lp.columns.len();
        let mut binv = vec![vec![Rational::zero(); m]; m];
        for (i, row) in binv.iter_mut().enumerate() {
            row[i] = Rational::from_integer(1.into());
        }
        let mut is_basic = vec![false; cols + m];
        for flag in &mut is_basic[cols..] {
            *flag = true;
        }
        Tableau {
            lp,
            basic: (cols..cols + m).collect(),
            is_basic,
            binv,
            values: lp.rhs.clone(),
        }
    }

    fn cost(&self, var: usize) -> Rational {
        self.lp.objective.get(var).cloned().unwrap_or_else(Rational::zero)
    }

    fn duals(&self) -> Vec<Rational> {
        let m = self.lp.rows;
        let mut y = vec![Rational::zero(); m];
        for (i, &var) in self.basic.iter().enumerate() {
            let c = self.cost(var);
            if c.is_zero() {
                continue;
            }
            for (yj, bij) in y.iter_mut().zip(&self.binv[i]) {
                if !bij.is_zero() {
                    *yj += &c * bij;
                }
            }
        }
        y
    }

    /// Lowest-index nonbasic variable with positive reduced cost.
    fn entering(&self, y: &[Rational]) -> Option<usize> {
        let cols = self.lp.columns.len();
        for j in 0..cols {
            if self.is_basic[j] {
                continue;
            }
            let mut d = self.lp.objective[j].clone();
            for (r, a) in &self.lp.columns[j] {
                if !y[*r].is_zero() {
                    d -= &y[*r] * a;
                }
            }
            if d.is_positive() {
                return Some(j);
            }
        }
        (0..self.lp.rows).find(|&i| !self.is_basic[cols + i] && y[i].is_negative()).map(|i| cols + i)
    }

    fn column(&self, var: usize) -> Vec<Rational> {
        let m = self.lp.rows;
        let cols = self.lp.columns.len();
        let mut alpha = vec![Rational::zero(); m];
        if var >= cols {
            let r = var - cols;
            for (i, a) in alpha.iter_mut().enumerate() {
                *a = self.binv[i][r].clone();
            }
        } else {
            for (i, a) in alpha.iter_mut().enumerate() {
                for (r, coef) in &self.lp.columns[var] {
                    let b = &self.binv[i][*r];
                    if !b.is_zero() {
                        *a += b * coef;
                    }
                }
            }
        }
        alpha
    }

    fn leaving(&self, alpha: &[Rational]) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, a) in alpha.iter().enumerate() {
            if !a.is_positive() {
                continue;
            }
            let theta = &self.values[i] / a;
            let better = match &best {
                None => true,
                Some((bi, bt)) => theta < *bt || (theta == *bt && self.basic[i] < self.basic[*bi]),
            };
            if better {
                best = Some((i, theta));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, row: usize, var: usize, alpha: &[Rational]) {
        let piv = alpha[row].clone();
        for x in self.binv[row].iter_mut() {
            if !x.is_zero() {
                *x /= &piv;
            }
        }
        self.values[row] /= &piv;
        let pivot_row = self.binv[row].clone();
        let pivot_value = self.values[row].clone();
        for (i, a) in alpha.iter().enumerate() {
            if i == row || a.is_zero() {
                continue;
            }
            for (x, p) in self.binv[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= a * p;
                }
            }
            self.values[i] -= a * &pivot_value;
        }
        self.is_basic[self.basic[row]] = false;
        self.is_basic[var] = true;
        self.basic[row] = var;
    }

    fn run(mut self) -> Result<LpSolution> {
        let mut pivots = 0;
        loop {
            let y = self.duals();
            let Some(var) = self.entering(&y) else {
                let cols = self.lp.columns.len();
                let mut primal = vec![Rational::zero(); cols];
                for (i, &b) in self.basic.iter().enumerate() {
                    if b < cols {
                        primal[b] = self.values[i].clone();
                    }
                }
                let value = primal
                    .iter()
                    .zip(&self.lp.objective)
                    .fold(Rational::zero(), |acc, (x, c)| acc + x * c);
                return Ok(LpSolution { value, primal, dual: y, pivots });
            };
            let alpha = self.column(var);
            let row = self.leaving(&alpha).ok_or(Error::Unbounded)?;
            self.pivot(row, var, &alpha);
            pivots += 1;
        }
    }
}
