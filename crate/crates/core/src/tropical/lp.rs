//! Two-phase tableau simplex over exact rationals with Bland's rule.
//!
//! Solves `min ⟨c, x⟩` subject to `A x ≤ b` with `x` free.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: BigRational, point: Vec<BigRational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    /// Reduced costs, last entry holds minus the objective value.
    obj: Vec<BigRational>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = &*v - &f * p;
                }
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for (v, p) in self.obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = &*v - &f * p;
                }
            }
        }
        self.basis[r] = col;
    }

    fn set_objective(&mut self, cost: &[BigRational]) {
        let mut obj: Vec<BigRational> = cost.to_vec();
        obj.push(BigRational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(row) {
                *o = &*o - cb * v;
            }
        }
        self.obj = obj;
    }

    /// Bland's rule iterations over the columns `allowed`. Returns false on
    /// unboundedness.
    fn run(&mut self, allowed: usize) -> bool {
        loop {
            let Some(col) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(BigRational, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[col].is_positive() {
                    let ratio = &row[self.ncols] / &row[col];
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            match best {
                Some((_, r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

pub fn minimize(cost: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> LpOutcome {
    let n = cost.len();
    let m = a.len();
    // columns: x⁺ (n), x⁻ (n), slacks (m), artificials (one per negative rhs)
    let needs_art: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let nstruct = 2 * n + m;
    let ncols = nstruct + needs_art.len();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![BigRational::zero(); ncols + 1];
        let sign = if b[i].is_negative() { -BigRational::one() } else { BigRational::one() };
        for j in 0..n {
            row[j] = &sign * &a[i][j];
            row[n + j] = -&sign * &a[i][j];
        }
        row[2 * n + i] = sign.clone();
        row[ncols] = &sign * &b[i];
        match needs_art.iter().position(|&k| k == i) {
            Some(k) => {
                row[nstruct + k] = BigRational::one();
                basis.push(nstruct + k);
            }
            None => basis.push(2 * n + i),
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, obj: Vec::new(), ncols };

    if !needs_art.is_empty() {
        let mut phase1 = vec![BigRational::zero(); ncols];
        for c in phase1.iter_mut().skip(nstruct) {
            *c = BigRational::one();
        }
        t.set_objective(&phase1);
        t.run(ncols);
        if !t.obj[ncols].is_zero() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= nstruct {
                match (0..nstruct).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut full_cost = vec![BigRational::zero(); ncols];
    for j in 0..n {
        full_cost[j] = cost[j].clone();
        full_cost[n + j] = -&cost[j];
    }
    t.set_objective(&full_cost);
    if !t.run(nstruct) {
        return LpOutcome::Unbounded;
    }
    let mut vals = vec![BigRational::zero(); ncols];
    for (row, &bcol) in t.rows.iter().zip(&t.basis) {
        vals[bcol] = row[ncols].clone();
    }
    let point: Vec<BigRational> = (0..n).map(|j| &vals[j] - &vals[n + j]).collect();
    let value = point.iter().zip(cost).map(|(x, c)| x * c).sum();
    LpOutcome::Optimal { value, point }
}
