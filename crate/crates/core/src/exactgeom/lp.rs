//! Two-phase simplex over the rationals with Bland's rule.
//!
//! Problems are in standard form: minimize `c.x` subject to `A x = b`,
//! `x >= 0`. Instances in this crate have at most a few dozen columns, so a
//! dense tableau is fine.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::rational::Rat;
use super::vector::RatVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Rat>, value: Rat },
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    obj: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let inv = Rat::one() / &self.rows[r][col];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for (x, p) in self.obj.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        self.basis[r] = col;
    }

    /// Runs simplex iterations over the first `allowed` columns.
    fn optimize(&mut self, allowed: usize) -> bool {
        let rhs = self.obj.len() - 1;
        loop {
            let Some(col) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[col].is_positive() {
                    let ratio = &row[rhs] / &row[col];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }
}

/// Minimizes `c.x` over `{x >= 0 : A x = b}`.
pub fn minimize(a: &RatMatrix, b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.nrows();
    let n = a.ncols();
    assert_eq!(b.len(), m);
    assert_eq!(c.len(), n);
    let width = n + m + 1;

    let mut rows = Vec::with_capacity(m);
    for (i, arow) in a.rows().iter().enumerate() {
        let mut row = alloc::vec![Rat::zero(); width];
        let flip = b[i].is_negative();
        for (j, x) in arow.iter().enumerate() {
            row[j] = if flip { -x } else { x.clone() };
        }
        row[n + i] = Rat::one();
        row[width - 1] = if flip { -&b[i] } else { b[i].clone() };
        rows.push(row);
    }
    // phase one: minimize the sum of artificials
    let mut obj = alloc::vec![Rat::zero(); width];
    for row in &rows {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    let mut t = Tableau { rows, obj, basis: (n..n + m).collect() };
    t.optimize(n + m);
    if !t.obj[width - 1].is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive artificials out of the basis, dropping redundant rows
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => {
                    t.pivot(r, j);
                    r += 1;
                }
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                }
            }
        } else {
            r += 1;
        }
    }
    // phase two
    let mut obj = alloc::vec![Rat::zero(); width];
    obj[..n].clone_from_slice(c);
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        if !c[bv].is_zero() {
            let f = c[bv].clone();
            for (x, p) in obj.iter_mut().zip(row) {
                *x -= &f * p;
            }
        }
    }
    t.obj = obj;
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = alloc::vec![Rat::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        x[bv] = row[width - 1].clone();
    }
    LpOutcome::Optimal { x, value: -t.obj[width - 1].clone() }
}

/// Some `x >= 0` with `A x = b`.
pub fn feasible_point(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let c = alloc::vec![Rat::zero(); a.ncols()];
    match minimize(a, b, &c) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Builder for systems with both sign-constrained and free variables.
///
/// Free variables are split into a difference of two nonnegative columns.
#[derive(Clone, Debug)]
pub struct MixedSystem {
    nonneg: Vec<bool>,
    rows: Vec<(RatVec, Rat)>,
}

impl MixedSystem {
    pub fn new(nonneg: Vec<bool>) -> Self {
        MixedSystem { nonneg, rows: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nonneg.len()
    }

    pub fn add_eq(&mut self, coeffs: RatVec, rhs: Rat) {
        assert_eq!(coeffs.dim(), self.nvars());
        self.rows.push((coeffs, rhs));
    }

    fn columns(&self) -> Vec<(usize, bool)> {
        let mut cols = Vec::new();
        for (i, &nn) in self.nonneg.iter().enumerate() {
            cols.push((i, false));
            if !nn {
                cols.push((i, true));
            }
        }
        cols
    }

    /// Minimizes `objective . x`; `None` objective means pure feasibility.
    pub fn minimize(&self, objective: Option<&RatVec>) -> LpOutcome {
        let cols = self.columns();
        let mut a = RatMatrix::zero_rows(cols.len());
        let mut b = Vec::with_capacity(self.rows.len());
        for (coeffs, rhs) in &self.rows {
            let row = cols
                .iter()
                .map(|&(i, neg)| if neg { -&coeffs.0[i] } else { coeffs.0[i].clone() })
                .collect();
            a.push_row(RatVec(row));
            b.push(rhs.clone());
        }
        let c: Vec<Rat> = match objective {
            Some(obj) => cols
                .iter()
                .map(|&(i, neg)| if neg { -&obj.0[i] } else { obj.0[i].clone() })
                .collect(),
            None => alloc::vec![Rat::zero(); cols.len()],
        };
        match minimize(&a, &b, &c) {
            LpOutcome::Optimal { x: split, value } => {
                let mut x = alloc::vec![Rat::zero(); self.nvars()];
                for (&(i, neg), v) in cols.iter().zip(split) {
                    if neg {
                        x[i] -= v;
                    } else {
                        x[i] += v;
                    }
                }
                LpOutcome::Optimal { x, value }
            }
            other => other,
        }
    }

    pub fn feasible_point(&self) -> Option<RatVec> {
        match self.minimize(None) {
            LpOutcome::Optimal { x, .. } => Some(RatVec(x)),
            _ => None,
        }
    }
}
