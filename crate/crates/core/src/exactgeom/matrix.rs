use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::rational::Rat;
use super::vector::RatVec;
use super::GeomError;

/// Dense rectangular matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    ncols: usize,
    rows: Vec<RatVec>,
}

/// Reduced row echelon form plus pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<RatVec>,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zero_rows(ncols: usize) -> Self {
        RatMatrix { ncols, rows: Vec::new() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<RatVec>) -> Result<Self, GeomError> {
        if rows.iter().any(|r| r.dim() != ncols) {
            return Err(GeomError::Ragged);
        }
        Ok(RatMatrix { ncols, rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = RatVec::zeros(n);
                r.0[i] = Rat::one();
                r
            })
            .collect();
        RatMatrix { ncols: n, rows }
    }

    pub fn push_row(&mut self, row: RatVec) {
        assert_eq!(row.dim(), self.ncols, "row length must match column count");
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[RatVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.rows[r].0[c]
    }

    pub fn transpose(&self) -> RatMatrix {
        let rows = (0..self.ncols)
            .map(|c| RatVec(self.rows.iter().map(|r| r.0[c].clone()).collect()))
            .collect();
        RatMatrix { ncols: self.rows.len(), rows }
    }

    pub fn mul_vec(&self, x: &RatVec) -> RatVec {
        RatVec(self.rows.iter().map(|r| r.dot(x)).collect())
    }

    /// Gauss-Jordan elimination with exact pivots.
    pub fn echelon(&self) -> Echelon {
        let mut rows: Vec<RatVec> = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.ncols {
            let Some(p) = (next..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
                continue;
            };
            rows.swap(next, p);
            let inv = Rat::one() / &rows[next].0[col];
            rows[next] = rows[next].scaled(&inv);
            for r in 0..rows.len() {
                if r != next && !rows[r].0[col].is_zero() {
                    let factor = -rows[r].0[col].clone();
                    rows[r] = rows[r].add_scaled(&factor, &rows[next]);
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        Echelon { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<RatVec> {
        let ech = self.echelon();
        let mut is_pivot = alloc::vec![false; self.ncols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = RatVec::zeros(self.ncols);
                x.0[free] = Rat::one();
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    x.0[p] = -row.0[free].clone();
                }
                x
            })
            .collect()
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &RatVec) -> Option<RatVec> {
        assert_eq!(b.dim(), self.nrows());
        let augmented = RatMatrix {
            ncols: self.ncols + 1,
            rows: self
                .rows
                .iter()
                .zip(&b.0)
                .map(|(r, bi)| {
                    let mut v = r.0.clone();
                    v.push(bi.clone());
                    RatVec(v)
                })
                .collect(),
        };
        let ech = augmented.echelon();
        if ech.pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = RatVec::zeros(self.ncols);
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            x.0[p] = row.0[self.ncols].clone();
        }
        Some(x)
    }
}

/// Exact rank over the rationals. The empty matrix has rank zero.
pub fn rank(m: &RatMatrix) -> usize {
    m.rank()
}

/// Rank of a list of vectors of common dimension `dim`.
pub(crate) fn rank_of(dim: usize, vectors: impl IntoIterator<Item = RatVec>) -> usize {
    let mut m = RatMatrix::zero_rows(dim);
    for v in vectors {
        m.push_row(v);
    }
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{rat, ratio};
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        RatMatrix::from_rows(
            ncols,
            rows.iter()
                .map(|r| RatVec(r.iter().map(|&x| rat(x)).collect()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_rank() {
        assert_eq!(rank(&RatMatrix::identity(3)), 3);
    }

    #[test]
    fn dependent_rows() {
        assert_eq!(rank(&m(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]])), 2);
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(rank(&RatMatrix::zero_rows(0)), 0);
        assert_eq!(rank(&RatMatrix::zero_rows(4)), 0);
    }

    #[test]
    fn ragged_rejected() {
        let rows = vec![RatVec(vec![rat(1)]), RatVec(vec![rat(1), rat(2)])];
        assert_eq!(RatMatrix::from_rows(1, rows), Err(GeomError::Ragged));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 7, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let x = a.solve(&RatVec(vec![rat(1), rat(1)])).unwrap();
        assert_eq!(x, RatVec(vec![ratio(1, 2), ratio(1, 3)]));
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&RatVec(vec![rat(1), rat(3)])).is_none());
    }
}
