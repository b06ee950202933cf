use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::lp::{LpOutcome, MixedSystem};
use super::matrix::rank_of;
use super::rational::Rat;
use super::vector::{IntVec, RatVec};

/// A rational polyhedral cone given by integral generators.
///
/// Generators are kept sorted and deduplicated, so two cones with the same
/// generator set compare equal. The zero cone has no generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<IntVec>,
}

impl Cone {
    pub fn new(ambient_dim: usize, rays: impl IntoIterator<Item = IntVec>) -> Self {
        let mut rays: Vec<IntVec> = rays.into_iter().collect();
        rays.sort();
        rays.dedup();
        Cone { ambient_dim, rays }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Cone { ambient_dim, rays: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn dim(&self) -> usize {
        rank_of(self.ambient_dim, self.rays.iter().map(IntVec::to_rat))
    }

    pub fn span_contains(&self, v: &RatVec) -> bool {
        let d = self.dim();
        rank_of(
            self.ambient_dim,
            self.rays.iter().map(IntVec::to_rat).chain(core::iter::once(v.clone())),
        ) == d
    }

    fn combination_system(&self, nonneg_extra: usize) -> MixedSystem {
        MixedSystem::new(alloc::vec![true; self.rays.len() + nonneg_extra])
    }

    /// `p` is a nonnegative combination of the generators.
    pub fn contains(&self, p: &RatVec) -> bool {
        if p.dim() != self.ambient_dim {
            return false;
        }
        if self.rays.is_empty() {
            return p.is_zero();
        }
        let mut sys = self.combination_system(0);
        for k in 0..self.ambient_dim {
            let row = RatVec(self.rays.iter().map(|r| Rat::from_integer(r.0[k].into())).collect());
            sys.add_eq(row, p.0[k].clone());
        }
        sys.feasible_point().is_some()
    }

    /// `p` is a strictly positive combination of all generators, i.e. lies
    /// in the relative interior.
    pub fn contains_relint(&self, p: &RatVec) -> bool {
        if p.dim() != self.ambient_dim {
            return false;
        }
        let k = self.rays.len();
        if k == 0 {
            return p.is_zero();
        }
        // variables: lambda (k), delta, slacks (k), delta slack
        let nvars = 2 * k + 2;
        let delta = k;
        let mut sys = MixedSystem::new(alloc::vec![true; nvars]);
        for c in 0..self.ambient_dim {
            let mut row = RatVec::zeros(nvars);
            for (i, r) in self.rays.iter().enumerate() {
                row.0[i] = Rat::from_integer(r.0[c].into());
            }
            sys.add_eq(row, p.0[c].clone());
        }
        for i in 0..k {
            let mut row = RatVec::zeros(nvars);
            row.0[i] = Rat::one();
            row.0[delta] = -Rat::one();
            row.0[delta + 1 + i] = -Rat::one();
            sys.add_eq(row, Rat::zero());
        }
        let mut cap = RatVec::zeros(nvars);
        cap.0[delta] = Rat::one();
        cap.0[nvars - 1] = Rat::one();
        sys.add_eq(cap, Rat::one());
        let mut obj = RatVec::zeros(nvars);
        obj.0[delta] = -Rat::one();
        matches!(sys.minimize(Some(&obj)), LpOutcome::Optimal { value, .. } if value.is_negative())
    }

    /// Whether the generators in `subset` span a face of this cone whose
    /// generator set is exactly `subset`.
    pub fn is_face_subset(&self, subset: &[IntVec]) -> bool {
        if !subset.iter().all(|s| self.rays.contains(s)) {
            return false;
        }
        let outside: Vec<&IntVec> = self.rays.iter().filter(|r| !subset.contains(r)).collect();
        if outside.is_empty() {
            return true;
        }
        let n = self.ambient_dim;
        let nvars = n + outside.len();
        let mut nonneg = alloc::vec![false; n];
        nonneg.extend(core::iter::repeat_n(true, outside.len()));
        let mut sys = MixedSystem::new(nonneg);
        for s in subset {
            let mut row = RatVec::zeros(nvars);
            for (k, x) in s.0.iter().enumerate() {
                row.0[k] = Rat::from_integer((*x).into());
            }
            sys.add_eq(row, Rat::zero());
        }
        for (j, r) in outside.iter().enumerate() {
            let mut row = RatVec::zeros(nvars);
            for (k, x) in r.0.iter().enumerate() {
                row.0[k] = Rat::from_integer((*x).into());
            }
            row.0[n + j] = -Rat::one();
            sys.add_eq(row, Rat::one());
        }
        sys.feasible_point().is_some()
    }

    /// All faces, including the zero cone and the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        let k = self.rays.len();
        assert!(k < 24, "face enumeration is exponential in the generator count");
        let mut out = Vec::new();
        for mask in 0u32..(1 << k) {
            let subset: Vec<IntVec> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.rays[i].clone())
                .collect();
            if self.is_face_subset(&subset) {
                out.push(Cone::new(self.ambient_dim, subset));
            }
        }
        out.sort();
        out
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.ambient_dim == other.ambient_dim && other.is_face_subset(&self.rays)
    }

    /// Whether the relative interiors of the two cones intersect.
    pub fn relints_meet(&self, other: &Cone) -> bool {
        let n = self.ambient_dim;
        let (a, b) = (self.rays.len(), other.rays.len());
        // lambda_i = 1 + x_i, mu_j = 1 + y_j
        let mut sys = MixedSystem::new(alloc::vec![true; a + b]);
        for c in 0..n {
            let mut row = RatVec::zeros(a + b);
            let mut rhs = Rat::zero();
            for (i, r) in self.rays.iter().enumerate() {
                let x = Rat::from_integer(r.0[c].into());
                rhs -= &x;
                row.0[i] = x;
            }
            for (j, r) in other.rays.iter().enumerate() {
                let x = Rat::from_integer(r.0[c].into());
                rhs += &x;
                row.0[a + j] = -x;
            }
            sys.add_eq(row, rhs);
        }
        sys.feasible_point().is_some()
    }

    /// Generators lying in the cone spanned by the remaining ones.
    pub fn redundant_rays(&self) -> Vec<IntVec> {
        self.rays
            .iter()
            .filter(|r| {
                let rest = Cone::new(
                    self.ambient_dim,
                    self.rays.iter().filter(|s| s != r).cloned(),
                );
                rest.contains(&r.to_rat())
            })
            .cloned()
            .collect()
    }
}
