//! The moduli cone of a combinatorial type.
//!
//! The cone lives in the space of vertex positions and bounded-edge lengths.
//! It is cut out by `f(head) - f(tail) = l_e * w_e * u_e` for every bounded
//! edge, `l_e >= 0`, and (in strict mode) `f(v) ∈ σ_v`. Strict mode writes
//! each position as a nonnegative combination of the rays of its cone and
//! works in those coordinates; the cone proper is the image.

mod contract;
mod family;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::curves::Length;
use crate::diag::{Code, Diagnostic};
use crate::exactgeom::lp::MixedSystem;
use crate::exactgeom::{rat, ratio, IntVec, Rat, RatMatrix, RatVec};
use crate::maps::{CombinatorialType, TargetMode, TropicalStableMap};

pub use contract::{contract_type, contract_type_tracked, is_face, FaceWitness, FACE_EDGE_CAP};
pub use family::{limit_of_family, Affine, Family, FamilyError, Limit};

/// A coordinate of the ambient space of the moduli cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    Position { vertex: String, coord: usize },
    Length { edge: String },
}

impl core::fmt::Display for Variable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Variable::Position { vertex, coord } => write!(f, "x[{vertex}][{coord}]"),
            Variable::Length { edge } => write!(f, "l[{edge}]"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error("no point of the cone has all lengths positive (forced zero: {0:?})")]
    NoPositivePoint(Vec<String>),
    #[error("edge {0} is not a bounded edge of the type")]
    NotBounded(String),
    #[error("face search is capped at {cap} bounded edges, got {got}")]
    TooManyEdges { cap: usize, got: usize },
    #[error("merged vertices {0} and {1} have no common face in the fan")]
    NoCommonFace(String, String),
}

/// Coordinates actually handed to the solver.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Presentation {
    nonneg: Vec<bool>,
    equations: RatMatrix,
    /// external coordinate j = sum_i proj[j][i] * internal_i
    proj: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliCone {
    pub ctype: CombinatorialType,
    pub variables: Vec<Variable>,
    /// `ambient_dim` rows per bounded edge, in edge id order.
    pub equations: RatMatrix,
    pub rank: usize,
    pub dim: usize,
    pub forced_zero_lengths: Vec<String>,
    pub diagnostics: Vec<Diagnostic>,
    inner: Presentation,
    /// per internal coordinate: a point of the cone where it equals one
    witnesses: Vec<Option<RatVec>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeMetrics {
    pub dim: usize,
    pub expected_dim: i64,
    pub overvalence: usize,
    pub b1: usize,
    pub markings: usize,
    pub superabundant: bool,
}

fn bounded_ids(t: &CombinatorialType) -> Vec<String> {
    t.graph.bounded_edges().map(|(id, _)| id.clone()).collect()
}

fn inner_ids(t: &CombinatorialType) -> Vec<String> {
    t.graph.inner_vertices().into_iter().map(String::from).collect()
}

fn int(x: i64) -> Rat {
    rat(x)
}

/// The presentation of the moduli cone of `t`, with its dimension.
pub fn moduli_cone(t: &CombinatorialType) -> ModuliCone {
    let n = t.ambient_dim();
    let verts = inner_ids(t);
    let edges = bounded_ids(t);
    let mut variables = Vec::new();
    for v in &verts {
        for k in 0..n {
            variables.push(Variable::Position { vertex: v.clone(), coord: k });
        }
    }
    for e in &edges {
        variables.push(Variable::Length { edge: e.clone() });
    }
    let nv = variables.len();
    let vindex: BTreeMap<&str, usize> =
        verts.iter().enumerate().map(|(i, v)| (v.as_str(), i * n)).collect();
    let mut equations = RatMatrix::zero_rows(nv);
    for (j, e) in edges.iter().enumerate() {
        let edge = &t.graph.edges[e];
        let d = &t.edge_data[e];
        let head = edge.other_end(&d.tail);
        let lcol = verts.len() * n + j;
        for k in 0..n {
            let mut row = RatVec::zeros(nv);
            row.0[vindex[head] + k] += Rat::one();
            row.0[vindex[d.tail.as_str()] + k] -= Rat::one();
            row.0[lcol] = -int(d.weight as i64 * d.direction.0[k]);
            equations.push_row(row);
        }
    }
    let rank = equations.rank();

    let inner = match t.mode {
        TargetMode::Embedded => {
            let mut nonneg = alloc::vec![false; verts.len() * n];
            nonneg.extend(core::iter::repeat_n(true, edges.len()));
            Presentation { nonneg, equations: equations.clone(), proj: RatMatrix::identity(nv) }
        }
        TargetMode::Strict => {
            // columns: one multiplier per (vertex, ray), then lengths
            let mut cols: Vec<(usize, IntVec)> = Vec::new();
            for (i, v) in verts.iter().enumerate() {
                for r in t.vertex_cones[v].rays() {
                    cols.push((i, r.clone()));
                }
            }
            let ni = cols.len() + edges.len();
            let mut proj = RatMatrix::zero_rows(ni);
            for i in 0..verts.len() {
                for k in 0..n {
                    let mut row = RatVec::zeros(ni);
                    for (c, (vi, r)) in cols.iter().enumerate() {
                        if *vi == i {
                            row.0[c] = int(r.0[k]);
                        }
                    }
                    proj.push_row(row);
                }
            }
            for j in 0..edges.len() {
                let mut row = RatVec::zeros(ni);
                row.0[cols.len() + j] = Rat::one();
                proj.push_row(row);
            }
            let mut eqs = RatMatrix::zero_rows(ni);
            for row in equations.rows() {
                let mut out = RatVec::zeros(ni);
                for (j, a) in row.iter().enumerate() {
                    if !a.is_zero() {
                        out = out.add_scaled(a, &proj.rows()[j]);
                    }
                }
                eqs.push_row(out);
            }
            Presentation { nonneg: alloc::vec![true; ni], equations: eqs, proj }
        }
    };

    let ni = inner.nonneg.len();
    let mut witnesses = Vec::with_capacity(ni);
    for i in 0..ni {
        if !inner.nonneg[i] {
            witnesses.push(None);
            continue;
        }
        let mut sys = MixedSystem::new(inner.nonneg.clone());
        for row in inner.equations.rows() {
            sys.add_eq(row.clone(), Rat::zero());
        }
        let mut unit = RatVec::zeros(ni);
        unit.0[i] = Rat::one();
        sys.add_eq(unit, Rat::one());
        witnesses.push(sys.feasible_point());
    }
    // linear span of the cone: kernel plus the forced-zero coordinates
    let mut span = inner.equations.clone();
    for i in 0..ni {
        if inner.nonneg[i] && witnesses[i].is_none() {
            let mut unit = RatVec::zeros(ni);
            unit.0[i] = Rat::one();
            span.push_row(unit);
        }
    }
    let basis = span.nullspace();
    let image: Vec<RatVec> = basis.iter().map(|b| inner.proj.mul_vec(b)).collect();
    let dim = RatMatrix::from_rows(nv, image).map(|m| m.rank()).unwrap_or(0);

    let lcol0 = ni - edges.len();
    let forced_zero_lengths: Vec<String> = edges
        .iter()
        .enumerate()
        .filter(|(j, _)| witnesses[lcol0 + j].is_none())
        .map(|(_, e)| e.clone())
        .collect();
    let mut diagnostics: Vec<Diagnostic> = forced_zero_lengths
        .iter()
        .map(|e| {
            Diagnostic::error(
                Code::ForcedZeroLength,
                format!("edge {e}"),
                "every point of the cone has this length zero",
            )
        })
        .collect();
    if t.mode == TargetMode::Strict {
        for (c, w) in witnesses[..lcol0].iter().enumerate() {
            if w.is_none() {
                diagnostics.push(Diagnostic::error(
                    Code::Infeasible,
                    format!("multiplier {c}"),
                    "a vertex cannot reach the relative interior of its cone",
                ));
            }
        }
    }

    ModuliCone {
        ctype: t.clone(),
        variables,
        equations,
        rank,
        dim,
        forced_zero_lengths,
        diagnostics,
        inner,
        witnesses,
    }
}

/// Overvalence: sum of `val - 3` over vertices of valence at least four.
pub fn overvalence(t: &CombinatorialType) -> usize {
    t.graph
        .inner_vertices()
        .into_iter()
        .map(|v| t.graph.valence(v))
        .filter(|&k| k >= 4)
        .map(|k| k - 3)
        .sum()
}

pub fn cone_metrics(t: &CombinatorialType) -> ConeMetrics {
    metrics_of(&moduli_cone(t))
}

pub fn metrics_of(mc: &ModuliCone) -> ConeMetrics {
    let t = &mc.ctype;
    let b1 = (t.graph.edges.len() + 1).saturating_sub(t.graph.vertices.len());
    let ov = overvalence(t);
    let n = t.graph.markings.len();
    let amb = t.ambient_dim() as i64;
    let expected_dim = (amb - 3) * (1 - b1 as i64) + n as i64 - ov as i64;
    ConeMetrics {
        dim: mc.dim,
        expected_dim,
        overvalence: ov,
        b1,
        markings: n,
        superabundant: mc.dim as i64 > expected_dim,
    }
}

fn random_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    ratio(rng.gen_range(lo..=hi), rng.gen_range(1..=4))
}

impl ModuliCone {
    pub fn bounded_edges(&self) -> Vec<String> {
        bounded_ids(&self.ctype)
    }

    /// Writes an external coordinate vector as a map of this type.
    pub fn realize(&self, point: &RatVec) -> TropicalStableMap {
        let t = &self.ctype;
        let n = t.ambient_dim();
        let verts = inner_ids(t);
        let edges = bounded_ids(t);
        let positions = verts
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), RatVec(point.0[i * n..(i + 1) * n].to_vec())))
            .collect();
        let base = verts.len() * n;
        let lengths: BTreeMap<&str, Rat> =
            edges.iter().enumerate().map(|(j, e)| (e.as_str(), point.0[base + j].clone())).collect();
        let curve = t.graph.map_lengths(|id, _| match lengths.get(id) {
            Some(l) => Length::Finite(l.clone()),
            None => Length::Infinite,
        });
        TropicalStableMap {
            curve,
            fan: t.fan.clone(),
            mode: t.mode,
            positions,
            edge_data: t.edge_data.clone(),
        }
    }

    /// A pseudo-random point of the relative interior, deterministic in
    /// `seed`, realized as a map.
    pub fn sample_interior(&self, seed: u64) -> Result<TropicalStableMap, ModuliError> {
        let mut forced: Vec<String> = self.forced_zero_lengths.clone();
        let nl = self.bounded_edges().len();
        let lcol0 = self.inner.nonneg.len() - nl;
        for (i, w) in self.witnesses[..lcol0].iter().enumerate() {
            if self.inner.nonneg[i] && w.is_none() {
                forced.push(format!("multiplier {i}"));
            }
        }
        if !forced.is_empty() {
            return Err(ModuliError::NoPositivePoint(forced));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ni = self.inner.nonneg.len();
        let mut z = RatVec::zeros(ni);
        for w in self.witnesses.iter().flatten() {
            let c = ratio(rng.gen_range(1..=9), rng.gen_range(1..=3));
            z = z.add_scaled(&c, w);
        }
        let mut point = self.inner.proj.mul_vec(&z);
        if self.ctype.mode == TargetMode::Embedded {
            let n = self.ctype.ambient_dim();
            let shift: Vec<Rat> = (0..n).map(|_| random_rat(&mut rng, -5, 5)).collect();
            for (j, var) in self.variables.iter().enumerate() {
                if let Variable::Position { coord, .. } = var {
                    point.0[j] += &shift[*coord];
                }
            }
        }
        Ok(self.realize(&point))
    }
}

/// See [`ModuliCone::sample_interior`].
pub fn sample_interior(mc: &ModuliCone, seed: u64) -> Result<TropicalStableMap, ModuliError> {
    mc.sample_interior(seed)
}
