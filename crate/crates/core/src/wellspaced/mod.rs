//! Genus one analysis: the cycle, hyperplanes through its affine span, and
//! the well-spacedness predicate.
//!
//! A hyperplane `H` containing the span `V` of the cycle `L` is a covector
//! vanishing on `dir(V)`; what matters about `H` is only which vertex images
//! and edge directions it contains. After projecting to `R^n / dir(V)` these
//! containment patterns are exactly the flats of rank at most `c - 1` of the
//! projected vector arrangement, `c` being the codimension of `V`.

mod figure1;
mod hat;
mod verdict;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::curves::Length;
use crate::exactgeom::{Rat, RatMatrix, RatVec};
use crate::maps::TropicalStableMap;
use crate::moduli::FamilyError;

pub use figure1::{build_figure1_family, figure1, sample_parameters};
pub use hat::{hat_curve, HAT_SUFFIX};
pub use verdict::{
    realizability_verdict, same_map, Assumptions, Rule, Verdict, VerdictError, VerdictKind,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WellSpacedError {
    #[error("curve has genus {0}, expected 1")]
    GenusNotOne(u32),
    #[error("the cycle spans the whole space; no hyperplane contains it")]
    NoHyperplane,
    #[error("vertex {0} has no position")]
    MissingPosition(String),
    #[error("curve is disconnected")]
    Disconnected,
    #[error("hat construction needs a tree with a unique genus 1 vertex")]
    NotHatShape,
    #[error("self-loop length must be positive")]
    NonPositiveLength,
    #[error("flat does not belong to this map")]
    ForeignFlat,
    #[error("the hexagon family needs n >= 3, got {0}")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// The cycle `L`, its affine span `V`, and the codimension of `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleData {
    /// Vertices of `L`: the cycle, or the single genus one vertex.
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub base: RatVec,
    /// Basis of `dir(V)`.
    pub directions: Vec<RatVec>,
    pub codim: usize,
    /// Basis of the covectors vanishing on `dir(V)`; `codim` of them.
    pub annihilator: Vec<RatVec>,
    /// `c >= 1`: the cycle sits in a proper affine subspace.
    pub superabundant: bool,
}

fn position<'a>(m: &'a TropicalStableMap, v: &str) -> Result<&'a RatVec, WellSpacedError> {
    m.positions.get(v).ok_or_else(|| WellSpacedError::MissingPosition(v.to_string()))
}

fn basis_of(dim: usize, vectors: impl IntoIterator<Item = RatVec>) -> Vec<RatVec> {
    let rows: Vec<RatVec> = vectors.into_iter().collect();
    let m = RatMatrix::from_rows(dim, rows).expect("vectors of equal length");
    let e = m.echelon();
    e.rows.into_iter().take(e.pivots.len()).collect()
}

/// Orthogonal complement of the span of `rows` inside `Q^dim`.
fn annihilator(dim: usize, rows: &[RatVec]) -> Vec<RatVec> {
    if rows.is_empty() {
        return RatMatrix::identity(dim).rows().to_vec();
    }
    RatMatrix::from_rows(dim, rows.to_vec()).expect("vectors of equal length").nullspace()
}

pub fn cycle_data(m: &TropicalStableMap) -> Result<CycleData, WellSpacedError> {
    let c = &m.curve;
    let genus = c.genus().map_err(|_| WellSpacedError::Disconnected)?;
    if genus != 1 {
        return Err(WellSpacedError::GenusNotOne(genus));
    }
    let n = m.ambient_dim();
    let (vertices, edges) = if let Some((v, _)) = c.vertices.iter().find(|(_, g)| **g == 1) {
        (alloc::vec![v.clone()], Vec::new())
    } else {
        // strip leaves until only the cycle is left
        let mut alive: BTreeSet<&str> = c.edges.keys().map(String::as_str).collect();
        loop {
            let mut deg: BTreeMap<&str, usize> = BTreeMap::new();
            for e in &alive {
                for v in &c.edges[*e].ends {
                    *deg.entry(v).or_default() += 1;
                }
            }
            let leaf_edges: Vec<&str> = alive
                .iter()
                .copied()
                .filter(|e| c.edges[*e].ends.iter().any(|v| deg[v.as_str()] == 1))
                .collect();
            if leaf_edges.is_empty() {
                break;
            }
            for e in leaf_edges {
                alive.remove(e);
            }
        }
        let verts: BTreeSet<String> =
            alive.iter().flat_map(|e| c.edges[*e].ends.iter().cloned()).collect();
        (verts.into_iter().collect(), alive.into_iter().map(String::from).collect::<Vec<_>>())
    };
    let base = position(m, &vertices[0])?.clone();
    let mut spanning = Vec::new();
    for v in &vertices {
        spanning.push(position(m, v)? - &base);
    }
    for e in &edges {
        if let Some(d) = m.edge_data.get(e) {
            spanning.push(d.direction.to_rat());
        }
    }
    let directions = basis_of(n, spanning);
    let annihilator = annihilator(n, &directions);
    let codim = n - directions.len();
    Ok(CycleData { vertices, edges, base, directions, codim, annihilator, superabundant: codim >= 1 })
}

/// An element of the projected arrangement.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArrangementItem {
    /// Image of an inner vertex lying off `V`.
    Vertex(String),
    /// Direction of a non-contracted edge.
    Edge(String),
}

impl core::fmt::Display for ArrangementItem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ArrangementItem::Vertex(v) => write!(f, "vertex:{v}"),
            ArrangementItem::Edge(e) => write!(f, "edge:{e}"),
        }
    }
}

/// The projected vectors, in `Q^c` via the annihilator basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub items: Vec<ArrangementItem>,
    pub vectors: Vec<RatVec>,
    /// Unprojected vectors in `R^n` (vertex offsets from the base point or
    /// edge directions).
    pub ambient: Vec<RatVec>,
}

fn project(cd: &CycleData, x: &RatVec) -> RatVec {
    RatVec(cd.annihilator.iter().map(|psi| psi.dot(x)).collect())
}

pub fn arrangement(m: &TropicalStableMap, cd: &CycleData) -> Result<Arrangement, WellSpacedError> {
    let mut items = Vec::new();
    let mut ambient = Vec::new();
    for v in m.curve.inner_vertices() {
        let x = position(m, v)? - &cd.base;
        if !project(cd, &x).is_zero() {
            items.push(ArrangementItem::Vertex(v.to_string()));
            ambient.push(x);
        }
    }
    for (id, d) in &m.edge_data {
        if !d.is_contracted() {
            items.push(ArrangementItem::Edge(id.clone()));
            ambient.push(d.direction.to_rat());
        }
    }
    let vectors = ambient.iter().map(|x| project(cd, x)).collect();
    Ok(Arrangement { items, vectors, ambient })
}

/// One containment pattern of hyperplanes through `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneFlat {
    /// Arrangement items lying in the hyperplane (indices into the arrangement).
    pub zero_set: Vec<usize>,
    pub rank: usize,
    /// Covector on `Q^c` vanishing exactly on the zero set.
    pub functional: RatVec,
    /// The same covector pulled back to `R^n`; vanishes on `dir(V)`.
    pub normal: RatVec,
}

fn rank_of(dim: usize, vs: impl IntoIterator<Item = RatVec>) -> usize {
    crate::exactgeom::rank(&RatMatrix::from_rows(dim, vs.into_iter().collect()).expect("equal lengths"))
}

fn closure(arr: &Arrangement, c: usize, set: &BTreeSet<usize>) -> (BTreeSet<usize>, usize) {
    let base: Vec<RatVec> = set.iter().map(|&i| arr.vectors[i].clone()).collect();
    let r = rank_of(c, base.iter().cloned());
    let closed = (0..arr.vectors.len())
        .filter(|&i| {
            set.contains(&i) || rank_of(c, base.iter().cloned().chain([arr.vectors[i].clone()])) == r
        })
        .collect();
    (closed, r)
}

/// Covector on `Q^c` vanishing on `flat` and on nothing else.
fn certify(arr: &Arrangement, c: usize, flat: &BTreeSet<usize>) -> RatVec {
    let span: Vec<RatVec> = flat.iter().map(|&i| arr.vectors[i].clone()).collect();
    let basis = annihilator(c, &basis_of(c, span));
    let outside: Vec<&RatVec> =
        (0..arr.vectors.len()).filter(|i| !flat.contains(i)).map(|i| &arr.vectors[i]).collect();
    let mut k = Rat::one();
    loop {
        // phi = sum k^i b_i; each outside vector rules out finitely many k
        let mut phi = RatVec::zeros(c);
        let mut power = Rat::one();
        for b in &basis {
            phi = phi.add_scaled(&power, b);
            power *= &k;
        }
        if outside.iter().all(|x| !phi.dot(x).is_zero()) {
            return phi;
        }
        k += Rat::one();
    }
}

/// All containment patterns of hyperplanes through `V`, ordered by rank.
pub fn enumerate_flats(m: &TropicalStableMap) -> Result<Vec<HyperplaneFlat>, WellSpacedError> {
    let cd = cycle_data(m)?;
    let arr = arrangement(m, &cd)?;
    flats_of(&cd, &arr)
}

pub fn flats_of(cd: &CycleData, arr: &Arrangement) -> Result<Vec<HyperplaneFlat>, WellSpacedError> {
    let c = cd.codim;
    if c == 0 {
        return Err(WellSpacedError::NoHyperplane);
    }
    let mut found: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    let (bottom, r0) = closure(arr, c, &BTreeSet::new());
    found.insert(bottom.clone(), r0);
    let mut layer = alloc::vec![bottom];
    for rank in 1..c {
        let mut next = Vec::new();
        for f in &layer {
            for i in 0..arr.vectors.len() {
                if f.contains(&i) {
                    continue;
                }
                let mut s = f.clone();
                s.insert(i);
                let (g, r) = closure(arr, c, &s);
                debug_assert_eq!(r, rank);
                if !found.contains_key(&g) {
                    found.insert(g.clone(), r);
                    next.push(g);
                }
            }
        }
        layer = next;
    }
    let mut flats: Vec<(usize, BTreeSet<usize>)> = found.into_iter().map(|(s, r)| (r, s)).collect();
    flats.sort();
    Ok(flats
        .into_iter()
        .map(|(rank, set)| {
            let functional = certify(arr, c, &set);
            let mut normal = RatVec::zeros(cd.base.dim());
            for (phi, psi) in functional.iter().zip(&cd.annihilator) {
                normal = normal.add_scaled(phi, psi);
            }
            HyperplaneFlat { zero_set: set.into_iter().collect(), rank, functional, normal }
        })
        .collect())
}

/// `⊏_H` for the hyperplane through `V` with the given normal, and the
/// distances from its boundary vertices to `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcurve {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    /// Vertices of `⊏_H` with an edge leaving `⊏_H`, with their distance to
    /// `L`, sorted by distance then id.
    pub boundary: Vec<(String, Rat)>,
}

impl Subcurve {
    /// The multiset is empty or its minimum occurs at least twice.
    pub fn passes(&self) -> bool {
        match self.boundary.first() {
            None => true,
            Some((_, min)) => self.boundary.get(1).is_some_and(|(_, d)| d == min),
        }
    }

    pub fn distances(&self) -> Vec<Rat> {
        self.boundary.iter().map(|(_, d)| d.clone()).collect()
    }
}

/// `⊏_H` for the hyperplane `{x : normal . (x - base) = 0}`.
pub fn subcurve_for_normal(
    m: &TropicalStableMap,
    cd: &CycleData,
    normal: &RatVec,
) -> Result<Subcurve, WellSpacedError> {
    let c = &m.curve;
    let mut in_h: BTreeSet<&str> = BTreeSet::new();
    for v in c.inner_vertices() {
        if normal.dot(&(position(m, v)? - &cd.base)).is_zero() {
            in_h.insert(v);
        }
    }
    let mut h_edges: BTreeSet<&str> = BTreeSet::new();
    for (id, e) in &c.edges {
        let Some(d) = m.edge_data.get(id) else { continue };
        let inner_ok = e.ends.iter().all(|v| c.is_marked_vertex(v) || in_h.contains(v.as_str()));
        if inner_ok && normal.dot(&d.direction.to_rat()).is_zero() {
            h_edges.insert(id);
        }
    }
    // component of L
    let mut comp: BTreeSet<&str> = cd.vertices.iter().map(String::as_str).collect();
    let mut stack: Vec<&str> = comp.iter().copied().collect();
    let mut comp_edges: BTreeSet<&str> = BTreeSet::new();
    while let Some(v) = stack.pop() {
        for (id, e) in &c.edges {
            if h_edges.contains(id.as_str()) && e.ends.iter().any(|x| x == v) {
                comp_edges.insert(id);
                let w = e.other_end(v);
                if comp.insert(w) {
                    stack.push(w);
                }
            }
        }
    }
    // distances to L inside the component
    let mut dist: BTreeMap<&str, Rat> = cd.vertices.iter().map(|v| (v.as_str(), Rat::zero())).collect();
    let mut done: BTreeSet<&str> = BTreeSet::new();
    loop {
        let next = dist
            .iter()
            .filter(|(v, _)| !done.contains(*v))
            .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(b.0)))
            .map(|(v, d)| (*v, d.clone()));
        let Some((v, dv)) = next else { break };
        done.insert(v);
        for id in &comp_edges {
            let e = &c.edges[*id];
            let Length::Finite(l) = &e.length else { continue };
            if !e.ends.iter().any(|x| x == v) {
                continue;
            }
            let w = e.other_end(v);
            let cand = &dv + l;
            if dist.get(w).is_none_or(|d| cand < *d) {
                dist.insert(w, cand);
            }
        }
    }
    let mut boundary: Vec<(String, Rat)> = Vec::new();
    for v in &comp {
        let leaves = c
            .edges
            .iter()
            .any(|(id, e)| e.ends.iter().any(|x| x == v) && !comp_edges.contains(id.as_str()));
        if leaves {
            let d = dist.get(v).cloned().unwrap_or_else(Rat::zero);
            boundary.push((v.to_string(), d));
        }
    }
    boundary.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    Ok(Subcurve {
        vertices: comp.into_iter().map(String::from).collect(),
        edges: comp_edges.into_iter().map(String::from).collect(),
        boundary,
    })
}

/// `⊏_H` for a hyperplane realizing `flat`.
pub fn subcurve_in_flat(
    m: &TropicalStableMap,
    fl: &HyperplaneFlat,
) -> Result<Subcurve, WellSpacedError> {
    let cd = cycle_data(m)?;
    if fl.normal.dim() != m.ambient_dim() || cd.annihilator.is_empty() {
        return Err(WellSpacedError::ForeignFlat);
    }
    if cd.directions.iter().any(|d| !fl.normal.dot(d).is_zero()) {
        return Err(WellSpacedError::ForeignFlat);
    }
    subcurve_for_normal(m, &cd, &fl.normal)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatRecord {
    pub flat: HyperplaneFlat,
    pub subcurve: Subcurve,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellSpacedReport {
    pub well_spaced: bool,
    pub cycle: CycleData,
    pub arrangement: Arrangement,
    pub flats: Vec<FlatRecord>,
    /// Index of the first failing flat.
    pub witness: Option<usize>,
}

pub fn is_well_spaced(m: &TropicalStableMap) -> Result<WellSpacedReport, WellSpacedError> {
    let cd = cycle_data(m)?;
    let arr = arrangement(m, &cd)?;
    let flats = flats_of(&cd, &arr)?;
    let mut records = Vec::with_capacity(flats.len());
    for flat in flats {
        let subcurve = subcurve_for_normal(m, &cd, &flat.normal)?;
        let pass = subcurve.passes();
        records.push(FlatRecord { flat, subcurve, pass });
    }
    let witness = records.iter().position(|r| !r.pass);
    Ok(WellSpacedReport {
        well_spaced: witness.is_none(),
        cycle: cd,
        arrangement: arr,
        flats: records,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::exactgeom::rat;
    use crate::maps::validate_map;

    #[test]
    fn square_loop_cycle() {
        let m = gallery::square_loop();
        let cd = cycle_data(&m).unwrap();
        assert_eq!(cd.codim, 1);
        assert!(cd.superabundant);
        assert_eq!(cd.vertices.len(), 4);
        let flats = enumerate_flats(&m).unwrap();
        assert_eq!(flats.len(), 1);
        let r = is_well_spaced(&m).unwrap();
        assert!(r.well_spaced);
        assert!(r.flats[0].subcurve.boundary.is_empty());
        assert_eq!(r.flats[0].subcurve.vertices.len(), 8);
    }

    #[test]
    fn contracted_loop_flats() {
        let m = gallery::speyer_tree();
        let cd = cycle_data(&m).unwrap();
        assert_eq!(cd.codim, 2);
        let r = is_well_spaced(&m).unwrap();
        assert_eq!(r.flats.len(), 4);
        for f in &r.flats {
            assert_eq!(f.subcurve.distances(), [rat(1), rat(1), rat(2)]);
        }
        assert!(r.well_spaced);
    }

    #[test]
    fn genus_one_vertex_point_span() {
        let m = gallery::hat_demo();
        let cd = cycle_data(&m).unwrap();
        assert_eq!(cd.codim, 2);
        assert!(cd.directions.is_empty());
        assert!(is_well_spaced(&m).unwrap().well_spaced);
    }

    #[test]
    fn failing_triangle() {
        let m = gallery::speyer_fail();
        assert!(validate_map(&m, None).is_empty());
        let r = is_well_spaced(&m).unwrap();
        assert!(!r.well_spaced);
        assert_eq!(r.witness, Some(0));
        assert_eq!(r.flats[0].subcurve.distances(), [rat(1), rat(2), rat(3)]);
    }

    #[test]
    fn genus_zero_rejected() {
        let m = gallery::three_rays(2);
        assert_eq!(cycle_data(&m), Err(WellSpacedError::GenusNotOne(0)));
    }

    #[test]
    fn full_span_cycle() {
        // a cycle whose image spans R^2: no hyperplane contains it
        let m = gallery::triangle_plane();
        let cd = cycle_data(&m).unwrap();
        assert_eq!(cd.codim, 0);
        assert!(!cd.superabundant);
        assert_eq!(enumerate_flats(&m), Err(WellSpacedError::NoHyperplane));
    }
}
