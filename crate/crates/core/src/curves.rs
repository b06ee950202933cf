//! Pre-stable marked tropical curves.
//!
//! A curve is a finite multigraph stored edge-by-edge: every edge lists its
//! two endpoints, so self-loops and parallel edges need no special casing.
//! The two ends of an edge are its half-edges ([`HalfEdge`]). Marked legs
//! are edges ending at a marked 1-valent genus-0 vertex; that vertex stands
//! for the point at infinity of the leg.
//!
//! [`Curve`] is generic over the edge decoration so that the same graph code
//! serves metric curves ([`TropicalCurve`], lengths in `Q>=0 ∪ {∞}`) and the
//! length-free graphs of combinatorial types ([`TypeGraph`]).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::diag::{Code, Diagnostic};
use crate::exactgeom::Rat;

/// Edge length: a nonnegative rational or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(Rat),
    Infinite,
}

impl Length {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Length::Finite(r) => Some(r),
            Length::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Length::Infinite)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(r) => write!(f, "{r}"),
            Length::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge<L> {
    pub ends: [String; 2],
    pub length: L,
}

impl<L> Edge<L> {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    pub fn other_end(&self, v: &str) -> &str {
        if self.ends[0] == v {
            &self.ends[1]
        } else {
            &self.ends[0]
        }
    }
}

/// One end of an edge: `side` indexes into [`Edge::ends`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub edge: String,
    pub side: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve<L = Length> {
    /// vertex id -> genus
    pub vertices: BTreeMap<String, u32>,
    pub edges: BTreeMap<String, Edge<L>>,
    /// marking label -> vertex id
    pub markings: BTreeMap<String, String>,
}

pub type TropicalCurve = Curve<Length>;
pub type TypeGraph = Curve<()>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("curve is disconnected")]
    Disconnected,
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("edge {0} is a marked leg and cannot be contracted")]
    MarkedLeg(String),
}

impl<L> Default for Curve<L> {
    fn default() -> Self {
        Curve { vertices: BTreeMap::new(), edges: BTreeMap::new(), markings: BTreeMap::new() }
    }
}

impl<L> Curve<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertex(mut self, id: &str, genus: u32) -> Self {
        self.vertices.insert(id.to_string(), genus);
        self
    }

    pub fn with_edge(mut self, id: &str, a: &str, b: &str, length: L) -> Self {
        self.edges
            .insert(id.to_string(), Edge { ends: [a.to_string(), b.to_string()], length });
        self
    }

    pub fn with_marking(mut self, label: &str, vertex: &str) -> Self {
        self.markings.insert(label.to_string(), vertex.to_string());
        self
    }

    pub fn map_lengths<M>(&self, mut f: impl FnMut(&str, &Edge<L>) -> M) -> Curve<M> {
        Curve {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|(id, e)| (id.clone(), Edge { ends: e.ends.clone(), length: f(id, e) }))
                .collect(),
            markings: self.markings.clone(),
        }
    }

    pub fn half_edges_at(&self, v: &str) -> Vec<HalfEdge> {
        let mut out = Vec::new();
        for (id, e) in &self.edges {
            for side in 0..2 {
                if e.ends[side] == v {
                    out.push(HalfEdge { edge: id.clone(), side });
                }
            }
        }
        out
    }

    /// Number of half-edges at `v`; a self-loop counts twice.
    pub fn valence(&self, v: &str) -> usize {
        self.edges
            .values()
            .map(|e| e.ends.iter().filter(|x| *x == v).count())
            .sum()
    }

    pub fn marked_vertices(&self) -> BTreeSet<&str> {
        self.markings.values().map(String::as_str).collect()
    }

    pub fn is_marked_vertex(&self, v: &str) -> bool {
        self.markings.values().any(|x| x == v)
    }

    /// Vertices that are not marking points.
    pub fn inner_vertices(&self) -> Vec<&str> {
        let marked = self.marked_vertices();
        self.vertices
            .keys()
            .map(String::as_str)
            .filter(|v| !marked.contains(v))
            .collect()
    }

    /// An edge incident to a marked vertex.
    pub fn is_leg(&self, e: &str) -> bool {
        self.edges
            .get(e)
            .is_some_and(|edge| edge.ends.iter().any(|v| self.is_marked_vertex(v)))
    }

    pub fn bounded_edges(&self) -> impl Iterator<Item = (&String, &Edge<L>)> {
        let marked = self.marked_vertices();
        self.edges
            .iter()
            .filter(move |(_, e)| !e.ends.iter().any(|v| marked.contains(v.as_str())))
    }

    /// For a marking label: its leg edge id and the inner vertex it hangs off.
    pub fn leg_of(&self, label: &str) -> Option<(&str, &str)> {
        let mv = self.markings.get(label)?;
        self.edges
            .iter()
            .find(|(_, e)| e.ends.contains(mv))
            .map(|(id, e)| (id.as_str(), e.other_end(mv)))
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.keys().next() else {
            return false;
        };
        let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for e in self.edges.values() {
            adj.entry(&e.ends[0]).or_default().push(&e.ends[1]);
            adj.entry(&e.ends[1]).or_default().push(&e.ends[0]);
        }
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut stack = alloc::vec![start.as_str()];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            for &w in adj.get(v).into_iter().flatten() {
                if !seen.contains(w) {
                    stack.push(w);
                }
            }
        }
        self.vertices.keys().all(|v| seen.contains(v.as_str()))
    }

    /// Genus of the total curve: first Betti number plus vertex genera.
    pub fn genus(&self) -> Result<u32, CurveError> {
        betti_and_genus(self).map(|(_, g)| g)
    }

    fn contract_tracked(
        &self,
        e: &str,
    ) -> Result<(Curve<L>, Option<(String, String)>), CurveError>
    where
        L: Clone,
    {
        let edge = self.edges.get(e).ok_or_else(|| CurveError::UnknownEdge(e.to_string()))?;
        if self.is_leg(e) {
            return Err(CurveError::MarkedLeg(e.to_string()));
        }
        let mut out = self.clone();
        out.edges.remove(e);
        if edge.is_loop() {
            *out.vertices.get_mut(&edge.ends[0]).expect("loop vertex") += 1;
            return Ok((out, None));
        }
        let (a, b) = (&edge.ends[0], &edge.ends[1]);
        let (keep, gone) = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        let g_gone = out
            .vertices
            .remove(&gone)
            .ok_or_else(|| CurveError::UnknownVertex(gone.clone()))?;
        *out
            .vertices
            .get_mut(&keep)
            .ok_or_else(|| CurveError::UnknownVertex(keep.clone()))? += g_gone;
        for other in out.edges.values_mut() {
            for end in other.ends.iter_mut() {
                if *end == gone {
                    *end = keep.clone();
                }
            }
        }
        Ok((out, Some((gone, keep))))
    }
}

/// Structural checks shared by metric curves and type graphs.
pub fn validate_structure<L>(c: &Curve<L>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if c.vertices.is_empty() {
        out.push(Diagnostic::error(Code::EmptyCurve, "curve", "curve has no vertices"));
        return out;
    }
    let mut dangling = false;
    for (id, e) in &c.edges {
        for v in &e.ends {
            if !c.vertices.contains_key(v) {
                dangling = true;
                out.push(Diagnostic::error(
                    Code::UnknownVertex,
                    format!("edge {id}"),
                    format!("endpoint {v} is not a vertex"),
                ));
            }
        }
    }
    let mut marked_seen: BTreeMap<&str, &str> = BTreeMap::new();
    for (label, v) in &c.markings {
        let subject = format!("marking {label}");
        let subject = subject.as_str();
        let Some(&genus) = c.vertices.get(v) else {
            out.push(Diagnostic::error(
                Code::UnknownVertex,
                subject,
                format!("marked vertex {v} does not exist"),
            ));
            continue;
        };
        if let Some(prev) = marked_seen.insert(v, label) {
            out.push(Diagnostic::error(
                Code::BadMarking,
                subject,
                format!("vertex {v} already carries marking {prev}"),
            ));
        }
        if genus != 0 {
            out.push(Diagnostic::error(
                Code::BadMarking,
                subject,
                format!("marked vertex {v} has genus {genus}, must be 0"),
            ));
        }
        let val = c.valence(v);
        if val != 1 {
            out.push(Diagnostic::error(
                Code::BadMarking,
                subject,
                format!("marked vertex {v} has valence {val}, must be 1"),
            ));
        } else if let Some(e) = c.edges.values().find(|e| e.ends.contains(v)) {
            if c.is_marked_vertex(e.other_end(v)) {
                out.push(Diagnostic::error(
                    Code::BadMarking,
                    subject,
                    "leg joins two marked vertices",
                ));
            }
        }
    }
    if !dangling && !c.is_connected() {
        out.push(Diagnostic::error(Code::Disconnected, "curve", "disconnected"));
    }
    out
}

/// Empty iff the curve satisfies every invariant of a pre-stable marked
/// tropical curve; one entry per violation otherwise.
pub fn validate_curve(c: &TropicalCurve) -> Vec<Diagnostic> {
    let mut out = validate_structure(c);
    for (id, e) in &c.edges {
        if let Length::Finite(l) = &e.length {
            if l.is_negative() {
                out.push(Diagnostic::error(
                    Code::NegativeLength,
                    format!("edge {id}"),
                    format!("negative length {l}"),
                ));
            }
            if c.is_leg(id) {
                out.push(Diagnostic::error(
                    Code::MarkedLeafFinite,
                    format!("edge {id}"),
                    "marked leaf must have infinite length",
                ));
            }
        }
    }
    out
}

/// Warnings that do not make a curve invalid.
pub fn lint_curve<L>(c: &Curve<L>) -> Vec<Diagnostic> {
    c.vertices
        .keys()
        .filter(|v| c.valence(v) == 1 && !c.is_marked_vertex(v))
        .map(|v| {
            Diagnostic::lint(Code::UnmarkedLeaf, format!("vertex {v}"), "unmarked 1-valent vertex")
        })
        .collect()
}

/// `(b1, genus)` with `b1 = E - V + 1` and genus `b1 + Σ g(v)`.
pub fn betti_and_genus<L>(c: &Curve<L>) -> Result<(usize, u32), CurveError> {
    if !c.is_connected() {
        return Err(CurveError::Disconnected);
    }
    let b1 = c.edges.len() + 1 - c.vertices.len();
    let g = b1 as u32 + c.vertices.values().sum::<u32>();
    Ok((b1, g))
}

/// No unmarked edge has infinite length.
pub fn is_smooth(c: &TropicalCurve) -> bool {
    c.edges.iter().all(|(id, e)| !e.length.is_infinite() || c.is_leg(id))
}

/// Contracts one non-leg edge. A self-loop is deleted and its vertex gains
/// genus one; otherwise the endpoints merge into the lexicographically
/// smaller id with summed genus.
pub fn contract_edge<L: Clone>(c: &Curve<L>, e: &str) -> Result<Curve<L>, CurveError> {
    c.contract_tracked(e).map(|(curve, _)| curve)
}

/// Like [`contract_edge`] but also reports `(removed, kept)` when two
/// vertices merged.
pub(crate) fn contract_edge_tracked<L: Clone>(
    c: &Curve<L>,
    e: &str,
) -> Result<(Curve<L>, Option<(String, String)>), CurveError> {
    c.contract_tracked(e)
}

impl TropicalCurve {
    /// Lengths of all bounded edges are zero.
    pub fn zero_length_edges(&self) -> Vec<String> {
        self.bounded_edges()
            .filter(|(_, e)| e.length.finite().is_some_and(Zero::is_zero))
            .map(|(id, _)| id.clone())
            .collect()
    }
}
