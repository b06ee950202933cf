//! Parametrized tropical stable maps and their combinatorial types.
//!
//! Every edge carries an [`EdgeDatum`]: a primitive direction `u`, an
//! expansion factor `w` and the tail vertex the direction points away from.
//! Contracted edges have `w = 0` and `u = 0`. The outgoing slope of an edge at
//! one of its ends is `+w*u` at the tail and `-w*u` at the head; the two
//! sides of a self-loop use side 0 as the tail.
//!
//! Targets come in two flavours ([`TargetMode`]). In embedded mode the map
//! goes to `R^n` itself: positions are unconstrained and every vertex sits in
//! the zero cone. In strict mode vertices must land in the support of the fan
//! and carry the cone whose relative interior contains them.

mod iso;
mod star;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::curves::{validate_curve, validate_structure, Curve, Edge, TropicalCurve, TypeGraph};
use crate::diag::{Code, Diagnostic};
use crate::exactgeom::{cone_locate, Cone, Fan, IntVec, Rat, RatVec};

pub use iso::{compose, identity, inverse, isomorphisms, type_automorphisms, Decorated, Isomorphism};
pub use star::star;

/// How positions relate to the fan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetMode {
    /// Maps to `R^n`; the fan only records the unbounded directions.
    #[default]
    Embedded,
    /// Maps to the support of the fan, cone by cone.
    Strict,
}

impl TargetMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TargetMode::Embedded => "embedded",
            TargetMode::Strict => "strict",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeDatum {
    pub direction: IntVec,
    pub weight: u32,
    pub tail: String,
}

impl EdgeDatum {
    pub fn new(direction: IntVec, weight: u32, tail: &str) -> Self {
        EdgeDatum { direction, weight, tail: tail.to_string() }
    }

    pub fn contracted(dim: usize, tail: &str) -> Self {
        EdgeDatum { direction: IntVec::zeros(dim), weight: 0, tail: tail.to_string() }
    }

    pub fn is_contracted(&self) -> bool {
        self.weight == 0
    }

    /// `w * u`
    pub fn slope(&self) -> IntVec {
        self.direction.scaled(self.weight as i64)
    }

    /// Slope leaving the given side of `edge`.
    pub fn outgoing<L>(&self, edge: &Edge<L>, side: usize) -> IntVec {
        let forward = if edge.is_loop() { side == 0 } else { edge.ends[side] == self.tail };
        if forward {
            self.slope()
        } else {
            -&self.slope()
        }
    }

    fn reversed(&self, new_tail: &str) -> EdgeDatum {
        EdgeDatum { direction: -&self.direction, weight: self.weight, tail: new_tail.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalStableMap {
    pub curve: TropicalCurve,
    pub fan: Fan,
    pub mode: TargetMode,
    /// Images of the inner (unmarked) vertices.
    pub positions: BTreeMap<String, RatVec>,
    pub edge_data: BTreeMap<String, EdgeDatum>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialType {
    pub graph: TypeGraph,
    pub fan: Fan,
    pub mode: TargetMode,
    /// Cone of each inner vertex.
    pub vertex_cones: BTreeMap<String, Cone>,
    pub edge_data: BTreeMap<String, EdgeDatum>,
}

/// Genus and contact vectors of the one-vertex type left after collapsing
/// every bounded edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecessionType {
    pub genus: u32,
    pub contacts: BTreeMap<String, IntVec>,
}

/// Genus, markings and contact orders `c(p_i) = w*u` of the marked legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteData {
    pub genus: u32,
    pub contact: BTreeMap<String, IntVec>,
}

impl DiscreteData {
    pub fn marking_count(&self) -> usize {
        self.contact.len()
    }

    /// Reads the discrete data off a map whose curve and edge data are sound.
    pub fn of_map(m: &TropicalStableMap) -> Option<DiscreteData> {
        let genus = m.curve.genus().ok()?;
        let contact = contacts(&m.curve, &m.edge_data)?;
        Some(DiscreteData { genus, contact })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex {0} is a marking point")]
    MarkedVertex(String),
    #[error("position of vertex {0} lies outside the support of the fan")]
    OutsideSupport(String),
    #[error("vertex {0} has no position of the ambient dimension")]
    MissingPosition(String),
    #[error("edge {0} has no edge data")]
    MissingEdgeData(String),
}

fn contacts<L>(
    curve: &Curve<L>,
    edge_data: &BTreeMap<String, EdgeDatum>,
) -> Option<BTreeMap<String, IntVec>> {
    let mut out = BTreeMap::new();
    for label in curve.markings.keys() {
        let (e, inner) = curve.leg_of(label)?;
        let edge = &curve.edges[e];
        let side = if edge.ends[0] == inner { 0 } else { 1 };
        out.insert(label.clone(), edge_data.get(e)?.outgoing(edge, side));
    }
    Some(out)
}

/// Sum of outgoing slopes at `v`.
pub(crate) fn balance_at<L>(
    curve: &Curve<L>,
    edge_data: &BTreeMap<String, EdgeDatum>,
    v: &str,
    dim: usize,
) -> IntVec {
    let mut sum = IntVec::zeros(dim);
    for h in curve.half_edges_at(v) {
        if let Some(d) = edge_data.get(&h.edge) {
            sum = &sum + &d.outgoing(&curve.edges[&h.edge], h.side);
        }
    }
    sum
}

/// Checks of the edge decorations that do not involve lengths or positions.
fn validate_edge_data<L>(
    curve: &Curve<L>,
    edge_data: &BTreeMap<String, EdgeDatum>,
    dim: usize,
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for id in edge_data.keys() {
        if !curve.edges.contains_key(id) {
            out.push(Diagnostic::error(
                Code::UnknownEdge,
                format!("edge {id}"),
                "edge data for an edge not in the curve",
            ));
        }
    }
    for (id, edge) in &curve.edges {
        let subject = format!("edge {id}");
        let Some(d) = edge_data.get(id) else {
            out.push(Diagnostic::error(Code::MissingEdgeData, subject, "no direction/weight"));
            continue;
        };
        if !edge.ends.contains(&d.tail) {
            out.push(Diagnostic::error(
                Code::BadOrientation,
                subject.clone(),
                format!("tail {} is not an endpoint", d.tail),
            ));
        } else if curve.is_marked_vertex(&d.tail) && !edge.is_loop() {
            out.push(Diagnostic::error(
                Code::BadOrientation,
                subject.clone(),
                "a marked leg must point away from its inner vertex",
            ));
        }
        if d.direction.dim() != dim {
            out.push(Diagnostic::error(
                Code::BadDirection,
                subject,
                format!("direction has length {}, ambient dimension is {dim}", d.direction.dim()),
            ));
            continue;
        }
        if (d.weight == 0) != d.direction.is_zero() {
            out.push(Diagnostic::error(
                Code::BadDirection,
                subject.clone(),
                "weight is zero exactly when the direction is zero",
            ));
        } else if d.weight > 0 && !d.direction.is_primitive() {
            out.push(Diagnostic::error(
                Code::BadDirection,
                subject.clone(),
                format!("direction {} is not primitive", d.direction),
            ));
        }
        if edge.is_loop() && d.weight != 0 {
            out.push(Diagnostic::error(
                Code::BadDirection,
                subject,
                "a self-loop must be contracted",
            ));
        }
    }
    out
}

fn balancing_diagnostics<L>(
    curve: &Curve<L>,
    edge_data: &BTreeMap<String, EdgeDatum>,
    dim: usize,
) -> Vec<Diagnostic> {
    curve
        .inner_vertices()
        .into_iter()
        .filter_map(|v| {
            let s = balance_at(curve, edge_data, v, dim);
            (!s.is_zero()).then(|| {
                Diagnostic::error(
                    Code::Balancing,
                    format!("vertex {v}"),
                    format!("not balanced: outgoing slopes sum to {s}"),
                )
            })
        })
        .collect()
}

/// TSM3 at a 2-valent inner vertex: fails when the star sits in the relative
/// interior of one cone. The whole of `R^n` is a single open cell in
/// embedded mode, so there every 2-valent vertex fails.
fn unstable<L>(
    curve: &Curve<L>,
    edge_data: &BTreeMap<String, EdgeDatum>,
    fan: &Fan,
    mode: TargetMode,
    v: &str,
    position: Option<&RatVec>,
) -> bool {
    if curve.valence(v) != 2 {
        return false;
    }
    match mode {
        TargetMode::Embedded => true,
        TargetMode::Strict => {
            let Some(p) = position else { return false };
            let Ok(Some(sigma)) = cone_locate(fan, p) else { return false };
            curve.half_edges_at(v).iter().all(|h| {
                edge_data.get(&h.edge).is_some_and(|d| {
                    sigma.span_contains(&d.outgoing(&curve.edges[&h.edge], h.side).to_rat())
                })
            })
        }
    }
}

fn contact_diagnostics<L>(
    curve: &Curve<L>,
    edge_data: &BTreeMap<String, EdgeDatum>,
    fan: &Fan,
    mode: TargetMode,
    genus: Option<u32>,
    d: Option<&DiscreteData>,
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let Some(actual) = contacts(curve, edge_data) else {
        return out;
    };
    if mode == TargetMode::Strict {
        for (label, c) in &actual {
            if let Some((p, _)) = c.primitive_part() {
                if !fan.has_ray(&p) {
                    out.push(Diagnostic::error(
                        Code::Contact,
                        format!("marking {label}"),
                        format!("contact vector {c} does not lie on a ray of the fan"),
                    ));
                }
            }
        }
    }
    let Some(d) = d else { return out };
    if let Some(g) = genus {
        if g != d.genus {
            out.push(Diagnostic::error(
                Code::Contact,
                "curve",
                format!("genus {g} differs from the discrete data genus {}", d.genus),
            ));
        }
    }
    for (label, c) in &actual {
        match d.contact.get(label) {
            Some(expected) if expected == c => {}
            Some(expected) => out.push(Diagnostic::error(
                Code::Contact,
                format!("marking {label}"),
                format!("leg slope {c} differs from contact vector {expected}"),
            )),
            None => out.push(Diagnostic::error(
                Code::Contact,
                format!("marking {label}"),
                "no contact vector in the discrete data",
            )),
        }
    }
    for label in d.contact.keys() {
        if !actual.contains_key(label) {
            out.push(Diagnostic::error(
                Code::Contact,
                format!("marking {label}"),
                "contact vector for a marking not on the curve",
            ));
        }
    }
    out
}

/// Empty iff the map is a tropical stable map (TSM1 to TSM3) whose legs
/// match the contact data. Each entry names the vertex or edge and the rule.
///
/// Without `d` the contact data is read off the map, so only the fan-ray
/// condition of strict mode is checked.
pub fn validate_map(m: &TropicalStableMap, d: Option<&DiscreteData>) -> Vec<Diagnostic> {
    let n = m.fan.ambient_dim();
    let mut out = validate_curve(&m.curve);
    if !out.is_empty() {
        return out;
    }
    for (id, e) in &m.curve.edges {
        if e.length.is_infinite() && !m.curve.is_leg(id) {
            out.push(Diagnostic::error(
                Code::NotSmooth,
                format!("edge {id}"),
                "unmarked edge of infinite length",
            ));
        }
    }
    out.extend(validate_edge_data(&m.curve, &m.edge_data, n));
    if !out.is_empty() {
        return out;
    }
    for v in m.positions.keys() {
        if !m.curve.vertices.contains_key(v) {
            out.push(Diagnostic::error(
                Code::UnknownVertex,
                format!("vertex {v}"),
                "position for a vertex not in the curve",
            ));
        } else if m.curve.is_marked_vertex(v) {
            out.push(Diagnostic::error(
                Code::ExtraPosition,
                format!("vertex {v}"),
                "marking points lie at infinity and take no position",
            ));
        }
    }
    for v in m.curve.inner_vertices() {
        match m.positions.get(v) {
            None => out.push(Diagnostic::error(
                Code::MissingPosition,
                format!("vertex {v}"),
                "no position",
            )),
            Some(p) if p.dim() != n => out.push(Diagnostic::error(
                Code::MissingPosition,
                format!("vertex {v}"),
                format!("position has length {}, ambient dimension is {n}", p.dim()),
            )),
            Some(p) => {
                if m.mode == TargetMode::Strict && !m.fan.support_contains(p) {
                    out.push(Diagnostic::error(
                        Code::OutsideSupport,
                        format!("vertex {v}"),
                        format!("position {p} is outside the support of the fan"),
                    ));
                }
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (id, e) in m.curve.bounded_edges() {
        let (Some(len), false) = (e.length.finite(), e.is_loop()) else { continue };
        let d = &m.edge_data[id];
        let head = e.other_end(&d.tail);
        let disp = &m.positions[head] - &m.positions[&d.tail];
        let expected = d.slope().to_rat().scaled(len);
        if disp != expected {
            out.push(Diagnostic::error(
                Code::Integrality,
                format!("edge {id}"),
                format!(
                    "displacement {disp} from {} to {head} != {len}*{}*{}",
                    d.tail, d.weight, d.direction
                ),
            ));
        }
    }
    out.extend(balancing_diagnostics(&m.curve, &m.edge_data, n));
    for v in m.curve.inner_vertices() {
        if unstable(&m.curve, &m.edge_data, &m.fan, m.mode, v, m.positions.get(v)) {
            out.push(Diagnostic::error(
                Code::Stability,
                format!("vertex {v}"),
                "2-valent vertex whose star lies in the relative interior of one cone",
            ));
        }
    }
    out.extend(contact_diagnostics(
        &m.curve,
        &m.edge_data,
        &m.fan,
        m.mode,
        m.curve.genus().ok(),
        d,
    ));
    out
}

/// Structural checks on a combinatorial type: graph, edge data, balancing,
/// vertex cones. TSM3 is reported only when `stability` is set.
pub fn validate_type(t: &CombinatorialType, stability: bool) -> Vec<Diagnostic> {
    let n = t.fan.ambient_dim();
    let mut out = validate_structure(&t.graph);
    if !out.is_empty() {
        return out;
    }
    out.extend(validate_edge_data(&t.graph, &t.edge_data, n));
    if !out.is_empty() {
        return out;
    }
    for v in t.graph.inner_vertices() {
        match t.vertex_cones.get(v) {
            None => out.push(Diagnostic::error(
                Code::MissingPosition,
                format!("vertex {v}"),
                "no cone",
            )),
            Some(c) => {
                let ok = match t.mode {
                    TargetMode::Embedded => c.is_zero(),
                    TargetMode::Strict => t.fan.contains_cone(c),
                };
                if !ok {
                    out.push(Diagnostic::error(
                        Code::OutsideSupport,
                        format!("vertex {v}"),
                        format!("cone {c} is not admissible for this target"),
                    ));
                }
            }
        }
    }
    out.extend(balancing_diagnostics(&t.graph, &t.edge_data, n));
    if stability && t.mode == TargetMode::Embedded {
        for v in t.graph.inner_vertices() {
            if unstable(&t.graph, &t.edge_data, &t.fan, t.mode, v, None) {
                out.push(Diagnostic::error(
                    Code::Stability,
                    format!("vertex {v}"),
                    "2-valent vertex",
                ));
            }
        }
    }
    out.extend(contact_diagnostics(&t.graph, &t.edge_data, &t.fan, t.mode, None, None));
    out
}

/// Forgets lengths and positions.
pub fn combinatorial_type(m: &TropicalStableMap) -> Result<CombinatorialType, MapError> {
    let n = m.fan.ambient_dim();
    let mut vertex_cones = BTreeMap::new();
    for v in m.curve.inner_vertices() {
        let p = m
            .positions
            .get(v)
            .filter(|p| p.dim() == n)
            .ok_or_else(|| MapError::MissingPosition(v.to_string()))?;
        let cone = match m.mode {
            TargetMode::Embedded => Cone::zero(n),
            TargetMode::Strict => cone_locate(&m.fan, p)
                .ok()
                .flatten()
                .ok_or_else(|| MapError::OutsideSupport(v.to_string()))?,
        };
        vertex_cones.insert(v.to_string(), cone);
    }
    Ok(CombinatorialType {
        graph: m.curve.map_lengths(|_, _| ()),
        fan: m.fan.clone(),
        mode: m.mode,
        vertex_cones,
        edge_data: m.edge_data.clone(),
    })
}

pub fn recession_type(t: &CombinatorialType) -> RecessionType {
    let genus = t.graph.genus().unwrap_or(0);
    RecessionType { genus, contacts: contacts(&t.graph, &t.edge_data).unwrap_or_default() }
}

/// Sorted edge ends and canonical orientations: a direction points along a
/// lexicographically positive vector, a leg points away from its inner
/// vertex, a contracted edge starts at its smaller end.
fn canonicalize<L: Clone>(
    curve: &Curve<L>,
    edge_data: &BTreeMap<String, EdgeDatum>,
) -> (Curve<L>, BTreeMap<String, EdgeDatum>) {
    let mut c = curve.clone();
    let mut data = edge_data.clone();
    for (id, e) in c.edges.iter_mut() {
        e.ends.sort();
        let Some(d) = data.get_mut(id) else { continue };
        if !e.ends.contains(&d.tail) {
            continue;
        }
        let marked = e.ends.iter().position(|v| curve.is_marked_vertex(v));
        let want = if e.is_loop() {
            e.ends[0].clone()
        } else if let Some(k) = marked {
            e.ends[1 - k].clone()
        } else if d.direction.is_zero() {
            e.ends[0].clone()
        } else if d.direction.is_lex_positive() {
            d.tail.clone()
        } else {
            e.other_end(&d.tail).to_string()
        };
        if want != d.tail {
            *d = d.reversed(&want);
        }
    }
    (c, data)
}

impl TropicalStableMap {
    pub fn ambient_dim(&self) -> usize {
        self.fan.ambient_dim()
    }

    pub fn canonical(&self) -> TropicalStableMap {
        let (curve, edge_data) = canonicalize(&self.curve, &self.edge_data);
        TropicalStableMap { curve, edge_data, ..self.clone() }
    }

    /// Reverses the orientation of one edge, negating its direction.
    pub fn flip_edge(&mut self, e: &str) {
        let (Some(edge), Some(d)) = (self.curve.edges.get(e), self.edge_data.get_mut(e)) else {
            return;
        };
        if !edge.is_loop() {
            let other = edge.other_end(&d.tail).to_string();
            *d = d.reversed(&other);
        }
    }

    /// Finite lengths of the bounded edges.
    pub fn length(&self, e: &str) -> Option<&Rat> {
        self.curve.edges.get(e).and_then(|x| x.length.finite())
    }

    /// Edges with zero length, in id order.
    pub fn zero_length_edges(&self) -> Vec<String> {
        self.curve
            .bounded_edges()
            .filter(|(_, e)| e.length.finite().is_some_and(Zero::is_zero))
            .map(|(id, _)| id.clone())
            .collect()
    }
}

impl CombinatorialType {
    pub fn ambient_dim(&self) -> usize {
        self.fan.ambient_dim()
    }

    pub fn canonical(&self) -> CombinatorialType {
        let (graph, edge_data) = canonicalize(&self.graph, &self.edge_data);
        CombinatorialType { graph, edge_data, ..self.clone() }
    }

    /// Number of marked legs.
    pub fn marking_count(&self) -> usize {
        self.graph.markings.len()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::curves::Length;
    use crate::exactgeom::rat;
    use alloc::vec;

    pub(crate) fn iv(v: &[i64]) -> IntVec {
        IntVec(v.to_vec())
    }

    pub(crate) fn rv(v: &[i64]) -> RatVec {
        RatVec(v.iter().map(|&x| rat(x)).collect())
    }

    /// One vertex at the origin of R^2 with the given marked rays.
    pub(crate) fn rays_map(dirs: &[&[i64]]) -> TropicalStableMap {
        let n = dirs[0].len();
        let mut curve = TropicalCurve::new().with_vertex("v", 0);
        let mut data = BTreeMap::new();
        for (i, d) in dirs.iter().enumerate() {
            let q = format!("q{}", i + 1);
            let l = format!("l{}", i + 1);
            curve = curve
                .with_vertex(&q, 0)
                .with_edge(&l, "v", &q, Length::Infinite)
                .with_marking(&format!("p{}", i + 1), &q);
            data.insert(l, EdgeDatum::new(iv(d), 1, "v"));
        }
        TropicalStableMap {
            curve,
            fan: Fan::auto_rays(n, dirs.iter().map(|d| iv(d))),
            mode: TargetMode::Embedded,
            positions: [("v".to_string(), RatVec::zeros(n))].into_iter().collect(),
            edge_data: data,
        }
    }

    #[test]
    fn three_rays_valid() {
        let m = rays_map(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(validate_map(&m, None), vec![]);
        let d = DiscreteData::of_map(&m).unwrap();
        assert_eq!(d.genus, 0);
        assert_eq!(d.marking_count(), 3);
        assert!(validate_map(&m, Some(&d)).is_empty());
        let t = combinatorial_type(&m).unwrap();
        assert_eq!(t.vertex_cones["v"], Cone::zero(2));
        let r = recession_type(&t);
        assert_eq!(r.genus, 0);
        assert_eq!(r.contacts["p3"], iv(&[-1, -1]));
    }

    #[test]
    fn unbalanced_rays() {
        let m = rays_map(&[&[1, 0], &[0, 1]]);
        let d = validate_map(&m, None);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].code, Code::Balancing);
        assert_eq!(d[0].subject, "vertex v");
        assert!(d[0].message.contains("(1,1)"));
        // 2-valent as well
        assert_eq!(d[1].code, Code::Stability);
    }

    #[test]
    fn integrality_violation() {
        let curve = TropicalCurve::new()
            .with_vertex("a", 0)
            .with_vertex("b", 0)
            .with_edge("e", "a", "b", Length::Finite(rat(1)));
        let m = TropicalStableMap {
            curve,
            fan: Fan::auto_rays(2, []),
            mode: TargetMode::Embedded,
            positions: [("a".into(), rv(&[0, 0])), ("b".into(), rv(&[1, 0]))].into_iter().collect(),
            edge_data: [("e".into(), EdgeDatum::new(iv(&[1, 0]), 2, "a"))].into_iter().collect(),
        };
        let d = validate_map(&m, None);
        assert!(d.iter().any(|x| x.code == Code::Integrality && x.subject == "edge e"));
    }

    #[test]
    fn contact_mismatch() {
        let m = rays_map(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let mut d = DiscreteData::of_map(&m).unwrap();
        d.contact.insert("p1".into(), iv(&[2, 0]));
        let diags = validate_map(&m, Some(&d));
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, Code::Contact);
    }

    #[test]
    fn strict_mode_locates_cones() {
        let mut m = rays_map(&[&[1, 0], &[0, 1], &[-1, -1]]);
        m.mode = TargetMode::Strict;
        m.fan = Fan::complete(2);
        m.fan = Fan::with_faces(
            2,
            m.fan.cones().cloned().chain([Cone::new(2, [iv(&[-1, -1])])]).collect::<Vec<_>>(),
        );
        m.positions.insert("v".into(), rv(&[3, 0]));
        let t = combinatorial_type(&m).unwrap();
        assert_eq!(t.vertex_cones["v"], Cone::new(2, [iv(&[1, 0])]));
    }

    #[test]
    fn bad_edge_data() {
        let mut m = rays_map(&[&[1, 0], &[0, 1], &[-1, -1]]);
        m.edge_data.get_mut("l1").unwrap().direction = iv(&[2, 0]);
        assert_eq!(validate_map(&m, None)[0].code, Code::BadDirection);
        let mut m = rays_map(&[&[1, 0], &[0, 1], &[-1, -1]]);
        m.edge_data.get_mut("l1").unwrap().weight = 0;
        assert_eq!(validate_map(&m, None)[0].code, Code::BadDirection);
        let mut m = rays_map(&[&[1, 0], &[0, 1], &[-1, -1]]);
        m.edge_data.get_mut("l1").unwrap().tail = "q1".into();
        assert_eq!(validate_map(&m, None)[0].code, Code::BadOrientation);
        let mut m = rays_map(&[&[1, 0], &[0, 1], &[-1, -1]]);
        m.edge_data.remove("l2");
        assert_eq!(validate_map(&m, None)[0].code, Code::MissingEdgeData);
    }

    #[test]
    fn canonical_orientation() {
        let curve = TropicalCurve::new()
            .with_vertex("a", 0)
            .with_vertex("b", 0)
            .with_edge("e", "b", "a", Length::Finite(rat(1)));
        let mut m = TropicalStableMap {
            curve,
            fan: Fan::auto_rays(2, []),
            mode: TargetMode::Embedded,
            positions: [("a".into(), rv(&[1, 0])), ("b".into(), rv(&[0, 0]))].into_iter().collect(),
            edge_data: [("e".into(), EdgeDatum::new(iv(&[1, 0]), 1, "b"))].into_iter().collect(),
        };
        let c = m.canonical();
        assert_eq!(c.curve.edges["e"].ends, ["a".to_string(), "b".to_string()]);
        assert_eq!(c.edge_data["e"].tail, "b");
        m.flip_edge("e");
        assert_eq!(m.edge_data["e"], EdgeDatum::new(iv(&[-1, 0]), 1, "a"));
        assert_eq!(m.canonical(), c);
    }
}
