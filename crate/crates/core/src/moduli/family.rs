//! One-parameter families with affine lengths and their limits at `t = 1`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::contract::contract_type_tracked;
use super::ModuliError;
use crate::curves::{contract_edge, Length};
use crate::diag::{Code, Diagnostic};
use crate::exactgeom::{ratio, Rat, RatVec};
use crate::maps::{
    combinatorial_type, validate_map, CombinatorialType, MapError, TargetMode, TropicalStableMap,
};

/// `constant + slope * t`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub constant: Rat,
    pub slope: Rat,
}

impl Affine {
    pub fn new(constant: Rat, slope: Rat) -> Self {
        Affine { constant, slope }
    }

    pub fn constant(c: Rat) -> Self {
        Affine { constant: c, slope: Rat::zero() }
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        &self.constant + &self.slope * t
    }

    fn add_scaled(&self, k: &Rat, other: &Affine) -> Affine {
        Affine { constant: &self.constant + k * &other.constant, slope: &self.slope + k * &other.slope }
    }
}

/// A combinatorial type with affine edge lengths; positions are derived from
/// the lengths and any supplied positions must agree with them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub ctype: CombinatorialType,
    pub lengths: BTreeMap<String, Affine>,
    /// Optional; the first supplied vertex anchors the derived positions.
    pub positions: BTreeMap<String, Vec<Affine>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("no length function for bounded edge {0}")]
    MissingLength(String),
    #[error("length given for {0}, which is not a bounded edge")]
    UnknownEdge(String),
    #[error("position given for {0}, which is not an inner vertex")]
    UnknownVertex(String),
    #[error("position of {0} must have one function per coordinate")]
    PositionDimension(String),
    #[error("length of edge {0} must be positive at t = 0")]
    NonPositiveLength(String),
    #[error("length of edge {0} is negative inside [0,1]")]
    NegativeLength(String),
    #[error("the cycle through edge {0} does not close for all t")]
    NotClosing(String),
    #[error("supplied position of {0} contradicts the edge lengths")]
    InconsistentPosition(String),
    #[error("vertex {0} leaves its cone along the family")]
    PositionExitsCone(String),
    #[error("parameter must lie in [0,1]")]
    ParameterRange,
    #[error("family member fails validation: {0:?}")]
    Invalid(Vec<Diagnostic>),
    #[error("disconnected type")]
    Disconnected,
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// The evaluated map together with its type; at `t = 1` the zero-length
/// edges are contracted first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    pub map: TropicalStableMap,
    pub ctype: CombinatorialType,
    pub contracted: Vec<String>,
    /// Stability findings (reported only at the endpoints of `[0,1]`).
    pub diagnostics: Vec<Diagnostic>,
}

impl Family {
    /// Affine position of every inner vertex, derived along a spanning tree.
    pub fn derived_positions(&self) -> Result<BTreeMap<String, Vec<Affine>>, FamilyError> {
        let t = &self.ctype;
        let n = t.ambient_dim();
        let inner: BTreeSet<&str> = t.graph.inner_vertices().into_iter().collect();
        let bounded: BTreeSet<&str> = t.graph.bounded_edges().map(|(e, _)| e.as_str()).collect();
        for e in &bounded {
            if !self.lengths.contains_key(*e) {
                return Err(FamilyError::MissingLength(e.to_string()));
            }
        }
        if let Some(e) = self.lengths.keys().find(|e| !bounded.contains(e.as_str())) {
            return Err(FamilyError::UnknownEdge(e.clone()));
        }
        for (v, p) in &self.positions {
            if !inner.contains(v.as_str()) {
                return Err(FamilyError::UnknownVertex(v.clone()));
            }
            if p.len() != n {
                return Err(FamilyError::PositionDimension(v.clone()));
            }
        }
        let Some(anchor) = self.positions.keys().next().map(String::as_str).or(inner.first().copied())
        else {
            return Ok(BTreeMap::new());
        };
        let start = self
            .positions
            .get(anchor)
            .cloned()
            .unwrap_or_else(|| alloc::vec![Affine::constant(Rat::zero()); n]);
        let step = |e: &str, from: &str, p: &[Affine]| -> Vec<Affine> {
            let d = &t.edge_data[e];
            let sign = if d.tail == from { Rat::one() } else { -Rat::one() };
            let l = &self.lengths[e];
            p.iter()
                .enumerate()
                .map(|(k, a)| {
                    let c = &sign * Rat::from_integer((d.weight as i64 * d.direction.0[k]).into());
                    a.add_scaled(&c, l)
                })
                .collect()
        };
        let mut pos: BTreeMap<String, Vec<Affine>> = BTreeMap::new();
        pos.insert(anchor.to_string(), start);
        let mut queue = VecDeque::from([anchor.to_string()]);
        let mut tree: BTreeSet<&str> = BTreeSet::new();
        while let Some(v) = queue.pop_front() {
            for (id, e) in t.graph.bounded_edges() {
                if e.is_loop() || !e.ends.contains(&v) {
                    continue;
                }
                let w = e.other_end(&v).to_string();
                if !pos.contains_key(&w) {
                    let p = step(id, &v, &pos[&v]);
                    pos.insert(w.clone(), p);
                    tree.insert(id);
                    queue.push_back(w);
                }
            }
        }
        if pos.len() != inner.len() {
            return Err(FamilyError::Disconnected);
        }
        for (id, e) in t.graph.bounded_edges() {
            if tree.contains(id.as_str()) || e.is_loop() {
                continue;
            }
            let tail = &t.edge_data[id].tail;
            let head = e.other_end(tail);
            if step(id, tail, &pos[tail.as_str()]) != pos[head] {
                return Err(FamilyError::NotClosing(id.clone()));
            }
        }
        let half = ratio(1, 2);
        for (v, given) in &self.positions {
            let derived = &pos[v];
            for t in [Rat::zero(), half.clone()] {
                if given.iter().zip(derived).any(|(a, b)| a.eval(&t) != b.eval(&t)) {
                    return Err(FamilyError::InconsistentPosition(v.clone()));
                }
            }
        }
        Ok(pos)
    }

    /// Checks the hypotheses of a family: lengths positive on `[0,1)` and
    /// nonnegative at 1, positions closing up, cones respected.
    pub fn check(&self) -> Result<BTreeMap<String, Vec<Affine>>, FamilyError> {
        let pos = self.derived_positions()?;
        let (zero, one) = (Rat::zero(), Rat::one());
        for (e, l) in &self.lengths {
            if l.eval(&one).is_negative() || l.eval(&zero).is_negative() {
                return Err(FamilyError::NegativeLength(e.clone()));
            }
            if !l.eval(&zero).is_positive() {
                return Err(FamilyError::NonPositiveLength(e.clone()));
            }
        }
        if self.ctype.mode == TargetMode::Strict {
            for (v, p) in &pos {
                let sigma = &self.ctype.vertex_cones[v];
                let at = |t: &Rat| RatVec(p.iter().map(|a| a.eval(t)).collect());
                if !sigma.contains_relint(&at(&zero)) || !sigma.contains(&at(&one)) {
                    return Err(FamilyError::PositionExitsCone(v.clone()));
                }
            }
        }
        Ok(pos)
    }

    /// The member at parameter `t`, with no contraction.
    pub fn member(&self, t: &Rat) -> Result<TropicalStableMap, FamilyError> {
        let pos = self.derived_positions()?;
        Ok(self.evaluate(&pos, t))
    }

    fn evaluate(&self, pos: &BTreeMap<String, Vec<Affine>>, t: &Rat) -> TropicalStableMap {
        let ct = &self.ctype;
        TropicalStableMap {
            curve: ct.graph.map_lengths(|id, _| match self.lengths.get(id) {
                Some(l) => Length::Finite(l.eval(t)),
                None => Length::Infinite,
            }),
            fan: ct.fan.clone(),
            mode: ct.mode,
            positions: pos
                .iter()
                .map(|(v, p)| (v.clone(), RatVec(p.iter().map(|a| a.eval(t)).collect())))
                .collect(),
            edge_data: ct.edge_data.clone(),
        }
    }
}

/// Evaluates the family at `t_star`. At `t_star = 1` edges of length zero
/// are contracted and the limit map is returned with its own type. TSM1 and
/// TSM2 are always enforced; TSM3 is reported at the endpoints only.
pub fn limit_of_family(fam: &Family, t_star: &Rat) -> Result<Limit, FamilyError> {
    if t_star.is_negative() || *t_star > Rat::one() {
        return Err(FamilyError::ParameterRange);
    }
    let pos = fam.check()?;
    let mut map = fam.evaluate(&pos, t_star);
    let mut contracted = Vec::new();
    if t_star.is_one() {
        contracted = map.zero_length_edges();
        let (_, whereto) = contract_type_tracked(&fam.ctype, &contracted)?;
        for e in &contracted {
            map.curve = contract_edge(&map.curve, e).map_err(|_| ModuliError::NotBounded(e.clone()))?;
            map.edge_data.remove(e);
        }
        map.positions.retain(|v, _| whereto.get(v) == Some(v));
        for d in map.edge_data.values_mut() {
            d.tail = whereto[&d.tail].clone();
        }
    }
    let endpoint = t_star.is_zero() || t_star.is_one();
    let mut diagnostics = Vec::new();
    let mut errors = Vec::new();
    for d in validate_map(&map, None) {
        if d.code == Code::Stability {
            if endpoint {
                diagnostics.push(d);
            }
        } else {
            errors.push(d);
        }
    }
    if !errors.is_empty() {
        return Err(FamilyError::Invalid(errors));
    }
    let ctype = combinatorial_type(&map)?;
    Ok(Limit { map, ctype, contracted, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::TypeGraph;
    use crate::exactgeom::{rat, Cone, Fan};
    use crate::maps::tests::iv;
    use crate::maps::EdgeDatum;
    use crate::moduli::is_face;

    /// Two trivalent vertices joined by one edge of length `1 - t`.
    fn dumbbell() -> Family {
        let mut g = TypeGraph::new().with_vertex("a", 0).with_vertex("b", 0).with_edge("e", "a", "b", ());
        let mut data: BTreeMap<String, EdgeDatum> = BTreeMap::new();
        data.insert("e".into(), EdgeDatum::new(iv(&[1, 0]), 1, "a"));
        let legs: [(&str, &str, [i64; 2]); 4] =
            [("a", "1", [-1, 1]), ("a", "2", [0, -1]), ("b", "3", [1, 1]), ("b", "4", [0, -1])];
        for (v, k, u) in legs {
            let q = alloc::format!("q{k}");
            let l = alloc::format!("l{k}");
            g = g.with_vertex(&q, 0).with_edge(&l, v, &q, ()).with_marking(&alloc::format!("p{k}"), &q);
            data.insert(l, EdgeDatum::new(iv(&u), 1, v));
        }
        let ctype = CombinatorialType {
            vertex_cones: [("a".into(), Cone::zero(2)), ("b".into(), Cone::zero(2))].into_iter().collect(),
            graph: g,
            fan: Fan::auto_rays(2, legs.iter().map(|x| iv(&x.2))),
            mode: TargetMode::Embedded,
            edge_data: data,
        };
        Family {
            ctype,
            lengths: [("e".to_string(), Affine::new(rat(1), rat(-1)))].into_iter().collect(),
            positions: BTreeMap::new(),
        }
    }

    #[test]
    fn single_edge_collapses() {
        let fam = dumbbell();
        let lim = limit_of_family(&fam, &rat(1)).unwrap();
        assert_eq!(lim.contracted, ["e".to_string()]);
        assert_eq!(lim.map.curve.inner_vertices(), ["a"]);
        assert!(lim.diagnostics.is_empty());
        assert!(is_face(&lim.ctype, &fam.ctype).unwrap().is_some());
        let mid = limit_of_family(&fam, &ratio(1, 2)).unwrap();
        assert_eq!(mid.map.positions["b"], RatVec(alloc::vec![ratio(1, 2), rat(0)]));
        assert!(mid.contracted.is_empty());
    }

    #[test]
    fn constant_family() {
        let mut fam = dumbbell();
        fam.lengths.insert("e".into(), Affine::constant(rat(2)));
        let a = limit_of_family(&fam, &rat(1)).unwrap();
        let b = limit_of_family(&fam, &rat(0)).unwrap();
        assert_eq!(a.map, b.map);
        assert_eq!(a.ctype, fam.ctype);
    }

    #[test]
    fn bad_families() {
        let mut fam = dumbbell();
        fam.lengths.insert("e".into(), Affine::new(rat(1), rat(-2)));
        assert_eq!(limit_of_family(&fam, &rat(0)), Err(FamilyError::NegativeLength("e".into())));
        fam.lengths.insert("e".into(), Affine::new(rat(0), rat(1)));
        assert_eq!(
            limit_of_family(&fam, &rat(0)),
            Err(FamilyError::NonPositiveLength("e".into()))
        );
        fam.lengths.clear();
        assert_eq!(limit_of_family(&fam, &rat(0)), Err(FamilyError::MissingLength("e".into())));
        let mut fam = dumbbell();
        fam.positions.insert("b".into(), alloc::vec![Affine::constant(rat(5)), Affine::constant(rat(0))]);
        fam.positions.insert("a".into(), alloc::vec![Affine::constant(rat(0)), Affine::constant(rat(0))]);
        assert_eq!(
            limit_of_family(&fam, &rat(0)),
            Err(FamilyError::InconsistentPosition("b".into()))
        );
        assert_eq!(limit_of_family(&dumbbell(), &rat(2)), Err(FamilyError::ParameterRange));
    }
}
