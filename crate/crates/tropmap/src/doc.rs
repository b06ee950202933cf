//! JSON documents: fans, curves, maps, combinatorial types and families.
//!
//! Every document is a JSON object with an optional `"kind"` and
//! `"format_version"`. Output is canonical: keys sorted, ids sorted,
//! rationals in lowest terms, so re-serializing a parsed canonical document
//! reproduces it byte for byte.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use tropmap_core::curves::{Curve, Length, TropicalCurve, TypeGraph};
use tropmap_core::exactgeom::{parse_rat, Cone, Fan, IntVec, Rat, RatVec};
use tropmap_core::maps::{CombinatorialType, DiscreteData, EdgeDatum, TargetMode, TropicalStableMap};
use tropmap_core::moduli::{Affine, Family};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Fan,
    Curve,
    Map,
    Type,
    Family,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Fan => "fan",
            Kind::Curve => "curve",
            Kind::Map => "map",
            Kind::Type => "type",
            Kind::Family => "family",
        }
    }

    fn parse(s: &str) -> Option<Kind> {
        Some(match s {
            "fan" => Kind::Fan,
            "curve" => Kind::Curve,
            "map" => Kind::Map,
            "type" => Kind::Type,
            "family" => Kind::Family,
            _ => return None,
        })
    }
}

/// A map together with the discrete data it is checked against, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDoc {
    pub map: TropicalStableMap,
    pub discrete: Option<DiscreteData>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Fan(Fan),
    Curve(TropicalCurve),
    Map(MapDoc),
    Type(CombinatorialType),
    Family(Family),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Fan(_) => Kind::Fan,
            Document::Curve(_) => Kind::Curve,
            Document::Map(_) => Kind::Map,
            Document::Type(_) => Kind::Type,
            Document::Family(_) => Kind::Family,
        }
    }
}

/// A problem located by a JSON pointer into the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pointer}: {message}")]
pub struct Issue {
    pub pointer: String,
    pub message: String,
}

/// Fan used for maps and types that do not carry one.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum FanChoice {
    /// One ray per leg direction.
    #[default]
    AutoRays,
    /// Coordinate orthants.
    Complete,
    Given(Fan),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loaded {
    pub doc: Document,
    /// Non-fatal findings, such as rationals not in lowest terms.
    pub warnings: Vec<Issue>,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

struct Parser<'o> {
    warnings: Vec<Issue>,
    fan_choice: &'o FanChoice,
}

type Res<T> = Result<T, Issue>;

fn issue(pointer: &str, message: impl Into<String>) -> Issue {
    Issue { pointer: if pointer.is_empty() { "/".into() } else { pointer.into() }, message: message.into() }
}

fn child(p: &str, key: &str) -> String {
    format!("{p}/{}", escape(key))
}

fn at(p: &str, i: usize) -> String {
    format!("{p}/{i}")
}

fn object<'v>(v: &'v Value, p: &str) -> Res<&'v Map<String, Value>> {
    v.as_object().ok_or_else(|| issue(p, "expected an object"))
}

fn array<'v>(v: &'v Value, p: &str) -> Res<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| issue(p, "expected an array"))
}

fn string<'v>(v: &'v Value, p: &str) -> Res<&'v str> {
    v.as_str().ok_or_else(|| issue(p, "expected a string"))
}

fn field<'v>(o: &'v Map<String, Value>, key: &str, p: &str) -> Res<&'v Value> {
    o.get(key).ok_or_else(|| issue(p, format!("missing field {key:?}")))
}

/// Bound on lattice coordinates and weights, keeping products in `i64`.
pub const MAX_INT: i64 = 1 << 24;

/// Bound on the rays of one cone; faces are enumerated on load.
pub const MAX_RAYS: usize = 12;

fn int(v: &Value, p: &str) -> Res<i64> {
    v.as_i64()
        .filter(|x| x.abs() <= MAX_INT)
        .ok_or_else(|| issue(p, format!("expected an integer of absolute value at most {MAX_INT}")))
}

fn natural(v: &Value, p: &str) -> Res<u32> {
    v.as_u64()
        .filter(|x| *x <= MAX_INT as u64)
        .map(|x| x as u32)
        .ok_or_else(|| issue(p, format!("expected a natural number at most {MAX_INT}")))
}

fn int_vec(v: &Value, p: &str, dim: Option<usize>) -> Res<IntVec> {
    let xs = array(v, p)?;
    if let Some(n) = dim {
        if xs.len() != n {
            return Err(issue(p, format!("expected {n} coordinates, got {}", xs.len())));
        }
    }
    Ok(IntVec(xs.iter().enumerate().map(|(i, x)| int(x, &at(p, i))).collect::<Res<_>>()?))
}

fn reject_unknown(o: &Map<String, Value>, allowed: &[&str], p: &str) -> Res<()> {
    match o.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(issue(&child(p, k), "unknown field")),
        None => Ok(()),
    }
}

impl Parser<'_> {
    fn rational(&mut self, v: &Value, p: &str) -> Res<Rat> {
        let text = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() => n.to_string(),
            _ => return Err(issue(p, "expected a rational as \"p/q\" or an integer")),
        };
        let (r, canonical) = parse_rat(&text).map_err(|e| issue(p, e.to_string()))?;
        if !canonical || !v.is_string() {
            self.warnings.push(issue(p, format!("{text:?} normalized to \"{r}\"")));
        }
        Ok(r)
    }

    fn rat_vec(&mut self, v: &Value, p: &str, dim: usize) -> Res<RatVec> {
        let xs = array(v, p)?;
        if xs.len() != dim {
            return Err(issue(p, format!("expected {dim} coordinates, got {}", xs.len())));
        }
        Ok(RatVec(xs.iter().enumerate().map(|(i, x)| self.rational(x, &at(p, i))).collect::<Res<_>>()?))
    }

    fn affine(&mut self, v: &Value, p: &str) -> Res<Affine> {
        let o = object(v, p)?;
        reject_unknown(o, &["const", "slope"], p)?;
        let c = self.rational(field(o, "const", p)?, &child(p, "const"))?;
        let s = match o.get("slope") {
            Some(s) => self.rational(s, &child(p, "slope"))?,
            None => Rat::from_integer(0.into()),
        };
        Ok(Affine::new(c, s))
    }

    fn fan(&mut self, v: &Value, p: &str) -> Res<Fan> {
        let o = object(v, p)?;
        reject_unknown(o, &["kind", "format_version", "ambient_dim", "cones"], p)?;
        let dp = child(p, "ambient_dim");
        let n = field(o, "ambient_dim", p)?
            .as_u64()
            .filter(|n| (1..=64).contains(n))
            .ok_or_else(|| issue(&dp, "expected a dimension between 1 and 64"))? as usize;
        let cp = child(p, "cones");
        let mut cones = Vec::new();
        for (i, c) in array(field(o, "cones", p)?, &cp)?.iter().enumerate() {
            let ip = at(&cp, i);
            let co = object(c, &ip)?;
            reject_unknown(co, &["rays"], &ip)?;
            let rp = child(&ip, "rays");
            let raw = array(field(co, "rays", &ip)?, &rp)?;
            if raw.len() > MAX_RAYS {
                return Err(issue(&rp, format!("at most {MAX_RAYS} rays per cone")));
            }
            let rays = raw
                .iter()
                .enumerate()
                .map(|(j, r)| int_vec(r, &at(&rp, j), Some(n)))
                .collect::<Res<Vec<_>>>()?;
            cones.push(Cone::new(n, rays));
        }
        Ok(Fan::with_faces(n, cones))
    }

    fn curve<L>(
        &mut self,
        v: &Value,
        p: &str,
        mut length: impl FnMut(&mut Self, Option<&Value>, &str) -> Res<L>,
    ) -> Res<Curve<L>> {
        let o = object(v, p)?;
        reject_unknown(o, &["kind", "format_version", "vertices", "edges", "markings"], p)?;
        let mut c = Curve::<L>::new();
        let vp = child(p, "vertices");
        for (i, x) in array(field(o, "vertices", p)?, &vp)?.iter().enumerate() {
            let ip = at(&vp, i);
            let xo = object(x, &ip)?;
            reject_unknown(xo, &["id", "genus"], &ip)?;
            let id = string(field(xo, "id", &ip)?, &child(&ip, "id"))?;
            let genus = match xo.get("genus") {
                Some(g) => natural(g, &child(&ip, "genus"))?,
                None => 0,
            };
            if c.vertices.insert(id.to_string(), genus).is_some() {
                return Err(issue(&child(&ip, "id"), format!("duplicate vertex id {id:?}")));
            }
        }
        let ep = child(p, "edges");
        for (i, x) in array(field(o, "edges", p)?, &ep)?.iter().enumerate() {
            let ip = at(&ep, i);
            let xo = object(x, &ip)?;
            reject_unknown(xo, &["id", "ends", "length"], &ip)?;
            let id = string(field(xo, "id", &ip)?, &child(&ip, "id"))?;
            let np = child(&ip, "ends");
            let ends = array(field(xo, "ends", &ip)?, &np)?;
            if ends.len() != 2 {
                return Err(issue(&np, "an edge has exactly two ends"));
            }
            let mut names = [String::new(), String::new()];
            for (j, e) in ends.iter().enumerate() {
                let s = string(e, &at(&np, j))?;
                if !c.vertices.contains_key(s) {
                    return Err(issue(&at(&np, j), format!("unknown vertex {s:?}")));
                }
                names[j] = s.to_string();
            }
            let len = length(self, xo.get("length"), &child(&ip, "length"))?;
            if c.edges.contains_key(id) {
                return Err(issue(&child(&ip, "id"), format!("duplicate edge id {id:?}")));
            }
            c = c.with_edge(id, &names[0], &names[1], len);
        }
        if let Some(ms) = o.get("markings") {
            let mp = child(p, "markings");
            let mut seen = BTreeSet::new();
            for (i, x) in array(ms, &mp)?.iter().enumerate() {
                let ip = at(&mp, i);
                let xo = object(x, &ip)?;
                reject_unknown(xo, &["label", "vertex"], &ip)?;
                let label = string(field(xo, "label", &ip)?, &child(&ip, "label"))?;
                let vertex = string(field(xo, "vertex", &ip)?, &child(&ip, "vertex"))?;
                if !c.vertices.contains_key(vertex) {
                    return Err(issue(&child(&ip, "vertex"), format!("unknown vertex {vertex:?}")));
                }
                if !seen.insert(label.to_string()) {
                    return Err(issue(&child(&ip, "label"), format!("duplicate label {label:?}")));
                }
                c = c.with_marking(label, vertex);
            }
        }
        Ok(c)
    }

    fn metric_curve(&mut self, v: &Value, p: &str) -> Res<TropicalCurve> {
        self.curve(v, p, |me, l, lp| {
            let l = l.ok_or_else(|| issue(lp, "missing edge length"))?;
            if l.as_str() == Some("inf") {
                return Ok(Length::Infinite);
            }
            Ok(Length::Finite(me.rational(l, lp)?))
        })
    }

    fn type_graph(&mut self, v: &Value, p: &str) -> Res<TypeGraph> {
        self.curve(v, p, |_, l, lp| match l {
            None => Ok(()),
            Some(_) => Err(issue(lp, "a type carries no edge lengths")),
        })
    }

    fn mode(&mut self, o: &Map<String, Value>, p: &str) -> Res<TargetMode> {
        match o.get("mode") {
            None => Ok(TargetMode::Embedded),
            Some(m) => match string(m, &child(p, "mode"))? {
                "embedded" => Ok(TargetMode::Embedded),
                "strict" => Ok(TargetMode::Strict),
                other => Err(issue(&child(p, "mode"), format!("unknown mode {other:?}"))),
            },
        }
    }

    fn fan_or_default<L>(
        &mut self,
        o: &Map<String, Value>,
        p: &str,
        edge_data: &BTreeMap<String, EdgeDatum>,
        graph: &Curve<L>,
    ) -> Res<Fan> {
        if let Some(f) = o.get("fan") {
            return self.fan(f, &child(p, "fan"));
        }
        let n = edge_data.values().map(|d| d.direction.dim()).next().ok_or_else(|| {
            issue(p, "cannot infer the ambient dimension without a fan or edge data")
        })?;
        Ok(match self.fan_choice {
            FanChoice::AutoRays => Fan::auto_rays(
                n,
                edge_data.iter().filter(|(e, _)| graph.is_leg(e)).map(|(_, d)| d.direction.clone()),
            ),
            FanChoice::Complete => Fan::complete(n),
            FanChoice::Given(f) => f.clone(),
        })
    }

    /// Edge data; the dimension comes from the fan if present, else from the
    /// first entry.
    fn edge_data<L>(
        &mut self,
        o: &Map<String, Value>,
        p: &str,
        graph: &Curve<L>,
        dim: Option<usize>,
    ) -> Res<BTreeMap<String, EdgeDatum>> {
        let dp = child(p, "edge_data");
        let mut out = BTreeMap::new();
        let Some(d) = o.get("edge_data") else { return Ok(out) };
        let mut dim = dim;
        for (e, x) in object(d, &dp)? {
            let ep = child(&dp, e);
            let Some(edge) = graph.edges.get(e) else {
                return Err(issue(&ep, format!("unknown edge {e:?}")));
            };
            let xo = object(x, &ep)?;
            reject_unknown(xo, &["u", "w", "tail"], &ep)?;
            let u = int_vec(field(xo, "u", &ep)?, &child(&ep, "u"), dim)?;
            dim = Some(u.dim());
            let w = natural(field(xo, "w", &ep)?, &child(&ep, "w"))?;
            let tp = child(&ep, "tail");
            let tail = string(field(xo, "tail", &ep)?, &tp)?;
            if !edge.ends.iter().any(|x| x == tail) {
                return Err(issue(&tp, format!("{tail:?} is not an end of edge {e:?}")));
            }
            out.insert(e.clone(), EdgeDatum::new(u, w, tail));
        }
        Ok(out)
    }

    fn fan_dim(&mut self, o: &Map<String, Value>, p: &str) -> Res<Option<Fan>> {
        o.get("fan").map(|f| self.fan(f, &child(p, "fan"))).transpose()
    }

    fn map(&mut self, v: &Value, p: &str) -> Res<MapDoc> {
        let o = object(v, p)?;
        reject_unknown(
            o,
            &["kind", "format_version", "fan", "curve", "positions", "edge_data", "mode", "discrete"],
            p,
        )?;
        let curve = self.metric_curve(field(o, "curve", p)?, &child(p, "curve"))?;
        let given = self.fan_dim(o, p)?;
        let edge_data = self.edge_data(o, p, &curve, given.as_ref().map(Fan::ambient_dim))?;
        let fan = match given {
            Some(f) => f,
            None => self.fan_or_default(o, p, &edge_data, &curve)?,
        };
        let n = fan.ambient_dim();
        if let Some((e, _)) = edge_data.iter().find(|(_, d)| d.direction.dim() != n) {
            return Err(issue(&child(&child(&child(p, "edge_data"), e), "u"), format!("expected {n} coordinates")));
        }
        let mode = self.mode(o, p)?;
        let mut positions = BTreeMap::new();
        if let Some(ps) = o.get("positions") {
            let pp = child(p, "positions");
            for (vid, x) in object(ps, &pp)? {
                let vp = child(&pp, vid);
                if !curve.vertices.contains_key(vid) {
                    return Err(issue(&vp, format!("unknown vertex {vid:?}")));
                }
                positions.insert(vid.clone(), self.rat_vec(x, &vp, n)?);
            }
        }
        let discrete = match o.get("discrete") {
            None => None,
            Some(d) => Some(self.discrete(d, &child(p, "discrete"), n, &curve)?),
        };
        Ok(MapDoc { map: TropicalStableMap { curve, fan, mode, positions, edge_data }, discrete })
    }

    fn discrete(&mut self, v: &Value, p: &str, n: usize, curve: &TropicalCurve) -> Res<DiscreteData> {
        let o = object(v, p)?;
        reject_unknown(o, &["genus", "contact"], p)?;
        let genus = natural(field(o, "genus", p)?, &child(p, "genus"))?;
        let cp = child(p, "contact");
        let mut contact = BTreeMap::new();
        for (label, x) in object(field(o, "contact", p)?, &cp)? {
            if !curve.markings.contains_key(label) {
                return Err(issue(&child(&cp, label), format!("unknown marking {label:?}")));
            }
            contact.insert(label.clone(), int_vec(x, &child(&cp, label), Some(n))?);
        }
        Ok(DiscreteData { genus, contact })
    }

    fn ctype(&mut self, v: &Value, p: &str) -> Res<CombinatorialType> {
        let o = object(v, p)?;
        reject_unknown(
            o,
            &["kind", "format_version", "fan", "curve", "edge_data", "mode", "vertex_cones"],
            p,
        )?;
        let graph = self.type_graph(field(o, "curve", p)?, &child(p, "curve"))?;
        let given = self.fan_dim(o, p)?;
        let edge_data = self.edge_data(o, p, &graph, given.as_ref().map(Fan::ambient_dim))?;
        let fan = match given {
            Some(f) => f,
            None => self.fan_or_default(o, p, &edge_data, &graph)?,
        };
        let n = fan.ambient_dim();
        if let Some((e, _)) = edge_data.iter().find(|(_, d)| d.direction.dim() != n) {
            return Err(issue(&child(&child(&child(p, "edge_data"), e), "u"), format!("expected {n} coordinates")));
        }
        let mode = self.mode(o, p)?;
        let mut vertex_cones: BTreeMap<String, Cone> =
            graph.inner_vertices().into_iter().map(|v| (v.to_string(), Cone::zero(n))).collect();
        if let Some(vc) = o.get("vertex_cones") {
            let vp = child(p, "vertex_cones");
            for (vid, x) in object(vc, &vp)? {
                let xp = child(&vp, vid);
                if !vertex_cones.contains_key(vid) {
                    return Err(issue(&xp, format!("{vid:?} is not an inner vertex")));
                }
                let rays = array(x, &xp)?
                    .iter()
                    .enumerate()
                    .map(|(j, r)| int_vec(r, &at(&xp, j), Some(n)))
                    .collect::<Res<Vec<_>>>()?;
                vertex_cones.insert(vid.clone(), Cone::new(n, rays));
            }
        }
        Ok(CombinatorialType { graph, fan, mode, vertex_cones, edge_data })
    }

    fn family(&mut self, v: &Value, p: &str) -> Res<Family> {
        let o = object(v, p)?;
        reject_unknown(o, &["kind", "format_version", "type", "lengths", "positions"], p)?;
        let ctype = self.ctype(field(o, "type", p)?, &child(p, "type"))?;
        let lp = child(p, "lengths");
        let mut lengths = BTreeMap::new();
        for (e, x) in object(field(o, "lengths", p)?, &lp)? {
            let ep = child(&lp, e);
            if !ctype.graph.bounded_edges().any(|(id, _)| id == e) {
                return Err(issue(&ep, format!("{e:?} is not a bounded edge")));
            }
            lengths.insert(e.clone(), self.affine(x, &ep)?);
        }
        let mut positions = BTreeMap::new();
        if let Some(ps) = o.get("positions") {
            let pp = child(p, "positions");
            let n = ctype.ambient_dim();
            for (vid, x) in object(ps, &pp)? {
                let vp = child(&pp, vid);
                if !ctype.vertex_cones.contains_key(vid) {
                    return Err(issue(&vp, format!("{vid:?} is not an inner vertex")));
                }
                let xs = array(x, &vp)?;
                if xs.len() != n {
                    return Err(issue(&vp, format!("expected {n} coordinates, got {}", xs.len())));
                }
                let fs = xs.iter().enumerate().map(|(i, a)| self.affine(a, &at(&vp, i))).collect::<Res<_>>()?;
                positions.insert(vid.clone(), fs);
            }
        }
        Ok(Family { ctype, lengths, positions })
    }
}

fn infer_kind(o: &Map<String, Value>) -> Option<Kind> {
    if o.contains_key("lengths") && o.contains_key("type") {
        Some(Kind::Family)
    } else if o.contains_key("cones") {
        Some(Kind::Fan)
    } else if o.contains_key("positions") {
        Some(Kind::Map)
    } else if o.contains_key("vertex_cones") {
        Some(Kind::Type)
    } else if o.contains_key("curve") {
        Some(Kind::Map)
    } else if o.contains_key("vertices") {
        Some(Kind::Curve)
    } else {
        None
    }
}

/// Parses a document from JSON text.
pub fn parse_document(text: &str, fan_choice: &FanChoice) -> Result<Loaded, Issue> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| issue("", format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column())))?;
    let o = object(&value, "")?;
    if let Some(fv) = o.get("format_version") {
        let s = string(fv, "/format_version")?;
        if s != FORMAT_VERSION {
            return Err(issue("/format_version", format!("unsupported format version {s:?}")));
        }
    }
    let kind = match o.get("kind") {
        Some(k) => {
            let s = string(k, "/kind")?;
            Kind::parse(s).ok_or_else(|| issue("/kind", format!("unknown kind {s:?}")))?
        }
        None => infer_kind(o).ok_or_else(|| issue("", "cannot tell the document kind; add \"kind\""))?,
    };
    let mut p = Parser { warnings: Vec::new(), fan_choice };
    let doc = match kind {
        Kind::Fan => Document::Fan(p.fan(&value, "")?),
        Kind::Curve => Document::Curve(p.metric_curve(&value, "")?),
        Kind::Map => Document::Map(p.map(&value, "")?),
        Kind::Type => Document::Type(p.ctype(&value, "")?),
        Kind::Family => Document::Family(p.family(&value, "")?),
    };
    Ok(Loaded { doc, warnings: p.warnings, sha256: sha256_hex(text.as_bytes()) })
}

fn rat_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn int_vec_json(v: &IntVec) -> Value {
    Value::Array(v.0.iter().map(|x| json!(x)).collect())
}

pub fn rat_vec_json(v: &RatVec) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn fan_json(f: &Fan) -> Value {
    let cones: Vec<Value> =
        f.cones().map(|c| json!({ "rays": c.rays().iter().map(int_vec_json).collect::<Vec<_>>() })).collect();
    json!({ "ambient_dim": f.ambient_dim(), "cones": cones })
}

fn curve_json<L>(c: &Curve<L>, length: impl Fn(&L) -> Option<Value>) -> Value {
    let vertices: Vec<Value> = c.vertices.iter().map(|(id, g)| json!({ "id": id, "genus": g })).collect();
    let edges: Vec<Value> = c
        .edges
        .iter()
        .map(|(id, e)| {
            let mut o = json!({ "id": id, "ends": [e.ends[0], e.ends[1]] });
            if let Some(l) = length(&e.length) {
                o["length"] = l;
            }
            o
        })
        .collect();
    let markings: Vec<Value> =
        c.markings.iter().map(|(l, v)| json!({ "label": l, "vertex": v })).collect();
    json!({ "vertices": vertices, "edges": edges, "markings": markings })
}

pub fn curve_json_metric(c: &TropicalCurve) -> Value {
    curve_json(c, |l| {
        Some(match l {
            Length::Finite(r) => rat_json(r),
            Length::Infinite => json!("inf"),
        })
    })
}

fn edge_data_json(d: &BTreeMap<String, EdgeDatum>) -> Value {
    Value::Object(
        d.iter()
            .map(|(e, x)| (e.clone(), json!({ "u": int_vec_json(&x.direction), "w": x.weight, "tail": x.tail })))
            .collect(),
    )
}

fn affine_json(a: &Affine) -> Value {
    json!({ "const": rat_json(&a.constant), "slope": rat_json(&a.slope) })
}

fn with_header(kind: Kind, mut v: Value) -> Value {
    v["kind"] = json!(kind.as_str());
    v["format_version"] = json!(FORMAT_VERSION);
    v
}

pub fn map_json(m: &TropicalStableMap, discrete: Option<&DiscreteData>) -> Value {
    let positions: Map<String, Value> =
        m.positions.iter().map(|(v, x)| (v.clone(), rat_vec_json(x))).collect();
    let mut v = json!({
        "fan": fan_json(&m.fan),
        "curve": curve_json_metric(&m.curve),
        "positions": positions,
        "edge_data": edge_data_json(&m.edge_data),
        "mode": m.mode.as_str(),
    });
    if let Some(d) = discrete {
        let contact: Map<String, Value> =
            d.contact.iter().map(|(l, c)| (l.clone(), int_vec_json(c))).collect();
        v["discrete"] = json!({ "genus": d.genus, "contact": contact });
    }
    v
}

pub fn type_json(t: &CombinatorialType) -> Value {
    let cones: Map<String, Value> = t
        .vertex_cones
        .iter()
        .map(|(v, c)| (v.clone(), Value::Array(c.rays().iter().map(int_vec_json).collect())))
        .collect();
    json!({
        "fan": fan_json(&t.fan),
        "curve": curve_json(&t.graph, |_| None),
        "edge_data": edge_data_json(&t.edge_data),
        "mode": t.mode.as_str(),
        "vertex_cones": cones,
    })
}

pub fn family_json(f: &Family) -> Value {
    let lengths: Map<String, Value> = f.lengths.iter().map(|(e, a)| (e.clone(), affine_json(a))).collect();
    let positions: Map<String, Value> = f
        .positions
        .iter()
        .map(|(v, p)| (v.clone(), Value::Array(p.iter().map(affine_json).collect())))
        .collect();
    json!({ "type": type_json(&f.ctype), "lengths": lengths, "positions": positions })
}

pub fn document_json(doc: &Document) -> Value {
    let body = match doc {
        Document::Fan(f) => fan_json(f),
        Document::Curve(c) => curve_json_metric(c),
        Document::Map(m) => map_json(&m.map, m.discrete.as_ref()),
        Document::Type(t) => type_json(t),
        Document::Family(f) => family_json(f),
    };
    with_header(doc.kind(), body)
}

/// Canonical text; `pretty` indents, otherwise a single line. Ends in a newline.
pub fn render_value(v: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(v).expect("values serialize")
    } else {
        serde_json::to_string(v).expect("values serialize")
    };
    s.push('\n');
    s
}

pub fn render(doc: &Document, pretty: bool) -> String {
    render_value(&document_json(doc), pretty)
}
