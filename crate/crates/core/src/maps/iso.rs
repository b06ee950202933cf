//! Isomorphisms of decorated graphs by backtracking.
//!
//! A decorated graph is a curve together with edge data. An isomorphism is a
//! vertex bijection that fixes marking labels and genera, plus an edge
//! bijection over it that preserves weights and directions; an edge may be
//! matched against its reverse exactly when its direction is negated.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::{CombinatorialType, EdgeDatum};
use crate::curves::Curve;
use crate::exactgeom::IntVec;

/// A decorated graph seen by the search.
pub struct Decorated<'a, L> {
    pub graph: &'a Curve<L>,
    pub data: &'a BTreeMap<String, EdgeDatum>,
}

impl<L> Clone for Decorated<'_, L> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<L> Copy for Decorated<'_, L> {}

/// Vertex and edge bijections; `edges[e] = (image, reversed)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Isomorphism {
    pub vertices: BTreeMap<String, String>,
    pub edges: BTreeMap<String, (String, bool)>,
}

pub fn identity<L>(g: &Curve<L>) -> Isomorphism {
    Isomorphism {
        vertices: g.vertices.keys().map(|v| (v.clone(), v.clone())).collect(),
        edges: g.edges.keys().map(|e| (e.clone(), (e.clone(), false))).collect(),
    }
}

/// `a` after `b`.
pub fn compose(a: &Isomorphism, b: &Isomorphism) -> Isomorphism {
    Isomorphism {
        vertices: b.vertices.iter().map(|(k, v)| (k.clone(), a.vertices[v].clone())).collect(),
        edges: b
            .edges
            .iter()
            .map(|(k, (e, r))| {
                let (e2, r2) = &a.edges[e];
                (k.clone(), (e2.clone(), r ^ r2))
            })
            .collect(),
    }
}

pub fn inverse(a: &Isomorphism) -> Isomorphism {
    Isomorphism {
        vertices: a.vertices.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
        edges: a.edges.iter().map(|(k, (e, r))| (e.clone(), (k.clone(), *r))).collect(),
    }
}

/// Decoration of an edge read from endpoint `from`: weight and direction
/// pointing away from `from`. Loops use the larger of `u` and `-u`.
fn key<L>(g: Decorated<'_, L>, e: &str, from: &str) -> (u32, IntVec) {
    let d = &g.data[e];
    let edge = &g.graph.edges[e];
    let u = if edge.is_loop() {
        core::cmp::max(d.direction.clone(), -&d.direction)
    } else if d.tail == from {
        d.direction.clone()
    } else {
        -&d.direction
    };
    (d.weight, u)
}

struct Side<'a, L> {
    g: Decorated<'a, L>,
    label: BTreeMap<&'a str, &'a str>,
    /// unordered endpoint pair -> edges
    between: BTreeMap<(&'a str, &'a str), Vec<&'a str>>,
}

fn pair<'a>(a: &'a str, b: &'a str) -> (&'a str, &'a str) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl<'a, L> Side<'a, L> {
    fn new(g: Decorated<'a, L>) -> Self {
        let label = g.graph.markings.iter().map(|(l, v)| (v.as_str(), l.as_str())).collect();
        let mut between: BTreeMap<(&str, &str), Vec<&str>> = BTreeMap::new();
        for (id, e) in &g.graph.edges {
            between.entry(pair(&e.ends[0], &e.ends[1])).or_default().push(id);
        }
        Side { g, label, between }
    }

    fn edges(&self, a: &'a str, b: &'a str) -> &[&'a str] {
        self.between.get(&pair(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    fn keys(&self, a: &'a str, b: &'a str) -> Vec<(u32, IntVec)> {
        let mut k: Vec<_> = self.edges(a, b).iter().map(|e| key(self.g, e, a)).collect();
        k.sort();
        k
    }
}

struct Search<'a, 'f, L, M> {
    a: Side<'a, L>,
    b: Side<'a, M>,
    order: Vec<&'a str>,
    vertex_ok: &'f dyn Fn(&str, &str) -> bool,
    map: BTreeMap<&'a str, &'a str>,
    used: BTreeSet<&'a str>,
}

impl<'a, L, M> Search<'a, '_, L, M> {
    fn compatible(&self, x: &'a str, y: &'a str) -> bool {
        let (ga, gb) = (self.a.g.graph, self.b.g.graph);
        ga.vertices[x] == gb.vertices[y]
            && self.a.label.get(x) == self.b.label.get(y)
            && ga.valence(x) == gb.valence(y)
            && (self.vertex_ok)(x, y)
    }

    fn consistent(&self, x: &'a str, y: &'a str) -> bool {
        if self.a.keys(x, x) != self.b.keys(y, y) {
            return false;
        }
        self.map.iter().all(|(&x2, &y2)| self.a.keys(x, x2) == self.b.keys(y, y2))
    }

    fn assign(&mut self, i: usize, visit: &mut dyn FnMut(&Isomorphism) -> bool) -> bool {
        if i == self.order.len() {
            return self.edge_bijections(visit);
        }
        let x = self.order[i];
        let candidates: Vec<&'a str> = self
            .b
            .g
            .graph
            .vertices
            .keys()
            .map(String::as_str)
            .filter(|y| !self.used.contains(y))
            .collect();
        for y in candidates {
            if !self.compatible(x, y) || !self.consistent(x, y) {
                continue;
            }
            self.map.insert(x, y);
            self.used.insert(y);
            let go_on = self.assign(i + 1, visit);
            self.map.remove(x);
            self.used.remove(y);
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Enumerates every edge bijection over the current vertex bijection.
    fn edge_bijections(&self, visit: &mut dyn FnMut(&Isomorphism) -> bool) -> bool {
        // one block per (A pair, key): A edges and the B edges they may hit
        let mut blocks: Vec<(Vec<(&str, &str)>, Vec<&str>, &str, &str)> = Vec::new();
        for (&(x1, x2), es) in &self.a.between {
            let (y1, y2) = (self.map[x1], self.map[x2]);
            let mut by_key: BTreeMap<(u32, IntVec), (Vec<(&str, &str)>, Vec<&str>)> =
                BTreeMap::new();
            for &e in es {
                by_key.entry(key(self.a.g, e, x1)).or_default().0.push((e, x1));
            }
            for &f in self.b.edges(y1, y2) {
                by_key.entry(key(self.b.g, f, y1)).or_default().1.push(f);
            }
            for (_, (ae, bf)) in by_key {
                blocks.push((ae, bf, x1, y1));
            }
        }
        let mut iso = Isomorphism {
            vertices: self.map.iter().map(|(k, v)| (String::from(*k), String::from(*v))).collect(),
            edges: BTreeMap::new(),
        };
        self.fill(&blocks, 0, &mut iso, visit)
    }

    #[allow(clippy::type_complexity)]
    fn fill(
        &self,
        blocks: &[(Vec<(&str, &str)>, Vec<&str>, &str, &str)],
        k: usize,
        iso: &mut Isomorphism,
        visit: &mut dyn FnMut(&Isomorphism) -> bool,
    ) -> bool {
        let Some((ae, bf, x1, y1)) = blocks.get(k) else {
            return visit(iso);
        };
        let mut perm: Vec<usize> = (0..bf.len()).collect();
        permutations(&mut perm, 0, &mut |p| {
            for (i, &(e, _)) in ae.iter().enumerate() {
                let f = bf[p[i]];
                let ea = &self.a.g.graph.edges[e];
                let rev = if ea.is_loop() {
                    false
                } else {
                    (self.a.g.data[e].tail == *x1) != (self.b.g.data[f].tail == *y1)
                };
                iso.edges.insert(String::from(e), (String::from(f), rev));
            }
            self.fill(blocks, k + 1, iso, visit)
        })
    }
}

/// Calls `f` on every permutation of `p[start..]`; stops when `f` does.
fn permutations(p: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if start + 1 >= p.len() {
        return f(p);
    }
    for i in start..p.len() {
        p.swap(start, i);
        let go_on = permutations(p, start + 1, f);
        p.swap(start, i);
        if !go_on {
            return false;
        }
    }
    true
}

/// Visits every decorated isomorphism from `a` to `b` whose vertex bijection
/// also satisfies `vertex_ok`. The visitor returns `false` to stop.
pub fn isomorphisms<L, M>(
    a: Decorated<'_, L>,
    b: Decorated<'_, M>,
    vertex_ok: &dyn Fn(&str, &str) -> bool,
    visit: &mut dyn FnMut(&Isomorphism) -> bool,
) {
    let (ga, gb) = (a.graph, b.graph);
    if ga.vertices.len() != gb.vertices.len()
        || ga.edges.len() != gb.edges.len()
        || ga.markings.keys().ne(gb.markings.keys())
        || ga.edges.keys().any(|e| !a.data.contains_key(e))
        || gb.edges.keys().any(|e| !b.data.contains_key(e))
    {
        return;
    }
    // marked vertices first, then breadth first so neighbours get pinned early
    let mut order: Vec<&str> = ga.markings.values().map(String::as_str).collect();
    let mut seen: BTreeSet<&str> = order.iter().copied().collect();
    let mut queue: Vec<&str> = order.clone();
    let mut head = 0;
    loop {
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for e in ga.edges.values() {
                if e.ends.iter().any(|x| x == v) {
                    let w = e.other_end(v);
                    if seen.insert(w) {
                        order.push(w);
                        queue.push(w);
                    }
                }
            }
        }
        match ga.vertices.keys().find(|v| !seen.contains(v.as_str())) {
            Some(v) => {
                seen.insert(v);
                order.push(v);
                queue.push(v);
            }
            None => break,
        }
    }
    let mut s = Search {
        a: Side::new(a),
        b: Side::new(b),
        order,
        vertex_ok,
        map: BTreeMap::new(),
        used: BTreeSet::new(),
    };
    s.assign(0, visit);
}

/// All automorphisms of the type: markings fixed, genera, cones and edge
/// decorations preserved. Sorted, identity included.
pub fn type_automorphisms(t: &CombinatorialType) -> Vec<Isomorphism> {
    let g = Decorated { graph: &t.graph, data: &t.edge_data };
    let same_cone = |x: &str, y: &str| t.vertex_cones.get(x) == t.vertex_cones.get(y);
    let mut out = Vec::new();
    isomorphisms(g, g, &same_cone, &mut |iso| {
        out.push(iso.clone());
        true
    });
    out.sort();
    out
}
