//! Checks against small independent reimplementations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};
use tropmap_core::curves::{Length, TypeGraph};
use tropmap_core::exactgeom::{rat, Cone, Fan, IntVec, Rat, RatVec};
use tropmap_core::gallery::{self, Sketch};
use tropmap_core::maps::{
    combinatorial_type, type_automorphisms, CombinatorialType, EdgeDatum, TargetMode, TropicalStableMap,
};
use tropmap_core::moduli::{cone_metrics, moduli_cone};
use tropmap_core::wellspaced::{arrangement, cycle_data, enumerate_flats, is_well_spaced};

/// Rank by plain Gaussian elimination on rationals, pivoting on the first
/// nonzero entry of each column.
fn oracle_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let k = &m[r][c] / &m[rank][c];
                for j in 0..ncols {
                    let d = &k * &m[rank][j];
                    m[r][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn square_loop_rank_oracle() {
    // unknowns: x(v1..v4) in R^3, then l1..l4; rows: x_head - x_tail - l*u = 0
    let dirs = [[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]];
    let mut rows = Vec::new();
    for (e, u) in dirs.iter().enumerate() {
        let (tail, head) = (e, (e + 1) % 4);
        for k in 0..3 {
            let mut row = vec![rat(0); 16];
            row[3 * head + k] += rat(1);
            row[3 * tail + k] -= rat(1);
            row[12 + e] = rat(-u[k]);
            rows.push(row);
        }
    }
    assert_eq!(rows.len(), 12);
    let r = oracle_rank(&rows);
    assert_eq!(r, 11);
    let t = combinatorial_type(&gallery::square_loop()).unwrap();
    let mc = moduli_cone(&t);
    assert_eq!(mc.rank, r);
    assert_eq!(mc.dim, 16 - r);
    let m = cone_metrics(&t);
    assert_eq!((m.dim, m.expected_dim, m.superabundant), (5, 4, true));
}

/// Closures `span(S) ∩ W` for every subset `S` of at most `c - 1` items;
/// every flat of rank `r` is spanned by `r` of its members.
fn oracle_flats(vectors: &[RatVec], c: usize) -> BTreeSet<Vec<usize>> {
    let n = vectors.len();
    let rank = |idx: &[usize]| oracle_rank(&idx.iter().map(|&i| vectors[i].0.clone()).collect::<Vec<_>>());
    let mut subsets: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = subsets.clone();
    for _ in 1..c {
        let mut next = Vec::new();
        for s in &frontier {
            for i in s.last().map_or(0, |&l| l + 1)..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        subsets.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = BTreeSet::new();
    for s in subsets {
        let r = rank(&s);
        if r + 1 > c {
            continue;
        }
        let closed: Vec<usize> = (0..n)
            .filter(|&i| {
                let mut t = s.clone();
                t.push(i);
                rank(&t) == r
            })
            .collect();
        out.insert(closed);
    }
    out
}

fn flats_match(m: &TropicalStableMap) -> usize {
    let cd = cycle_data(m).unwrap();
    let arr = arrangement(m, &cd).unwrap();
    let expected = oracle_flats(&arr.vectors, cd.codim);
    let got: BTreeSet<Vec<usize>> = enumerate_flats(m).unwrap().into_iter().map(|f| f.zero_set).collect();
    assert_eq!(got, expected);
    got.len()
}

/// A genus zero vertex with a contracted loop and legs along `±e1, ±e2`.
fn loop_with_axes() -> TropicalStableMap {
    let m = Sketch::new(2)
        .vertex("v", 0, &[])
        .leg("v", &[1, 0])
        .leg("v", &[-1, 0])
        .leg("v", &[0, 1])
        .leg("v", &[0, -1])
        .finish();
    let mut m = m;
    m.curve = m.curve.with_edge("o", "v", "v", Length::Finite(rat(1)));
    m.edge_data.insert("o".into(), EdgeDatum::contracted(2, "v"));
    m
}

#[test]
fn flat_oracle_examples() {
    assert_eq!(flats_match(&loop_with_axes()), 3);
    // three pairwise independent directions in a quotient of dimension 2
    assert_eq!(flats_match(&gallery::speyer_tree()), 4);
    // codimension one: a single flat
    assert_eq!(flats_match(&gallery::square_loop()), 1);
    assert_eq!(flats_match(&gallery::speyer_fail()), 1);
    for t in [rat(0), rat(1)] {
        assert_eq!(flats_match(&tropmap_core::wellspaced::figure1(3, &t).unwrap()), 1);
    }
}

#[test]
fn flat_oracle_higher_codimension() {
    // figure1 in R^4 has codimension 2
    let m = tropmap_core::wellspaced::figure1(4, &rat(1)).unwrap();
    assert_eq!(cycle_data(&m).unwrap().codim, 2);
    flats_match(&m);
}

/// ⊏_H for `H = {x : normal . (x - base) = 0}`, recomputed from scratch:
/// the boundary distance multiset.
pub fn oracle_distances(m: &TropicalStableMap, normal: &RatVec) -> Vec<Rat> {
    let cd = cycle_data(m).unwrap();
    let dot = |a: &RatVec, b: &RatVec| a.0.iter().zip(&b.0).fold(Rat::zero(), |s, (x, y)| s + x * y);
    let inner_in = |v: &str| -> bool {
        match m.positions.get(v) {
            Some(p) => dot(normal, &(p - &cd.base)).is_zero(),
            None => true,
        }
    };
    let edge_in = |e: &str| -> bool {
        let edge = &m.curve.edges[e];
        edge.ends.iter().all(|v| inner_in(v)) && dot(normal, &m.edge_data[e].direction.to_rat()).is_zero()
    };
    let mut seen: BTreeSet<String> = cd.vertices.iter().cloned().collect();
    let mut dist: BTreeMap<String, Rat> = cd.vertices.iter().map(|v| (v.clone(), Rat::zero())).collect();
    let mut queue: VecDeque<String> = cd.vertices.iter().cloned().collect();
    let mut comp_edges = BTreeSet::new();
    // off the cycle the component is a forest hanging from L, so BFS
    // distances along the unique path are the intrinsic ones
    while let Some(v) = queue.pop_front() {
        for (id, e) in &m.curve.edges {
            if !e.ends.contains(&v) || !edge_in(id) {
                continue;
            }
            comp_edges.insert(id.clone());
            let w = if e.ends[0] == v { &e.ends[1] } else { &e.ends[0] };
            if seen.insert(w.clone()) {
                let l = e.length.finite().cloned().unwrap_or_else(Rat::zero);
                dist.insert(w.clone(), &dist[&v] + l);
                queue.push_back(w.clone());
            }
        }
    }
    let mut out: Vec<Rat> = seen
        .iter()
        .filter(|v| {
            m.curve.edges.iter().any(|(id, e)| e.ends.contains(v) && !comp_edges.contains(id))
        })
        .map(|v| dist[v].clone())
        .collect();
    out.sort();
    out
}

#[test]
fn subcurve_oracle_on_gallery() {
    for (name, m) in gallery::all() {
        let Ok(r) = is_well_spaced(&m) else { continue };
        for rec in &r.flats {
            assert_eq!(rec.subcurve.distances(), oracle_distances(&m, &rec.flat.normal), "{name}");
        }
    }
}

/// Counts automorphisms by backtracking over vertex images, then over edge
/// images compatible with them.
fn oracle_automorphisms(t: &CombinatorialType) -> usize {
    let vs: Vec<&String> = t.graph.vertices.keys().collect();
    let es: Vec<&String> = t.graph.edges.keys().collect();
    let label = |v: &str| t.graph.markings.iter().find(|(_, x)| x.as_str() == v).map(|(l, _)| l.clone());
    let degree = |v: &str| t.graph.edges.values().map(|e| e.ends.iter().filter(|x| x.as_str() == v).count()).sum::<usize>();
    let slope_from = |e: &str, v: &str| -> IntVec {
        let d = &t.edge_data[e];
        let s = d.slope();
        if d.tail == v { s } else { -&s }
    };
    let vertex_ok = |v: &str, w: &str| {
        t.graph.vertices[v] == t.graph.vertices[w]
            && label(v) == label(w)
            && degree(v) == degree(w)
            && t.vertex_cones.get(v) == t.vertex_cones.get(w)
    };
    let edge_ok = |phi: &BTreeMap<&str, &str>, e: &str, f: &str| {
        let (a, b) = (&t.graph.edges[e], &t.graph.edges[f]);
        let (x, y) = (phi[a.ends[0].as_str()], phi[a.ends[1].as_str()]);
        let ends_ok = (x == b.ends[0] && y == b.ends[1]) || (x == b.ends[1] && y == b.ends[0]);
        if !ends_ok || t.edge_data[e].weight != t.edge_data[f].weight {
            return false;
        }
        let (s, s2) = (slope_from(e, &a.ends[0]), slope_from(f, x));
        if a.is_loop() { s == s2 || s == -&s2 } else { s == s2 }
    };
    fn edges_rec(
        k: usize,
        es: &[&String],
        used: &mut Vec<bool>,
        ok: &dyn Fn(&str, &str) -> bool,
    ) -> usize {
        if k == es.len() {
            return 1;
        }
        let mut n = 0;
        for j in 0..es.len() {
            if !used[j] && ok(es[k], es[j]) {
                used[j] = true;
                n += edges_rec(k + 1, es, used, ok);
                used[j] = false;
            }
        }
        n
    }
    fn verts_rec<'a>(
        k: usize,
        vs: &[&'a String],
        phi: &mut BTreeMap<&'a str, &'a str>,
        ok: &dyn Fn(&str, &str) -> bool,
        leaf: &mut dyn FnMut(&BTreeMap<&'a str, &'a str>),
    ) {
        if k == vs.len() {
            leaf(phi);
            return;
        }
        for &w in vs {
            if !phi.values().any(|x| *x == w.as_str()) && ok(vs[k], w) {
                phi.insert(vs[k].as_str(), w.as_str());
                verts_rec(k + 1, vs, phi, ok, leaf);
                phi.remove(vs[k].as_str());
            }
        }
    }
    let mut count = 0;
    verts_rec(0, &vs, &mut BTreeMap::new(), &vertex_ok, &mut |phi| {
        let mut used = vec![false; es.len()];
        count += edges_rec(0, &es, &mut used, &|e, f| edge_ok(phi, e, f));
    });
    count
}

fn unmarked_type(edges: &[(&str, &str, &str, [i64; 2])]) -> CombinatorialType {
    let mut g = TypeGraph::new();
    let mut data = BTreeMap::new();
    let mut cones = BTreeMap::new();
    for (_, a, b, _) in edges {
        for v in [a, b] {
            g = g.with_vertex(v, 0);
            cones.insert(v.to_string(), Cone::zero(2));
        }
    }
    for (id, a, b, u) in edges {
        g = g.with_edge(id, a, b, ());
        let u = IntVec(u.to_vec());
        let w = if u.is_zero() { 0 } else { 1 };
        data.insert(id.to_string(), EdgeDatum::new(u, w, a));
    }
    CombinatorialType { graph: g, fan: Fan::complete(2), mode: TargetMode::Embedded, vertex_cones: cones, edge_data: data }
}

#[test]
fn automorphism_oracle() {
    let cases: Vec<CombinatorialType> = vec![
        unmarked_type(&[("e1", "a", "b", [0, 0]), ("e2", "a", "b", [0, 0]), ("e3", "b", "c", [0, 0])]),
        unmarked_type(&[("e1", "a", "b", [1, 0]), ("e2", "a", "b", [1, 0]), ("e3", "a", "b", [0, 1])]),
        unmarked_type(&[("e1", "a", "b", [1, 0]), ("e2", "b", "c", [1, 0])]),
        unmarked_type(&[("e1", "a", "b", [1, 0]), ("e2", "c", "b", [1, 0])]),
        unmarked_type(&[("e1", "a", "a", [0, 0]), ("e2", "a", "b", [0, 0]), ("e3", "b", "b", [0, 0])]),
        unmarked_type(&[("e1", "a", "a", [1, 1]), ("e2", "a", "b", [0, 0]), ("e3", "b", "b", [-1, -1])]),
        unmarked_type(&[
            ("e1", "a", "b", [0, 0]),
            ("e2", "b", "c", [0, 0]),
            ("e3", "c", "d", [0, 0]),
            ("e4", "d", "a", [0, 0]),
        ]),
        combinatorial_type(&gallery::square_loop()).unwrap(),
        combinatorial_type(&gallery::hat_demo()).unwrap(),
    ];
    for (i, t) in cases.iter().enumerate() {
        assert_eq!(type_automorphisms(t).len(), oracle_automorphisms(t), "case {i}");
    }
}

#[test]
fn oracle_rank_sanity() {
    let rows = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)], vec![rat(0), Rat::one()]];
    assert_eq!(oracle_rank(&rows), 2);
    assert!(rat(-1).is_negative());
}
