//! Builtin example maps.

pub mod random;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::curves::{Length, TropicalCurve};
use crate::exactgeom::{rat, ratio, Fan, IntVec, Rat, RatVec};
use crate::maps::{EdgeDatum, TargetMode, TropicalStableMap};
use crate::wellspaced::{figure1, hat_curve};

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 6] =
    ["figure1", "square-loop", "speyer-tree", "hat-demo", "speyer-fail", "three-rays"];

fn padded(n: usize, xs: &[i64]) -> IntVec {
    let mut v: Vec<i64> = xs.to_vec();
    v.resize(n, 0);
    IntVec(v)
}

/// Small builder for hand-made maps in `R^n`. Coordinates shorter than `n`
/// are padded with zeros; legs are numbered `l1, l2, ...` in call order with
/// marked vertices `q1, ...` and labels `p1, ...`.
#[derive(Clone, Debug)]
pub struct Sketch {
    n: usize,
    curve: TropicalCurve,
    positions: BTreeMap<String, RatVec>,
    edge_data: BTreeMap<String, EdgeDatum>,
    legs: Vec<IntVec>,
}

impl Sketch {
    pub fn new(n: usize) -> Self {
        Sketch {
            n,
            curve: TropicalCurve::new(),
            positions: BTreeMap::new(),
            edge_data: BTreeMap::new(),
            legs: Vec::new(),
        }
    }

    pub fn vertex(mut self, id: &str, genus: u32, pos: &[i64]) -> Self {
        self.curve = self.curve.with_vertex(id, genus);
        self.positions.insert(id.to_string(), padded(self.n, pos).to_rat());
        self
    }

    pub fn edge(mut self, id: &str, tail: &str, head: &str, u: &[i64], w: u32, len: Rat) -> Self {
        self.curve = self.curve.with_edge(id, tail, head, Length::Finite(len));
        self.edge_data.insert(id.to_string(), EdgeDatum::new(padded(self.n, u), w, tail));
        self
    }

    pub fn contracted(mut self, id: &str, a: &str, b: &str, len: Rat) -> Self {
        self.curve = self.curve.with_edge(id, a, b, Length::Finite(len));
        self.edge_data.insert(id.to_string(), EdgeDatum::contracted(self.n, a));
        self
    }

    pub fn leg(mut self, v: &str, u: &[i64]) -> Self {
        let k = self.legs.len() + 1;
        let (q, l) = (format!("q{k}"), format!("l{k}"));
        let u = padded(self.n, u);
        self.curve = self
            .curve
            .with_vertex(&q, 0)
            .with_edge(&l, v, &q, Length::Infinite)
            .with_marking(&format!("p{k}"), &q);
        self.edge_data.insert(l, EdgeDatum::new(u.clone(), 1, v));
        self.legs.push(u);
        self
    }

    /// Embedded-mode map; the fan is the rays spanned by the leg directions.
    pub fn finish(self) -> TropicalStableMap {
        TropicalStableMap {
            curve: self.curve,
            fan: Fan::auto_rays(self.n, self.legs),
            mode: TargetMode::Embedded,
            positions: self.positions,
            edge_data: self.edge_data,
        }
    }
}

/// One vertex at the origin with legs `(1,0), (0,1), (-1,-1)` in `R^n`.
pub fn three_rays(n: usize) -> TropicalStableMap {
    Sketch::new(n)
        .vertex("v", 0, &[])
        .leg("v", &[1, 0])
        .leg("v", &[0, 1])
        .leg("v", &[-1, -1])
        .finish()
}

/// A unit square in the plane `z = 0` of `R^3` with one leg at each corner.
/// Superabundant: the moduli cone has dimension 5, one more than expected.
pub fn square_loop() -> TropicalStableMap {
    Sketch::new(3)
        .vertex("v1", 0, &[0, 0])
        .vertex("v2", 0, &[1, 0])
        .vertex("v3", 0, &[1, 1])
        .vertex("v4", 0, &[0, 1])
        .edge("e1", "v1", "v2", &[1, 0], 1, rat(1))
        .edge("e2", "v2", "v3", &[0, 1], 1, rat(1))
        .edge("e3", "v3", "v4", &[-1, 0], 1, rat(1))
        .edge("e4", "v4", "v1", &[0, -1], 1, rat(1))
        .leg("v1", &[-1, -1])
        .leg("v2", &[1, -1])
        .leg("v3", &[1, 1])
        .leg("v4", &[-1, 1])
        .finish()
}

/// A genus one vertex at the origin of `R^2` joined by contracted edges of
/// lengths 1, 1, 2 to three tripods.
pub fn hat_demo() -> TropicalStableMap {
    let mut s = Sketch::new(2).vertex("v", 1, &[]);
    for (x, len) in [("a", 1), ("b", 1), ("c", 2)] {
        s = s
            .vertex(x, 0, &[])
            .contracted(&format!("v{x}"), "v", x, rat(len))
            .leg(x, &[1, 0])
            .leg(x, &[0, 1])
            .leg(x, &[-1, -1]);
    }
    s.finish()
}

/// [`hat_demo`] with its genus one vertex replaced by a contracted loop of
/// length 1. Boundary distances `{1, 1, 2}` on every flat.
pub fn speyer_tree() -> TropicalStableMap {
    hat_curve(&hat_demo(), &rat(1)).expect("hat_demo has a unique genus one vertex")
}

/// A trivalent triangle in `z = 0` of `R^3` whose spokes leave the plane at
/// distances 1, 2, 3. Not well-spaced.
pub fn speyer_fail() -> TropicalStableMap {
    Sketch::new(3)
        .vertex("P", 0, &[0, 0])
        .vertex("Q", 0, &[1, 0])
        .vertex("R", 0, &[0, 1])
        .vertex("P1", 0, &[-1, -1])
        .vertex("Q1", 0, &[5, -2])
        .vertex("R1", 0, &[-3, 7])
        .edge("PQ", "P", "Q", &[1, 0], 1, rat(1))
        .edge("QR", "Q", "R", &[-1, 1], 1, rat(1))
        .edge("RP", "R", "P", &[0, -1], 1, rat(1))
        .edge("sP", "P", "P1", &[-1, -1], 1, rat(1))
        .edge("sQ", "Q", "Q1", &[2, -1], 1, rat(2))
        .edge("sR", "R", "R1", &[-1, 2], 1, rat(3))
        .leg("P1", &[0, 0, 1])
        .leg("P1", &[-1, -1, -1])
        .leg("Q1", &[2, -1, 1])
        .leg("Q1", &[0, 0, -1])
        .leg("R1", &[-1, 2, 1])
        .leg("R1", &[0, 0, -1])
        .finish()
}

/// A triangle in `R^2`: its cycle spans the whole plane.
pub fn triangle_plane() -> TropicalStableMap {
    Sketch::new(2)
        .vertex("P", 0, &[0, 0])
        .vertex("Q", 0, &[1, 0])
        .vertex("R", 0, &[0, 1])
        .edge("PQ", "P", "Q", &[1, 0], 1, rat(1))
        .edge("QR", "Q", "R", &[-1, 1], 1, rat(1))
        .edge("RP", "R", "P", &[0, -1], 1, rat(1))
        .leg("P", &[-1, -1])
        .leg("Q", &[2, -1])
        .leg("R", &[-1, 2])
        .finish()
}

/// Gallery map by name; `figure1` is the member at `t = 1/2` in `R^3`.
pub fn by_name(name: &str) -> Option<TropicalStableMap> {
    Some(match name {
        "figure1" => figure1(3, &ratio(1, 2)).expect("n = 3 is supported"),
        "square-loop" => square_loop(),
        "speyer-tree" => speyer_tree(),
        "hat-demo" => hat_demo(),
        "speyer-fail" => speyer_fail(),
        "three-rays" => three_rays(2),
        _ => return None,
    })
}

/// Every gallery map, plus the hexagon family's limit at `t = 1`.
pub fn all() -> Vec<(String, TropicalStableMap)> {
    let mut out: Vec<(String, TropicalStableMap)> =
        NAMES.iter().map(|n| (n.to_string(), by_name(n).expect("listed name"))).collect();
    out.push(("figure1-limit".into(), figure1(3, &rat(1)).expect("n = 3 is supported")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::validate_map;

    #[test]
    fn gallery_validates() {
        for (name, m) in all() {
            let errs: Vec<_> = validate_map(&m, None).into_iter().filter(|d| d.is_error()).collect();
            assert!(errs.is_empty(), "{name}: {errs:?}");
        }
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn triangle_plane_validates() {
        assert!(validate_map(&triangle_plane(), None).is_empty());
    }
}
