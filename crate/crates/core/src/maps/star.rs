use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{EdgeDatum, MapError, TropicalStableMap};
use crate::curves::{Length, TropicalCurve};
use crate::diag::{Code, Diagnostic};

/// The local picture at an inner vertex `v`: `v` with one marked ray per
/// half-edge, each carrying the outgoing slope of that half-edge.
///
/// Legs at `v` keep their labels. A bounded edge `e` becomes the ray `e` to
/// the marking point `{v}.{e}` with label `{v}.{e}`; the two sides of a
/// self-loop become `{e}.0` and `{e}.1`. Half-edges of zero slope are dropped
/// and reported as lints.
pub fn star(
    m: &TropicalStableMap,
    v: &str,
) -> Result<(TropicalStableMap, Vec<Diagnostic>), MapError> {
    let Some(&genus) = m.curve.vertices.get(v) else {
        return Err(MapError::UnknownVertex(v.to_string()));
    };
    if m.curve.is_marked_vertex(v) {
        return Err(MapError::MarkedVertex(v.to_string()));
    }
    let position =
        m.positions.get(v).cloned().ok_or_else(|| MapError::MissingPosition(v.to_string()))?;
    let mut curve = TropicalCurve::new().with_vertex(v, genus);
    let mut edge_data = BTreeMap::new();
    let mut lints = Vec::new();
    for h in m.curve.half_edges_at(v) {
        let edge = &m.curve.edges[&h.edge];
        let d = m.edge_data.get(&h.edge).ok_or_else(|| MapError::MissingEdgeData(h.edge.clone()))?;
        let slope = d.outgoing(edge, h.side);
        let (edge_id, point, label) = if m.curve.is_leg(&h.edge) {
            let point = edge.other_end(v).to_string();
            let label = m
                .curve
                .markings
                .iter()
                .find(|(_, x)| **x == point)
                .map(|(l, _)| l.clone())
                .unwrap_or_else(|| point.clone());
            (h.edge.clone(), point, label)
        } else if edge.is_loop() {
            let id = format!("{}.{}", h.edge, h.side);
            let point = format!("{v}.{id}");
            (id, point.clone(), point)
        } else {
            let point = format!("{v}.{}", h.edge);
            (h.edge.clone(), point.clone(), point)
        };
        if slope.is_zero() {
            lints.push(Diagnostic::lint(
                Code::ZeroDirectionRay,
                format!("edge {edge_id}"),
                "contracted half-edge dropped from the star",
            ));
            continue;
        }
        curve = curve
            .with_vertex(&point, 0)
            .with_edge(&edge_id, v, &point, Length::Infinite)
            .with_marking(&label, &point);
        let (u, w) = (slope.primitive_part().expect("nonzero slope").0, d.weight);
        edge_data.insert(edge_id, EdgeDatum::new(u, w, v));
    }
    let positions: BTreeMap<String, _> = [(v.to_string(), position)].into_iter().collect();
    Ok((
        TropicalStableMap { curve, fan: m.fan.clone(), mode: m.mode, positions, edge_data },
        lints,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::tests::rays_map;
    use crate::maps::validate_map;

    #[test]
    fn star_of_single_vertex_is_itself() {
        let m = rays_map(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let (s, lints) = star(&m, "v").unwrap();
        assert!(lints.is_empty());
        assert_eq!(s, m);
        assert!(validate_map(&s, None).is_empty());
    }

    #[test]
    fn errors() {
        let m = rays_map(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(star(&m, "zz"), Err(MapError::UnknownVertex("zz".into())));
        assert_eq!(star(&m, "q1"), Err(MapError::MarkedVertex("q1".into())));
    }
}
