use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::ModuliError;
use crate::curves::contract_edge_tracked;
use crate::exactgeom::Cone;
use crate::maps::{isomorphisms, CombinatorialType, Decorated};

/// Largest number of bounded edges [`is_face`] will search over.
pub const FACE_EDGE_CAP: usize = 16;

/// Contracts the listed bounded edges. A merged vertex gets the largest cone
/// of the fan that is a face of the cones of all the vertices merged into it.
/// Also returns where every original vertex went.
pub fn contract_type_tracked(
    t: &CombinatorialType,
    edges: &[String],
) -> Result<(CombinatorialType, BTreeMap<String, String>), ModuliError> {
    let mut graph = t.graph.clone();
    let mut cones = t.vertex_cones.clone();
    let mut edge_data = t.edge_data.clone();
    let mut whereto: BTreeMap<String, String> =
        t.graph.vertices.keys().map(|v| (v.clone(), v.clone())).collect();
    for e in edges {
        if !graph.bounded_edges().any(|(id, _)| id == e) {
            return Err(ModuliError::NotBounded(e.clone()));
        }
        let (g, merged) =
            contract_edge_tracked(&graph, e).map_err(|_| ModuliError::NotBounded(e.clone()))?;
        graph = g;
        edge_data.remove(e);
        if let Some((gone, keep)) = merged {
            let (a, b) = (&cones[&gone], &cones[&keep]);
            let face = if a == b {
                a.clone()
            } else {
                largest_common_face(t, a, b)
                    .ok_or_else(|| ModuliError::NoCommonFace(gone.clone(), keep.clone()))?
            };
            cones.remove(&gone);
            cones.insert(keep.clone(), face);
            for target in whereto.values_mut() {
                if *target == gone {
                    *target = keep.clone();
                }
            }
            for d in edge_data.values_mut() {
                if d.tail == gone {
                    d.tail = keep.clone();
                }
            }
        }
    }
    Ok((
        CombinatorialType {
            graph,
            fan: t.fan.clone(),
            mode: t.mode,
            vertex_cones: cones,
            edge_data,
        },
        whereto,
    ))
}

fn largest_common_face(t: &CombinatorialType, a: &Cone, b: &Cone) -> Option<Cone> {
    if a.is_zero() || b.is_zero() {
        return Some(Cone::zero(t.ambient_dim()));
    }
    t.fan.largest_common_face(a, b)
}

pub fn contract_type(
    t: &CombinatorialType,
    edges: &[String],
) -> Result<CombinatorialType, ModuliError> {
    contract_type_tracked(t, edges).map(|(c, _)| c)
}

/// An edge contraction followed by a decorated isomorphism, exhibiting the
/// cone of one type as a face of the cone of another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWitness {
    /// Bounded edges of the larger type that shrink to points.
    pub contracted: Vec<String>,
    /// Vertex of the larger type -> vertex of the face type.
    pub vertex_map: BTreeMap<String, String>,
    /// Surviving edge -> (edge of the face type, orientation reversed).
    pub edge_map: BTreeMap<String, (String, bool)>,
    /// (vertex, its cone, image vertex, image cone), one per inner vertex;
    /// the image cone is a face of the vertex cone.
    pub cone_faces: Vec<(String, Cone, String, Cone)>,
}

fn subsets(items: &[String], k: usize, start: usize, cur: &mut Vec<String>, out: &mut dyn FnMut(&[String]) -> bool) -> bool {
    if cur.len() == k {
        return out(cur);
    }
    for i in start..items.len() {
        if items.len() - i < k - cur.len() {
            break;
        }
        cur.push(items[i].clone());
        let go_on = subsets(items, k, i + 1, cur, out);
        cur.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Whether the cone of `face` is a face of the cone of `of`: some set of
/// bounded edges of `of` contracts onto a type isomorphic to `face`, with
/// every cone of `face` a face of the cones of the vertices over it.
pub fn is_face(
    face: &CombinatorialType,
    of: &CombinatorialType,
) -> Result<Option<FaceWitness>, ModuliError> {
    let bounded: Vec<String> = of.graph.bounded_edges().map(|(id, _)| id.clone()).collect();
    if bounded.len() > FACE_EDGE_CAP {
        return Err(ModuliError::TooManyEdges { cap: FACE_EDGE_CAP, got: bounded.len() });
    }
    let kf = face.graph.bounded_edges().count();
    if kf > bounded.len()
        || face.ambient_dim() != of.ambient_dim()
        || face.graph.markings.keys().ne(of.graph.markings.keys())
        || face.graph.genus().ok() != of.graph.genus().ok()
    {
        return Ok(None);
    }
    let k = bounded.len() - kf;
    let mut found: Option<FaceWitness> = None;
    subsets(&bounded, k, 0, &mut Vec::new(), &mut |chosen| {
        let Ok((small, whereto)) = contract_type_tracked(of, chosen) else {
            return true;
        };
        let vertex_ok = |x: &str, y: &str| {
            if small.graph.is_marked_vertex(x) {
                return true;
            }
            let Some(cy) = face.vertex_cones.get(y) else { return false };
            whereto
                .iter()
                .filter(|(_, t)| t.as_str() == x)
                .all(|(v, _)| of.vertex_cones.get(v).is_some_and(|cv| cy.is_face_of(cv)))
        };
        let a = Decorated { graph: &small.graph, data: &small.edge_data };
        let b = Decorated { graph: &face.graph, data: &face.edge_data };
        isomorphisms(a, b, &vertex_ok, &mut |iso| {
            let vertex_map: BTreeMap<String, String> = whereto
                .iter()
                .map(|(v, x)| (v.clone(), iso.vertices[x].clone()))
                .collect();
            let cone_faces = of
                .vertex_cones
                .iter()
                .map(|(v, c)| {
                    let y = &vertex_map[v];
                    (v.clone(), c.clone(), y.clone(), face.vertex_cones[y].clone())
                })
                .collect();
            found = Some(FaceWitness {
                contracted: chosen.to_vec(),
                vertex_map,
                edge_map: iso.edges.clone(),
                cone_faces,
            });
            false
        });
        found.is_none()
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::combinatorial_type;
    use crate::maps::tests::rays_map;
    use crate::moduli::moduli_cone;
    use crate::moduli::tests::square_type;
    use alloc::string::ToString;

    #[test]
    fn contract_one_and_all() {
        let t = square_type();
        let tri = contract_type(&t, &["e1".to_string()]).unwrap();
        assert_eq!(tri.graph.bounded_edges().count(), 3);
        assert_eq!(tri.graph.genus(), Ok(1));
        assert!(!tri.vertex_cones.contains_key("v2"));
        assert_eq!(tri.edge_data["e2"].tail, "v1");
        let all: Vec<String> = ["e1", "e2", "e3", "e4"].iter().map(|s| s.to_string()).collect();
        let point = contract_type(&t, &all).unwrap();
        assert_eq!(point.graph.inner_vertices(), ["v1"]);
        assert_eq!(point.graph.vertices["v1"], 1);
        assert_eq!(contract_type(&t, &[]).unwrap(), t);
        assert!(matches!(
            contract_type(&t, &["l1".to_string()]),
            Err(ModuliError::NotBounded(_))
        ));
    }

    #[test]
    fn faces() {
        let t = square_type();
        let tri = contract_type(&t, &["e1".to_string()]).unwrap();
        let w = is_face(&tri, &t).unwrap().unwrap();
        assert_eq!(w.contracted.len(), 1);
        assert!(moduli_cone(&tri).dim <= moduli_cone(&t).dim);
        let id = is_face(&t, &t).unwrap().unwrap();
        assert!(id.contracted.is_empty());
        let rays = combinatorial_type(&rays_map(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 0]])).unwrap();
        assert_eq!(is_face(&rays, &t).unwrap(), None);
        assert_eq!(is_face(&t, &tri).unwrap(), None);
    }

    #[test]
    fn relabelled_face() {
        // contracting e3 instead gives a triangle that is isomorphic to the
        // e1 contraction only if decorations line up; it is still a face
        let t = square_type();
        let tri3 = contract_type(&t, &["e3".to_string()]).unwrap();
        let w = is_face(&tri3, &t).unwrap().unwrap();
        assert_eq!(w.contracted, ["e3".to_string()]);
    }
}
