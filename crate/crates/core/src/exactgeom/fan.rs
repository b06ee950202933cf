use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::cone::Cone;
use super::vector::{IntVec, RatVec};
use super::GeomError;
use crate::diag::{Code, Diagnostic};

/// A finite collection of cones in a common lattice.
///
/// Constructors other than [`Fan::new`] always produce face-closed,
/// properly intersecting collections; [`Fan::new`] takes the cones as given
/// so that [`fan_validate`] can report on them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    ambient_dim: usize,
    cones: BTreeSet<Cone>,
}

impl Fan {
    pub fn new(ambient_dim: usize, cones: impl IntoIterator<Item = Cone>) -> Self {
        Fan { ambient_dim, cones: cones.into_iter().collect() }
    }

    /// Adds every face of every cone, including the zero cone.
    pub fn with_faces(ambient_dim: usize, cones: impl IntoIterator<Item = Cone>) -> Self {
        let mut all = BTreeSet::new();
        all.insert(Cone::zero(ambient_dim));
        for c in cones {
            for f in c.faces() {
                all.insert(f);
            }
            all.insert(c);
        }
        Fan { ambient_dim, cones: all }
    }

    /// The fan of coordinate orthants; its support is all of the space.
    pub fn complete(ambient_dim: usize) -> Self {
        let mut cones = BTreeSet::new();
        // each coordinate is absent, positive or negative
        let total = 3usize.pow(ambient_dim as u32);
        for code in 0..total {
            let mut c = code;
            let mut rays = Vec::new();
            for i in 0..ambient_dim {
                let digit = c % 3;
                c /= 3;
                if digit != 0 {
                    let mut r = IntVec::zeros(ambient_dim);
                    r.0[i] = if digit == 1 { 1 } else { -1 };
                    rays.push(r);
                }
            }
            cones.insert(Cone::new(ambient_dim, rays));
        }
        Fan { ambient_dim, cones }
    }

    /// The zero cone plus one ray per distinct nonzero direction.
    pub fn auto_rays(ambient_dim: usize, directions: impl IntoIterator<Item = IntVec>) -> Self {
        let mut cones = BTreeSet::new();
        cones.insert(Cone::zero(ambient_dim));
        for d in directions {
            if let Some((p, _)) = d.primitive_part() {
                cones.insert(Cone::new(ambient_dim, [p]));
            }
        }
        Fan { ambient_dim, cones }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cones(&self) -> impl Iterator<Item = &Cone> {
        self.cones.iter()
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.cones.contains(c)
    }

    pub fn has_ray(&self, direction: &IntVec) -> bool {
        self.cones.iter().any(|c| c.rays().len() == 1 && &c.rays()[0] == direction)
    }

    /// The largest cone of the fan that is a face of both arguments.
    pub fn largest_common_face(&self, a: &Cone, b: &Cone) -> Option<Cone> {
        self.cones
            .iter()
            .filter(|c| c.is_face_of(a) && c.is_face_of(b))
            .max_by_key(|c| (c.dim(), c.rays().len()))
            .cloned()
    }

    pub fn support_contains(&self, p: &RatVec) -> bool {
        self.cones.iter().any(|c| c.contains(p))
    }
}

/// Every violation of the fan axioms: bad generators, faces missing from
/// the collection, and pairs of cones whose relative interiors overlap
/// (which, for a face-closed collection, is the same as an intersection that
/// fails to be a common face).
pub fn fan_validate(f: &Fan) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let n = f.ambient_dim;
    let mut generators_ok = true;
    for c in &f.cones {
        for r in c.rays() {
            let subject = format!("cone {c} ray {r}");
            if r.dim() != n {
                out.push(Diagnostic::error(
                    Code::RayDimension,
                    subject,
                    format!("ray has length {}, ambient dimension is {n}", r.dim()),
                ));
                generators_ok = false;
            } else if r.is_zero() {
                out.push(Diagnostic::error(Code::ZeroRay, subject, "zero ray generator"));
                generators_ok = false;
            } else if !r.is_primitive() {
                out.push(Diagnostic::error(
                    Code::NonPrimitiveRay,
                    subject,
                    format!("non-primitive ray (gcd {})", r.content()),
                ));
            }
        }
    }
    if !f.cones.contains(&Cone::zero(n)) {
        out.push(Diagnostic::error(Code::MissingZeroCone, "fan", "zero cone missing"));
    }
    if !generators_ok {
        return out;
    }
    for c in &f.cones {
        for r in c.redundant_rays() {
            out.push(Diagnostic::error(
                Code::RedundantRay,
                format!("cone {c} ray {r}"),
                "generator is not extremal",
            ));
        }
    }
    for c in &f.cones {
        for face in c.faces() {
            if !face.is_zero() && !f.cones.contains(&face) {
                out.push(Diagnostic::error(
                    Code::MissingFace,
                    format!("cone {c}"),
                    format!("face {face} is not in the fan"),
                ));
            }
        }
    }
    let cones: Vec<&Cone> = f.cones.iter().collect();
    for (i, a) in cones.iter().enumerate() {
        for b in &cones[i + 1..] {
            if a.relints_meet(b) {
                out.push(Diagnostic::error(
                    Code::BadIntersection,
                    format!("cones {a} and {b}"),
                    "intersection is not a face of both",
                ));
            }
        }
    }
    out
}

/// The cone of `f` whose relative interior contains `p`, or `None` outside
/// the support. In a valid fan this cone is unique; otherwise the first of
/// smallest dimension is returned.
pub fn cone_locate(f: &Fan, p: &RatVec) -> Result<Option<Cone>, GeomError> {
    if p.dim() != f.ambient_dim {
        return Err(GeomError::DimensionMismatch { expected: f.ambient_dim, got: p.dim() });
    }
    Ok(f
        .cones
        .iter()
        .filter(|c| c.contains_relint(p))
        .min_by_key(|c| c.dim())
        .cloned())
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("{0}");
        }
        let parts: Vec<String> = self.rays().iter().map(|r| format!("{r}")).collect();
        write!(f, "<{}>", parts.join(" "))
    }
}
