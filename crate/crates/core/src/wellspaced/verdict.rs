use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use super::{figure1::sample_parameters, is_well_spaced, WellSpacedError};
use crate::diag::Diagnostic;
use crate::exactgeom::Rat;
use crate::maps::{isomorphisms, validate_map, Decorated, TropicalStableMap};
use crate::moduli::{limit_of_family, Family, FamilyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Realizable,
    NotRealizable,
    Unknown,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Realizable => "Realizable",
            VerdictKind::NotRealizable => "NotRealizable",
            VerdictKind::Unknown => "Unknown",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    R0,
    R1,
    R2,
    R3,
    R4,
    R5,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::R0 => "R0",
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub rule: Rule,
    pub reason: String,
}

impl Verdict {
    fn new(kind: VerdictKind, rule: Rule, reason: &str) -> Self {
        Verdict { kind, rule, reason: reason.to_string() }
    }
}

/// Hypotheses the caller vouches for.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assumptions {
    /// The star of the genus one vertex (after the hat construction) is
    /// realizable.
    pub star_realizable: bool,
    /// A family whose limit at `t = 1` is the map and whose members are
    /// realizable.
    pub limit_certificate: Option<Family>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerdictError {
    #[error("map fails validation")]
    Invalid(Vec<Diagnostic>),
    #[error("malformed family certificate: {0}")]
    Certificate(FamilyError),
    #[error(transparent)]
    WellSpaced(#[from] WellSpacedError),
}

/// Well-spaced, counting a cycle that spans everything as vacuously so.
fn well_spaced(m: &TropicalStableMap) -> Result<bool, WellSpacedError> {
    match is_well_spaced(m) {
        Ok(r) => Ok(r.well_spaced),
        Err(WellSpacedError::NoHyperplane) => Ok(true),
        Err(e) => Err(e),
    }
}

/// Same curve, positions and edge data up to relabelling of unmarked
/// vertices and edges.
pub fn same_map(a: &TropicalStableMap, b: &TropicalStableMap) -> bool {
    if a.ambient_dim() != b.ambient_dim() {
        return false;
    }
    if a.canonical() == b.canonical() {
        return true;
    }
    let vertex_ok = |x: &str, y: &str| a.positions.get(x) == b.positions.get(y);
    let mut found = false;
    isomorphisms(
        Decorated { graph: &a.curve, data: &a.edge_data },
        Decorated { graph: &b.curve, data: &b.edge_data },
        &vertex_ok,
        &mut |iso| {
            found = iso.edges.iter().all(|(e, (f, _))| a.curve.edges[e].length == b.curve.edges[f].length);
            !found
        },
    );
    found
}

/// Applies the rules in order:
///
/// - R0: genus 0.
/// - R1: genus 1, all vertex genera 0, well-spaced.
/// - R2: genus 1, all vertex genera 0, trivalent, not well-spaced.
/// - R3: genus 1 carried by a unique vertex, star assumed realizable,
///   well-spaced.
/// - R4: the map is the limit of a certified family whose sampled members
///   below `t = 1` satisfy R1 or R3.
/// - R5: none of the above.
pub fn realizability_verdict(
    m: &TropicalStableMap,
    assume: &Assumptions,
) -> Result<Verdict, VerdictError> {
    let errors: Vec<Diagnostic> = validate_map(m, None).into_iter().filter(|d| d.is_error()).collect();
    if !errors.is_empty() {
        return Err(VerdictError::Invalid(errors));
    }
    let genus = m.curve.genus().map_err(|_| WellSpacedError::Disconnected)?;
    if genus == 0 {
        return Ok(Verdict::new(VerdictKind::Realizable, Rule::R0, "genus 0"));
    }
    let mut notes: Vec<String> = Vec::new();
    if genus == 1 {
        let degenerate = m.curve.vertices.values().all(|g| *g == 0);
        let ws = well_spaced(m)?;
        if degenerate {
            if ws {
                return Ok(Verdict::new(VerdictKind::Realizable, Rule::R1, "Speyer sufficiency"));
            }
            notes.push("R1: not well-spaced".into());
            let trivalent = m.curve.inner_vertices().iter().all(|v| m.curve.valence(v) == 3);
            if trivalent {
                return Ok(Verdict::new(
                    VerdictKind::NotRealizable,
                    Rule::R2,
                    "Speyer necessity, trivalent",
                ));
            }
            notes.push("R2: not trivalent".into());
        } else {
            notes.push("R1/R2: a vertex has positive genus".into());
            if !assume.star_realizable {
                notes.push("R3: star realizability not assumed".into());
            } else if ws {
                return Ok(Verdict::new(VerdictKind::Realizable, Rule::R3, "Theorem B"));
            } else {
                notes.push("R3: not well-spaced".into());
            }
        }
    } else {
        notes.push(format!("R1-R3: genus {genus}, not 1"));
    }
    match &assume.limit_certificate {
        None => notes.push("R4: no family certificate".into()),
        Some(fam) => match certificate_supports(m, fam, assume.star_realizable)? {
            None => return Ok(Verdict::new(VerdictKind::Realizable, Rule::R4, "Theorem A")),
            Some(why) => notes.push(why),
        },
    }
    Ok(Verdict { kind: VerdictKind::Unknown, rule: Rule::R5, reason: notes.swap_remove(0) })
}

/// `None` if the family certifies `m`, else why not.
fn certificate_supports(
    m: &TropicalStableMap,
    fam: &Family,
    star_realizable: bool,
) -> Result<Option<String>, VerdictError> {
    let limit = limit_of_family(fam, &Rat::from_integer(1.into())).map_err(VerdictError::Certificate)?;
    if !same_map(&limit.map, m) {
        return Ok(Some("R4: certificate limit differs from the map".into()));
    }
    let inner = Assumptions { star_realizable, limit_certificate: None };
    for t in sample_parameters() {
        let member = limit_of_family(fam, &t).map_err(VerdictError::Certificate)?.map;
        let ok = match realizability_verdict(&member, &inner) {
            Ok(v) => matches!(v.rule, Rule::R0 | Rule::R1 | Rule::R3),
            Err(VerdictError::Invalid(_)) => false,
            Err(e) => return Err(e),
        };
        if !ok {
            return Ok(Some(format!("R4: family member at t = {t} is not covered by R1 or R3")));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{rat, ratio};
    use crate::gallery;
    use crate::wellspaced::{build_figure1_family, figure1};

    fn verdict(m: &TropicalStableMap, a: &Assumptions) -> (VerdictKind, Rule, String) {
        let v = realizability_verdict(m, a).unwrap();
        (v.kind, v.rule, v.reason)
    }

    #[test]
    fn gallery_verdicts() {
        let none = Assumptions::default();
        let star = Assumptions { star_realizable: true, limit_certificate: None };
        assert_eq!(verdict(&gallery::three_rays(2), &none).1, Rule::R0);
        assert_eq!(verdict(&gallery::square_loop(), &none).2, "Speyer sufficiency");
        assert_eq!(verdict(&gallery::speyer_tree(), &none).2, "Speyer sufficiency");
        assert_eq!(
            verdict(&gallery::speyer_fail(), &none),
            (VerdictKind::NotRealizable, Rule::R2, "Speyer necessity, trivalent".into())
        );
        assert_eq!(verdict(&gallery::hat_demo(), &star).2, "Theorem B");
        let (k, r, why) = verdict(&gallery::hat_demo(), &none);
        assert_eq!((k, r), (VerdictKind::Unknown, Rule::R5));
        assert!(why.starts_with("R1/R2"));
        assert_eq!(verdict(&gallery::triangle_plane(), &none).1, Rule::R1);
    }

    #[test]
    fn figure1_verdicts() {
        let none = Assumptions::default();
        for t in [rat(0), ratio(1, 2), ratio(99, 100)] {
            assert_eq!(verdict(&figure1(3, &t).unwrap(), &none).2, "Speyer sufficiency");
        }
        let lim = figure1(3, &rat(1)).unwrap();
        let (k, r, why) = verdict(&lim, &none);
        assert_eq!((k, r), (VerdictKind::Unknown, Rule::R5));
        assert_eq!(why, "R1: not well-spaced");
        let cert = Assumptions { star_realizable: false, limit_certificate: Some(build_figure1_family(3).unwrap()) };
        assert_eq!(verdict(&lim, &cert), (VerdictKind::Realizable, Rule::R4, "Theorem A".into()));
        // a certificate for a different map does not apply
        let (_, r, why) = verdict(&gallery::speyer_fail(), &cert);
        assert_eq!(r, Rule::R2);
        assert!(why.contains("trivalent"));
        let mut tree = gallery::hat_demo();
        tree.curve.vertices.insert("v".into(), 0);
        tree.curve.vertices.insert("a".into(), 1);
        let (_, r, why) = verdict(&tree, &cert);
        assert_eq!(r, Rule::R5);
        assert!(why.starts_with("R1/R2"));
    }

    #[test]
    fn relabelled_limit_still_matches() {
        let lim = figure1(3, &rat(1)).unwrap();
        let mut m = lim.clone();
        m.flip_edge("ab");
        assert!(same_map(&lim, &m));
        let mut moved = lim.clone();
        moved.curve.edges.get_mut("sa").unwrap().length = crate::curves::Length::Finite(rat(2));
        assert!(!same_map(&lim, &moved));
    }
}
