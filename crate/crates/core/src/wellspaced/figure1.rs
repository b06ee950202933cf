use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::WellSpacedError;
use crate::exactgeom::{rat, ratio, Rat};
use crate::gallery::Sketch;
use crate::maps::{combinatorial_type, TropicalStableMap};
use crate::moduli::{limit_of_family, Affine, Family};

/// Parameters at which the hexagon family is sampled below `t = 1`.
pub fn sample_parameters() -> Vec<Rat> {
    vec![rat(0), ratio(1, 4), ratio(1, 2), ratio(3, 4), ratio(99, 100)]
}

/// The degenerating hexagon in the plane `H = {x_3 = 0}` of `R^n`.
///
/// The cycle is `a b c d e f`; only `b` and `c` have edges leaving `H`. The
/// edge `e_t` from `b` to `c` and the opposite edge `e'_t` from `e` to `f`
/// have length `1 - t`, so at `t = 1` the two departure points merge. The
/// spokes at `a, d, e, f` end at distance 1 from the cycle.
pub fn build_figure1_family(n: usize) -> Result<Family, WellSpacedError> {
    if n < 3 {
        return Err(WellSpacedError::DimensionTooSmall(n));
    }
    let m = Sketch::new(n)
        .vertex("a", 0, &[0, 0])
        .vertex("b", 0, &[1, 1])
        .vertex("c", 0, &[2, 1])
        .vertex("d", 0, &[3, 0])
        .vertex("e", 0, &[2, -1])
        .vertex("f", 0, &[1, -1])
        .vertex("a1", 0, &[-2, 0])
        .vertex("d1", 0, &[5, 0])
        .vertex("e1", 0, &[2, -2])
        .vertex("f1", 0, &[1, -2])
        .edge("ab", "a", "b", &[1, 1], 1, rat(1))
        .edge("e_t", "b", "c", &[1, 0], 1, rat(1))
        .edge("cd", "c", "d", &[1, -1], 1, rat(1))
        .edge("de", "d", "e", &[-1, -1], 1, rat(1))
        .edge("e'_t", "e", "f", &[-1, 0], 1, rat(1))
        .edge("fa", "f", "a", &[-1, 1], 1, rat(1))
        .edge("sa", "a", "a1", &[-1, 0], 2, rat(1))
        .edge("sd", "d", "d1", &[1, 0], 2, rat(1))
        .edge("se", "e", "e1", &[0, -1], 1, rat(1))
        .edge("sf", "f", "f1", &[0, -1], 1, rat(1))
        .leg("a1", &[-1, 0, 1])
        .leg("a1", &[-1, 0, -1])
        .leg("d1", &[1, 0, 1])
        .leg("d1", &[1, 0, -1])
        .leg("e1", &[0, -1, 1])
        .leg("e1", &[0, 0, -1])
        .leg("f1", &[0, -1, 1])
        .leg("f1", &[0, 0, -1])
        .leg("b", &[0, 1, 1])
        .leg("b", &[0, 0, -1])
        .leg("c", &[0, 1, 1])
        .leg("c", &[0, 0, -1])
        .finish();
    let ctype = combinatorial_type(&m).expect("constructed map has sound data");
    let shrinking = Affine::new(rat(1), rat(-1));
    let lengths: BTreeMap<String, Affine> = ctype
        .graph
        .bounded_edges()
        .map(|(id, _)| {
            let l = if id == "e_t" || id == "e'_t" { shrinking.clone() } else { Affine::constant(rat(1)) };
            (id.clone(), l)
        })
        .collect();
    let origin = vec![Affine::constant(rat(0)); n];
    Ok(Family { ctype, lengths, positions: [("a".into(), origin)].into_iter().collect() })
}

/// Member of the hexagon family at `t`; at `t = 1` the contracted limit.
pub fn figure1(n: usize, t: &Rat) -> Result<TropicalStableMap, WellSpacedError> {
    let fam = build_figure1_family(n)?;
    Ok(limit_of_family(&fam, t)?.map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::IntVec;
    use crate::maps::validate_map;
    use crate::wellspaced::{cycle_data, is_well_spaced};

    #[test]
    fn flip_at_one() {
        for t in sample_parameters() {
            let m = figure1(3, &t).unwrap();
            assert!(validate_map(&m, None).is_empty(), "t = {t}");
            let r = is_well_spaced(&m).unwrap();
            assert!(r.well_spaced, "t = {t}");
            assert_eq!(r.flats.len(), 1);
            let d = r.flats[0].subcurve.distances();
            assert_eq!(d, [rat(0), rat(0), rat(1), rat(1), rat(1), rat(1)]);
        }
        let lim = figure1(3, &rat(1)).unwrap();
        assert!(validate_map(&lim, None).is_empty());
        assert_eq!(lim.curve.valence("b"), 6);
        assert!(!lim.curve.vertices.contains_key("c"));
        let r = is_well_spaced(&lim).unwrap();
        assert!(!r.well_spaced);
        assert_eq!(r.flats[0].subcurve.distances(), [rat(0), rat(1), rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn cycle_lies_in_h() {
        let m = figure1(3, &ratio(1, 3)).unwrap();
        let cd = cycle_data(&m).unwrap();
        assert_eq!(cd.codim, 1);
        assert_eq!(cd.vertices, ["a", "b", "c", "d", "e", "f"]);
        assert_eq!(IntVec::from_rat(&cd.annihilator[0]).map(|v| v.primitive_part().unwrap().0.abs_max()), Some(1));
        assert!(cd.annihilator[0].0[..2].iter().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn higher_dimension() {
        let m = figure1(5, &ratio(1, 2)).unwrap();
        assert!(validate_map(&m, None).is_empty());
        assert!(is_well_spaced(&m).unwrap().well_spaced);
        assert!(!is_well_spaced(&figure1(5, &rat(1)).unwrap()).unwrap().well_spaced);
        assert_eq!(build_figure1_family(2), Err(WellSpacedError::DimensionTooSmall(2)));
    }
}
