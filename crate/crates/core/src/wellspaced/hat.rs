use alloc::format;

use num_traits::Signed;

use super::WellSpacedError;
use crate::curves::{betti_and_genus, Length};
use crate::exactgeom::Rat;
use crate::maps::{EdgeDatum, TropicalStableMap};

/// Suffix of the loop added by [`hat_curve`]: the loop at `v` is `{v}.hat`.
pub const HAT_SUFFIX: &str = ".hat";

/// Replaces the unique genus one vertex `v` of a tree by a genus zero vertex
/// carrying a contracted self-loop of length `t`.
pub fn hat_curve(m: &TropicalStableMap, t: &Rat) -> Result<TropicalStableMap, WellSpacedError> {
    if !t.is_positive() {
        return Err(WellSpacedError::NonPositiveLength);
    }
    let (b1, genus) = betti_and_genus(&m.curve).map_err(|_| WellSpacedError::Disconnected)?;
    let mut heavy = m.curve.vertices.iter().filter(|(_, g)| **g > 0);
    let (v, _) = match (heavy.next(), heavy.next()) {
        (Some(v), None) if b1 == 0 && genus == 1 => v,
        _ => return Err(WellSpacedError::NotHatShape),
    };
    let v = v.clone();
    let id = format!("{v}{HAT_SUFFIX}");
    let mut out = m.clone();
    out.curve.vertices.insert(v.clone(), 0);
    out.curve = out.curve.with_edge(&id, &v, &v, Length::Finite(t.clone()));
    out.edge_data.insert(id, EdgeDatum::contracted(m.ambient_dim(), &v));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{rat, ratio};
    use crate::gallery;
    use crate::maps::{star, validate_map};
    use alloc::vec::Vec;

    #[test]
    fn hat_of_genus_one_tripod() {
        let mut m = gallery::three_rays(2);
        m.curve.vertices.insert("v".into(), 1);
        let h = hat_curve(&m, &rat(1)).unwrap();
        assert_eq!(betti_and_genus(&h.curve), Ok((1, 1)));
        assert_eq!(h.curve.vertices["v"], 0);
        assert_eq!(h.positions, m.positions);
        assert!(validate_map(&h, None).is_empty());
        let half = hat_curve(&m, &ratio(1, 2)).unwrap();
        assert_eq!(half.length("v.hat"), Some(&ratio(1, 2)));
        let dirs = |x: &TropicalStableMap| {
            let (s, _) = star(x, "v").unwrap();
            let mut d: Vec<_> = s.edge_data.values().map(|e| e.slope()).collect();
            d.sort();
            d
        };
        assert_eq!(dirs(&h), dirs(&m));
    }

    #[test]
    fn hat_rejects() {
        let m = gallery::square_loop();
        assert_eq!(hat_curve(&m, &rat(1)), Err(WellSpacedError::NotHatShape));
        let g0 = gallery::three_rays(2);
        assert_eq!(hat_curve(&g0, &rat(1)), Err(WellSpacedError::NotHatShape));
        assert_eq!(hat_curve(&gallery::hat_demo(), &rat(0)), Err(WellSpacedError::NonPositiveLength));
    }
}
