//! Seeded pseudo-random maps and families, for property tests and fuzzing.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::{Length, TropicalCurve};
use crate::exactgeom::{rat, ratio, Fan, IntVec, Rat, RatVec};
use crate::maps::{combinatorial_type, EdgeDatum, TargetMode, TropicalStableMap};
use crate::moduli::{Affine, Family};
use crate::wellspaced::cycle_data;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    /// Inner vertices, at least 2.
    pub max_inner: usize,
    pub dim: usize,
    /// Close one cycle with an extra bounded edge.
    pub genus_one: bool,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec { max_inner: 6, dim: 2, genus_one: false }
    }
}

fn nonzero(rng: &mut ChaCha8Rng, dim: usize, avoid: &IntVec) -> IntVec {
    loop {
        let v = IntVec((0..dim).map(|_| rng.gen_range(-2..=2)).collect());
        if !v.is_zero() && &v != avoid {
            return v;
        }
    }
}

/// Splits `slope` as `w * u` with `u` primitive.
fn datum(slope: &IntVec, tail: &str) -> EdgeDatum {
    let (u, w) = slope.primitive_part().expect("nonzero slope");
    EdgeDatum::new(u, w as u32, tail)
}

/// A balanced embedded map: a random tree of bounded edges (plus one closing
/// edge if `genus_one`), with two legs at every inner vertex chosen to
/// balance it. Every inner vertex has valence at least 3.
pub fn random_map(seed: u64, spec: &RandomSpec) -> TropicalStableMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.dim;
    let k = rng.gen_range(2..=spec.max_inner.max(2));
    let names: Vec<String> = (0..k).map(|i| format!("v{i}")).collect();
    let mut curve = TropicalCurve::new();
    let mut positions: BTreeMap<String, RatVec> = BTreeMap::new();
    let mut edge_data: BTreeMap<String, EdgeDatum> = BTreeMap::new();
    let mut balance: Vec<IntVec> = alloc::vec![IntVec::zeros(n); k];
    for v in &names {
        curve = curve.with_vertex(v, 0);
    }
    positions.insert(names[0].clone(), RatVec::zeros(n));
    for i in 1..k {
        let parent = rng.gen_range(0..i);
        let u = nonzero(&mut rng, n, &IntVec::zeros(n));
        let (u, _) = u.primitive_part().expect("nonzero");
        let w: u32 = rng.gen_range(1..=2);
        let len = ratio(rng.gen_range(1..=4), rng.gen_range(1..=2));
        let id = format!("b{i}");
        curve = curve.with_edge(&id, &names[parent], &names[i], Length::Finite(len.clone()));
        let slope = u.scaled(w as i64);
        let p = positions[&names[parent]].add_scaled(&len, &slope.to_rat());
        positions.insert(names[i].clone(), p);
        balance[parent] = &balance[parent] + &slope;
        balance[i] = &balance[i] + &(-&slope);
        edge_data.insert(id, EdgeDatum::new(u, w, &names[parent]));
    }
    if spec.genus_one {
        let a = rng.gen_range(0..k);
        let b = (a + rng.gen_range(1..k)) % k;
        let diff = &positions[&names[b]] - &positions[&names[a]];
        if diff.is_zero() {
            let len = ratio(rng.gen_range(1..=4), 1);
            curve = curve.with_edge("c", &names[a], &names[b], Length::Finite(len));
            edge_data.insert("c".into(), EdgeDatum::contracted(n, &names[a]));
        } else {
            let den = diff.iter().fold(num_bigint::BigInt::one(), |d, x| d.lcm(x.denom()));
            let scaled: Vec<i64> = diff
                .iter()
                .map(|x| i64::try_from((x * Rat::from_integer(den.clone())).to_integer()).expect("small"))
                .collect();
            let z = IntVec(scaled);
            let (u, g) = z.primitive_part().expect("nonzero");
            let len = Rat::new((g as i64).into(), den);
            curve = curve.with_edge("c", &names[a], &names[b], Length::Finite(len));
            balance[a] = &balance[a] + &u;
            balance[b] = &balance[b] + &(-&u);
            edge_data.insert("c".into(), EdgeDatum::new(u, 1, &names[a]));
        }
    }
    let mut legs = Vec::new();
    for (i, v) in names.iter().enumerate() {
        let s = &balance[i];
        let r = nonzero(&mut rng, n, &(-s));
        let other = -&(s + &r);
        for slope in [r, other] {
            let j = legs.len() + 1;
            let (q, l) = (format!("q{j}"), format!("l{j}"));
            curve = curve
                .with_vertex(&q, 0)
                .with_edge(&l, v, &q, Length::Infinite)
                .with_marking(&format!("p{j}"), &q);
            let d = datum(&slope, v);
            legs.push(d.direction.clone());
            edge_data.insert(l, d);
        }
    }
    TropicalStableMap {
        curve,
        fan: Fan::auto_rays(n, legs),
        mode: TargetMode::Embedded,
        positions,
        edge_data,
    }
}

/// A family through the type of [`random_map`] in which a nonempty set of
/// bounded edges off the cycle has length `1 - t` and the rest keep their
/// lengths. `None` if every bounded edge lies on the cycle.
pub fn random_family(seed: u64, spec: &RandomSpec) -> Option<Family> {
    let m = random_map(seed, spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let on_cycle: BTreeSet<String> = match cycle_data(&m) {
        Ok(cd) => cd.edges.into_iter().collect(),
        Err(_) => BTreeSet::new(),
    };
    let free: Vec<String> = m
        .curve
        .bounded_edges()
        .map(|(id, _)| id.clone())
        .filter(|id| !on_cycle.contains(id))
        .collect();
    if free.is_empty() {
        return None;
    }
    let forced = free[rng.gen_range(0..free.len())].clone();
    let shrinking: BTreeSet<String> =
        free.into_iter().filter(|e| *e == forced || rng.gen_bool(0.5)).collect();
    let lengths = m
        .curve
        .bounded_edges()
        .map(|(id, e)| {
            let f = if shrinking.contains(id) {
                Affine::new(rat(1), rat(-1))
            } else {
                Affine::constant(e.length.finite().cloned().unwrap_or_else(Rat::zero))
            };
            (id.clone(), f)
        })
        .collect();
    let ctype = combinatorial_type(&m).ok()?;
    let origin = alloc::vec![Affine::constant(rat(0)); spec.dim];
    Some(Family { ctype, lengths, positions: [("v0".into(), origin)].into_iter().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::validate_map;
    use crate::moduli::{is_face, limit_of_family};

    #[test]
    fn random_maps_validate() {
        for seed in 0..60 {
            for genus_one in [false, true] {
                let spec = RandomSpec { max_inner: 6, dim: 2 + (seed as usize % 2), genus_one };
                let m = random_map(seed, &spec);
                assert!(validate_map(&m, None).is_empty(), "seed {seed}");
                assert_eq!(m.curve.genus(), Ok(genus_one as u32));
            }
        }
    }

    #[test]
    fn random_families_limit_to_faces() {
        for seed in 0..10 {
            let spec = RandomSpec { max_inner: 5, dim: 2, genus_one: seed % 2 == 1 };
            let Some(fam) = random_family(seed, &spec) else { continue };
            let lim = limit_of_family(&fam, &rat(1)).unwrap();
            assert!(!lim.contracted.is_empty());
            assert!(is_face(&lim.ctype, &fam.ctype).unwrap().is_some(), "seed {seed}");
        }
    }
}
