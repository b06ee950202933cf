use std::collections::BTreeSet;

use proptest::prelude::*;

use tropmap_core::curves::{betti_and_genus, contract_edge, Length, TropicalCurve};
use tropmap_core::exactgeom::{rank, ratio, RatMatrix, RatVec};
use tropmap_core::gallery::random::{random_family, random_map, RandomSpec};
use tropmap_core::maps::{
    combinatorial_type, compose, identity, inverse, recession_type, type_automorphisms, validate_map,
};
use tropmap_core::moduli::{cone_metrics, contract_type, is_face, limit_of_family, moduli_cone};
use tropmap_core::wellspaced::{
    hat_curve, is_well_spaced, realizability_verdict, Assumptions, Rule, VerdictKind,
};

/// A connected multigraph: a path through all vertices plus extra edges,
/// with one leg on vertex 0.
fn multigraph() -> impl Strategy<Value = TropicalCurve> {
    (2usize..=6)
        .prop_flat_map(|nv| {
            (
                Just(nv),
                proptest::collection::vec(0u32..=2, nv),
                proptest::collection::vec((0..nv, 0..nv), 0..=(12 - (nv - 1))),
            )
        })
        .prop_map(|(nv, genera, extra)| {
            let mut c = TropicalCurve::new();
            for (i, g) in genera.iter().enumerate() {
                c = c.with_vertex(&format!("v{i}"), *g);
            }
            for i in 1..nv {
                c = c.with_edge(&format!("p{i}"), &format!("v{}", i - 1), &format!("v{i}"), Length::Finite(ratio(i as i64, 2)));
            }
            for (k, (a, b)) in extra.iter().enumerate() {
                c = c.with_edge(&format!("x{k}"), &format!("v{a}"), &format!("v{b}"), Length::Finite(ratio(1, 1)));
            }
            c.with_vertex("q", 0).with_edge("leg", "v0", "q", Length::Infinite).with_marking("m", "q")
        })
}

fn spec(dim: usize, genus_one: bool) -> RandomSpec {
    RandomSpec { max_inner: 5, dim, genus_one }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn euler_and_contraction(c in multigraph()) {
        let (b1, g) = betti_and_genus(&c).unwrap();
        prop_assert_eq!(b1 + c.vertices.len(), c.edges.len() + 1);
        prop_assert_eq!(g, b1 as u32 + c.vertices.values().sum::<u32>());
        for (id, e) in c.bounded_edges() {
            let d = contract_edge(&c, id).unwrap();
            prop_assert_eq!(d.genus().unwrap(), g);
            prop_assert_eq!(&d.markings, &c.markings);
            if e.is_loop() {
                let v = &e.ends[0];
                prop_assert_eq!(d.vertices[v], c.vertices[v] + 1);
                prop_assert_eq!(d.vertices.len(), c.vertices.len());
            } else {
                prop_assert_eq!(d.vertices.len() + 1, c.vertices.len());
            }
        }
        prop_assert!(contract_edge(&c, "leg").is_err());
    }

    #[test]
    fn automorphisms_form_a_group(seed in 0u64..10_000, g1 in any::<bool>()) {
        let t = combinatorial_type(&random_map(seed, &spec(2, g1))).unwrap();
        let auts: BTreeSet<_> = type_automorphisms(&t).into_iter().collect();
        prop_assert!(auts.contains(&identity(&t.graph)));
        for a in &auts {
            prop_assert!(auts.contains(&inverse(a)));
            for b in &auts {
                prop_assert!(auts.contains(&compose(a, b)));
            }
        }
    }

    #[test]
    fn moduli_round_trip(seed in 0u64..10_000, g1 in any::<bool>(), dim in 2usize..=3, s in any::<u64>()) {
        let t = combinatorial_type(&random_map(seed, &spec(dim, g1))).unwrap();
        let mc = moduli_cone(&t);
        prop_assert_eq!(mc.dim + mc.rank, mc.variables.len());
        let m = mc.sample_interior(s).unwrap();
        prop_assert!(validate_map(&m, None).is_empty());
        prop_assert_eq!(combinatorial_type(&m).unwrap().canonical(), t.canonical());
    }

    #[test]
    fn single_contractions_are_faces(seed in 0u64..10_000, g1 in any::<bool>()) {
        let t = combinatorial_type(&random_map(seed, &spec(2, g1))).unwrap();
        let dim = cone_metrics(&t).dim;
        for (e, _) in t.graph.bounded_edges() {
            let Ok(f) = contract_type(&t, std::slice::from_ref(e)) else { continue };
            let w = is_face(&f, &t).unwrap();
            prop_assert!(w.is_some(), "{}", e);
            prop_assert_eq!(w.unwrap().contracted.len(), 1);
            prop_assert_eq!(recession_type(&f), recession_type(&t));
            prop_assert!(moduli_cone(&f).dim <= dim + 1);
        }
    }

    #[test]
    fn family_limits_are_lower_dimensional_faces(seed in 0u64..10_000, g1 in any::<bool>()) {
        let Some(fam) = random_family(seed, &spec(2, g1)) else { return Ok(()) };
        let lim = limit_of_family(&fam, &ratio(1, 1)).unwrap();
        prop_assert!(is_face(&lim.ctype, &fam.ctype).unwrap().is_some());
        prop_assert_eq!(recession_type(&lim.ctype), recession_type(&fam.ctype));
    }

    #[test]
    fn flats_are_sound(seed in 0u64..10_000, dim in 3usize..=4) {
        let m = random_map(seed, &spec(dim, true));
        let Ok(r) = is_well_spaced(&m) else { return Ok(()) };
        let c = r.cycle.codim;
        for rec in &r.flats {
            prop_assert!(rec.flat.rank < c);
            let zero: BTreeSet<usize> = rec.flat.zero_set.iter().copied().collect();
            for (i, v) in r.arrangement.ambient.iter().enumerate() {
                prop_assert_eq!(rec.flat.normal.dot(v) == ratio(0, 1), zero.contains(&i));
            }
            prop_assert_eq!(rec.pass, rec.subcurve.passes());
        }
        prop_assert_eq!(r.well_spaced, r.flats.iter().all(|f| f.pass));
    }

    #[test]
    fn orientation_does_not_matter(seed in 0u64..10_000, g1 in any::<bool>(), pick in any::<prop::sample::Index>()) {
        let m = random_map(seed, &spec(3, g1));
        let ids: Vec<String> = m.curve.bounded_edges().map(|(id, _)| id.clone()).collect();
        let e = &ids[pick.index(ids.len())];
        let mut f = m.clone();
        f.flip_edge(e);
        let diags = validate_map(&f, None);
        prop_assert!(diags.is_empty(), "{:?}", diags);
        prop_assert_eq!(f.canonical(), m.canonical());
        let (t, tf) = (combinatorial_type(&m).unwrap(), combinatorial_type(&f).unwrap());
        prop_assert_eq!(cone_metrics(&t), cone_metrics(&tf));
        prop_assert_eq!(
            is_well_spaced(&m).ok().map(|r| r.well_spaced),
            is_well_spaced(&f).ok().map(|r| r.well_spaced)
        );
    }

    #[test]
    fn hat_preserves_genus_and_positions(seed in 0u64..10_000, num in 1i64..20, den in 1i64..5) {
        let mut m = random_map(seed, &spec(2, false));
        *m.curve.vertices.get_mut("v0").unwrap() = 1;
        let h = hat_curve(&m, &ratio(num, den)).unwrap();
        prop_assert!(validate_map(&h, None).is_empty());
        prop_assert_eq!(h.curve.genus(), m.curve.genus());
        prop_assert_eq!(&h.positions, &m.positions);
        prop_assert_eq!(h.curve.vertices["v0"], 0);
        prop_assert_eq!(recession_type(&combinatorial_type(&h).unwrap()), recession_type(&combinatorial_type(&m).unwrap()));
    }

    #[test]
    fn verdicts_are_consistent(seed in 0u64..10_000, g1 in any::<bool>(), dim in 2usize..=3, star in any::<bool>()) {
        let m = random_map(seed, &spec(dim, g1));
        let a = Assumptions { star_realizable: star, limit_certificate: None };
        let v = realizability_verdict(&m, &a).unwrap();
        let ws = is_well_spaced(&m).ok().map(|r| r.well_spaced);
        match v.kind {
            VerdictKind::Realizable => {
                prop_assert!(matches!(v.rule, Rule::R0 | Rule::R1 | Rule::R3));
                prop_assert!(v.rule == Rule::R0 || ws != Some(false));
            }
            VerdictKind::NotRealizable => {
                prop_assert_eq!(v.rule, Rule::R2);
                prop_assert_eq!(ws, Some(false));
            }
            VerdictKind::Unknown => prop_assert_eq!(v.rule, Rule::R5),
        }
        prop_assert_eq!(v.rule == Rule::R0, !g1);
    }

    #[test]
    fn rank_matches_transpose(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 1..6)) {
        let m = RatMatrix::from_rows(4, rows.iter().map(|r| RatVec(r.iter().map(|&x| ratio(x, 1)).collect())).collect()).unwrap();
        let r = rank(&m);
        prop_assert_eq!(r, rank(&m.transpose()));
        prop_assert_eq!(r + m.nullspace().len(), 4);
        for z in m.nullspace() {
            prop_assert!(m.mul_vec(&z).is_zero());
        }
    }
}
