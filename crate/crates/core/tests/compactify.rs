mod common;

use common::{random_nested_families, rng};
use ordcomp::compact::{
    attempt_domination, compactify, dominate, extendability, i_closure, remainder_is_ordered,
    verify_preorder_embedding, BuildParams, Compactification, Extension, VertexKind,
};
use ordcomp::sampled::{
    build_family, catalog, FamilySpec, PairSampling, SampledSpace, TailClassSelector, CATALOG_NAMES,
};
use ordcomp::Error;

fn build(space: &str, spec: FamilySpec, resolution: usize) -> Compactification {
    let sp = catalog(space).unwrap();
    let params = BuildParams::default().with_resolution(resolution);
    let fam = build_family(sp.as_ref(), &spec, resolution, params.tail_depth).unwrap();
    compactify(sp.as_ref(), &fam, &params).unwrap()
}

fn names(list: &[&str]) -> FamilySpec {
    FamilySpec::Names(list.iter().map(|s| s.to_string()).collect())
}

/// Coordinate-wise order on the quantized `H`-part, recomputed from the
/// vertex coordinates.
fn expected_le(comp: &Compactification, u: usize, v: usize) -> bool {
    let h = comp.h_dim();
    let (a, b) = (&comp.vertices[u].coords, &comp.vertices[v].coords);
    (0..h).all(|k| a[k] <= b[k])
}

fn assert_induced_matches_coordinates(comp: &Compactification) {
    assert!(comp.induced.is_valid());
    for u in 0..comp.len() {
        for v in 0..comp.len() {
            assert_eq!(comp.induced.le(u, v), expected_le(comp, u, v), "({u}, {v})");
        }
    }
}

#[test]
fn half_open_interval_gains_a_top_point() {
    let sp = catalog("half-open-interval").unwrap();
    let comp = build("half-open-interval", FamilySpec::Default, 2000);
    assert_induced_matches_coordinates(&comp);
    let rem = comp.remainder_ids();
    assert_eq!(rem.len(), 1);
    let top = rem[0];
    assert_eq!(comp.vertices[top].coords[0], 1000);
    assert!((0..comp.len()).all(|u| comp.induced.le(u, top)));
    let r = verify_preorder_embedding(sp.as_ref(), &comp, &PairSampling::default(), 0.0);
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.metrics["embedding_violations"], 0.0);
}

#[test]
fn closed_interval_is_its_own_compactification() {
    let sp = catalog("closed-interval").unwrap();
    let comp = build("closed-interval", FamilySpec::Default, 500);
    assert!(comp.remainder_ids().is_empty());
    let core = &comp.sample.core;
    for i in 0..core.len() {
        for j in 0..core.len() {
            let induced = comp.induced.le(comp.sample_map[i], comp.sample_map[j]);
            assert_eq!(induced, core[i].x() <= core[j].x(), "({i}, {j})");
        }
    }
    let r = verify_preorder_embedding(sp.as_ref(), &comp, &PairSampling::default(), 0.0);
    assert_eq!(r.metrics["embedding_violations"], 0.0);
}

#[test]
fn one_point_compactifications_of_the_naturals() {
    for (class, below, above) in [
        (TailClassSelector::C, false, false),
        (TailClassSelector::CMinus, true, false),
        (TailClassSelector::CPlus, false, true),
    ] {
        let comp = build("nat-discrete", FamilySpec::Bumps(class), 24);
        assert_induced_matches_coordinates(&comp);
        let rem = comp.remainder_ids();
        assert_eq!(rem.len(), 1, "{class:?}");
        let r = rem[0];
        for u in comp.core_ids() {
            assert_eq!(comp.induced.le(r, u), below, "{class:?}: ∞ ≤ {u}");
            assert_eq!(comp.induced.le(u, r), above, "{class:?}: {u} ≤ ∞");
        }
        // Core points stay pairwise incomparable.
        let core: Vec<usize> = comp.core_ids().collect();
        assert_eq!(core.len(), 24);
        for &u in &core {
            for &v in &core {
                assert_eq!(comp.induced.le(u, v), u == v);
            }
        }
    }
}

#[test]
fn every_default_build_has_an_ordered_remainder() {
    for name in CATALOG_NAMES {
        let res = if name == "misner-strip" { 16 } else { 64 };
        let comp = build(name, FamilySpec::Default, res);
        assert!(comp.is_complete(), "{name}");
        assert!(comp.induced.is_valid(), "{name}");
        assert!(remainder_is_ordered(&comp).unwrap().passed(), "{name}");
        let sp = catalog(name).unwrap();
        let max_rate = if name == "misner-strip" { 0.01 } else { 0.0 };
        let r = verify_preorder_embedding(sp.as_ref(), &comp, &PairSampling::default(), max_rate);
        assert!(r.passed(), "{name}: {r:?}");
    }
}

#[test]
fn mirror_ends_share_one_remainder_vertex() {
    let comp = build("real-line-mirror", FamilySpec::Default, 64);
    assert_eq!(comp.remainder_ids().len(), 1);
    assert_eq!(comp.end_map, vec![vec![comp.remainder_ids()[0]]; 2]);
}

#[test]
fn non_cauchy_coordinate_leaves_the_build_incomplete() {
    let comp = build("nat-discrete", names(&["alt"]), 16);
    assert!(!comp.is_complete());
    assert!(comp.first_divergent().is_some());
    assert!(matches!(
        comp.require_complete(),
        Err(Error::Incomplete { .. })
    ));
    assert!(matches!(
        remainder_is_ordered(&comp),
        Err(Error::Incomplete { .. })
    ));
}

#[test]
fn squares_dominate_identity() {
    let small = build("half-open-interval", names(&["id"]), 64);
    let large = build("half-open-interval", names(&["id", "sq"]), 64);
    let map = dominate(&large, &small).unwrap();
    for check in ["commutes_on_samples", "isotone", "remainder_to_remainder"] {
        assert!(map.checks.is_pass(check), "{check}: {map:?}");
    }
}

#[test]
fn randomized_nested_families_dominate() {
    let mut r = rng(0);
    for case in 0..40 {
        let nf = random_nested_families(&mut r);
        let small = build(nf.space, FamilySpec::Names(nf.h1.clone()), nf.resolution);
        let large = build(nf.space, FamilySpec::Names(nf.h2.clone()), nf.resolution);
        let map = dominate(&large, &small).unwrap();
        assert!(map.passed(), "case {case} {nf:?}: {:?}", map.checks);
    }
}

#[test]
fn equivalent_compactifications_compose_to_identity() {
    // `sq` is a function of `id`, so both builds have the same vertices.
    let a = build("half-open-interval", names(&["id"]), 64);
    let b = build("half-open-interval", names(&["id", "sq"]), 64);
    let ab = attempt_domination(&a, &b).unwrap().found.expect("a → b");
    let ba = attempt_domination(&b, &a).unwrap().found.expect("b → a");
    for v in 0..a.len() {
        let back = ba.vertex_map[ab.vertex_map[v]];
        let d = a.vertices[v]
            .coords
            .iter()
            .zip(&a.vertices[back].coords)
            .map(|(x, y)| (x - y).abs())
            .max()
            .unwrap();
        assert!(d <= 1, "vertex {v} returns to {back}");
    }
}

#[test]
fn minus_and_plus_are_mutually_minimal() {
    let c = build("nat-discrete", FamilySpec::Bumps(TailClassSelector::C), 12);
    let minus = build(
        "nat-discrete",
        FamilySpec::Bumps(TailClassSelector::CMinus),
        12,
    );
    let plus = build(
        "nat-discrete",
        FamilySpec::Bumps(TailClassSelector::CPlus),
        12,
    );
    assert!(attempt_domination(&c, &minus).unwrap().found.is_some());
    assert!(attempt_domination(&c, &plus).unwrap().found.is_some());
    for (a, b) in [(&minus, &plus), (&plus, &minus)] {
        let attempt = attempt_domination(a, b).unwrap();
        assert!(attempt.found.is_none());
        assert!(!attempt.rejected.is_empty());
        assert!(attempt.rejected.iter().all(|r| !r.failed.is_empty()));
    }
}

#[test]
fn different_spaces_are_incompatible() {
    let a = build("half-open-interval", FamilySpec::Default, 32);
    let b = build("closed-interval", FamilySpec::Default, 32);
    assert!(matches!(dominate(&a, &b), Err(Error::Incompatible(_))));
}

fn pool(space: &dyn SampledSpace, list: &[&str]) -> Vec<ordcomp::sampled::ScalarFunction> {
    list.iter().map(|n| space.function(n).unwrap()).collect()
}

#[test]
fn i_closure_is_idempotent_and_monotone() {
    let sp = catalog("half-open-interval").unwrap();
    let comp = build("half-open-interval", FamilySpec::Default, 256);
    let all = ["id", "sq", "sqrt", "exp3", "osc"];
    let closure = |list: &[&str]| i_closure(sp.as_ref(), &comp, &pool(sp.as_ref(), list)).unwrap();
    let once = closure(&all);
    assert_eq!(once, ["id", "sq", "sqrt", "exp3"]);
    let refs: Vec<&str> = once.iter().map(String::as_str).collect();
    assert_eq!(closure(&refs), once);
    let smaller = closure(&["id", "osc"]);
    assert!(smaller.iter().all(|n| once.contains(n)));
    for (k, f) in comp.family.h.iter().enumerate() {
        assert!(
            extendability(sp.as_ref(), &comp, f)
                .unwrap()
                .is_extendable(),
            "defining coordinate {k}"
        );
    }
}

#[test]
fn extendability_distinguishes_failure_modes() {
    let nat = catalog("nat-discrete").unwrap();
    let comp = build(
        "nat-discrete",
        FamilySpec::Bumps(TailClassSelector::CMinus),
        16,
    );
    let alt = nat.function("alt").unwrap();
    assert!(matches!(
        extendability(nat.as_ref(), &comp, &alt).unwrap(),
        Extension::NotCauchy { .. }
    ));
    let codelta = nat.function("codelta:3").unwrap();
    assert!(!extendability(nat.as_ref(), &comp, &codelta)
        .unwrap()
        .is_extendable());
    let full = build("nat-discrete", FamilySpec::Bumps(TailClassSelector::C), 16);
    assert!(extendability(nat.as_ref(), &full, &codelta)
        .unwrap()
        .is_extendable());
}

#[test]
fn remainder_vertices_are_never_core_images() {
    for name in CATALOG_NAMES {
        let res = if name == "misner-strip" { 16 } else { 64 };
        let comp = build(name, FamilySpec::Default, res);
        assert!(comp
            .sample_map
            .iter()
            .all(|&v| comp.vertices[v].kind == VertexKind::Core));
        for v in comp.remainder_ids() {
            assert!(!comp.sample_map.contains(&v), "{name}: {v}");
        }
    }
}
