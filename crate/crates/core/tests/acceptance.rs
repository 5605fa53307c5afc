//! Acceptance run: one line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use ordcomp::cli::run;
use ordcomp::compact::{
    attempt_domination, compactify, dominate, extendability, i_closure, nachbin_pipeline,
    remainder_is_ordered, verify_preorder_embedding, BuildParams, Compactification,
};
use ordcomp::finite::smallest_closed_preorder;
use ordcomp::relation::symmetric_part;
use ordcomp::sampled::{
    build_family, catalog, FamilySpec, HalfOpenInterval, PairSampling, SampledSpace,
    TailClassSelector, CATALOG_NAMES,
};

type Outcome = Result<String, String>;
type Build = (Box<dyn SampledSpace>, Compactification);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn build(
    space: &dyn SampledSpace,
    spec: &FamilySpec,
    resolution: usize,
) -> Result<Compactification, String> {
    let params = BuildParams::default().with_resolution(resolution);
    let fam = build_family(space, spec, resolution, params.tail_depth).map_err(err)?;
    compactify(space, &fam, &params).map_err(err)
}

fn names(list: &[&str]) -> FamilySpec {
    FamilySpec::Names(list.iter().map(|s| s.to_string()).collect())
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn ac1_half_open_interval() -> Outcome {
    let start = Instant::now();
    let comp = build(&HalfOpenInterval, &names(&["id"]), 10_000)?;
    let embedding =
        verify_preorder_embedding(&HalfOpenInterval, &comp, &PairSampling::default(), 0.0);
    let ordered = remainder_is_ordered(&comp).map_err(err)?;
    let elapsed = start.elapsed();

    let rem = comp.remainder_ids();
    ensure(rem.len() == 1, || {
        format!("{} remainder vertices", rem.len())
    })?;
    let top = rem[0];
    let coord = format!("{:.3}", comp.coord(top, 0));
    ensure(coord == "1.000", || format!("id-coordinate {coord}"))?;
    ensure((0..comp.len()).all(|u| comp.induced.le(u, top)), || {
        "remainder is not the maximum".into()
    })?;
    let violations = embedding.metrics["embedding_violations"];
    ensure(violations == 0.0, || {
        format!("{violations} embedding violations")
    })?;
    ensure(ordered.passed(), || "remainder not ordered".into())?;
    within(elapsed, Duration::from_secs(2))?;
    Ok(format!(
        "1 remainder vertex at id = {coord}, maximum; {} pairs, 0 violations ({} below quantum); {elapsed:.2?}",
        embedding.metrics["embedding_pairs"], embedding.metrics["embedding_unresolved"]
    ))
}

fn ac2_closed_interval() -> Outcome {
    let space = catalog("closed-interval").map_err(err)?;
    let comp = build(space.as_ref(), &FamilySpec::Default, 1000)?;
    ensure(comp.remainder_ids().is_empty(), || {
        "remainder is not empty".into()
    })?;
    let core = &comp.sample.core;
    let mut compared = 0usize;
    for i in 0..core.len() {
        for j in 0..core.len() {
            let induced = comp.induced.le(comp.sample_map[i], comp.sample_map[j]);
            ensure(induced == (core[i].x() <= core[j].x()), || {
                format!("pair ({i}, {j}) differs")
            })?;
            compared += 1;
        }
    }
    Ok(format!(
        "0 remainder vertices; induced order equals x ≤ y on all {compared} sample pairs"
    ))
}

fn ac3_one_point_suite() -> Outcome {
    let space = catalog("nat-discrete").map_err(err)?;
    let mut parts = Vec::new();
    for (class, below, above, label) in [
        (TailClassSelector::C, false, false, "incomparable"),
        (TailClassSelector::CMinus, true, false, "below all"),
        (TailClassSelector::CPlus, false, true, "above all"),
    ] {
        let comp = build(space.as_ref(), &FamilySpec::Bumps(class), 32)?;
        let rem = comp.remainder_ids();
        ensure(rem.len() == 1, || {
            format!("{}: {} remainder vertices", class.as_str(), rem.len())
        })?;
        let r = rem[0];
        for u in comp.core_ids() {
            ensure(
                comp.induced.le(r, u) == below && comp.induced.le(u, r) == above,
                || format!("{}: wrong relation with core vertex {u}", class.as_str()),
            )?;
        }
        parts.push(format!("{}: {label}", class.as_str()));
    }
    Ok(parts.join(", "))
}

fn ac4_no_smallest() -> Outcome {
    let start = Instant::now();
    let space = catalog("nat-discrete").map_err(err)?;
    let b = |c| build(space.as_ref(), &FamilySpec::Bumps(c), 16);
    let (c, minus, plus) = (
        b(TailClassSelector::C)?,
        b(TailClassSelector::CMinus)?,
        b(TailClassSelector::CPlus)?,
    );
    for target in [&minus, &plus] {
        let found = attempt_domination(&c, target).map_err(err)?.found;
        ensure(found.is_some_and(|m| m.passed()), || {
            format!("no map C -> {}", target.label())
        })?;
    }
    let mut searched = 0;
    for (a, t) in [(&minus, &plus), (&plus, &minus)] {
        let attempt = attempt_domination(a, t).map_err(err)?;
        ensure(attempt.found.is_none(), || {
            format!("{} -> {} found a map", a.label(), t.label())
        })?;
        let space_size = t.remainder_ids().len().pow(a.remainder_ids().len() as u32);
        ensure(attempt.rejected.len() == space_size, || {
            "search was not exhaustive".into()
        })?;
        searched += space_size;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "C dominates C⁻ and C⁺; {searched} candidate maps between C⁻ and C⁺ all rejected; {elapsed:.2?}"
    ))
}

/// Every catalog default build plus the three nat-discrete one-point builds.
fn catalog_builds() -> Result<Vec<Build>, String> {
    let mut out = Vec::new();
    for name in CATALOG_NAMES {
        let space = catalog(name).map_err(err)?;
        let comp = build(space.as_ref(), &FamilySpec::Default, 64)?;
        out.push((space, comp));
    }
    for class in [
        TailClassSelector::C,
        TailClassSelector::CMinus,
        TailClassSelector::CPlus,
    ] {
        let space = catalog("nat-discrete").map_err(err)?;
        let comp = build(space.as_ref(), &FamilySpec::Bumps(class), 64)?;
        out.push((space, comp));
    }
    Ok(out)
}

fn ac5_remainder_ordered(builds: &[Build]) -> Outcome {
    let mut parts = Vec::new();
    for (_, comp) in builds {
        let r = remainder_is_ordered(comp).map_err(err)?;
        ensure(r.passed(), || {
            format!("{}: remainder not ordered", comp.label())
        })?;
        parts.push(format!("{}:{}", comp.space, comp.remainder_ids().len()));
    }
    let misner = &builds[3].1;
    ensure(misner.sample.core.len() == 64 * 64, || {
        "misner build is not 64×64".into()
    })?;
    Ok(format!(
        "{} builds incl. misner-strip 64×64; remainder sizes {}",
        builds.len(),
        parts.join(" ")
    ))
}

fn ac6_domination_nesting() -> Outcome {
    let small = build(&HalfOpenInterval, &names(&["id"]), 64)?;
    let large = build(&HalfOpenInterval, &names(&["id", "sq"]), 64)?;
    let map = dominate(&large, &small).map_err(err)?;
    for check in ["commutes_on_samples", "isotone", "remainder_to_remainder"] {
        ensure(map.checks.is_pass(check), || {
            format!("{{id}} ⊂ {{id, sq}}: {check} failed")
        })?;
    }
    let mut r = rng(0);
    let mut failures = Vec::new();
    for case in 0..100 {
        let nf = random_nested_families(&mut r);
        let space = catalog(nf.space).map_err(err)?;
        let a = build(
            space.as_ref(),
            &FamilySpec::Names(nf.h1.clone()),
            nf.resolution,
        )?;
        let b = build(
            space.as_ref(),
            &FamilySpec::Names(nf.h2.clone()),
            nf.resolution,
        )?;
        if !dominate(&b, &a).map_err(err)?.passed() {
            failures.push(format!("#{case} {} {:?} ⊂ {:?}", nf.space, nf.h1, nf.h2));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(
        "{id} ⊂ {id, sq} passes all three checks; 100 randomized nested instances, 0 failures"
            .into(),
    )
}

fn ac7_finite_suites() -> Outcome {
    let start = Instant::now();
    let mut r = rng(0);
    let mut closed = 0;
    for case in 0..1000 {
        let raw = random_space(&mut r, 6);
        let sp = raw.space();
        let opens = raw.opens();
        let rel = rel_of(sp.preorder());
        if graph_closed(&opens, raw.n, &rel) {
            closed += 1;
            ensure(t1_preordered(&opens, raw.n, &rel) && sp.is_t1(), || {
                format!("a: case {case} {raw:?}")
            })?;
        }
    }
    let a_closed = closed;

    let mut r = rng(0);
    closed = 0;
    for case in 0..1000 {
        let raw = random_space(&mut r, 6);
        let sp = raw.space();
        if !graph_closed(&raw.opens(), raw.n, &rel_of(sp.preorder())) {
            continue;
        }
        closed += 1;
        let q = sp.quotient_space();
        let classes = symmetric_part(sp.preorder());
        let qopens = quotient_opens(&raw.opens(), raw.n, &classes.block_of);
        let qrel = rel_of(q.preorder());
        ensure(
            is_antisymmetric(&qrel) && graph_closed(&qopens, q.n(), &qrel),
            || format!("b: case {case} {raw:?}"),
        )?;
    }
    let b_closed = closed;

    let mut r = rng(0);
    let preorders: Vec<Vec<Rel>> = (0..=4).map(all_preorders).collect();
    for case in 0..1000 {
        let raw = random_space(&mut r, 4);
        let got =
            smallest_closed_preorder(&raw.topology(), raw.relation.iter().copied()).map_err(err)?;
        let want = smallest_closed_by_intersection(
            &raw.opens(),
            raw.n,
            &rel_of(&raw.preorder()),
            &preorders[raw.n],
        );
        ensure(rel_of(&got) == want, || format!("c: case {case} {raw:?}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "a: 0 counterexamples ({a_closed} closed of 1000); b: 0 ({b_closed} closed); c: 1000/1000 match; {elapsed:.2?}"
    ))
}

fn ac8_i_closure(builds: &[Build]) -> Outcome {
    let comp = build(&HalfOpenInterval, &FamilySpec::Default, 256)?;
    let pool_names = ["id", "sq", "sqrt", "exp3", "osc"];
    let closure = |subset: u32| -> Result<Vec<String>, String> {
        let fns = pool_names
            .iter()
            .enumerate()
            .filter(|(k, _)| subset >> k & 1 == 1)
            .map(|(_, n)| HalfOpenInterval.function(n))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        i_closure(&HalfOpenInterval, &comp, &fns).map_err(err)
    };
    let all: Vec<Vec<String>> = (0u32..32).map(closure).collect::<Result<_, _>>()?;
    for s in 0u32..32 {
        let subset: u32 = pool_names
            .iter()
            .enumerate()
            .filter(|(_, n)| all[s as usize].iter().any(|m| m == *n))
            .map(|(k, _)| 1 << k)
            .sum();
        ensure(all[subset as usize] == all[s as usize], || {
            format!("not idempotent on subset {s:05b}")
        })?;
        for t in 0u32..32 {
            if s & t == s {
                let inside = all[s as usize].iter().all(|n| all[t as usize].contains(n));
                ensure(inside, || format!("not monotone: {s:05b} ⊂ {t:05b}"))?;
            }
        }
    }
    let mut defining = 0;
    for (space, comp) in builds {
        for f in &comp.family.h {
            let e = extendability(space.as_ref(), comp, f).map_err(err)?;
            ensure(e.is_extendable(), || {
                format!("{}: {} does not extend: {e:?}", comp.label(), f.name())
            })?;
            defining += 1;
        }
    }
    Ok(format!(
        "i(pool) = {:?}; idempotent and monotone over all 32 sub-pools; H ⊆ i(H) for {defining} defining functions on {} builds",
        all[31],
        builds.len()
    ))
}

fn ac9_nachbin_diagram() -> Outcome {
    let space = catalog("real-line-mirror").map_err(err)?;
    let r = nachbin_pipeline(
        space.as_ref(),
        &FamilySpec::Default,
        &BuildParams::default(),
    )
    .map_err(err)?;
    let failed: Vec<&str> = r
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    ensure(failed.is_empty(), || format!("failed: {failed:?}"))?;
    Ok(format!(
        "order isomorphism, projections within ε_q, quotient antisymmetric; {} vertices → {} blocks = {} blocks",
        r.metrics["path_a_vertices"], r.metrics["path_a_blocks"], r.metrics["path_b_blocks"]
    ))
}

fn ac10_determinism() -> Outcome {
    let tmp = tempfile::TempDir::new().map_err(err)?;
    let configs: [&[&str]; 4] = [
        &["--space", "half-open-interval"],
        &["--space", "nat-discrete", "--family", "Cplus"],
        &["--space", "real-line-mirror", "--seed", "5"],
        &["--space", "misner-strip", "--resolution", "16"],
    ];
    for (k, cfg) in configs.iter().enumerate() {
        let mut bytes = Vec::new();
        for rep in 0..2 {
            let dir = tmp.path().join(format!("c{k}r{rep}"));
            let out = dir.display().to_string();
            let args = ["ordcomp", "compactify", "--out", out.as_str()]
                .into_iter()
                .chain(cfg.iter().copied());
            let code = run(args, &mut std::io::sink(), &mut std::io::sink());
            ensure(code == 0, || format!("{cfg:?} exited {code}"))?;
            bytes.push(std::fs::read(dir.join("report.json")).map_err(err)?);
        }
        ensure(bytes[0] == bytes[1], || {
            format!("{cfg:?}: report.json differs")
        })?;
    }
    Ok(format!(
        "{} configurations, two runs each, byte-identical report.json",
        configs.len()
    ))
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut report = |id: &str, title: &str, outcome: std::thread::Result<Outcome>| {
        let outcome = outcome.unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("[PASS] {id} {title}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {id} {title}: {detail}");
            }
        }
    };
    let guard = |f: &dyn Fn() -> Outcome| catch_unwind(AssertUnwindSafe(f));

    report("AC1", "half-open interval", guard(&ac1_half_open_interval));
    report("AC2", "compact identity", guard(&ac2_closed_interval));
    report("AC3", "one-point suite", guard(&ac3_one_point_suite));
    report(
        "AC4",
        "no smallest compactification",
        guard(&ac4_no_smallest),
    );
    let builds = catalog_builds();
    let with_builds = |f: fn(&[Build]) -> Outcome| {
        let b = &builds;
        guard(&move || f(b.as_ref().map_err(Clone::clone)?))
    };
    report("AC5", "remainder order", with_builds(ac5_remainder_ordered));
    report("AC6", "domination nesting", guard(&ac6_domination_nesting));
    report("AC7", "finite property suites", guard(&ac7_finite_suites));
    report("AC8", "i(H) algebra", with_builds(ac8_i_closure));
    report("AC9", "Nachbin diagram", guard(&ac9_nachbin_diagram));
    report("AC10", "determinism", guard(&ac10_determinism));

    if failures == 0 {
        println!("acceptance: 10/10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
