use super::{compactify, nearest, BuildParams, Compactification};
use crate::error::{Error, Result};
use crate::relation::{quotient_preorder, symmetric_part, EquivalenceClasses, PreorderGraph};
use crate::report::{CheckReport, Witness};
use crate::sampled::{build_family, FamilySpec, SampledSpace};

struct Path {
    comp: Compactification,
    classes: EquivalenceClasses,
    order: PreorderGraph,
}

fn quotient_of(comp: Compactification) -> Path {
    let classes = symmetric_part(&comp.induced);
    let order = quotient_preorder(&comp.induced, &classes).expect("classes come from the graph");
    Path {
        comp,
        classes,
        order,
    }
}

/// Compares the two routes around the quotient square.
///
/// Path A compactifies `E` and quotients the induced preorder by its
/// symmetric part. Path B compactifies the quotient space `E/∼` with the
/// same `H` names, then quotients likewise (a no-op when its induced
/// preorder is already an order). Core samples of `E` are projected to
/// `E/∼` and snapped to path-B vertices; the resulting block map must be a
/// well-defined order isomorphism that matches remainder with remainder
/// and `H`-coordinates within one quantum.
pub fn nachbin_pipeline(
    space: &dyn SampledSpace,
    family: &FamilySpec,
    params: &BuildParams,
) -> Result<CheckReport> {
    let quotient = space
        .quotient()
        .ok_or_else(|| Error::Config(format!("{} has no quotient generator", space.name())))?;
    let fam_a = build_family(space, family, params.resolution, params.tail_depth)?;
    let a = quotient_of(compactify(space, &fam_a, params)?);
    a.comp.require_complete()?;
    let spec_b = FamilySpec::Names(fam_a.h_names());
    let params_b = params.with_resolution((quotient.resolution)(params.resolution));
    let fam_b = build_family(
        quotient.space.as_ref(),
        &spec_b,
        params_b.resolution,
        params.tail_depth,
    )?;
    let b = quotient_of(compactify(quotient.space.as_ref(), &fam_b, &params_b)?);
    b.comp.require_complete()?;

    let h = fam_a.h.len();
    let mut r = CheckReport::new();
    r.metric("path_a_vertices", a.comp.len() as f64)
        .metric("path_a_blocks", a.classes.len() as f64)
        .metric("path_b_blocks", b.classes.len() as f64);

    // Block map through projected samples.
    let mut block_map: Vec<Option<usize>> = vec![None; a.classes.len()];
    let mut conflict = None;
    let mut far = None;
    for (s, p) in a.comp.sample.core.iter().enumerate() {
        let image: Vec<f64> = fam_b
            .members()
            .map(|f| f.eval(&(quotient.project)(p)))
            .collect();
        let q = params.quantize_all(&image);
        let (w, d) = nearest(b.comp.vertices.iter(), &q).expect("path B has vertices");
        if d > 1 && far.is_none() {
            far = Some(Witness::Point { point: s });
        }
        let ba = a.classes.block_of[a.comp.sample_map[s]];
        let bb = b.classes.block_of[w];
        match block_map[ba] {
            Some(prev) if prev != bb => {
                conflict.get_or_insert(Witness::Point { point: s });
            }
            _ => block_map[ba] = Some(bb),
        }
    }
    // Remainder blocks are matched by their H-coordinates.
    let mut unmatched = None;
    for v in a.comp.remainder_ids() {
        let ba = a.classes.block_of[v];
        let hv = &a.comp.vertices[v].coords[..h];
        let target = b
            .comp
            .remainder_ids()
            .into_iter()
            .find(|&w| super::sup_distance(&b.comp.vertices[w].coords[..h], hv) <= 1);
        match (target, block_map[ba]) {
            (Some(w), None) => block_map[ba] = Some(b.classes.block_of[w]),
            (Some(w), Some(prev)) if prev != b.classes.block_of[w] => {
                conflict.get_or_insert(Witness::Point { point: v });
            }
            (None, _) => {
                unmatched.get_or_insert(Witness::Point { point: v });
            }
            _ => {}
        }
    }
    r.record("projection_within_quantum", far);
    r.record("block_map_well_defined", conflict.or(unmatched));

    let total: Option<Vec<usize>> = block_map.iter().copied().collect();
    let Some(map) = total else {
        let missing = block_map.iter().position(Option::is_none).unwrap();
        r.fail(
            "block_map_bijective",
            Witness::Note {
                note: format!("path-A block {missing} has no image"),
            },
        );
        return Ok(r);
    };
    let mut hit = vec![false; b.classes.len()];
    let mut dup = None;
    for (ba, &bb) in map.iter().enumerate() {
        if hit[bb] {
            dup.get_or_insert(Witness::Point { point: ba });
        }
        hit[bb] = true;
    }
    let miss = hit.iter().position(|h| !h).map(|bb| Witness::Note {
        note: format!("path-B block {bb} is not hit"),
    });
    r.record("block_map_bijective", dup.or(miss));

    r.record(
        "order_isomorphism",
        (0..map.len())
            .flat_map(|x| (0..map.len()).map(move |y| (x, y)))
            .find(|&(x, y)| a.order.le(x, y) != b.order.le(map[x], map[y]))
            .map(|(left, right)| Witness::Pair { left, right }),
    );

    let rem_block = |p: &Path, blk: usize| p.comp.is_remainder(p.classes.representative(blk));
    r.record(
        "remainder_to_remainder",
        (0..map.len())
            .find(|&x| rem_block(&a, x) != rem_block(&b, map[x]))
            .map(|point| Witness::Point { point }),
    );

    r.record(
        "h_coordinates_match",
        (0..map.len())
            .find(|&x| {
                let u = a.classes.representative(x);
                let w = b.classes.representative(map[x]);
                super::sup_distance(
                    &a.comp.vertices[u].coords[..h],
                    &b.comp.vertices[w].coords[..h],
                ) > 1
            })
            .map(|point| Witness::Point { point }),
    );

    r.record(
        "quotient_antisymmetric",
        a.order
            .antisymmetry_witness()
            .or(b.order.antisymmetry_witness())
            .map(|(left, right)| Witness::Pair { left, right }),
    );
    Ok(r)
}
