//! Two effective divisors with equivalent Prym images but different local degrees.

use prym_core::abel_prym::AbelPrym;
use prym_core::divisor::{metric_linearly_equivalent, MetricPoint};
use prym_core::fixtures::mixed_degree_cover;
use prym_core::rat::{int, rat};
use prym_core::{DoubleCover, EdgeId, EdgeSet, Rat};

struct Representatives {
    first: Vec<(EdgeId, Rat)>,
    second: Vec<(EdgeId, Rat)>,
}

/// `first = P1 + Q1` with `P1` on `e1+` at `x` from `v1+` and `Q1` on `e2+`
/// at `y` from `v3+`; `second = P2 + Q2` with `P2` on `e1-` at `x - y` from
/// `v2-` and `Q2` on `e3+` at `1 + 2y` from `v2+`. Edges are original total ids.
fn representatives(cover: &DoubleCover, x: &Rat, y: &Rat) -> Representatives {
    let total = cover.total();
    let id = |n: &str| total.edge_id(n).unwrap();
    let one = int(1);
    Representatives {
        first: vec![(id("e1+"), x.clone()), (id("e2+"), &one - y)],
        second: vec![(id("e1-"), &one - (x - y)), (id("e3+"), &one + y * int(2))],
    }
}

fn with_involution(points: &[(EdgeId, Rat)]) -> Vec<(MetricPoint, i64)> {
    points
        .iter()
        .flat_map(|(e, t)| {
            [
                (MetricPoint { edge: *e, position: t.clone() }, 1),
                (MetricPoint { edge: e ^ 1, position: t.clone() }, -1),
            ]
        })
        .collect()
}

#[test]
fn representatives_are_equivalent_with_degrees_two_and_one() {
    for loop_length in [int(4), int(5), rat(9, 2)] {
        let cover = mixed_degree_cover(loop_length);
        let ap = AbelPrym::new(&cover).unwrap();
        for (x, y) in [(rat(1, 2), rat(1, 4)), (rat(3, 5), rat(1, 7)), (rat(3, 4), rat(1, 3)), (rat(9, 10), rat(1, 10))] {
            let reps = representatives(&cover, &x, &y);
            let locate = |pts: &[(EdgeId, Rat)]| -> Vec<(EdgeId, Rat)> {
                pts.iter().map(|(e, t)| ap.locate(*e, t).unwrap()).collect()
            };
            let d1 = locate(&reps.first);
            let d2 = locate(&reps.second);
            let a1 = ap.torsor_coordinates(&d1).unwrap();
            let a2 = ap.torsor_coordinates(&d2).unwrap();
            assert!(ap.equivalent(&a1, &a2));
            // Independent check by chip-firing on a refined model of the cover.
            assert!(metric_linearly_equivalent(
                cover.total(),
                &with_involution(&reps.first),
                &with_involution(&reps.second)
            )
            .unwrap());

            let cells = |d: &[(EdgeId, Rat)]| d.iter().map(|(e, _)| *e).collect::<Vec<_>>();
            assert_eq!(ap.cell_degree(&cells(&d1)).unwrap(), 2);
            assert_eq!(ap.cell_degree(&cells(&d2)).unwrap(), 1);

            let fiber = ap.fiber(&a1).unwrap();
            assert_eq!(fiber.iter().map(|p| p.degree).sum::<u64>(), 4);
            let mut degrees: Vec<u64> = fiber.iter().map(|p| p.degree).collect();
            degrees.sort_unstable();
            assert_eq!(degrees, vec![1, 1, 2]);
            // The third representative leaves a single connected complement.
            let third: Vec<_> = fiber
                .iter()
                .filter(|p| p.edges != cells(&d1) && p.edges != cells(&d2))
                .collect();
            assert_eq!(third.len(), 1);
            let model = ap.model();
            let projected: EdgeSet = third[0].edges.iter().map(|&x| model.project_edge(x)).collect();
            assert_eq!(model.base().components_without(&projected).len(), 1);
        }
    }
}

#[test]
fn second_representative_cell_lies_on_the_loop() {
    let cover = mixed_degree_cover(int(3));
    let ap = AbelPrym::new(&cover).unwrap();
    let e3 = cover.total().edge_id("e3+").unwrap();
    // Distances 1 and 2 fall on opposite halves of the subdivided loop.
    let (first_half, t1) = ap.locate(e3, &int(1)).unwrap();
    let (second_half, t2) = ap.locate(e3, &int(2)).unwrap();
    assert_ne!(first_half, second_half);
    assert_eq!(ap.base_origin(first_half / 2), ap.base_origin(second_half / 2));
    assert!(t1 > int(0) && t2 > int(0));
}

