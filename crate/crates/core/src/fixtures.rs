//! Small worked covers used throughout the tests, benches and CLI self-test.

use std::collections::BTreeMap;

use crate::cover::{CoverOptions, DoubleCover};
use crate::error::Result;
use crate::graph::{EdgeSet, Graph};
use crate::rat::{int, rat, Rat};

fn build(vertices: &[&str], edges: &[(&str, &str, &str, Rat)]) -> Result<Graph> {
    let mut g = Graph::new();
    for v in vertices {
        g.add_vertex(*v)?;
    }
    for (name, s, t, len) in edges {
        let s = g.vertex_id(s).expect("fixture vertex");
        let t = g.vertex_id(t).expect("fixture vertex");
        g.add_edge(*name, s, t, len.clone())?;
    }
    Ok(g)
}

/// Two double edges joined in series by a bridge, genus 3.
///
/// `e1, e3` join `v1, v2`; `e4` joins `v2, v3`; `e2, e5` join `v3, v4`.
/// Tree `{e3, e4, e5}`, flips `{e1, e2}`.
pub fn double_edge_chain() -> DoubleCover {
    let one = int(1);
    let g = build(
        &["v1", "v2", "v3", "v4"],
        &[
            ("e1", "v1", "v2", one.clone()),
            ("e2", "v3", "v4", one.clone()),
            ("e3", "v1", "v2", one.clone()),
            ("e4", "v2", "v3", one.clone()),
            ("e5", "v3", "v4", one),
        ],
    )
    .expect("fixture graph");
    let tree = g.edge_ids(&["e3", "e4", "e5"]).expect("fixture edges");
    let flips = g.edge_ids(&["e1", "e2"]).expect("fixture edges");
    DoubleCover::new(g, tree, flips).expect("fixture cover")
}

/// Two loops `e1` at `a` and `e2` at `b` joined by the bridge `e3`, genus 2.
///
/// With `both_loops_flipped` the flip set is `{e1, e2}`, otherwise `{e1}`.
pub fn dumbbell(lengths: [Rat; 3], both_loops_flipped: bool) -> DoubleCover {
    let [x1, x2, x3] = lengths;
    let g = build(&["a", "b"], &[("e1", "a", "a", x1), ("e2", "b", "b", x2), ("e3", "a", "b", x3)])
        .expect("fixture graph");
    let flips: EdgeSet = if both_loops_flipped { [0, 1].into() } else { [0].into() };
    DoubleCover::new(g, EdgeSet::from([2]), flips).expect("fixture cover")
}

pub fn unit_dumbbell(both_loops_flipped: bool) -> DoubleCover {
    dumbbell([int(1), int(1), int(1)], both_loops_flipped)
}

/// A path `A - B - C - D` with a loop at each end and a doubled middle edge, genus 3.
///
/// Edges `h1` (loop at A), `h3: B -> A`, `h4: C -> B`, `h5: B -> C`,
/// `h6: C -> D`, `h7` (loop at D). Tree `{h3, h5, h6}`, flips `{h1, h4, h7}`
/// with base flip `h4` and the `+` lift of `h7` starting on sheet `-`.
pub fn looped_path() -> DoubleCover {
    looped_path_with_lengths([rat(12, 5), rat(4, 5), int(1), rat(7, 5), rat(11, 10), rat(7, 5)])
}

/// [`looped_path`] with lengths for `h1, h3, h4, h5, h6, h7`.
pub fn looped_path_with_lengths(lengths: [Rat; 6]) -> DoubleCover {
    let [l1, l3, l4, l5, l6, l7] = lengths;
    let g = build(
        &["A", "B", "C", "D"],
        &[
            ("h1", "A", "A", l1),
            ("h3", "B", "A", l3),
            ("h4", "C", "B", l4),
            ("h5", "B", "C", l5),
            ("h6", "C", "D", l6),
            ("h7", "D", "D", l7),
        ],
    )
    .expect("fixture graph");
    let tree = g.edge_ids(&["h3", "h5", "h6"]).expect("fixture edges");
    let flips = g.edge_ids(&["h1", "h4", "h7"]).expect("fixture edges");
    let options = CoverOptions {
        base_flip: g.edge_id("h4"),
        orientations: BTreeMap::from([(g.edge_id("h7").expect("fixture edge"), -1)]),
    };
    DoubleCover::with_options(g, tree, flips, options).expect("fixture cover")
}

/// A genus 3 cover whose Abel-Prym fibres mix local degrees 1 and 2.
///
/// Vertices `v1, v2, v3`; `e1: v1 -> v2`, `e2: v2 -> v3`, a loop `e3` at
/// `v2` of length `loop_length`, and a double edge `e4, e5: v1 -> v3`. A
/// loop length of at least 4 keeps the fibre through `x = 1/2, y = 1/4`
/// generic. Tree `{e1, e5}`, flips `{e3, e4}`; all
/// other lengths are 1.
pub fn mixed_degree_cover(loop_length: Rat) -> DoubleCover {
    let one = int(1);
    let g = build(
        &["v1", "v2", "v3"],
        &[
            ("e1", "v1", "v2", one.clone()),
            ("e2", "v2", "v3", one.clone()),
            ("e3", "v2", "v2", loop_length),
            ("e4", "v1", "v3", one.clone()),
            ("e5", "v1", "v3", one),
        ],
    )
    .expect("fixture graph");
    let tree = g.edge_ids(&["e1", "e5"]).expect("fixture edges");
    let flips = g.edge_ids(&["e3", "e4"]).expect("fixture edges");
    DoubleCover::new(g, tree, flips).expect("fixture cover")
}
