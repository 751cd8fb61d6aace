//! Seeded random covers for property suites.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cover::{CoverOptions, DoubleCover};
use crate::graph::{EdgeSet, Graph};
use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct RandomCoverConfig {
    pub max_vertices: usize,
    pub min_genus: usize,
    pub max_genus: usize,
    pub loops: bool,
    pub random_lengths: bool,
    /// Randomize which lift of each flip edge is labelled `+`.
    pub random_orientations: bool,
}

impl Default for RandomCoverConfig {
    fn default() -> Self {
        RandomCoverConfig {
            max_vertices: 7,
            min_genus: 2,
            max_genus: 5,
            loops: true,
            random_lengths: false,
            random_orientations: true,
        }
    }
}

/// A random connected base graph with a random free double cover.
pub fn random_cover(rng: &mut impl Rng, config: &RandomCoverConfig) -> DoubleCover {
    let n = rng.gen_range(1..=config.max_vertices);
    let genus = rng.gen_range(config.min_genus.max(1)..=config.max_genus);
    let mut pairs: Vec<(usize, usize, bool)> = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        pairs.push((u, v, true));
    }
    for _ in 0..genus {
        let (u, v) = loop {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v || config.loops || n == 1 {
                break (u, v);
            }
        };
        pairs.push((u, v, false));
    }
    pairs.shuffle(rng);
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(format!("v{v}")).expect("fresh names");
    }
    let mut tree = EdgeSet::new();
    for (i, &(u, v, in_tree)) in pairs.iter().enumerate() {
        let (s, t) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
        let len = if config.random_lengths {
            Rat::new(rng.gen_range(1..=12).into(), rng.gen_range(1..=5).into())
        } else {
            Rat::from_integer(1.into())
        };
        g.add_edge(format!("e{i}"), s, t, len).expect("valid edge");
        if in_tree {
            tree.insert(i);
        }
    }
    let cotree: Vec<usize> = (0..g.edge_count()).filter(|e| !tree.contains(e)).collect();
    let mut flips: EdgeSet = cotree.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if flips.is_empty() {
        flips.insert(*cotree.choose(rng).expect("genus is positive"));
    }
    let flip_list: Vec<usize> = flips.iter().copied().collect();
    let base_flip = *flip_list.choose(rng).expect("nonempty");
    let orientations: BTreeMap<usize, i8> = if config.random_orientations {
        flip_list
            .iter()
            .filter(|&&e| e != base_flip && rng.gen_bool(0.5))
            .map(|&e| (e, -1))
            .collect()
    } else {
        BTreeMap::new()
    };
    let options = CoverOptions {
        base_flip: Some(base_flip),
        orientations,
    };
    DoubleCover::with_options(g, tree, flips, options).expect("random cover is valid")
}
