//! Odd genus-one decompositions: edge sets whose removal leaves only
//! genus-one components, each with connected preimage in the cover.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cover::DoubleCover;
use crate::graph::{Component, EdgeId, EdgeSet};
use crate::rat::{pow_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ogod {
    /// Removed base edges, in increasing order.
    pub edges: Vec<EdgeId>,
    pub components: Vec<Component>,
    /// Product of the lengths of the removed edges.
    pub weight: Rat,
}

impl Ogod {
    /// Number of components of the complement.
    pub fn rank(&self) -> usize {
        self.components.len()
    }

    /// `4^(rank - 1) * weight`, the contribution to the squared Prym volume.
    pub fn contribution(&self) -> Rat {
        pow_rat(&Rat::from_integer(4.into()), self.rank() - 1) * &self.weight
    }

    /// `4^(rank - 1)`, the contribution to the Prym group order.
    pub fn multiplicity(&self) -> BigInt {
        BigInt::from(4).pow(self.rank() as u32 - 1)
    }
}

/// Whether removing `removed` leaves genus-one components with connected preimages.
pub fn is_ogod(cover: &DoubleCover, removed: &EdgeSet) -> bool {
    cover
        .base()
        .components_without(removed)
        .iter()
        .all(|c| c.genus() == 1 && cover.preimage_connected(c))
}

/// All odd genus-one decompositions with `g - 1` removed edges.
///
/// Backtracks over edge subsets in increasing order. A partial removal is
/// abandoned once some component is a tree or an even unicycle, since further
/// removals cannot repair either.
pub fn enumerate_ogods(cover: &DoubleCover) -> Vec<Ogod> {
    let size = cover.genus().saturating_sub(1);
    let mut out = Vec::new();
    let mut removed = EdgeSet::new();
    search(cover, 0, size, &mut removed, &mut out);
    out
}

fn search(cover: &DoubleCover, next: EdgeId, size: usize, removed: &mut EdgeSet, out: &mut Vec<Ogod>) {
    let base = cover.base();
    let comps = base.components_without(removed);
    let hopeless = comps
        .iter()
        .any(|c| c.genus() == 0 || (c.genus() == 1 && !cover.has_odd_cycle(c)));
    if hopeless {
        return;
    }
    if removed.len() == size {
        if comps.iter().all(|c| c.genus() == 1 && cover.preimage_connected(c)) {
            let weight = removed.iter().fold(Rat::one(), |acc, &e| acc * base.length(e));
            out.push(Ogod {
                edges: removed.iter().copied().collect(),
                components: comps,
                weight,
            });
        }
        return;
    }
    for e in next..base.edge_count() {
        if base.edge_count() - e < size - removed.len() {
            break;
        }
        removed.insert(e);
        search(cover, e + 1, size, removed, out);
        removed.remove(&e);
    }
}

/// `sum 4^(r-1) w(F)` over all decompositions.
pub fn prym_volume_squared_by_ogods(cover: &DoubleCover) -> Rat {
    enumerate_ogods(cover)
        .iter()
        .fold(Rat::zero(), |acc, o| acc + o.contribution())
}

/// `sum 4^(r-1)` over all decompositions.
pub fn prym_order_by_ogods(cover: &DoubleCover) -> BigInt {
    enumerate_ogods(cover)
        .iter()
        .fold(BigInt::zero(), |acc, o| acc + o.multiplicity())
}
