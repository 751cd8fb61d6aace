//! The Prym lattice: anti-invariant cycles of the cover and their length pairing.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chain::Chain;
use crate::cover::DoubleCover;
use crate::divisor::{jacobian_volume_squared, jacobian_volume_squared_by_trees};
use crate::error::{PrymError, Result};
use crate::graph::{EdgeId, Graph};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::ogod::prym_volume_squared_by_ogods;
use crate::rat::{format_rat, Rat};
use crate::snf::smith_normal_form;

/// A basis of the anti-invariant part of the first homology of the total graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrymBasis {
    /// Base edges indexing the basis: all edges outside the tree except the base flip.
    pub generators: Vec<EdgeId>,
    /// Fundamental cycle of the `+` lift of each generator in the lifted tree.
    pub plus_cycles: Vec<Chain>,
    /// `c - iota(c)` for each plus cycle `c`.
    pub cycles: Vec<Chain>,
}

impl PrymBasis {
    pub fn rank(&self) -> usize {
        self.cycles.len()
    }
}

/// Basis with generators in increasing edge id.
pub fn prym_basis(cover: &DoubleCover) -> PrymBasis {
    let mut order: Vec<EdgeId> = (0..cover.base().edge_count())
        .filter(|e| !cover.tree().contains(e) && *e != cover.base_flip())
        .collect();
    order.sort_unstable();
    prym_basis_ordered(cover, &order).expect("generator list is valid by construction")
}

/// Basis with generators in the given order.
pub fn prym_basis_ordered(cover: &DoubleCover, order: &[EdgeId]) -> Result<PrymBasis> {
    let expected = cover.genus() - 1;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let valid = sorted.len() == order.len()
        && order.len() == expected
        && order
            .iter()
            .all(|e| *e < cover.base().edge_count() && !cover.tree().contains(e) && *e != cover.base_flip());
    if !valid {
        return Err(PrymError::InvalidInput(
            "generators must be the edges outside the tree other than the base flip".into(),
        ));
    }
    let tree = cover.lifted_tree();
    let total = cover.total();
    let plus_cycles: Vec<Chain> = order
        .iter()
        .map(|&e| total.fundamental_cycle(&tree, 2 * e))
        .collect();
    let cycles = plus_cycles
        .iter()
        .map(|c| c - &cover.involute_chain(c))
        .collect();
    Ok(PrymBasis {
        generators: order.to_vec(),
        plus_cycles,
        cycles,
    })
}

/// The same basis written as `c+ - c- + sign * c0` for flip generators and
/// `c+ - c-` otherwise, where `c-` is the fundamental cycle of the `-` lift
/// and `c0` that of the `-` lift of the base flip.
pub fn prym_basis_by_sheets(cover: &DoubleCover, generators: &[EdgeId]) -> Vec<Chain> {
    let tree = cover.lifted_tree();
    let total = cover.total();
    let c0 = total.fundamental_cycle(&tree, 2 * cover.base_flip() + 1);
    generators
        .iter()
        .map(|&e| {
            let plus = total.fundamental_cycle(&tree, 2 * e);
            let minus = total.fundamental_cycle(&tree, 2 * e + 1);
            let mut c = &plus - &minus;
            if cover.is_flip(e) {
                c += &c0.scaled(i64::from(cover.orientation(e)));
            }
            c
        })
        .collect()
}

/// `(a, b) = 1/2 sum_e a_e b_e len(e)` on the total graph.
pub fn prym_pairing(cover: &DoubleCover, a: &Chain, b: &Chain) -> Rat {
    a.length_pairing(b, cover.total().lengths()) / Rat::from_integer(2.into())
}

pub fn gram_matrix(cover: &DoubleCover, basis: &PrymBasis) -> RatMatrix {
    let k = basis.rank();
    RatMatrix::from_fn(k, k, |i, j| prym_pairing(cover, &basis.cycles[i], &basis.cycles[j]))
}

/// `Vol^2(Prym)` as the Gram determinant of the basis.
pub fn prym_volume_squared(cover: &DoubleCover) -> Rat {
    gram_matrix(cover, &prym_basis(cover)).det()
}

/// `Vol^2(Jac)` as the Gram determinant of fundamental cycles under the length pairing.
pub fn jacobian_volume_squared_by_gram(g: &Graph) -> Result<Rat> {
    let tree = g.least_spanning_tree()?;
    let cycles: Vec<Chain> = (0..g.edge_count())
        .filter(|e| !tree.contains(e))
        .map(|e| g.fundamental_cycle(&tree, e))
        .collect();
    let k = cycles.len();
    Ok(RatMatrix::from_fn(k, k, |i, j| cycles[i].length_pairing(&cycles[j], g.lengths())).det())
}

/// Checks that the basis cycles are anti-invariant cycles in the kernel of
/// the push-forward and span a saturated sublattice of rank `g - 1`.
pub fn verify_basis(cover: &DoubleCover, basis: &PrymBasis) -> Result<()> {
    let total = cover.total();
    for (j, c) in basis.cycles.iter().enumerate() {
        if !total.is_cycle(c) {
            return Err(PrymError::Inconsistent(format!("basis element {j} is not a cycle")));
        }
        if !cover.push_forward(c).is_zero() {
            return Err(PrymError::Inconsistent(format!("basis element {j} does not push forward to zero")));
        }
        if cover.involute_chain(c) != c.scaled(-1) {
            return Err(PrymError::Inconsistent(format!("basis element {j} is not anti-invariant")));
        }
    }
    let tree = cover.lifted_tree();
    let cotree: Vec<EdgeId> = (0..total.edge_count()).filter(|x| !tree.contains(x)).collect();
    let coords = IntMatrix::from_fn(basis.rank(), cotree.len(), |j, k| {
        BigInt::from(basis.cycles[j].coeff(cotree[k]))
    });
    let snf = smith_normal_form(&coords);
    if snf.rank != cover.genus() - 1 || !snf.diagonal[..snf.rank].iter().all(One::is_one) {
        return Err(PrymError::Inconsistent("basis does not span a saturated sublattice".into()));
    }
    Ok(())
}

/// The three routes to `Vol^2(Prym)` side by side.
#[derive(Clone, Debug, Serialize)]
pub struct PrymVolumeReport {
    pub gram: Vec<Vec<String>>,
    pub gram_determinant: String,
    pub ogod_sum: String,
    pub jacobian_ratio: String,
    pub agreement: bool,
}

pub fn prym_volume_report(cover: &DoubleCover) -> Result<PrymVolumeReport> {
    let basis = prym_basis(cover);
    verify_basis(cover, &basis)?;
    let gram = gram_matrix(cover, &basis);
    let det = gram.det();
    let ogod = prym_volume_squared_by_ogods(cover);
    let ratio = jacobian_volume_squared(cover.total())?
        / (jacobian_volume_squared(cover.base())? * Rat::from_integer(2.into()));
    Ok(PrymVolumeReport {
        gram: gram.to_rows().iter().map(|r| r.iter().map(format_rat).collect()).collect(),
        gram_determinant: format_rat(&det),
        ogod_sum: format_rat(&ogod),
        jacobian_ratio: format_rat(&ratio),
        agreement: det == ogod && det == ratio && !det.is_zero(),
    })
}

/// Independent check of the Jacobian volume used in the ratio route.
pub fn jacobian_volume_routes_agree(g: &Graph) -> Result<bool> {
    let a = jacobian_volume_squared(g)?;
    Ok(a == jacobian_volume_squared_by_trees(g)? && a == jacobian_volume_squared_by_gram(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rat::int;

    #[test]
    fn theta_basis() {
        let g = Graph::from_unit_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let c = DoubleCover::new(g, [0].into(), [1].into()).unwrap();
        let b = prym_basis(&c);
        assert_eq!(b.generators, vec![2]);
        verify_basis(&c, &b).unwrap();
        assert_eq!(prym_basis_by_sheets(&c, &b.generators), b.cycles);
        let r = prym_volume_report(&c).unwrap();
        assert!(r.agreement, "{r:?}");
    }

    #[test]
    fn sheet_formula_on_fixtures() {
        for c in [fixtures::double_edge_chain(), fixtures::looped_path(), fixtures::unit_dumbbell(true)] {
            let b = prym_basis(&c);
            verify_basis(&c, &b).unwrap();
            assert_eq!(prym_basis_by_sheets(&c, &b.generators), b.cycles);
            assert!(jacobian_volume_routes_agree(c.base()).unwrap());
        }
    }

    #[test]
    fn dumbbell_volume() {
        let c = fixtures::dumbbell([int(2), int(3), int(5)], true);
        assert_eq!(prym_volume_squared(&c), int(2 + 3 + 4 * 5));
        let c = fixtures::dumbbell([int(2), int(3), int(5)], false);
        assert_eq!(prym_volume_squared(&c), int(3));
    }
}
