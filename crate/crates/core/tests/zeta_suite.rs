//! Ihara zeta and L-function checks against Euler products and class numbers.

mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use prym_core::divisor::jacobian_order;
use prym_core::fixtures::{double_edge_chain, looped_path, unit_dumbbell};
use prym_core::ogod::prym_order_by_ogods;
use prym_core::random::{random_cover, RandomCoverConfig};
use prym_core::zeta::{artin_l_reciprocal, factorization_holds, ihara_zeta_reciprocal, l_function_report, zeta_report};
use prym_core::{DoubleCover, EdgeSet, Graph, Rat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const WALK_BUDGET: u64 = 3_000_000;

fn small_covers() -> Vec<DoubleCover> {
    let mut covers = vec![double_edge_chain(), unit_dumbbell(true), unit_dumbbell(false), looped_path()];
    let triangle = Graph::from_unit_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    covers.push(DoubleCover::new(triangle, [0, 1].into(), [2].into()).unwrap());
    let theta = Graph::from_unit_edges(2, &[(0, 1), (0, 1), (1, 0)]).unwrap();
    covers.push(DoubleCover::new(theta.clone(), [0].into(), [1].into()).unwrap());
    covers.push(DoubleCover::new(theta, [0].into(), [1, 2].into()).unwrap());
    let k4 = Graph::from_unit_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).unwrap();
    covers.push(DoubleCover::new(k4, [0, 1, 2].into(), [3, 5].into()).unwrap());
    let bouquet = Graph::from_unit_edges(1, &[(0, 0), (0, 0)]).unwrap();
    covers.push(DoubleCover::new(bouquet, EdgeSet::new(), [1].into()).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let config = RandomCoverConfig { max_vertices: 4, min_genus: 1, max_genus: 3, ..Default::default() };
    while covers.len() < 40 {
        let cover = random_cover(&mut rng, &config);
        if cover.base().edge_count() <= 6 {
            covers.push(cover);
        }
    }
    covers
}

#[test]
fn single_loop_has_two_primes_of_length_one() {
    let g = Graph::from_unit_edges(1, &[(0, 0)]).unwrap();
    let counts = common::count_primes(&g, &|_| 1, 6);
    assert_eq!(counts.positive[1], 2);
    assert!(counts.positive[2..].iter().all(|&c| c == 0));
    assert_eq!(ihara_zeta_reciprocal(&g).unwrap().to_string(), "1 - 2s + s^2");
}

#[test]
fn triangle_matches_prime_count() {
    let g = Graph::from_unit_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    let counts = common::count_primes(&g, &|_| 1, 12);
    assert_eq!(counts.positive[3], 2);
    assert_eq!(common::zeta_reciprocal_by_primes(&g, 12), ihara_zeta_reciprocal(&g).unwrap());
}

#[test]
fn determinant_formulas_match_euler_products() {
    for cover in small_covers() {
        let base = cover.base();
        let len = common::affordable_length(base, 12, WALK_BUDGET);
        assert!(len >= 6, "walk budget too small for {} edges", base.edge_count());
        let zeta = ihara_zeta_reciprocal(base).unwrap().truncate(len);
        assert_eq!(common::zeta_reciprocal_by_primes(base, len), zeta);
        let l = artin_l_reciprocal(&cover).unwrap().truncate(len);
        assert_eq!(common::l_reciprocal_by_primes(&cover, len), l);
    }
}

/// `|Jac|` recovered from the leading term of `1/zeta` at `s = 1`.
fn jacobian_from_taylor(g: &Graph) -> Rat {
    let genus = g.genus().unwrap();
    let (order, leading) = ihara_zeta_reciprocal(g).unwrap().vanishing_at_one().unwrap();
    assert_eq!(order, genus);
    let sign = if genus % 2 == 1 { 1 } else { -1 };
    leading / Rat::from_integer(BigInt::from(sign) * BigInt::from(2).pow(genus as u32) * BigInt::from(genus - 1))
}

#[test]
fn random_covers_factor_and_reproduce_class_numbers() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let config = RandomCoverConfig::default();
    for _ in 0..50 {
        let cover = random_cover(&mut rng, &config);
        let base = cover.base();
        let genus = base.genus().unwrap();
        assert!(factorization_holds(&cover).unwrap());
        assert_eq!(artin_l_reciprocal(&cover).unwrap().coeff(0), BigInt::one());

        assert!(zeta_report(base).unwrap().agreement);
        let jac_base = jacobian_from_taylor(base);
        assert_eq!(jac_base, Rat::from_integer(jacobian_order(base).unwrap()));
        let jac_total = jacobian_from_taylor(cover.total());
        let prym = Rat::from_integer(prym_order_by_ogods(&cover));
        assert_eq!(jac_total / (jac_base * Rat::from_integer(2.into())), prym);

        let report = l_function_report(&cover).unwrap();
        assert!(report.agreement);
        let (order, leading) = artin_l_reciprocal(&cover).unwrap().vanishing_at_one().unwrap();
        assert_eq!(order, genus - 1);
        let scale = BigInt::from(2).pow(genus as u32 - 1);
        assert_eq!(leading.abs(), Rat::from_integer(scale) * &prym * Rat::from_integer(4.into()));
    }
}
