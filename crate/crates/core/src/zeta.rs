//! Ihara zeta function of a graph and the Artin-Ihara L-function of a double cover.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::cover::DoubleCover;
use crate::divisor::jacobian_order;
use crate::error::{PrymError, Result};
use crate::graph::Graph;
use crate::poly::{poly_det, IntPolynomial};
use crate::prym_group::signed_laplacian;
use crate::rat::{format_rat, Rat};

/// `det(I - A s + (Q - I) s^2) * (1 - s^2)^(g-1)` for a given adjacency.
fn bass_determinant(g: &Graph, adjacency: &[Vec<i64>]) -> Result<IntPolynomial> {
    let genus = g.genus()?;
    if genus == 0 {
        return Err(PrymError::GenusZero);
    }
    let n = g.vertex_count();
    let matrix: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    let diag = i64::from(u == v);
                    let valency = if u == v { g.valency(u) as i64 } else { 0 };
                    IntPolynomial::from_i64(&[diag, -adjacency[u][v], valency - diag])
                })
                .collect()
        })
        .collect();
    let factor = IntPolynomial::from_i64(&[1, 0, -1]).pow(genus - 1);
    Ok(&poly_det(&matrix) * &factor)
}

/// `1 / zeta(s)` as a polynomial, by the three-term determinant formula.
pub fn ihara_zeta_reciprocal(g: &Graph) -> Result<IntPolynomial> {
    let n = g.vertex_count();
    let mut a = vec![vec![0i64; n]; n];
    for edge in g.edges() {
        if edge.is_loop() {
            a[edge.src][edge.src] += 2;
        } else {
            a[edge.src][edge.dst] += 1;
            a[edge.dst][edge.src] += 1;
        }
    }
    bass_determinant(g, &a)
}

/// `1 / L(s, chi)` for the nontrivial character of the cover, where flip
/// edges carry `-1` in the twisted adjacency.
pub fn artin_l_reciprocal(cover: &DoubleCover) -> Result<IntPolynomial> {
    let g = cover.base();
    let n = g.vertex_count();
    let mut a = vec![vec![0i64; n]; n];
    for (e, edge) in g.edges().iter().enumerate() {
        let sign = if cover.is_flip(e) { -1 } else { 1 };
        if edge.is_loop() {
            a[edge.src][edge.src] += 2 * sign;
        } else {
            a[edge.src][edge.dst] += sign;
            a[edge.dst][edge.src] += sign;
        }
    }
    bass_determinant(g, &a)
}

/// Predicted leading term at `s = 1` of `1 / zeta`: order `g` and constant
/// `(-1)^(g-1) 2^g (g-1) |Jac|`.
pub fn ihara_expected_leading(g: &Graph) -> Result<(usize, Rat)> {
    let genus = g.genus()?;
    if genus == 0 {
        return Err(PrymError::GenusZero);
    }
    let jac = jacobian_order(g)?;
    let sign = if (genus - 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let c = sign * BigInt::from(2).pow(genus as u32) * BigInt::from(genus - 1) * jac;
    Ok((genus, Rat::from_integer(c)))
}

/// Predicted leading term at `s = 1` of `1 / L`: order `g - 1` and constant
/// `(-1)^(g-1) 2^(g-1) det(signed Laplacian)`.
pub fn l_function_expected_leading(cover: &DoubleCover) -> Result<(usize, Rat)> {
    let genus = cover.base().genus()?;
    let sign = if (genus - 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let det = signed_laplacian(cover).det();
    let c = sign * BigInt::from(2).pow(genus as u32 - 1) * det;
    Ok((genus - 1, Rat::from_integer(c)))
}

#[derive(Clone, Debug, Serialize)]
pub struct LeadingTermReport {
    /// Coefficients in ascending degree.
    pub coefficients: Vec<String>,
    pub polynomial: String,
    pub order: usize,
    pub leading: String,
    pub expected_order: usize,
    pub expected_leading: String,
    pub agreement: bool,
}

fn report(p: &IntPolynomial, expected: (usize, Rat)) -> Result<LeadingTermReport> {
    let (order, leading) = p.vanishing_at_one()?;
    let agreement = order == expected.0 && leading == expected.1;
    Ok(LeadingTermReport {
        coefficients: p.coeffs().iter().map(ToString::to_string).collect(),
        polynomial: p.to_string(),
        order,
        leading: format_rat(&leading),
        expected_order: expected.0,
        expected_leading: format_rat(&expected.1),
        agreement,
    })
}

pub fn zeta_report(g: &Graph) -> Result<LeadingTermReport> {
    report(&ihara_zeta_reciprocal(g)?, ihara_expected_leading(g)?)
}

pub fn l_function_report(cover: &DoubleCover) -> Result<LeadingTermReport> {
    report(&artin_l_reciprocal(cover)?, l_function_expected_leading(cover)?)
}

/// Whether `zeta(total) = zeta(base) * L` holds as reciprocal polynomials.
pub fn factorization_holds(cover: &DoubleCover) -> Result<bool> {
    let top = ihara_zeta_reciprocal(cover.total())?;
    let product = &ihara_zeta_reciprocal(cover.base())? * &artin_l_reciprocal(cover)?;
    Ok(top == product)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_loop() {
        let g = Graph::from_unit_edges(1, &[(0, 0)]).unwrap();
        assert_eq!(ihara_zeta_reciprocal(&g).unwrap(), IntPolynomial::from_i64(&[1, -2, 1]));
    }

    #[test]
    fn cycle_graph() {
        let g = Graph::from_unit_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        // Two primes of length 3.
        assert_eq!(ihara_zeta_reciprocal(&g).unwrap(), IntPolynomial::from_i64(&[1, 0, 0, -2, 0, 0, 1]));
    }

    #[test]
    fn tree_has_no_zeta() {
        let g = Graph::from_unit_edges(2, &[(0, 1)]).unwrap();
        assert!(matches!(ihara_zeta_reciprocal(&g), Err(PrymError::GenusZero)));
    }
}
