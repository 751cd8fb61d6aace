//! Divisors, Laplacians and the Jacobian of a finite graph.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{PrymError, Result};
use crate::graph::{Graph, VertexId};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::rat::Rat;
use crate::snf::{cokernel, solve_integer, AbelianGroup};

/// An integer combination of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisor(Vec<i64>);

impl Divisor {
    pub fn zero(vertex_count: usize) -> Self {
        Divisor(vec![0; vertex_count])
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        Divisor(coeffs)
    }

    pub fn point(vertex_count: usize, v: VertexId) -> Self {
        let mut d = Self::zero(vertex_count);
        d.0[v] = 1;
        d
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, v: VertexId) -> i64 {
        self.0[v]
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    fn to_big(&self) -> Vec<BigInt> {
        self.0.iter().map(|&c| BigInt::from(c)).collect()
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// Combinatorial Laplacian `Q - A`; loops cancel out.
pub fn laplacian(g: &Graph) -> IntMatrix {
    let n = g.vertex_count();
    let mut l = IntMatrix::zeros(n, n);
    for edge in g.edges() {
        if edge.is_loop() {
            continue;
        }
        let (u, v) = (edge.src, edge.dst);
        l[(u, u)] += 1;
        l[(v, v)] += 1;
        l[(u, v)] -= 1;
        l[(v, u)] -= 1;
    }
    l
}

/// The Laplacian with the row and column of `root` removed.
pub fn reduced_laplacian(g: &Graph, root: VertexId) -> IntMatrix {
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != root).collect();
    laplacian(g).submatrix(&keep, &keep)
}

/// `|Jac(G)|`, the number of spanning trees.
pub fn jacobian_order(g: &Graph) -> Result<BigInt> {
    g.require_connected()?;
    Ok(reduced_laplacian(g, 0).det())
}

/// Invariant factors of `Jac(G)`.
pub fn jacobian_structure(g: &Graph) -> Result<AbelianGroup> {
    g.require_connected()?;
    Ok(cokernel(&reduced_laplacian(g, 0)))
}

/// Returns `d - L a`, the result of firing each vertex `v` a total of `a[v]` times.
pub fn fire(g: &Graph, d: &Divisor, firing: &[BigInt]) -> Result<Vec<BigInt>> {
    if firing.len() != g.vertex_count() || d.0.len() != g.vertex_count() {
        return Err(PrymError::InvalidInput("vector length differs from vertex count".into()));
    }
    let la = laplacian(g).mul_vec(firing);
    Ok(d.to_big().into_iter().zip(la).map(|(x, y)| x - y).collect())
}

/// A firing vector `a` with `L a = d1 - d2` if the divisors are linearly equivalent.
pub fn linear_equivalence_witness(g: &Graph, d1: &Divisor, d2: &Divisor) -> Result<Option<Vec<BigInt>>> {
    g.require_connected()?;
    if d1.0.len() != g.vertex_count() || d2.0.len() != g.vertex_count() {
        return Err(PrymError::InvalidInput("divisor length differs from vertex count".into()));
    }
    if d1.degree() != d2.degree() {
        return Ok(None);
    }
    Ok(solve_integer(&laplacian(g), &(d1 - d2).to_big()))
}

pub fn linearly_equivalent(g: &Graph, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    Ok(linear_equivalence_witness(g, d1, d2)?.is_some())
}

/// Squared volume of the tropical Jacobian: `(prod of lengths) * det` of the
/// reduced Laplacian with conductances `1/len`.
pub fn jacobian_volume_squared(g: &Graph) -> Result<Rat> {
    g.require_connected()?;
    let n = g.vertex_count();
    let mut w = RatMatrix::zeros(n, n);
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.is_loop() {
            continue;
        }
        let c = g.length(e).recip();
        let (u, v) = (edge.src, edge.dst);
        w[(u, u)] += &c;
        w[(v, v)] += &c;
        w[(u, v)] -= &c;
        w[(v, u)] -= &c;
    }
    let keep: Vec<usize> = (1..n).collect();
    let det = w.submatrix(&keep, &keep).det();
    let product: Rat = g.lengths().iter().fold(Rat::one(), |acc, l| acc * l);
    Ok(product * det)
}

/// The same volume summed over explicit spanning trees: `sum_T prod_{e not in T} len(e)`.
pub fn jacobian_volume_squared_by_trees(g: &Graph) -> Result<Rat> {
    let trees = g.spanning_trees()?;
    let mut acc = Rat::zero();
    for t in trees {
        let mut w = Rat::one();
        for e in (0..g.edge_count()).filter(|e| !t.contains(e)) {
            w *= g.length(e);
        }
        acc += w;
    }
    Ok(acc)
}

/// A point of a metric graph: an edge and a distance from its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricPoint {
    pub edge: crate::graph::EdgeId,
    pub position: Rat,
}

/// Linear equivalence of `sum c_i p_i` and `sum d_j q_j` on the metric graph.
///
/// Refines the model so that every edge length and every point position is
/// a multiple of a common unit `1/N`; on such a model the metric question
/// reduces to chip-firing on the refined combinatorial graph.
pub fn metric_linearly_equivalent(
    g: &Graph,
    lhs: &[(MetricPoint, i64)],
    rhs: &[(MetricPoint, i64)],
) -> Result<bool> {
    g.require_connected()?;
    let mut scale = BigInt::one();
    for l in g.lengths() {
        scale = num_integer::Integer::lcm(&scale, l.denom());
    }
    for (p, _) in lhs.iter().chain(rhs) {
        if p.edge >= g.edge_count() || p.position < Rat::zero() || &p.position > g.length(p.edge) {
            return Err(PrymError::InvalidInput("point outside the graph".into()));
        }
        scale = num_integer::Integer::lcm(&scale, p.position.denom());
    }
    let steps = |r: &Rat| -> Result<usize> {
        let v = r * Rat::from_integer(scale.clone());
        usize::try_from(v.to_integer()).map_err(|_| PrymError::InvalidInput("refinement too fine".into()))
    };
    let mut refined = Graph::new();
    for v in 0..g.vertex_count() {
        refined.add_vertex(format!("{}", v))?;
    }
    // inner[e][k] is the refined vertex at k units from the source of e.
    let mut inner: Vec<Vec<VertexId>> = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let k = steps(g.length(e))?;
        let mut chain = vec![edge.src];
        for i in 1..k {
            chain.push(refined.add_vertex(format!("{e}.{i}"))?);
        }
        chain.push(edge.dst);
        for i in 0..k {
            refined.add_edge(format!("{e}:{i}"), chain[i], chain[i + 1], Rat::one())?;
        }
        inner.push(chain);
    }
    let mut divisor = vec![0i64; refined.vertex_count()];
    for (points, sign) in [(lhs, 1), (rhs, -1)] {
        for (p, c) in points {
            divisor[inner[p.edge][steps(&p.position)?]] += sign * c;
        }
    }
    let d = Divisor::from_coeffs(divisor);
    linearly_equivalent(&refined, &d, &Divisor::zero(refined.vertex_count()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn cycle_jacobian() {
        let g = Graph::from_unit_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(jacobian_order(&g).unwrap(), BigInt::from(4));
        assert_eq!(jacobian_structure(&g).unwrap().to_string(), "Z/4");
        let p0 = Divisor::point(4, 0);
        let p1 = Divisor::point(4, 1);
        let p2 = Divisor::point(4, 2);
        assert!(!linearly_equivalent(&g, &p0, &p1).unwrap());
        let twice = &(&p1 + &p1) - &p2;
        let witness = linear_equivalence_witness(&g, &twice, &p0).unwrap().unwrap();
        let fired = fire(&g, &twice, &witness).unwrap();
        assert_eq!(fired, p0.to_big());
    }

    #[test]
    fn loops_do_not_change_the_laplacian() {
        let g = Graph::from_unit_edges(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(laplacian(&g), IntMatrix::from_i64(&[vec![1, -1], vec![-1, 1]]));
        assert_eq!(jacobian_order(&g).unwrap(), BigInt::one());
    }

    #[test]
    fn metric_equivalence_on_a_circle() {
        let g = Graph::from_unit_edges(1, &[(0, 0)]).unwrap().with_lengths(vec![int(3)]).unwrap();
        let at = |t: Rat| MetricPoint { edge: 0, position: t };
        // On a circle, p + q ~ p' + q' iff the positions agree in sum modulo the length.
        let lhs = [(at(rat(1, 2)), 1), (at(rat(3, 2)), 1)];
        let rhs = [(at(rat(1, 1)), 1), (at(rat(1, 1)), 1)];
        assert!(metric_linearly_equivalent(&g, &lhs, &rhs).unwrap());
        let rhs = [(at(rat(1, 1)), 1), (at(rat(5, 4)), 1)];
        assert!(!metric_linearly_equivalent(&g, &lhs, &rhs).unwrap());
    }

    #[test]
    fn volume_routes_agree() {
        let g = Graph::from_unit_edges(3, &[(0, 1), (1, 2), (2, 0), (0, 1), (2, 2)])
            .unwrap()
            .with_lengths(vec![rat(1, 2), int(3), rat(5, 7), int(2), rat(9, 4)])
            .unwrap();
        assert_eq!(
            jacobian_volume_squared(&g).unwrap(),
            jacobian_volume_squared_by_trees(&g).unwrap()
        );
    }
}
