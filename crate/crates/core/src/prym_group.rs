//! The kernel of the norm map on `Jac` of the cover, its parity, and the Prym group.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::cover::DoubleCover;
use crate::divisor::{jacobian_order, laplacian, Divisor};
use crate::error::{PrymError, Result};
use crate::graph::{EdgeId, EdgeSet};
use crate::matrix::IntMatrix;
use crate::ogod::prym_order_by_ogods;
use crate::snf::{cokernel, integer_kernel, AbelianGroup};

/// Push-forward of a divisor on the total graph.
pub fn norm(cover: &DoubleCover, d: &Divisor) -> Divisor {
    let n = cover.base().vertex_count();
    Divisor::from_coeffs((0..n).map(|v| d.coeff(2 * v) + d.coeff(2 * v + 1)).collect())
}

/// Parity of a divisor in the kernel of the norm: the sum of its
/// coefficients on the `+` sheet, mod 2.
pub fn parity(cover: &DoubleCover, d: &Divisor) -> Result<u8> {
    if d.coeffs().len() != cover.total().vertex_count() {
        return Err(PrymError::InvalidInput("divisor length differs from vertex count".into()));
    }
    if !norm(cover, d).is_zero() {
        return Err(PrymError::NotInNormKernel);
    }
    let s: i64 = (0..cover.base().vertex_count()).map(|v| d.coeff(2 * v)).sum();
    Ok(s.rem_euclid(2) as u8)
}

/// The divisor `v+ - v-` on the total graph.
pub fn sheet_difference(cover: &DoubleCover, v: usize) -> Divisor {
    let mut c = vec![0; cover.total().vertex_count()];
    c[2 * v] = 1;
    c[2 * v + 1] = -1;
    Divisor::from_coeffs(c)
}

/// Relations among the generators `v+ - v-` of the norm kernel, one per column.
pub fn norm_kernel_relations(cover: &DoubleCover) -> IntMatrix {
    let n = cover.base().vertex_count();
    let total_n = 2 * n;
    let l = laplacian(cover.total());
    // Columns: generator coefficients c, then firing vector a; kernel of [D | -L].
    let block = IntMatrix::from_fn(total_n, n + total_n, |x, j| {
        if j < n {
            if x == 2 * j {
                BigInt::from(1)
            } else if x == 2 * j + 1 {
                BigInt::from(-1)
            } else {
                BigInt::zero()
            }
        } else {
            -&l[(x, j - n)]
        }
    });
    let kernel = integer_kernel(&block);
    IntMatrix::from_fn(n, kernel.len(), |i, k| kernel[k][i].clone())
}

/// Structure of the kernel of the norm map.
pub fn norm_kernel_structure(cover: &DoubleCover) -> AbelianGroup {
    cokernel(&norm_kernel_relations(cover))
}

/// Structure of the Prym group, the even part of the norm kernel.
pub fn prym_structure(cover: &DoubleCover) -> Result<AbelianGroup> {
    let relations = norm_kernel_relations(cover);
    let n = relations.rows();
    // Even sublattice basis: 2 e0 and e_i - e0. Coordinates of c in it:
    // c_i for i >= 1 and (c_0 + sum_{i>=1} c_i) / 2 for the first.
    let mut coords = IntMatrix::zeros(n, relations.cols());
    for k in 0..relations.cols() {
        let total: BigInt = (0..n).map(|i| relations[(i, k)].clone()).sum();
        if total.is_odd() {
            return Err(PrymError::Inconsistent(
                "a principal divisor in the norm kernel has odd parity".into(),
            ));
        }
        coords[(0, k)] = total / 2;
        for i in 1..n {
            coords[(i, k)] = relations[(i, k)].clone();
        }
    }
    Ok(cokernel(&coords))
}

/// Twisted incidence matrix: column `e` is `dst - src` for ordinary edges,
/// `src + dst` for flip edges, `2v` for a flip loop at `v`, zero for other loops.
pub fn twisted_incidence(cover: &DoubleCover) -> IntMatrix {
    let base = cover.base();
    let mut b = IntMatrix::zeros(base.vertex_count(), base.edge_count());
    for (e, edge) in base.edges().iter().enumerate() {
        let flip = cover.is_flip(e);
        match (edge.is_loop(), flip) {
            (true, true) => b[(edge.src, e)] = BigInt::from(2),
            (true, false) => {}
            (false, true) => {
                b[(edge.src, e)] = BigInt::from(1);
                b[(edge.dst, e)] = BigInt::from(1);
            }
            (false, false) => {
                b[(edge.src, e)] = BigInt::from(-1);
                b[(edge.dst, e)] = BigInt::from(1);
            }
        }
    }
    b
}

/// Signed Laplacian of the base with flip edges weighted `-1`.
///
/// Off the diagonal: flip edges minus ordinary edges between the two vertices.
/// Diagonal: non-loop edges at the vertex plus four per flip loop.
pub fn signed_laplacian(cover: &DoubleCover) -> IntMatrix {
    let base = cover.base();
    let n = base.vertex_count();
    let mut q = IntMatrix::zeros(n, n);
    for (e, edge) in base.edges().iter().enumerate() {
        let flip = cover.is_flip(e);
        let (u, v) = (edge.src, edge.dst);
        if edge.is_loop() {
            if flip {
                q[(u, u)] += 4;
            }
            continue;
        }
        q[(u, u)] += 1;
        q[(v, v)] += 1;
        let off = if flip { 1 } else { -1 };
        q[(u, v)] += off;
        q[(v, u)] += off;
    }
    q
}

/// `det(signed Laplacian) / 4`.
pub fn prym_order_by_signed_laplacian(cover: &DoubleCover) -> Result<BigInt> {
    let det = signed_laplacian(cover).det();
    let (q, r) = det.div_rem(&BigInt::from(4));
    if !r.is_zero() {
        return Err(PrymError::Inconsistent(format!("signed Laplacian determinant {det} is not divisible by 4")));
    }
    Ok(q)
}

/// `|Jac(total)| / (2 |Jac(base)|)`.
pub fn prym_order_by_ratio(cover: &DoubleCover) -> Result<BigInt> {
    let top = jacobian_order(cover.total())?;
    let bottom = jacobian_order(cover.base())? * 2;
    let (q, r) = top.div_rem(&bottom);
    if !r.is_zero() {
        return Err(PrymError::Inconsistent(format!("{top} is not divisible by {bottom}")));
    }
    Ok(q)
}

/// Squared determinants of the twisted incidence matrix on each complement
/// of a `(g-1)`-subset, keyed by the removed subset.
pub fn twisted_minors(cover: &DoubleCover) -> Vec<(Vec<EdgeId>, BigInt)> {
    let b = twisted_incidence(cover);
    let m = cover.base().edge_count();
    let size = cover.genus().saturating_sub(1);
    let rows: Vec<usize> = (0..b.rows()).collect();
    let mut out = Vec::new();
    let mut subset = Vec::new();
    subsets(m, size, 0, &mut subset, &mut |removed| {
        let removed_set: EdgeSet = removed.iter().copied().collect();
        let cols: Vec<usize> = (0..m).filter(|e| !removed_set.contains(e)).collect();
        let d = b.submatrix(&rows, &cols).det();
        out.push((removed.to_vec(), &d * &d));
    });
    out
}

fn subsets(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for e in start..m {
        if m - e < k - cur.len() {
            break;
        }
        cur.push(e);
        subsets(m, k, e + 1, cur, f);
        cur.pop();
    }
}

/// `sum det^2 / 4` over all complements.
pub fn prym_order_by_cauchy_binet(cover: &DoubleCover) -> Result<BigInt> {
    let total: BigInt = twisted_minors(cover).into_iter().map(|(_, d2)| d2).sum();
    let (q, r) = total.div_rem(&BigInt::from(4));
    if !r.is_zero() {
        return Err(PrymError::Inconsistent("Cauchy-Binet sum is not divisible by 4".into()));
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrymOrderMethod {
    Ratio,
    SignedDeterminant,
    OgodSum,
}

pub fn prym_order(cover: &DoubleCover, method: PrymOrderMethod) -> Result<BigInt> {
    match method {
        PrymOrderMethod::Ratio => prym_order_by_ratio(cover),
        PrymOrderMethod::SignedDeterminant => prym_order_by_signed_laplacian(cover),
        PrymOrderMethod::OgodSum => Ok(prym_order_by_ogods(cover)),
    }
}

/// All three routes to `|Prym|` side by side.
#[derive(Clone, Debug, Serialize)]
pub struct PrymOrderReport {
    #[serde(serialize_with = "crate::io::ser_bigint")]
    pub ratio: BigInt,
    #[serde(serialize_with = "crate::io::ser_bigint")]
    pub signed_determinant: BigInt,
    #[serde(serialize_with = "crate::io::ser_bigint")]
    pub ogod_sum: BigInt,
    pub agreement: bool,
}

pub fn prym_order_report(cover: &DoubleCover) -> Result<PrymOrderReport> {
    let ratio = prym_order_by_ratio(cover)?;
    let signed_determinant = prym_order_by_signed_laplacian(cover)?;
    let ogod_sum = prym_order_by_ogods(cover);
    let agreement = ratio == signed_determinant && ratio == ogod_sum;
    Ok(PrymOrderReport {
        ratio,
        signed_determinant,
        ogod_sum,
        agreement,
    })
}
