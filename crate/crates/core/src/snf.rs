//! Smith normal form over the integers, with unimodular transforms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::matrix::IntMatrix;

/// `u * a * v == d` where `d` is diagonal with `d[i] | d[i+1]`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

fn min_abs_position(d: &IntMatrix, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    cells
        .filter(|&(i, j)| !d[(i, j)].is_zero())
        .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()))
}

fn row_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let x = &m[(source, j)] * q;
        m[(target, j)] -= x;
    }
}

fn col_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let x = &m[(i, source)] * q;
        m[(i, target)] -= x;
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_position(&d, (t..m).flat_map(|i| (t..n).map(move |j| (i, j))))
        else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                let cells = std::iter::once((t, t))
                    .chain((t + 1..m).map(|i| (i, t)))
                    .chain((t + 1..n).map(|j| (t, j)));
                let (pi, pj) = min_abs_position(&d, cells).expect("pivot vanished");
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            for j in 0..n {
                d[(t, j)] = -&d[(t, j)];
            }
            for j in 0..m {
                u[(t, j)] = -&u[(t, j)];
            }
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..m.min(n)).map(|i| d[(i, i)].clone()).collect();
    let rank = diagonal.iter().filter(|x| !x.is_zero()).count();
    SmithForm { u, v, diagonal, rank }
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk` with `t1 | t2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "crate::io::ser_bigints")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Order of a finite group, `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Cokernel of `relations`, i.e. `Z^rows` modulo the span of the columns.
pub fn cokernel(relations: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(relations);
    AbelianGroup {
        free_rank: relations.rows() - snf.rank,
        torsion: snf
            .diagonal
            .into_iter()
            .filter(|x| !x.is_zero() && !x.is_one())
            .collect(),
    }
}

/// Z-basis of the integer kernel of `a`, one vector per entry.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    (snf.rank..a.cols())
        .map(|j| (0..a.cols()).map(|i| snf.v[(i, j)].clone()).collect())
        .collect()
}

/// Some integer solution of `a x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch");
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = c.div_rem(&snf.diagonal[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) {
        let s = smith_normal_form(a);
        let d = s.u.mul(a).mul(&s.v);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i == j {
                    assert_eq!(d[(i, j)], s.diagonal[i]);
                    assert!(!d[(i, j)].is_negative());
                } else {
                    assert!(d[(i, j)].is_zero(), "off-diagonal entry in {d:?}");
                }
            }
        }
        for w in s.diagonal.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        assert!(s.u.det().abs().is_one());
        assert!(s.v.det().abs().is_one());
    }

    #[test]
    fn classic_example() {
        let a = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check(&a);
        let s = smith_normal_form(&a);
        let diag: Vec<i64> = s.diagonal.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(diag, vec![2, 6, 12]);
    }

    #[test]
    fn cokernel_of_cycle_laplacian() {
        let l = IntMatrix::from_i64(&[vec![2, -1], vec![-1, 2]]);
        let g = cokernel(&l);
        assert_eq!(g.to_string(), "Z/3");
        assert_eq!(g.order(), Some(BigInt::from(3)));
        let full = IntMatrix::from_i64(&[vec![1, -1], vec![-1, 1]]);
        assert_eq!(cokernel(&full).free_rank, 1);
    }

    #[test]
    fn integer_solutions() {
        let a = IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(solve_integer(&a, &b(&[4, 9])), Some(b(&[2, 3])));
        assert_eq!(solve_integer(&a, &b(&[1, 0])), None);
        let k = integer_kernel(&IntMatrix::from_i64(&[vec![1, 1, 1]]));
        assert_eq!(k.len(), 2);
    }

    proptest! {
        #[test]
        fn snf_invariants(
            rows in 1usize..5,
            cols in 1usize..5,
            entries in prop::collection::vec(-6i64..7, 16),
        ) {
            let a = IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(entries[i * 4 + j]));
            check(&a);
            for k in integer_kernel(&a) {
                prop_assert!(a.mul_vec(&k).iter().all(Zero::is_zero));
            }
        }
    }
}
