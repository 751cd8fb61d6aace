//! Integer 1-chains on a graph.

use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::Zero;

use crate::graph::EdgeId;
use crate::rat::Rat;

/// An integer combination of oriented edges, stored densely by edge id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain(Vec<i64>);

impl Chain {
    pub fn zero(edge_count: usize) -> Self {
        Chain(vec![0; edge_count])
    }

    pub fn unit(edge_count: usize, e: EdgeId) -> Self {
        let mut c = Self::zero(edge_count);
        c.0[e] = 1;
        c
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        Chain(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, e: EdgeId) -> i64 {
        self.0[e]
    }

    pub fn set(&mut self, e: EdgeId, value: i64) {
        self.0[e] = value;
    }

    pub fn edge_count(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Edges with nonzero coefficient, with their coefficients.
    pub fn support(&self) -> impl Iterator<Item = (EdgeId, i64)> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(e, &c)| (e, c))
    }

    pub fn scaled(&self, k: i64) -> Self {
        Chain(self.0.iter().map(|c| c * k).collect())
    }

    /// The plain dot product of coefficient vectors.
    pub fn dot(&self, other: &Chain) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// `sum_e a_e b_e len(e)`.
    pub fn length_pairing(&self, other: &Chain, lengths: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for ((a, b), l) in self.0.iter().zip(&other.0).zip(lengths) {
            let ab = a * b;
            if ab != 0 {
                acc += l * Rat::from_integer(ab.into());
            }
        }
        acc
    }
}

impl Add for &Chain {
    type Output = Chain;
    fn add(self, rhs: &Chain) -> Chain {
        let mut c = self.clone();
        c += rhs;
        c
    }
}

impl Sub for &Chain {
    type Output = Chain;
    fn sub(self, rhs: &Chain) -> Chain {
        let mut c = self.clone();
        c -= rhs;
        c
    }
}

impl AddAssign<&Chain> for Chain {
    fn add_assign(&mut self, rhs: &Chain) {
        assert_eq!(self.0.len(), rhs.0.len(), "chains on different graphs");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&Chain> for Chain {
    fn sub_assign(&mut self, rhs: &Chain) {
        assert_eq!(self.0.len(), rhs.0.len(), "chains on different graphs");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for &Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        self.scaled(-1)
    }
}
