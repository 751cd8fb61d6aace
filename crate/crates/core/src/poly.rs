//! Univariate integer polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{PrymError, Result};
use crate::rat::Rat;

/// Integer polynomial, coefficients in ascending degree with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The monomial `c * s^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c.into());
        Self::new(coeffs)
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut exp: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn eval(&self, s: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * s + c)
    }

    pub fn eval_rat(&self, s: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * s + Rat::from_integer(c.clone()))
    }

    /// Coefficients of `p(1 + t)` in powers of `t`.
    pub fn shift_by_one(&self) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let add = c[j + 1].clone();
                c[j] += add;
            }
        }
        Self::new(c)
    }

    /// Exact quotient `self / divisor`, `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let (q, r) = rem[k + dd].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }

    /// Order of vanishing at `s = 1` and the leading Taylor coefficient there.
    pub fn vanishing_at_one(&self) -> Result<(usize, Rat)> {
        if self.is_zero() {
            return Err(PrymError::ZeroPolynomial);
        }
        let shifted = self.shift_by_one();
        let (order, c) = shifted
            .coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .expect("nonzero polynomial has a nonzero coefficient");
        Ok((order, Rat::from_integer(c.clone())))
    }

    /// Truncation to degree at most `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "s")?,
                (1, false) => write!(f, "{a}s")?,
                (_, true) => write!(f, "s^{k}")?,
                (_, false) => write!(f, "{a}s^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Determinant of a square matrix of polynomials by fraction-free elimination.
pub fn poly_det(matrix: &[Vec<IntPolynomial>]) -> IntPolynomial {
    let n = matrix.len();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut m = matrix.to_vec();
    let mut negate = false;
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][k] = IntPolynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_and_display() {
        let p = IntPolynomial::from_i64(&[1, -2, 1]);
        let q = IntPolynomial::from_i64(&[-1, 1]);
        assert_eq!(&q * &q, p);
        assert_eq!(p.exact_div(&q), Some(IntPolynomial::from_i64(&[1, -1]).scale(&BigInt::from(-1))));
        assert_eq!(IntPolynomial::from_i64(&[1, 0, 1]).exact_div(&q), None);
        assert_eq!(p.to_string(), "1 - 2s + s^2");
        assert_eq!(IntPolynomial::from_i64(&[0, 0, -3]).to_string(), "-3s^2");
        assert_eq!(q.pow(3), IntPolynomial::from_i64(&[-1, 3, -3, 1]));
    }

    #[test]
    fn vanishing_order() {
        let p = IntPolynomial::from_i64(&[1, -2, 1]);
        assert_eq!(p.vanishing_at_one().unwrap(), (2, int(1)));
        let q = IntPolynomial::from_i64(&[3, 1]);
        assert_eq!(q.vanishing_at_one().unwrap(), (0, int(4)));
        assert!(IntPolynomial::zero().vanishing_at_one().is_err());
    }

    #[test]
    fn poly_matrix_det() {
        let s = IntPolynomial::from_i64(&[0, 1]);
        let one = IntPolynomial::one();
        let m = vec![vec![one.clone(), s.clone()], vec![s.clone(), one.clone()]];
        assert_eq!(poly_det(&m), IntPolynomial::from_i64(&[1, 0, -1]));
    }

    proptest! {
        #[test]
        fn shift_agrees_with_evaluation(
            coeffs in prop::collection::vec(-9i64..10, 0..7),
            t in -5i64..6,
        ) {
            let p = IntPolynomial::from_i64(&coeffs);
            let shifted = p.shift_by_one();
            prop_assert_eq!(shifted.eval(&BigInt::from(t)), p.eval(&BigInt::from(1 + t)));
        }

        #[test]
        fn product_divides_back(
            a in prop::collection::vec(-9i64..10, 0..6),
            b in prop::collection::vec(-9i64..10, 1..6),
        ) {
            let p = IntPolynomial::from_i64(&a);
            let q = IntPolynomial::from_i64(&b);
            prop_assume!(!q.is_zero());
            prop_assert_eq!((&p * &q).exact_div(&q), Some(p));
        }
    }
}
