//! Slow oracles shared by integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use prym_core::{DoubleCover, EdgeId, Graph, IntPolynomial};

/// Primitive reduced closed walks of each length `1..=max_len`, split by sign.
///
/// A walk is a sequence of darts (`2e` traverses `e` forwards, `2e + 1`
/// backwards) with no dart followed by its reverse, cyclically. Each prime
/// class of length `d` contains exactly `d` such walks.
pub struct PrimeCounts {
    pub positive: Vec<u64>,
    pub negative: Vec<u64>,
}

fn dart_tail(g: &Graph, d: usize) -> usize {
    let e = g.edge(d / 2);
    if d.is_multiple_of(2) { e.src } else { e.dst }
}

fn dart_head(g: &Graph, d: usize) -> usize {
    let e = g.edge(d / 2);
    if d.is_multiple_of(2) { e.dst } else { e.src }
}

fn is_primitive(walk: &[usize]) -> bool {
    let n = walk.len();
    (1..n).filter(|p| n.is_multiple_of(*p)).all(|p| (0..n).any(|i| walk[i] != walk[(i + p) % n]))
}

/// Largest length up to `cap` for which the number of reduced walks stays within `budget`.
pub fn affordable_length(g: &Graph, cap: usize, budget: u64) -> usize {
    let darts = 2 * g.edge_count();
    let mut counts = vec![1u64; darts];
    let mut total = darts as u64;
    for len in 2..=cap {
        let mut next = vec![0u64; darts];
        for d in 0..darts {
            for n in 0..darts {
                if n != (d ^ 1) && dart_tail(g, n) == dart_head(g, d) {
                    next[n] = next[n].saturating_add(counts[d]);
                }
            }
        }
        counts = next;
        total = total.saturating_add(counts.iter().sum::<u64>());
        if total > budget {
            return len - 1;
        }
    }
    cap
}

pub fn count_primes(g: &Graph, sign: &dyn Fn(EdgeId) -> i8, max_len: usize) -> PrimeCounts {
    let darts = 2 * g.edge_count();
    let mut positive = vec![0u64; max_len + 1];
    let mut negative = vec![0u64; max_len + 1];
    let mut walk = Vec::with_capacity(max_len);
    fn extend(
        g: &Graph,
        sign: &dyn Fn(EdgeId) -> i8,
        darts: usize,
        max_len: usize,
        walk: &mut Vec<usize>,
        positive: &mut [u64],
        negative: &mut [u64],
    ) {
        let first = walk[0];
        let last = *walk.last().unwrap();
        if dart_head(g, last) == dart_tail(g, first) && last != (first ^ 1) && is_primitive(walk) {
            let s: i8 = walk.iter().map(|d| sign(d / 2)).product();
            if s > 0 {
                positive[walk.len()] += 1;
            } else {
                negative[walk.len()] += 1;
            }
        }
        if walk.len() == max_len {
            return;
        }
        for n in 0..darts {
            if n != (last ^ 1) && dart_tail(g, n) == dart_head(g, last) {
                walk.push(n);
                extend(g, sign, darts, max_len, walk, positive, negative);
                walk.pop();
            }
        }
    }
    for d in 0..darts {
        walk.push(d);
        extend(g, sign, darts, max_len, &mut walk, &mut positive, &mut negative);
        walk.pop();
    }
    for len in 1..=max_len {
        assert_eq!(positive[len] % len as u64, 0);
        assert_eq!(negative[len] % len as u64, 0);
        positive[len] /= len as u64;
        negative[len] /= len as u64;
    }
    PrimeCounts { positive, negative }
}

/// `prod (1 - s^d)^{pi+} (1 + s^d)^{pi-}` truncated at degree `max_len`.
pub fn euler_product(counts: &PrimeCounts, max_len: usize) -> IntPolynomial {
    let mut acc = IntPolynomial::one();
    for d in 1..=max_len {
        let minus = IntPolynomial::new(
            (0..=d).map(|i| BigInt::from(if i == 0 { 1 } else if i == d { -1 } else { 0 })).collect(),
        );
        let plus = IntPolynomial::new(
            (0..=d).map(|i| BigInt::from(if i == 0 || i == d { 1 } else { 0 })).collect(),
        );
        for _ in 0..counts.positive[d] {
            acc = (&acc * &minus).truncate(max_len);
        }
        for _ in 0..counts.negative[d] {
            acc = (&acc * &plus).truncate(max_len);
        }
    }
    acc
}

/// Truncated Euler product for `1/zeta` of a graph.
pub fn zeta_reciprocal_by_primes(g: &Graph, max_len: usize) -> IntPolynomial {
    euler_product(&count_primes(g, &|_| 1, max_len), max_len)
}

/// Truncated Euler product for `1/L` of the sign character of a cover.
pub fn l_reciprocal_by_primes(cover: &DoubleCover, max_len: usize) -> IntPolynomial {
    let sign = |e: EdgeId| if cover.is_flip(e) { -1 } else { 1 };
    euler_product(&count_primes(cover.base(), &sign, max_len), max_len)
}
