//! Exact orbit counting of rank-`k` partial partitions of `X x X` under the
//! coordinate-wise action of the symmetric group on `X`.
//!
//! A partial partition fixed by `pi` is assembled from friezes: the c-cycles of
//! `pi` are partially partitioned into groups, each group receives a modulus `d`
//! dividing all of its cycle lengths, and a group of `t` cycles with modulus `d`
//! can be cut into `d` blocks in `d^(t-1)` ways. The rank is the sum of the
//! moduli. Nothing is materialized; the count is a memoized recursion over how
//! many c-cycles of each length remain.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bounds::{check_order, class_sum, is_integral, BoundResult};
use crate::cycletype::{beta, ccycle_lengths, IntegerPartition};
use crate::error::{Error, Result};
use crate::exactmath::{binomial, stirling2};

/// c-cycles of a permutation on `X x X`, aggregated by length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcycleMultiset {
    /// `(length, count)`, lengths ascending.
    pub classes: Vec<(usize, usize)>,
}

impl CcycleMultiset {
    pub fn total(&self) -> usize {
        self.classes.iter().map(|&(_, m)| m).sum()
    }

    /// Number of cells covered, `sum length * count`.
    pub fn cells(&self) -> usize {
        self.classes.iter().map(|&(l, m)| l * m).sum()
    }
}

pub fn ccycle_multiset(lambda: &IntegerPartition) -> CcycleMultiset {
    CcycleMultiset { classes: ccycle_lengths(&lambda.lengths()).into_iter().collect() }
}

struct FixedCounter {
    lengths: Vec<usize>,
    memo: HashMap<(Vec<usize>, usize), BigInt>,
}

impl FixedCounter {
    /// Weighted count of (partial partition of the remaining c-cycles, modulus
    /// assignment) pairs whose moduli sum to `k`.
    fn count(&mut self, remaining: &[usize], k: usize) -> BigInt {
        if k == 0 {
            // everything left joins the vacant part
            return BigInt::one();
        }
        let Some(first) = remaining.iter().position(|&m| m > 0) else {
            return BigInt::zero();
        };
        let capacity: usize = remaining.iter().zip(&self.lengths).map(|(m, l)| m * l).sum();
        if capacity < k {
            return BigInt::zero();
        }
        let key = (remaining.to_vec(), k);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }

        let mut rest = remaining.to_vec();
        rest[first] -= 1;

        // designated cycle left vacant
        let mut total = self.count(&rest, k);

        // designated cycle opens a block: pick how many cycles of each class join it
        let mut chosen = vec![0usize; rest.len()];
        loop {
            let size = 1 + chosen.iter().sum::<usize>();
            let g = chosen
                .iter()
                .zip(&self.lengths)
                .filter(|(&c, _)| c > 0)
                .fold(self.lengths[first], |g, (_, &l)| g.gcd(&l));
            let mut ways: Option<BigInt> = None;
            let after: Vec<usize> = rest.iter().zip(&chosen).map(|(m, c)| m - c).collect();
            for d in (1..=g.min(k)).filter(|d| g % d == 0) {
                let sub = self.count(&after, k - d);
                if sub.is_zero() {
                    continue;
                }
                let ways = ways.get_or_insert_with(|| {
                    rest.iter()
                        .zip(&chosen)
                        .map(|(&m, &c)| binomial(m, c as i64))
                        .product()
                });
                total += &*ways * BigInt::from(d).pow(size as u32 - 1) * sub;
            }
            // next composition, odometer style
            let mut i = 0;
            while i < chosen.len() && chosen[i] == rest[i] {
                chosen[i] = 0;
                i += 1;
            }
            if i == chosen.len() {
                break;
            }
            chosen[i] += 1;
        }

        self.memo.insert(key, total.clone());
        total
    }
}

/// Number of rank-`k` partial partitions of `X x X` fixed by a permutation of
/// cycle type `lambda`.
pub fn fixed_partial_partitions(lambda: &IntegerPartition, k: usize) -> BigInt {
    let multiset = ccycle_multiset(lambda);
    let mut counter = FixedCounter {
        lengths: multiset.classes.iter().map(|&(l, _)| l).collect(),
        memo: HashMap::new(),
    };
    let counts: Vec<usize> = multiset.classes.iter().map(|&(_, m)| m).collect();
    counter.count(&counts, k)
}

/// Per-`(r, lambda)` Burnside summands `fixed(lambda, n - r - 1) / w(lambda)`.
pub fn iso_classes_terms(n: usize) -> Result<BoundResult> {
    check_order(n)?;
    Ok(class_sum(n, |lambda, r| {
        BigRational::from_integer(fixed_partial_partitions(lambda, n - r - 1))
    }))
}

/// Exact number of isomorphism classes of 3-nilpotent semigroups of order `n`.
pub fn iso_classes_exact(n: usize) -> Result<BigInt> {
    let terms = iso_classes_terms(n)?;
    if !is_integral(&terms.exact_rational) {
        return Err(Error::NonIntegral { n, value: terms.exact_rational.to_string() });
    }
    Ok(terms.floored)
}

/// Burnside summands restricted to fixed points with some modulus `d > 1`,
/// i.e. the exact count minus the all-`d = 1` part that the semirigid bound
/// already counts.
pub fn non_semirigid_excess(n: usize) -> Result<BoundResult> {
    check_order(n)?;
    Ok(class_sum(n, |lambda, r| {
        let all = fixed_partial_partitions(lambda, n - r - 1);
        let unit = stirling2(beta(lambda) + 1, (n - r) as i64);
        BigRational::from_integer(all - unit)
    }))
}
