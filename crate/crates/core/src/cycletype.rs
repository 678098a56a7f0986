//! Cycle types of permutations of a rank-`r` generating set, and the per-type
//! statistics consumed by the bound formulas.
//!
//! A permutation `pi` of `X` induces the coordinate-wise action on `X x X`; its
//! orbits there are called c-cycles, while the cycles of `pi` on `X` itself are
//! x-cycles. Everything in this module depends only on the multiset of x-cycle
//! lengths.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::factorial;

/// An integer partition `lambda` of `r`, stored as `(length, multiplicity)` pairs
/// with strictly decreasing lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition {
    parts: Vec<(usize, usize)>,
}

impl IntegerPartition {
    /// Builds a partition from any list of positive part lengths.
    pub fn from_lengths(lengths: &[usize]) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &len in lengths {
            if len == 0 {
                return Err(Error::InvalidPartition("zero-length part".into()));
            }
            *counts.entry(len).or_default() += 1;
        }
        Ok(IntegerPartition { parts: counts.into_iter().rev().collect() })
    }

    /// Builds a partition from `(length, multiplicity)` pairs in any order;
    /// repeated lengths are merged.
    pub fn from_parts(parts: &[(usize, usize)]) -> Result<Self> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &(len, mult) in parts {
            if len == 0 || mult == 0 {
                return Err(Error::InvalidPartition(format!("part {len}^{mult}")));
            }
            *counts.entry(len).or_default() += mult;
        }
        if counts.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        Ok(IntegerPartition { parts: counts.into_iter().rev().collect() })
    }

    /// The identity cycle type `1^r`.
    pub fn identity(r: usize) -> Self {
        IntegerPartition { parts: vec![(1, r)] }
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn rank(&self) -> usize {
        self.parts.iter().map(|(l, m)| l * m).sum()
    }

    /// Every x-cycle length, largest first, multiplicities expanded.
    pub fn lengths(&self) -> Vec<usize> {
        self.parts
            .iter()
            .flat_map(|&(l, m)| std::iter::repeat_n(l, m))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].0 == 1
    }

    /// A concrete permutation of `0..r` with this cycle type: cycles occupy
    /// consecutive points, longest first, each mapping `i -> i + 1` cyclically.
    pub fn representative(&self) -> Vec<usize> {
        let mut perm = Vec::with_capacity(self.rank());
        let mut start = 0;
        for len in self.lengths() {
            for i in 0..len {
                perm.push(start + (i + 1) % len);
            }
            start += len;
        }
        perm
    }
}

impl fmt::Display for IntegerPartition {
    /// Formats as `1^2,2^1`, lengths ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, m)) in self.parts.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}^{m}")?;
        }
        Ok(())
    }
}

impl FromStr for IntegerPartition {
    type Err = Error;

    /// Parses `1^2,2^1`; a bare length such as `3` means multiplicity one.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (len, mult) = match item.split_once('^') {
                Some((l, m)) => (l.trim(), m.trim()),
                None => (item, "1"),
            };
            let bad = || Error::InvalidPartition(format!("cannot parse part {item:?}"));
            let len: usize = len.parse().map_err(|_| bad())?;
            let mult: usize = mult.parse().map_err(|_| bad())?;
            parts.push((len, mult));
        }
        Self::from_parts(&parts)
    }
}

impl Serialize for IntegerPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All partitions of `r`, in reverse-lexicographic order of their part lists:
/// `(r)`, `(r-1, 1)`, ..., `(1, ..., 1)`.
pub fn partitions_of(r: usize) -> Vec<IntegerPartition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
        if remaining == 0 {
            out.push(IntegerPartition::from_lengths(prefix).expect("positive parts"));
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        rec(r, r, &mut Vec::new(), &mut out);
    }
    out
}

/// `w(lambda) = prod lambda_i^mu_i * mu_i!`; `r! / w` is the conjugacy class size.
pub fn weight(lambda: &IntegerPartition) -> BigInt {
    lambda.parts.iter().fold(BigInt::one(), |acc, &(l, m)| {
        acc * BigInt::from(l).pow(m as u32) * factorial(m)
    })
}

/// Number of c-cycles whose length is divisible by `d`.
pub fn beta_d(lambda: &IntegerPartition, d: usize) -> usize {
    assert!(d >= 1, "beta_d needs d >= 1");
    let mut total = 0;
    for &(a, ma) in &lambda.parts {
        for &(b, mb) in &lambda.parts {
            if a.lcm(&b) % d == 0 {
                total += ma * mb * a.gcd(&b);
            }
        }
    }
    total
}

/// Total number of c-cycles, `beta_1`.
pub fn beta(lambda: &IntegerPartition) -> usize {
    beta_d(lambda, 1)
}

/// Number of c-cycles invariant under the twist `(x, y) -> (y, x)`: every
/// diagonal cycle, plus one extra for each even x-cycle.
pub fn delta(lambda: &IntegerPartition) -> usize {
    lambda.parts.iter().map(|&(l, m)| m * (1 + usize::from(l % 2 == 0))).sum()
}

/// Symmetric c-cycles plus matched pairs of skew ones: `(beta + delta) / 2`.
pub fn gamma(lambda: &IntegerPartition) -> usize {
    let (b, d) = (beta(lambda), delta(lambda));
    debug_assert_eq!((b - d) % 2, 0);
    (b + d) / 2
}

/// `(zeta, eta)`: associate pairs and singular cycles among the c-cycles of
/// `pi^2`, relative to `pi` composed with the twist.
pub fn zeta_eta(lambda: &IntegerPartition) -> (usize, usize) {
    let lengths = lambda.lengths();
    let even = |l: usize| usize::from(l.is_multiple_of(2));
    let twice_odd = |l: usize| usize::from(l % 4 == 2);

    let mut diagonal_panels = 0;
    let mut eta = 0;
    for &l in &lengths {
        let (e, f) = (even(l), twice_odd(l));
        diagonal_panels += (1 + e) * (l + 1) - 2 * (f + 1);
        eta += 1 - e + 2 * f;
    }
    debug_assert_eq!(diagonal_panels % 2, 0);
    let mut zeta = diagonal_panels / 2;
    for i in 0..lengths.len() {
        for j in i + 1..lengths.len() {
            let (a, b) = (lengths[i], lengths[j]);
            let either_even = usize::from(a % 2 == 0 || b % 2 == 0);
            zeta += (1 + either_even) * a.gcd(&b);
        }
    }
    (zeta, eta)
}

/// Aggregated c-cycle lengths of a permutation with x-cycle lengths `lengths`:
/// each ordered pair of x-cycles `(a, b)` contributes `gcd(a, b)` cycles of
/// length `lcm(a, b)`.
pub fn ccycle_lengths(lengths: &[usize]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for &a in lengths {
        for &b in lengths {
            *out.entry(a.lcm(&b)).or_default() += a.gcd(&b);
        }
    }
    out
}

/// Cycle lengths of `pi^2` on `X`.
pub fn square_lengths(lambda: &IntegerPartition) -> Vec<usize> {
    let mut out = Vec::new();
    for l in lambda.lengths() {
        if l % 2 == 0 {
            out.extend([l / 2, l / 2]);
        } else {
            out.push(l);
        }
    }
    out
}

/// Multiset `{length: count}` of the c-cycles of `pi^2` on `X x X`.
pub fn ccycles_of_square(lambda: &IntegerPartition) -> BTreeMap<usize, usize> {
    ccycle_lengths(&square_lengths(lambda))
}

/// Every statistic the bound formulas read off a cycle type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleStats {
    pub lambda: IntegerPartition,
    #[serde(serialize_with = "as_decimal")]
    pub weight: BigInt,
    /// `beta_d` for every `d` that divides at least one c-cycle length.
    pub beta: BTreeMap<usize, usize>,
    pub delta: usize,
    pub gamma: usize,
    pub zeta: usize,
    pub eta: usize,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl CycleStats {
    pub fn of(lambda: &IntegerPartition) -> Self {
        let max_len = ccycle_lengths(&lambda.lengths()).keys().copied().max().unwrap_or(1);
        let beta = (1..=max_len)
            .map(|d| (d, beta_d(lambda, d)))
            .filter(|&(_, b)| b > 0)
            .collect();
        let (zeta, eta) = zeta_eta(lambda);
        CycleStats {
            lambda: lambda.clone(),
            weight: weight(lambda),
            beta,
            delta: delta(lambda),
            gamma: gamma(lambda),
            zeta,
            eta,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntegerPartition {
        s.parse().unwrap()
    }

    #[test]
    fn partition_listing() {
        let two: Vec<String> = partitions_of(2).iter().map(ToString::to_string).collect();
        assert_eq!(two, ["2^1", "1^2"]);
        assert_eq!(partitions_of(1), vec![p("1^1")]);
        assert_eq!(partitions_of(8).len(), 22);
        let four: Vec<Vec<usize>> = partitions_of(4).iter().map(|l| l.lengths()).collect();
        assert_eq!(four, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("2^1,1^2").to_string(), "1^2,2^1");
        assert_eq!(p("3").to_string(), "3^1");
        assert_eq!(p("1^1,1^1"), p("1^2"));
        assert!("1^0".parse::<IntegerPartition>().is_err());
        assert!("".parse::<IntegerPartition>().is_err());
        assert!("a^2".parse::<IntegerPartition>().is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&p("2^2")), BigInt::from(8));
        assert_eq!(weight(&p("1^1,2^1")), BigInt::from(2));
        assert_eq!(weight(&p("1^6")), factorial(6));
    }

    #[test]
    fn beta_values() {
        assert_eq!(beta(&p("1^2")), 4);
        assert_eq!(beta(&p("2^1")), 2);
        assert_eq!(beta_d(&p("1^1,2^1"), 1), 5);
        assert_eq!(beta_d(&p("1^1,2^1"), 2), 4);
        assert_eq!(beta(&p("1^7")), 49);
        assert_eq!(beta_d(&p("1^2,2^1"), 2), 6);
    }

    #[test]
    fn delta_gamma_values() {
        assert_eq!((delta(&p("2^1")), gamma(&p("2^1"))), (2, 2));
        assert_eq!((delta(&p("1^2")), gamma(&p("1^2"))), (2, 3));
        assert_eq!(gamma(&p("1^3")), 6);
        assert_eq!(gamma(&p("1^1,2^1")), 4);
        assert_eq!(gamma(&p("3^1")), 2);
    }

    #[test]
    fn zeta_eta_values() {
        assert_eq!(zeta_eta(&p("1^2")), (1, 2));
        assert_eq!(zeta_eta(&p("2^1")), (1, 2));
        assert_eq!(zeta_eta(&p("1^3")), (3, 3));
        assert_eq!(zeta_eta(&p("3^1")), (1, 1));
        assert_eq!(zeta_eta(&p("4^1")), (4, 0));
    }

    #[test]
    fn square_ccycles() {
        let two = ccycles_of_square(&p("2^1"));
        assert_eq!(two, BTreeMap::from([(1, 4)]));
        assert_eq!(ccycles_of_square(&p("1^5")), BTreeMap::from([(1, 25)]));
        let four = ccycles_of_square(&p("4^1"));
        assert_eq!(four.values().sum::<usize>(), 8);
        for lambda in (1..=7).flat_map(partitions_of) {
            let (z, e) = zeta_eta(&lambda);
            assert_eq!(2 * z + e, ccycles_of_square(&lambda).values().sum::<usize>(), "{lambda}");
        }
    }

    #[test]
    fn stats_bundle() {
        let s = CycleStats::of(&p("1^1,2^1"));
        assert_eq!(s.beta, BTreeMap::from([(1, 5), (2, 4)]));
        assert_eq!(s.weight, BigInt::from(2));
        let json = serde_json::to_value(&s).unwrap();
        assert_eq!(json["weight"], "2");
        assert_eq!(json["beta"]["2"], 4);
    }

    #[test]
    fn representative_has_type() {
        let lambda = p("1^2,3^2");
        let perm = lambda.representative();
        let mut seen = vec![false; perm.len()];
        let mut lengths = Vec::new();
        for s in 0..perm.len() {
            if seen[s] {
                continue;
            }
            let (mut x, mut len) = (s, 0);
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
                len += 1;
            }
            lengths.push(len);
        }
        assert_eq!(IntegerPartition::from_lengths(&lengths).unwrap(), lambda);
    }
}
