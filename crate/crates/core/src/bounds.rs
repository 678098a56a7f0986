//! Closed-form counts and upper bounds.
//!
//! Exact counts up to identity and presentation are plain Stirling sums. The
//! bounds are sums over ranks `r` and cycle types `lambda |- r` of a fixed-point
//! count divided by the weight `w(lambda)`; they are accumulated as exact
//! rationals and floored once at the end.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycletype::{beta, beta_d, gamma, partitions_of, weight, zeta_eta, IntegerPartition};
use crate::error::{Error, Result};
use crate::exactmath::{bell, binomial, factorial, scaled_stirling, stirling2};

/// Catalogue of the computable count series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    Identity,
    Presentation,
    CommutativeIdentity,
    CommutativePresentation,
    RankStratified,
    TnOverNfact,
    SemirigidIsoBound,
    CommutativeSemirigidBound,
    SelfdualSemirigidBound,
    EquivalenceSemirigidBound,
    IsoExact,
}

impl CountKind {
    pub const ALL: [CountKind; 11] = [
        CountKind::Identity,
        CountKind::Presentation,
        CountKind::CommutativeIdentity,
        CountKind::CommutativePresentation,
        CountKind::RankStratified,
        CountKind::TnOverNfact,
        CountKind::SemirigidIsoBound,
        CountKind::CommutativeSemirigidBound,
        CountKind::SelfdualSemirigidBound,
        CountKind::EquivalenceSemirigidBound,
        CountKind::IsoExact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CountKind::Identity => "identity",
            CountKind::Presentation => "presentation",
            CountKind::CommutativeIdentity => "commutative_identity",
            CountKind::CommutativePresentation => "commutative_presentation",
            CountKind::RankStratified => "rank_stratified",
            CountKind::TnOverNfact => "tn_over_nfact",
            CountKind::SemirigidIsoBound => "semirigid_iso_bound",
            CountKind::CommutativeSemirigidBound => "commutative_semirigid_bound",
            CountKind::SelfdualSemirigidBound => "selfdual_semirigid_bound",
            CountKind::EquivalenceSemirigidBound => "equivalence_semirigid_bound",
            CountKind::IsoExact => "iso_exact",
        }
    }
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().replace('-', "_").to_ascii_lowercase();
        CountKind::ALL
            .into_iter()
            .find(|k| k.name() == wanted)
            .ok_or_else(|| Error::Precondition(format!("unknown count kind {s:?}")))
    }
}

/// One `(r, lambda)` summand of a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTerm {
    pub r: usize,
    pub lambda: IntegerPartition,
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub n: usize,
    pub exact_rational: BigRational,
    pub floored: BigInt,
    pub per_rank_terms: Vec<RankTerm>,
}

impl BoundResult {
    fn from_terms(n: usize, per_rank_terms: Vec<RankTerm>) -> Self {
        let exact_rational = per_rank_terms
            .iter()
            .fold(BigRational::zero(), |acc, t| acc + &t.value);
        let floored = exact_rational.floor().to_integer();
        BoundResult { n, exact_rational, floored, per_rank_terms }
    }

    /// The summand for a given cycle type, if it occurs.
    pub fn term(&self, lambda: &IntegerPartition) -> Option<&BigRational> {
        self.per_rank_terms
            .iter()
            .find(|t| &t.lambda == lambda)
            .map(|t| &t.value)
    }

    /// Sum of the summands of rank `r`.
    pub fn rank_total(&self, r: usize) -> BigRational {
        self.per_rank_terms
            .iter()
            .filter(|t| t.r == r)
            .fold(BigRational::zero(), |acc, t| acc + &t.value)
    }
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::OrderTooSmall(n as i64));
    }
    Ok(())
}

fn rational(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// Sums `numerator(lambda, r) / w(lambda)` over `r = 1..=n-2`, `lambda |- r`.
pub(crate) fn class_sum<F>(n: usize, numerator: F) -> BoundResult
where
    F: Fn(&IntegerPartition, usize) -> BigRational + Sync,
{
    let jobs: Vec<(usize, IntegerPartition)> = (1..=n - 2)
        .flat_map(|r| partitions_of(r).into_iter().map(move |l| (r, l)))
        .collect();
    let terms = jobs
        .into_par_iter()
        .map(|(r, lambda)| {
            let value = numerator(&lambda, r) / rational(weight(&lambda));
            RankTerm { r, lambda, value }
        })
        .collect();
    BoundResult::from_terms(n, terms)
}

/// 3-nilpotent semigroups of order `n` up to presentation.
pub fn t_presentation(n: usize) -> Result<BigInt> {
    check_order(n)?;
    Ok((1..=n - 2).map(|r| stirling2(r * r + 1, (n - r) as i64)).sum())
}

/// 3-nilpotent semigroups on a fixed `n`-set (up to identity), `t_n`.
pub fn t_identity(n: usize) -> Result<BigInt> {
    check_order(n)?;
    let n_fact = factorial(n);
    Ok((1..=n - 2)
        .map(|r| stirling2(r * r + 1, (n - r) as i64) * &n_fact / factorial(r))
        .sum())
}

pub fn commutative_presentation(n: usize) -> Result<BigInt> {
    check_order(n)?;
    Ok((1..=n - 2)
        .map(|r| stirling2(r * (r + 1) / 2 + 1, (n - r) as i64))
        .sum())
}

pub fn commutative_identity(n: usize) -> Result<BigInt> {
    check_order(n)?;
    let n_fact = factorial(n);
    Ok((1..=n - 2)
        .map(|r| stirling2(r * (r + 1) / 2 + 1, (n - r) as i64) * &n_fact / factorial(r))
        .sum())
}

/// 3-nilpotent semigroups of rank `r` (any order) up to presentation,
/// `B(r^2 + 1) - 1`.
pub fn rank_stratified_presentation(r: usize) -> Result<BigInt> {
    if r == 0 {
        return Err(Error::Precondition("rank r must be at least 1".into()));
    }
    Ok(bell(r * r + 1) - 1)
}

/// `t_n / n!`, a lower bound for the number of isomorphism classes.
pub fn tn_over_nfact_lower_bound(n: usize) -> Result<BigRational> {
    Ok(BigRational::new(t_identity(n)?, factorial(n)))
}

/// Upper bound on isomorphism classes of semirigid 3-nilpotent semigroups of
/// order `n` (also a lower bound on all isomorphism classes).
pub fn semirigid_iso_bound(n: usize) -> Result<BoundResult> {
    check_order(n)?;
    Ok(class_sum(n, |lambda, r| {
        rational(stirling2(beta(lambda) + 1, (n - r) as i64))
    }))
}

/// Upper bound on isomorphism classes of semirigid commutative 3-nilpotent
/// semigroups of order `n`.
pub fn commutative_semirigid_bound(n: usize) -> Result<BoundResult> {
    check_order(n)?;
    Ok(class_sum(n, |lambda, r| {
        rational(stirling2(gamma(lambda) + 1, (n - r) as i64))
    }))
}

/// Partial partitions of rank `k = n - r - 1` fixed by `pi` composed with the
/// twist whose blocks are each stable under `pi^2`, for any `pi` of type `lambda`.
pub fn f_pitau(lambda: &IntegerPartition, n: usize, r: usize) -> Result<BigInt> {
    if lambda.rank() != r || r == 0 || r + 2 > n {
        return Err(Error::Precondition(format!(
            "F(pi tau) needs |lambda| = r and 1 <= r <= n - 2 (lambda = {lambda}, n = {n}, r = {r})"
        )));
    }
    let k = n - r - 1;
    let (zeta, eta) = zeta_eta(lambda);
    let mut total = BigInt::zero();
    for j in 0..=zeta {
        let choose = binomial(zeta, j as i64);
        let mut inner = BigInt::zero();
        for t in 0..=j.min(k / 2) {
            let s = stirling2(zeta + eta - j + 1, (n - r) as i64 - 2 * t as i64);
            if !s.is_zero() {
                inner += scaled_stirling(j, t) * s;
            }
        }
        total += choose * inner;
    }
    Ok(total)
}

/// Upper bound on self-dual isomorphism classes of semirigid 3-nilpotent
/// semigroups of order `n`.
pub fn selfdual_semirigid_bound(n: usize) -> Result<BoundResult> {
    check_order(n)?;
    Ok(class_sum(n, |lambda, r| {
        rational(f_pitau(lambda, n, r).expect("r ranges over 1..=n-2"))
    }))
}

/// Upper bound on equivalence classes (isomorphism or anti-isomorphism) of
/// semirigid 3-nilpotent semigroups: half of the isomorphism bound plus the
/// self-dual bound, summand by summand.
pub fn equivalence_semirigid_bound(n: usize) -> Result<BoundResult> {
    check_order(n)?;
    let two = rational(BigInt::from(2));
    Ok(class_sum(n, |lambda, r| {
        let iso = stirling2(beta(lambda) + 1, (n - r) as i64);
        let sd = f_pitau(lambda, n, r).expect("r ranges over 1..=n-2");
        rational(iso + sd) / &two
    }))
}

/// Isomorphism classes contributed by a single modulus-2 frieze for the cycle
/// type `1^mu1 2^mu2` at order `n`, with an arbitrary partial partition of rank
/// `k - 2` on the remaining c-cycles.
pub fn correction_term_1a2b(mu1: usize, mu2: usize, n: usize) -> Result<BigRational> {
    if mu2 == 0 {
        return Err(Error::Precondition("mu2 must be positive".into()));
    }
    let r = mu1 + 2 * mu2;
    let k = n as i64 - r as i64 - 1;
    if k < 2 {
        return Err(Error::CorrectionRank(k));
    }
    let parts: Vec<(usize, usize)> = [(1, mu1), (2, mu2)].into_iter().filter(|&(_, m)| m > 0).collect();
    let lambda = IntegerPartition::from_parts(&parts)?;
    let (b1, b2) = (beta_d(&lambda, 1), beta_d(&lambda, 2));
    let k = k as usize;
    let sum: BigInt = (1..=b2)
        .map(|t| {
            (binomial(b2, t as i64) << (t - 1)) * stirling2(b1 - t + 1, k as i64 - 1)
        })
        .sum();
    match k {
        2 => debug_assert_eq!(sum, (BigInt::from(3).pow(b2 as u32) - 1) / 2),
        3 => debug_assert_eq!(
            sum,
            ((BigInt::from(1) << (b1 + b2)) - (BigInt::from(1) << b1) - BigInt::from(3).pow(b2 as u32)
                + 1)
                / 2
        ),
        _ => {}
    }
    Ok(BigRational::new(sum, weight(&lambda)))
}

/// Closed forms of the 1^a 2^b correction for `k = 2` and `k = 3`, kept separate
/// so they can be checked against the general sum.
pub fn correction_closed_form(beta1: usize, beta2: usize, k: usize) -> Option<BigInt> {
    let three = BigInt::from(3).pow(beta2 as u32);
    match k {
        2 => Some((three - 1) / 2),
        3 => Some(((BigInt::from(1) << (beta1 + beta2)) - (BigInt::from(1) << beta1) - three + 1) / 2),
        _ => None,
    }
}

/// Least `r` with `r^2 >= n - r - 1`; ranks below it contribute nothing.
pub fn least_rank(n: usize) -> usize {
    (1..=n).find(|&r| r * r + r + 1 >= n).unwrap_or(n)
}

/// Lossy view for logging and progress output.
pub fn approx(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn is_integral(q: &BigRational) -> bool {
    q.is_integer()
}
