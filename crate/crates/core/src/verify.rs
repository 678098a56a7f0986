//! Cross-checks between the closed forms, the exact Burnside counts, the
//! brute-force oracle and the reference values.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::bounds::{self, format_rational, CountKind};
use crate::burnside;
use crate::cycletype::{beta_d, delta, partitions_of, zeta_eta, IntegerPartition};
use crate::error::Result;
use crate::exactmath::{binomial, factorial, scaled_stirling, stirling2, StirlingTable};
use crate::oracle::{self, CensusCount, GroupElement};
use crate::published;
use crate::table::compute_formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Fast,
    Full,
}

impl std::str::FromStr for Level {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            _ => Err(crate::Error::Precondition(format!("unknown level {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions<'a> {
    pub allow_slow: bool,
    /// Stirling cache file to validate.
    pub cache: Option<&'a Path>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: Option<usize>,
    pub kind: String,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            Some(n) => write!(f, "n = {n}, {}: expected {}, got {}", self.kind, self.expected, self.got),
            None => write!(f, "{}: expected {}, got {}", self.kind, self.expected, self.got),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub mismatch: Option<Mismatch>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub checks: Vec<CheckOutcome>,
    /// Reference cells compared against a corrected value instead of the printed one.
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<(&'static str, &Mismatch)> {
        self.checks.iter().find_map(|c| c.mismatch.as_ref().map(|m| (c.name, m)))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            out.push_str(&format!("{status:4} {:32} {} cases\n", c.name, c.cases));
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        match self.first_failure() {
            Some((name, m)) => out.push_str(&format!("first failure in {name}: {m}\n")),
            None => out.push_str("all checks passed\n"),
        }
        out
    }
}

/// Accumulates comparisons, keeping the first mismatch.
struct Check {
    name: &'static str,
    cases: usize,
    mismatch: Option<Mismatch>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, cases: 0, mismatch: None }
    }

    fn eq<T: PartialEq + fmt::Display>(&mut self, n: Option<usize>, kind: impl fmt::Display, expected: T, got: T) {
        self.cases += 1;
        if expected != got && self.mismatch.is_none() {
            self.mismatch = Some(Mismatch {
                n,
                kind: kind.to_string(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    fn ok(&mut self, n: Option<usize>, kind: impl fmt::Display, what: impl fmt::Display, holds: bool) {
        self.cases += 1;
        if !holds && self.mismatch.is_none() {
            self.mismatch = Some(Mismatch {
                n,
                kind: kind.to_string(),
                expected: what.to_string(),
                got: "violated".into(),
            });
        }
    }

    fn fail(&mut self, n: Option<usize>, kind: impl fmt::Display, err: impl fmt::Display) {
        self.cases += 1;
        if self.mismatch.is_none() {
            self.mismatch = Some(Mismatch {
                n,
                kind: kind.to_string(),
                expected: "success".into(),
                got: err.to_string(),
            });
        }
    }

    fn done(self) -> CheckOutcome {
        CheckOutcome { name: self.name, cases: self.cases, mismatch: self.mismatch }
    }
}

/// `S(n, k)` by inclusion–exclusion, `(1/k!) sum_j (-1)^(k-j) C(k, j) j^n`.
pub fn stirling2_inclusion_exclusion(n: usize, k: usize) -> BigInt {
    let mut total = BigInt::zero();
    for j in 0..=k {
        let term = binomial(k, j as i64) * BigInt::from(j).pow(n as u32);
        if (k - j).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total / factorial(k)
}

/// `t_n` by the alternating-sum form, with no Stirling table involved.
pub fn t_identity_inclusion_exclusion(n: usize) -> BigInt {
    (1..=n - 2)
        .map(|r| {
            let m = n - r;
            let mut inner = BigInt::zero();
            for j in 1..=m {
                let term = binomial(m, j as i64) * BigInt::from(j).pow((r * r + 1) as u32);
                if (m - j).is_multiple_of(2) {
                    inner += term;
                } else {
                    inner -= term;
                }
            }
            factorial(n) / factorial(r) / factorial(m) * inner
        })
        .sum()
}

pub fn stirling_identities(max_n: usize) -> CheckOutcome {
    let mut c = Check::new("stirling_identities");
    for n in 0..=max_n {
        for k in 0..=n {
            let ki = k as i64;
            if n >= 1 && k >= 1 {
                let rec = stirling2(n - 1, ki - 1) + BigInt::from(k) * stirling2(n - 1, ki);
                c.eq(Some(n), format!("recurrence k={k}"), rec, stirling2(n, ki));
            }
            let lhs = stirling2(n, ki) + BigInt::from(k + 1) * stirling2(n, ki + 1);
            c.eq(Some(n), format!("partial partitions k={k}"), stirling2(n + 1, ki + 1), lhs);
            c.eq(Some(n), format!("inclusion-exclusion k={k}"), stirling2_inclusion_exclusion(n, k), stirling2(n, ki));
        }
    }
    c.done()
}

pub fn identity_count_alternating_form(max_n: usize) -> CheckOutcome {
    let mut c = Check::new("identity_alternating_form");
    for n in 3..=max_n {
        match bounds::t_identity(n) {
            Ok(t) => c.eq(Some(n), "identity", t_identity_inclusion_exclusion(n), t),
            Err(e) => c.fail(Some(n), "identity", e),
        }
    }
    c.done()
}

pub fn scaled_stirling_recursion(max_p: usize) -> CheckOutcome {
    let mut c = Check::new("scaled_stirling_recursion");
    for p in 1..=max_p {
        for q in 0..=p {
            let prev = if q == 0 { BigInt::zero() } else { scaled_stirling(p - 1, q - 1) };
            let rec = prev + BigInt::from(2 * q) * scaled_stirling(p - 1, q);
            c.eq(Some(p), format!("a(p, {q})"), rec, scaled_stirling(p, q));
        }
    }
    c.done()
}

/// Closed-form cycle statistics against a direct walk of the c-cycles.
pub fn cycle_statistics(max_r: usize) -> CheckOutcome {
    let mut c = Check::new("cycle_statistics");
    for r in 1..=max_r {
        for lambda in partitions_of(r) {
            let census = oracle::ccycle_census(&lambda.representative());
            for d in 1..=r {
                let direct: usize =
                    census.lengths.iter().filter(|(l, _)| *l % d == 0).map(|(_, m)| m).sum();
                c.eq(Some(r), format!("beta_{d}({lambda})"), direct, beta_d(&lambda, d));
            }
            c.eq(Some(r), format!("delta({lambda})"), census.symmetric, delta(&lambda));
            let (zeta, eta) = zeta_eta(&lambda);
            c.eq(Some(r), format!("zeta({lambda})"), census.square_pairs, zeta);
            c.eq(Some(r), format!("eta({lambda})"), census.square_singular, eta);
        }
    }
    c.done()
}

/// Symmetric c-cycles off the diagonal occur exactly for even `s`, and are the
/// orbits of `(x, x pi^(s/2))`.
pub fn symmetric_cycle_shape(max_r: usize) -> CheckOutcome {
    let mut c = Check::new("symmetric_cycle_shape");
    for r in 1..=max_r {
        for pi in oracle::permutations(r) {
            let pow = |x: usize, e: usize| (0..e).fold(x, |x, _| pi[x]);
            let cycle_len = |x: usize| (1..=r).find(|&e| pow(x, e) == x).unwrap_or(r);
            let mut seen = vec![false; r * r];
            for x in 0..r {
                for y in 0..r {
                    if x == y || seen[x * r + y] {
                        continue;
                    }
                    let mut orbit = Vec::new();
                    let (mut a, mut b) = (x, y);
                    while !seen[a * r + b] {
                        seen[a * r + b] = true;
                        orbit.push((a, b));
                        (a, b) = (pi[a], pi[b]);
                    }
                    let symmetric = orbit.contains(&(y, x));
                    let s = orbit.len();
                    let shaped = s % 2 == 0
                        && orbit.iter().any(|&(a, b)| cycle_len(a) == s && b == pow(a, s / 2));
                    c.eq(Some(r), format!("cycle of ({x}, {y}) under {pi:?}"), shaped, symmetric);
                }
            }
        }
    }
    c.done()
}

/// Every closed-form column against the reference tables.
pub fn reference_tables(max_exact: usize) -> CheckOutcome {
    use published as p;
    let mut c = Check::new("reference_tables");
    let series: [(CountKind, &[&str]); 8] = [
        (CountKind::Identity, &p::IDENTITY),
        (CountKind::Presentation, &p::PRESENTATION),
        (CountKind::CommutativeIdentity, &p::COMMUTATIVE_IDENTITY),
        (CountKind::CommutativePresentation, &p::COMMUTATIVE_PRESENTATION),
        (CountKind::SemirigidIsoBound, &p::SEMIRIGID_ISO_BOUND),
        (CountKind::SelfdualSemirigidBound, &p::SELFDUAL_SEMIRIGID_BOUND),
        (CountKind::EquivalenceSemirigidBound, &p::EQUIVALENCE_SEMIRIGID_BOUND),
        (CountKind::IsoExact, &p::ISO_EXACT),
    ];
    for (kind, values) in series {
        let top = if kind == CountKind::IsoExact { max_exact } else { 10 };
        for n in 3..=top {
            let Some(mut expected) = p::at(values, n) else { continue };
            if let Some(conflict) = p::conflict(kind.name(), n) {
                expected = conflict.3;
            }
            match compute_formula(kind, n) {
                Ok((v, _, _)) => c.eq(Some(n), kind, expected.to_string(), v.to_string()),
                Err(e) => c.fail(Some(n), kind, e),
            }
        }
    }
    c.done()
}

/// Ordering of the semirigid bound against the exact count and the oracle.
pub fn sandwich(max_n: usize) -> CheckOutcome {
    let mut c = Check::new("bound_sandwich");
    for n in 3..=max_n {
        let (Ok(b), Ok(e)) = (bounds::semirigid_iso_bound(n), burnside::iso_classes_exact(n)) else {
            c.fail(Some(n), "semirigid_iso_bound", "evaluation failed");
            continue;
        };
        c.ok(Some(n), "iso_exact", "semirigid bound <= exact", b.floored <= e);
        if let Some(a) = published::at(&published::ISO_SEMIRIGID, n) {
            let a: BigInt = a.parse().expect("reference value");
            c.ok(Some(n), "iso_semirigid", "oracle <= semirigid bound", a <= b.floored);
        }
    }
    c.done()
}

/// Fixed points of the recursion against explicit enumeration.
pub fn burnside_vs_brute(max_r: usize) -> CheckOutcome {
    let mut c = Check::new("burnside_vs_brute_force");
    for r in 1..=max_r {
        for lambda in partitions_of(r) {
            let g = GroupElement::new(lambda.representative(), false).expect("valid permutation");
            for k in 1..=r * r {
                match oracle::fixed_points_brute(r, k, &g) {
                    Ok(brute) => c.eq(
                        Some(r),
                        format!("fixed({lambda}, k={k})"),
                        brute,
                        burnside::fixed_partial_partitions(&lambda, k),
                    ),
                    Err(e) => c.fail(Some(r), format!("fixed({lambda}, k={k})"), e),
                }
            }
        }
    }
    c.done()
}

/// Fixed points of `pi` followed by the twist that keep every block stable
/// under `pi^2`, against the closed form.
pub fn twisted_fixed_points(max_r: usize) -> CheckOutcome {
    let mut c = Check::new("twisted_fixed_points");
    for r in 1..=max_r {
        for lambda in partitions_of(r) {
            for k in 1..=r * r {
                let n = r + k + 1;
                let closed = match bounds::f_pitau(&lambda, n, r) {
                    Ok(v) => v,
                    Err(e) => {
                        c.fail(Some(n), format!("F({lambda})"), e);
                        continue;
                    }
                };
                let pi = lambda.representative();
                match oracle::twisted_square_stable_brute(r, k, &pi) {
                    Ok(brute) => c.eq(Some(n), format!("F({lambda})"), brute, closed.clone()),
                    Err(e) => c.fail(Some(n), format!("F({lambda})"), e),
                }
                let g = GroupElement::new(pi, true).expect("valid permutation");
                if let Ok(semirigid) = oracle::semirigid_fixed_points_brute(r, k, &g) {
                    c.ok(Some(n), format!("F({lambda})"), "semirigid fixed points <= F", semirigid <= closed);
                }
            }
        }
    }
    c.done()
}

/// The ranks 4 and 5 layers of order 7, which the small-rank sweep misses.
pub fn twisted_fixed_points_order_seven() -> CheckOutcome {
    let mut c = Check::new("twisted_fixed_points_order_7");
    for (r, k) in [(4, 1), (4, 2), (5, 1)] {
        for lambda in partitions_of(r) {
            let kind = format!("F({lambda}, k={k})");
            match (
                bounds::f_pitau(&lambda, r + k + 1, r),
                oracle::twisted_square_stable_brute(r, k, &lambda.representative()),
            ) {
                (Ok(closed), Ok(brute)) => c.eq(Some(r + k + 1), kind, brute, closed),
                (Err(e), _) | (_, Err(e)) => c.fail(Some(r + k + 1), kind, e),
            }
        }
    }
    c.done()
}

/// Oracle census against the reference values and its own internal identities.
pub fn census(ns: std::ops::RangeInclusive<usize>, allow_slow: bool) -> CheckOutcome {
    use published as p;
    let mut c = Check::new("oracle_census");
    let series: [(CensusCount, &[&str]); 7] = [
        (CensusCount::Iso, &p::ISO_EXACT),
        (CensusCount::Equivalence, &p::EQUIVALENCE),
        (CensusCount::IsoSemirigid, &p::ISO_SEMIRIGID),
        (CensusCount::SelfdualSemirigid, &p::SELFDUAL_SEMIRIGID),
        (CensusCount::IsoSelfdual, &p::ISO_SELFDUAL),
        (CensusCount::EquivalenceSemirigid, &p::EQUIVALENCE_SEMIRIGID),
        (CensusCount::Presentation, &p::PRESENTATION),
    ];
    for n in ns {
        let report = match oracle::orbit_census(n, allow_slow) {
            Ok(r) => r,
            Err(e) => {
                c.fail(Some(n), "census", e);
                continue;
            }
        };
        for (count, values) in series {
            if let Some(v) = p::at(values, n) {
                c.eq(Some(n), count, v.to_string(), report.get(count).to_string());
            }
        }
        if let Some(v) = p::at(&p::IDENTITY, n) {
            c.eq(Some(n), CensusCount::Identity, v.to_string(), report.get(CensusCount::Identity).to_string());
        }
        let g = |k| report.get(k).clone();
        c.eq(
            Some(n),
            "2 * equivalence",
            g(CensusCount::Iso) + g(CensusCount::IsoSelfdual),
            BigInt::from(2) * g(CensusCount::Equivalence),
        );
        c.eq(
            Some(n),
            "2 * equivalence_semirigid",
            g(CensusCount::IsoSemirigid) + g(CensusCount::SelfdualSemirigid),
            BigInt::from(2) * g(CensusCount::EquivalenceSemirigid),
        );
        c.ok(
            Some(n),
            "iso_rigid",
            "rigid <= semirigid <= iso",
            g(CensusCount::IsoRigid) <= g(CensusCount::IsoSemirigid)
                && g(CensusCount::IsoSemirigid) <= g(CensusCount::Iso),
        );
        match burnside::iso_classes_exact(n) {
            Ok(e) => c.eq(Some(n), "iso vs burnside", e, g(CensusCount::Iso)),
            Err(e) => c.fail(Some(n), "iso vs burnside", e),
        }
    }
    c.done()
}

/// A worked example: a label, the expected exact value and the computed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkedValue {
    pub label: String,
    pub n: usize,
    pub expected: BigRational,
    pub got: BigRational,
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn lam(s: &str) -> IntegerPartition {
    s.parse().expect("valid cycle type")
}

fn int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// The hand-computed examples, each pinned to an exact rational.
pub fn worked_examples(include_order_seven: bool) -> Result<Vec<WorkedValue>> {
    let mut out = Vec::new();
    let mut push = |label: &str, n: usize, expected: BigRational, got: BigRational| {
        out.push(WorkedValue { label: label.to_string(), n, expected, got });
    };

    // order 4, all semirigid
    push("iso bound", 4, q(9, 1), bounds::semirigid_iso_bound(4)?.exact_rational);
    push("iso exact", 4, q(9, 1), int(burnside::iso_classes_exact(4)?));

    // order 5: 13 from rank 2 with d = 1, 2 from the d = 2 friezes, 103 from rank 3
    let b5 = bounds::semirigid_iso_bound(5)?;
    push("rank 2 semirigid part", 5, q(13, 1), b5.rank_total(2));
    let x5 = burnside::non_semirigid_excess(5)?;
    push("d > 1 part", 5, q(2, 1), x5.exact_rational.clone());
    push("rank 3 part", 5, q(103, 1), b5.rank_total(3));
    for (l, v) in [("1^3", q(511, 6)), ("1^1,2^1", q(31, 2)), ("3^1", q(7, 3))] {
        let got = b5.term(&lam(l)).cloned().unwrap_or_default();
        push(&format!("term {l}"), 5, v, got);
    }
    push("iso exact", 5, q(118, 1), int(burnside::iso_classes_exact(5)?));

    // order 6: 4650 + 1 + 20
    push("iso bound", 6, q(4650, 1), int(bounds::semirigid_iso_bound(6)?.floored));
    let x6 = burnside::non_semirigid_excess(6)?;
    for (l, v) in [("2^1", q(1, 1)), ("1^1,2^1", q(20, 1))] {
        push(&format!("excess {l}"), 6, v, x6.term(&lam(l)).cloned().unwrap_or_default());
    }
    push("iso exact", 6, q(4671, 1), int(burnside::iso_classes_exact(6)?));

    if include_order_seven {
        let b7 = bounds::semirigid_iso_bound(7)?;
        push("iso bound", 7, q(2_398_741, 2), b7.exact_rational.clone());
        let x7 = burnside::non_semirigid_excess(7)?;
        let parts = [
            ("1^2,2^1", q(91, 1)),
            ("2^2", q(410, 1)),
            ("4^1", q(10, 1)),
            ("1^1,2^1", q(100, 1)),
            ("3^1", q(7, 1)),
            ("2^1", q(1, 2)),
        ];
        let mut listed = BigRational::zero();
        for (l, v) in parts {
            listed += &v;
            push(&format!("excess {l}"), 7, v, x7.term(&lam(l)).cloned().unwrap_or_default());
        }
        push("excess total", 7, q(1237, 2), x7.exact_rational.clone());
        push("listed excess", 7, x7.exact_rational.clone(), listed);
        push("bound + excess", 7, q(1_199_989, 1), b7.exact_rational + x7.exact_rational);
        push("iso exact", 7, q(1_199_989, 1), int(burnside::iso_classes_exact(7)?));
        for (mu1, mu2, v) in [(2, 1, 91), (0, 2, 410), (1, 1, 100)] {
            push(
                &format!("correction 1^{mu1} 2^{mu2}"),
                7,
                q(v, 1),
                bounds::correction_term_1a2b(mu1, mu2, 7)?,
            );
        }
    }

    // self-dual fixed-point counts
    for (l, n, v) in [("1^2", 4, 7), ("1^2", 5, 7), ("2^1", 5, 7), ("1^3", 5, 63), ("1^1,2^1", 5, 63), ("3^1", 5, 3)] {
        let lambda = lam(l);
        let got = bounds::f_pitau(&lambda, n, lambda.rank())?;
        push(&format!("F({l})"), n, q(v, 1), int(got));
    }
    push("self-dual bound", 5, q(50, 1), int(bounds::selfdual_semirigid_bound(5)?.floored));
    push("equivalence bound", 5, q(83, 1), int(bounds::equivalence_semirigid_bound(5)?.floored));
    push("self-dual bound", 6, q(649, 1), int(bounds::selfdual_semirigid_bound(6)?.floored));
    push("equivalence bound", 6, q(2649, 1), int(bounds::equivalence_semirigid_bound(6)?.floored));

    // commutative
    push("commutative bound", 4, q(5, 1), bounds::commutative_semirigid_bound(4)?.exact_rational);
    push("commutative bound", 5, q(45, 2), bounds::commutative_semirigid_bound(5)?.exact_rational);
    Ok(out)
}

pub fn worked(include_order_seven: bool) -> CheckOutcome {
    let mut c = Check::new("worked_examples");
    match worked_examples(include_order_seven) {
        Ok(values) => {
            for w in values {
                c.eq(Some(w.n), &w.label, format_rational(&w.expected), format_rational(&w.got));
            }
        }
        Err(e) => c.fail(None, "worked examples", e),
    }
    c.done()
}

/// Loads and validates a Stirling cache file.
pub fn stirling_cache(path: &Path) -> CheckOutcome {
    let mut c = Check::new("stirling_cache");
    match std::fs::read(path).map_err(crate::Error::from).and_then(|b| StirlingTable::from_bytes(&b)) {
        Ok(table) => {
            for n in 0..=table.max_n() {
                for k in 0..=n as i64 {
                    c.eq(Some(n), format!("cached S(n, {k})"), stirling2(n, k), table.get(n, k).unwrap_or_default());
                }
            }
        }
        Err(e) => c.fail(None, format!("cache {}", path.display()), e),
    }
    c.done()
}

/// Runs every check for the level. `full` adds the order-6 census (and order 7
/// with `allow_slow`), the exact counts to order 8, and the order-7 excess.
pub fn verify(level: Level, opts: &VerifyOptions<'_>) -> VerifyReport {
    let full = level == Level::Full;
    let mut checks = Vec::new();
    if let Some(path) = opts.cache {
        checks.push(stirling_cache(path));
    }
    checks.push(stirling_identities(12));
    checks.push(identity_count_alternating_form(12));
    checks.push(scaled_stirling_recursion(20));
    checks.push(cycle_statistics(6));
    checks.push(symmetric_cycle_shape(5));
    checks.push(reference_tables(if full { 8 } else { 6 }));
    checks.push(sandwich(if full { 8 } else { 6 }));
    checks.push(burnside_vs_brute(3));
    checks.push(twisted_fixed_points(3));
    if full {
        checks.push(twisted_fixed_points_order_seven());
    }
    let top = match (full, opts.allow_slow) {
        (false, _) => 5,
        (true, false) => 6,
        (true, true) => 7,
    };
    checks.push(census(3..=top, opts.allow_slow));
    checks.push(worked(full));
    let notes = published::KNOWN_CONFLICTS
        .iter()
        .map(|(column, n, printed, used, why)| {
            format!("n = {n}, {column}: printed {printed}, checked against {used} ({why})")
        })
        .collect();
    VerifyReport { level, checks, notes }
}
