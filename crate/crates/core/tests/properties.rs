use num_bigint::BigInt;
use proptest::prelude::*;

use nilcount_core::bounds::{self, CountKind};
use nilcount_core::burnside;
use nilcount_core::cycletype::{beta, delta, gamma, partitions_of, weight, IntegerPartition};
use nilcount_core::exactmath::{bell, factorial, partial_partition_count, stirling2};
use nilcount_core::oracle::{self, act, classify, enumerate, CensusCount, GroupElement};
use nilcount_core::table::{build_table, Column, CountTable, TableOptions};

fn lambda_strategy() -> impl Strategy<Value = IntegerPartition> {
    prop::collection::vec(1usize..=6, 1..=5)
        .prop_map(|lengths| IntegerPartition::from_lengths(&lengths).unwrap())
}

proptest! {
    #[test]
    fn display_parse_round_trip(lambda in lambda_strategy()) {
        let back: IntegerPartition = lambda.to_string().parse().unwrap();
        prop_assert_eq!(back, lambda);
    }

    #[test]
    fn gamma_is_half_beta_plus_delta(lambda in lambda_strategy()) {
        prop_assert_eq!(2 * gamma(&lambda), beta(&lambda) + delta(&lambda));
        prop_assert!(delta(&lambda) <= beta(&lambda));
    }

    #[test]
    fn representative_has_its_cycle_type(lambda in lambda_strategy()) {
        let pi = lambda.representative();
        let mut seen = vec![false; pi.len()];
        let mut lengths = Vec::new();
        for start in 0..pi.len() {
            let mut x = start;
            let mut len = 0;
            while !seen[x] {
                seen[x] = true;
                x = pi[x];
                len += 1;
            }
            if len > 0 {
                lengths.push(len);
            }
        }
        prop_assert_eq!(IntegerPartition::from_lengths(&lengths).unwrap(), lambda);
    }

    #[test]
    fn fixed_points_sum_over_ranks(r in 1usize..=3, idx in 0usize..3) {
        let parts = partitions_of(r);
        let lambda = &parts[idx % parts.len()];
        let total: BigInt = (0..=r * r).map(|k| burnside::fixed_partial_partitions(lambda, k)).sum();
        // modulus 1 everywhere already gives every partition of the c-cycles
        prop_assert!(total >= bell(beta(lambda) + 1));
        if lambda.is_identity() {
            prop_assert_eq!(total, bell(r * r + 1));
        }
    }

    #[test]
    fn stirling_row_sums_to_bell(m in 0usize..40) {
        let row: BigInt = (0..=m as i64).map(|k| stirling2(m, k)).sum();
        prop_assert_eq!(row, bell(m));
    }
}

#[test]
fn class_sizes_sum_to_factorial() {
    for r in 1..=8 {
        let count: BigInt = partitions_of(r).iter().map(|l| factorial(r) / weight(l)).sum();
        assert_eq!(count, factorial(r));
    }
}

#[test]
fn stream_sizes_match_partial_partition_counts() {
    for r in 1..=4 {
        for k in 1..=r * r {
            if r == 4 && k > 2 {
                break;
            }
            let items = enumerate(r, k).unwrap().count();
            assert_eq!(BigInt::from(items), partial_partition_count(r * r, k), "r = {r}, k = {k}");
        }
    }
}

/// Classification is an orbit invariant, and commutative implies self-dual.
#[test]
fn flags_are_constant_on_orbits() {
    for n in 3..=5 {
        for r in (1..=n - 2).filter(|r| r * r >= n - r - 1) {
            let k = n - r - 1;
            let group = oracle::permutations(r);
            for p in enumerate(r, k).unwrap() {
                let flags = classify(&p);
                if flags.commutative {
                    assert!(flags.selfdual, "{p}");
                }
                for pi in &group {
                    for twisted in [false, true] {
                        let q = act(&p, &GroupElement::new(pi.clone(), twisted).unwrap()).unwrap();
                        let g = classify(&q);
                        assert_eq!(
                            (g.rigid, g.semirigid, g.selfdual, g.stabilizer),
                            (flags.rigid, flags.semirigid, flags.selfdual, flags.stabilizer),
                            "{p} under {pi:?}"
                        );
                    }
                }
            }
        }
    }
}

/// Summing fixed points over `S_r` gives `r!` times the number of orbits.
#[test]
fn burnside_agrees_with_census_per_rank() {
    for n in 3..=6 {
        let census = oracle::orbit_census(n, false).unwrap();
        for r in (1..=(n - 2).min(3)).filter(|r| r * r >= n - r - 1) {
            let k = n - r - 1;
            let mut total = BigInt::from(0);
            for pi in oracle::permutations(r) {
                total += oracle::fixed_points_brute(r, k, &GroupElement::new(pi, false).unwrap()).unwrap();
            }
            assert_eq!(total, factorial(r) * &census.per_rank[&r][&CensusCount::Iso], "n = {n}, r = {r}");
        }
    }
}

#[test]
fn census_orderings() {
    for n in 3..=6 {
        let c = oracle::orbit_census(n, false).unwrap();
        let g = |k| c.get(k).clone();
        assert!(g(CensusCount::IsoRigid) <= g(CensusCount::IsoSemirigid));
        assert!(g(CensusCount::IsoSemirigid) <= g(CensusCount::Iso));
        assert!(g(CensusCount::Equivalence) <= g(CensusCount::Iso));
        assert!(g(CensusCount::Iso) <= BigInt::from(2) * g(CensusCount::Equivalence));
        assert_eq!(g(CensusCount::Presentation), bounds::t_presentation(n).unwrap());
        assert_eq!(g(CensusCount::Identity), bounds::t_identity(n).unwrap());
        let sandwich = bounds::semirigid_iso_bound(n).unwrap().floored;
        assert!(g(CensusCount::IsoSemirigid) <= sandwich);
        assert!(sandwich <= burnside::iso_classes_exact(n).unwrap());
    }
}

#[test]
fn formula_columns_are_deterministic_and_round_trip() {
    let columns: Vec<Column> = CountKind::ALL.iter().copied().map(Column::Formula).collect();
    let opts = TableOptions { allow_slow: false, terms: true };
    let a = build_table("all", &columns, 3..=9, opts).unwrap();
    let b = build_table("all", &columns, 3..=9, opts).unwrap();
    assert_eq!(a.to_csv(true), b.to_csv(true));
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(CountTable::from_json(&a.to_json()).unwrap(), a);
    for record in &a.records {
        let value = record.value.as_deref().unwrap();
        assert!(value.parse::<BigInt>().is_ok(), "{value}");
    }
}
