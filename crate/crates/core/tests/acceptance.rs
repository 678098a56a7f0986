//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Values are compared exactly; the only tolerances are the
//! wall-clock budgets below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use nilcount_core::bounds::{self, format_rational, CountKind};
use nilcount_core::burnside;
use nilcount_core::cycletype::{partitions_of, IntegerPartition};
use nilcount_core::exactmath::stirling2;
use nilcount_core::oracle::{self, CensusCount, GroupElement};
use nilcount_core::published as p;
use nilcount_core::table::{run_table, Column, TableId, TableOptions, TableSpec};
use nilcount_core::verify;

const FORMULA_BUDGET: Duration = Duration::from_secs(1);
const EXACT_BUDGET: Duration = Duration::from_secs(60);
const EXACT_STRETCH_BUDGET: Duration = Duration::from_secs(3600);
const CENSUS_SIX_BUDGET: Duration = Duration::from_secs(300);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn expect_eq(what: impl std::fmt::Display, expected: &str, got: &str) -> Result<(), String> {
    if expected == got {
        Ok(())
    } else {
        Err(format!("{what}: expected {expected}, got {got}"))
    }
}

fn within(budget: Duration, start: Instant, what: &str) -> Result<Duration, String> {
    let took = start.elapsed();
    if took <= budget {
        Ok(took)
    } else {
        Err(format!("{what} took {took:?}, budget {budget:?}"))
    }
}

/// Every cell of the table's formula columns against the printed series.
fn table_columns(id: TableId, series: &[(CountKind, &[&'static str])]) -> Outcome {
    let start = Instant::now();
    let t = run_table(&TableSpec::new(id, 3..=10), TableOptions::default()).map_err(|e| e.to_string())?;
    let took = within(FORMULA_BUDGET, start, "table")?;
    let mut failures = Vec::new();
    let mut cells = 0;
    for (kind, values) in series {
        for n in 3..=10 {
            let expected = p::at(values, n).expect("series covers 3..=10");
            let got = t.get(n, Column::Formula(*kind)).and_then(|r| r.value.clone()).unwrap_or_default();
            cells += 1;
            if let Err(e) = expect_eq(format!("n = {n} {kind}"), expected, &got) {
                failures.push(e);
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{cells} cells exact in {took:?}"))
    } else {
        Err(format!("{} of {cells} cells differ: {}", failures.len(), failures.join("; ")))
    }
}

fn criterion_1() -> Outcome {
    table_columns(TableId::T1, &[(CountKind::Identity, &p::IDENTITY), (CountKind::Presentation, &p::PRESENTATION)])
}

fn criterion_2() -> Outcome {
    table_columns(
        TableId::T2,
        &[
            (CountKind::CommutativeIdentity, &p::COMMUTATIVE_IDENTITY),
            (CountKind::CommutativePresentation, &p::COMMUTATIVE_PRESENTATION),
        ],
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for n in 3..=10 {
        let got = bounds::semirigid_iso_bound(n).map_err(|e| e.to_string())?.floored.to_string();
        expect_eq(format!("n = {n}"), p::at(&p::SEMIRIGID_ISO_BOUND, n).unwrap(), &got)?;
    }
    let took = within(FORMULA_BUDGET, start, "semirigid bound")?;
    Ok(format!("8 values exact in {took:?}"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    for n in 3..=8 {
        let got = burnside::iso_classes_exact(n).map_err(|e| e.to_string())?.to_string();
        expect_eq(format!("n = {n}"), p::at(&p::ISO_EXACT, n).unwrap(), &got)?;
    }
    let core = within(EXACT_BUDGET, start, "orders 3..=8")?;
    let stretch = Instant::now();
    for n in 9..=10 {
        let got = burnside::iso_classes_exact(n).map_err(|e| e.to_string())?.to_string();
        expect_eq(format!("n = {n}"), p::at(&p::ISO_EXACT, n).unwrap(), &got)?;
    }
    let extra = within(EXACT_STRETCH_BUDGET, stretch, "orders 9, 10")?;
    Ok(format!("orders 3..=8 in {core:?}, orders 9 and 10 in {extra:?}"))
}

fn criterion_5() -> Outcome {
    table_columns(TableId::T4, &[(CountKind::SelfdualSemirigidBound, &p::SELFDUAL_SEMIRIGID_BOUND)])?;
    table_columns(TableId::T5, &[(CountKind::EquivalenceSemirigidBound, &p::EQUIVALENCE_SEMIRIGID_BOUND)])
        .map(|s| format!("16 cells exact; {s}"))
}

fn census_matches(n: usize, allow_slow: bool, expected: &[(CensusCount, &[&'static str])]) -> Result<Duration, String> {
    let start = Instant::now();
    let report = oracle::orbit_census(n, allow_slow).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    for (count, series) in expected {
        if let Some(v) = p::at(series, n) {
            expect_eq(format!("n = {n} {count}"), v, &report.get(*count).to_string())?;
        }
    }
    Ok(took)
}

fn criterion_6() -> Outcome {
    let series: [(CensusCount, &[&str]); 6] = [
        (CensusCount::Iso, &p::ISO_EXACT),
        (CensusCount::Equivalence, &p::EQUIVALENCE),
        (CensusCount::IsoSemirigid, &p::ISO_SEMIRIGID),
        (CensusCount::SelfdualSemirigid, &p::SELFDUAL_SEMIRIGID),
        (CensusCount::IsoSelfdual, &p::ISO_SELFDUAL),
        (CensusCount::EquivalenceSemirigid, &p::EQUIVALENCE_SEMIRIGID),
    ];
    let mut six = Duration::ZERO;
    for n in 3..=6 {
        six = census_matches(n, false, &series)?;
    }
    if six > CENSUS_SIX_BUDGET {
        return Err(format!("order 6 census took {six:?}, budget {CENSUS_SIX_BUDGET:?}"));
    }
    let seven = census_matches(7, true, &series)?;
    Ok(format!("orders 3..=6 exact (order 6 in {six:?}); order 7 exact in {seven:?}"))
}

fn criterion_7() -> Outcome {
    let mut cases = 0;
    for r in 1..=3 {
        for lambda in partitions_of(r) {
            let g = GroupElement::new(lambda.representative(), false).unwrap();
            for k in 1..=r * r {
                let brute = oracle::fixed_points_brute(r, k, &g).map_err(|e| e.to_string())?;
                let dp = burnside::fixed_partial_partitions(&lambda, k);
                expect_eq(format!("{lambda}, k = {k}"), &brute.to_string(), &dp.to_string())?;
                cases += 1;
            }
        }
    }
    let id = GroupElement::identity(2);
    let swap = GroupElement::new(vec![1, 0], false).unwrap();
    for (k, g, v) in [(1, &id, "15"), (1, &swap, "3"), (2, &id, "25"), (2, &swap, "5")] {
        let got = oracle::fixed_points_brute(2, k, g).map_err(|e| e.to_string())?;
        expect_eq(format!("r = 2, k = {k}, {:?}", g.pi), v, &got.to_string())?;
        let lambda: IntegerPartition = if g.is_identity() { "1^2" } else { "2^1" }.parse().unwrap();
        expect_eq(format!("dp r = 2, k = {k}"), v, &burnside::fixed_partial_partitions(&lambda, k).to_string())?;
    }
    Ok(format!("{cases} (cycle type, rank) pairs agree; r = 2 values 15, 3, 25, 5"))
}

fn criterion_8() -> Outcome {
    let values = verify::worked_examples(true).map_err(|e| e.to_string())?;
    for w in &values {
        expect_eq(
            format!("n = {} {}", w.n, w.label),
            &format_rational(&w.expected),
            &format_rational(&w.got),
        )?;
    }
    // the order-5 rank-3 sum as written term by term
    let terms = [(10, 2, 6), (6, 2, 2), (4, 2, 3)];
    let sum: BigRational = terms
        .iter()
        .map(|&(a, b, w)| BigRational::new(stirling2(a, b), BigInt::from(w)))
        .sum();
    expect_eq("511/6 + 31/2 + 7/3", "103", &format_rational(&sum))?;
    Ok(format!("{} worked values exact", values.len() + 1))
}

fn criterion_9() -> Outcome {
    let checks = [
        verify::stirling_identities(12),
        verify::identity_count_alternating_form(12),
        verify::scaled_stirling_recursion(20),
        verify::cycle_statistics(6),
        verify::symmetric_cycle_shape(5),
    ];
    let mut cases = 0;
    for c in &checks {
        if let Some(m) = &c.mismatch {
            return Err(format!("{}: {m}", c.name));
        }
        cases += c.cases;
    }

    // flags are orbit invariants at every order up to 5
    for n in 3..=5 {
        for r in (1..=n - 2).filter(|r| r * r >= n - r - 1) {
            let group = oracle::permutations(r);
            for part in oracle::enumerate(r, n - r - 1).map_err(|e| e.to_string())? {
                let flags = oracle::classify(&part);
                if flags.commutative && !flags.selfdual {
                    return Err(format!("{part} commutative but not self-dual"));
                }
                for pi in &group {
                    let moved = oracle::act(&part, &GroupElement::new(pi.clone(), false).unwrap())
                        .map_err(|e| e.to_string())?;
                    let g = oracle::classify(&moved);
                    if (g.rigid, g.semirigid, g.selfdual) != (flags.rigid, flags.semirigid, flags.selfdual) {
                        return Err(format!("{part} and its image under {pi:?} classify differently"));
                    }
                    cases += 1;
                }
            }
        }
    }

    for n in 3..=6 {
        let c = oracle::orbit_census(n, false).map_err(|e| e.to_string())?;
        let lhs = BigInt::from(2) * c.get(CensusCount::Equivalence);
        let rhs = c.get(CensusCount::Iso) + c.get(CensusCount::IsoSelfdual);
        expect_eq(format!("n = {n} 2 * equivalence"), &rhs.to_string(), &lhs.to_string())?;
        cases += 1;
    }
    Ok(format!("{cases} cases exact"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("T1 identity and presentation counts", criterion_1),
        ("T2 commutative counts", criterion_2),
        ("T3 semirigid bound", criterion_3),
        ("T3 exact isomorphism counts", criterion_4),
        ("T4 and T5 bound columns", criterion_5),
        ("oracle census", criterion_6),
        ("oracle and Burnside fixed points agree", criterion_7),
        ("worked examples", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
