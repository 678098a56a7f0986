//! Labeled count series and their CSV / JSON forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, format_rational, BoundResult, CountKind};
use crate::burnside;
use crate::error::{Error, Result};
use crate::oracle::{self, CensusCount, ClassificationReport, CENSUS_CAP, CENSUS_SLOW_CAP};

/// A table column: a closed-form series or an oracle census count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    Formula(CountKind),
    Oracle(CensusCount),
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Column::Formula(k) => write!(f, "{k}"),
            Column::Oracle(c) => write!(f, "oracle_{c}"),
        }
    }
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().strip_prefix("oracle_") {
            Some(rest) => rest.parse().map(Column::Oracle),
            None => s.parse().map(Column::Formula),
        }
    }
}

impl Serialize for Column {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Column {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "T1" | "1" => Ok(TableId::T1),
            "T2" | "2" => Ok(TableId::T2),
            "T3" | "3" => Ok(TableId::T3),
            "T4" | "4" => Ok(TableId::T4),
            "T5" | "5" => Ok(TableId::T5),
            _ => Err(Error::Precondition(format!("unknown table {s:?}"))),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSpec {
    pub table_id: TableId,
    pub n_range: RangeInclusive<usize>,
    pub columns: Vec<Column>,
}

impl TableSpec {
    pub fn new(table_id: TableId, n_range: RangeInclusive<usize>) -> Self {
        use CensusCount as C;
        use Column::{Formula as F, Oracle as O};
        use CountKind as K;
        let columns = match table_id {
            TableId::T1 => vec![F(K::Identity), F(K::Presentation)],
            TableId::T2 => vec![F(K::CommutativeIdentity), F(K::CommutativePresentation)],
            TableId::T3 => vec![O(C::IsoSemirigid), F(K::SemirigidIsoBound), F(K::IsoExact)],
            TableId::T4 => {
                vec![O(C::SelfdualSemirigid), F(K::SelfdualSemirigidBound), O(C::IsoSelfdual)]
            }
            TableId::T5 => vec![
                O(C::EquivalenceSemirigid),
                F(K::EquivalenceSemirigidBound),
                O(C::Equivalence),
            ],
        };
        TableSpec { table_id, n_range, columns }
    }
}

/// Parses `a..b`, `a..=b`, or a single `a` into an inclusive range.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::InvalidRange(s.to_string());
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// One cell of a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: usize,
    pub kind: Column,
    /// Exact decimal value; `None` where the column is unavailable.
    pub value: Option<String>,
    /// Unfloored value as `p/q` for rational-valued columns.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
}

/// One `(r, lambda)` summand, for `--terms` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub n: usize,
    pub kind: Column,
    pub r: usize,
    pub lambda: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub title: String,
    pub columns: Vec<Column>,
    pub records: Vec<OutputRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<TermRecord>,
}

impl CountTable {
    pub fn ns(&self) -> Vec<usize> {
        let mut ns: Vec<usize> = self.records.iter().map(|r| r.n).collect();
        ns.dedup();
        ns
    }

    pub fn get(&self, n: usize, column: Column) -> Option<&OutputRecord> {
        self.records.iter().find(|r| r.n == n && r.kind == column)
    }

    /// Header `n,<col>,...`, one row per `n`, LF endings; unavailable cells are
    /// `-`. With `rational`, rational-valued cells print as `p/q`.
    pub fn to_csv(&self, rational: bool) -> String {
        let mut out = String::from("n");
        for c in &self.columns {
            out.push(',');
            out.push_str(&c.to_string());
        }
        out.push('\n');
        for n in self.ns() {
            out.push_str(&n.to_string());
            for &c in &self.columns {
                out.push(',');
                let cell = self.get(n, c).and_then(|r| {
                    if rational {
                        r.rational.clone().or_else(|| r.value.clone())
                    } else {
                        r.value.clone()
                    }
                });
                out.push_str(cell.as_deref().unwrap_or("-"));
            }
            out.push('\n');
        }
        if !self.terms.is_empty() {
            out.push_str("\nn,kind,r,lambda,term\n");
            for t in &self.terms {
                out.push_str(&format!("{},{},{},\"{}\",{}\n", t.n, t.kind, t.r, t.lambda, t.value));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Precondition(format!("bad table JSON: {e}")))
    }
}

/// Value of a formula column at `n`: the integer, plus the exact rational when
/// the series is rational-valued, plus the summands when there are any.
pub fn compute_formula(kind: CountKind, n: usize) -> Result<(BigInt, Option<BigRational>, Option<BoundResult>)> {
    let bound = |b: BoundResult| (b.floored.clone(), Some(b.exact_rational.clone()), Some(b));
    Ok(match kind {
        CountKind::Identity => (bounds::t_identity(n)?, None, None),
        CountKind::Presentation => (bounds::t_presentation(n)?, None, None),
        CountKind::CommutativeIdentity => (bounds::commutative_identity(n)?, None, None),
        CountKind::CommutativePresentation => (bounds::commutative_presentation(n)?, None, None),
        CountKind::RankStratified => (bounds::rank_stratified_presentation(n)?, None, None),
        CountKind::TnOverNfact => {
            let q = bounds::tn_over_nfact_lower_bound(n)?;
            (q.floor().to_integer(), Some(q), None)
        }
        CountKind::SemirigidIsoBound => bound(bounds::semirigid_iso_bound(n)?),
        CountKind::CommutativeSemirigidBound => bound(bounds::commutative_semirigid_bound(n)?),
        CountKind::SelfdualSemirigidBound => bound(bounds::selfdual_semirigid_bound(n)?),
        CountKind::EquivalenceSemirigidBound => bound(bounds::equivalence_semirigid_bound(n)?),
        CountKind::IsoExact => {
            let v = burnside::iso_classes_exact(n)?;
            (v, None, Some(burnside::iso_classes_terms(n)?))
        }
    })
}

/// Options shared by the table builders.
#[derive(Clone, Copy, Debug, Default)]
pub struct TableOptions {
    /// Run the oracle at order 7.
    pub allow_slow: bool,
    /// Keep per-`(r, lambda)` summands.
    pub terms: bool,
}

/// Builds a table over `ns` for the given columns. Oracle cells past the
/// census horizon come back as `None`.
pub fn build_table(
    title: &str,
    columns: &[Column],
    ns: RangeInclusive<usize>,
    opts: TableOptions,
) -> Result<CountTable> {
    let oracle_cap = if opts.allow_slow { CENSUS_SLOW_CAP } else { CENSUS_CAP };
    let wants_oracle = columns.iter().any(|c| matches!(c, Column::Oracle(_)));
    let mut census: BTreeMap<usize, ClassificationReport> = BTreeMap::new();
    let mut records = Vec::new();
    let mut terms = Vec::new();
    for n in ns {
        if wants_oracle && n <= oracle_cap && n >= 3 {
            census.insert(n, oracle::orbit_census(n, opts.allow_slow)?);
        }
        for &column in columns {
            let record = match column {
                Column::Formula(kind) => {
                    let (value, rational, detail) = compute_formula(kind, n)?;
                    if opts.terms {
                        for t in detail.iter().flat_map(|b| &b.per_rank_terms) {
                            terms.push(TermRecord {
                                n,
                                kind: column,
                                r: t.r,
                                lambda: t.lambda.to_string(),
                                value: format_rational(&t.value),
                            });
                        }
                    }
                    OutputRecord {
                        n,
                        kind: column,
                        value: Some(value.to_string()),
                        rational: rational.as_ref().map(format_rational),
                    }
                }
                Column::Oracle(count) => OutputRecord {
                    n,
                    kind: column,
                    value: census.get(&n).map(|c| c.get(count).to_string()),
                    rational: None,
                },
            };
            records.push(record);
        }
    }
    Ok(CountTable { title: title.to_string(), columns: columns.to_vec(), records, terms })
}

pub fn run_table(spec: &TableSpec, opts: TableOptions) -> Result<CountTable> {
    if *spec.n_range.start() < 3 {
        return Err(Error::InvalidRange(format!(
            "{}..{} (tables start at n = 3)",
            spec.n_range.start(),
            spec.n_range.end()
        )));
    }
    build_table(&spec.table_id.to_string(), &spec.columns, spec.n_range.clone(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..10").unwrap(), 3..=10);
        assert_eq!(parse_range("3..=10").unwrap(), 3..=10);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("10..3").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn column_names() {
        for s in ["identity", "oracle_iso_semirigid", "iso_exact", "oracle_equivalence"] {
            assert_eq!(s.parse::<Column>().unwrap().to_string(), s);
        }
        assert!("oracle_bogus".parse::<Column>().is_err());
    }

    #[test]
    fn t1_csv() {
        let t = run_table(&TableSpec::new(TableId::T1, 3..=5), TableOptions::default()).unwrap();
        assert_eq!(t.to_csv(false), "n,identity,presentation\n3,6,1\n4,180,15\n5,11720,536\n");
    }

    #[test]
    fn rejects_low_start() {
        assert!(run_table(&TableSpec::new(TableId::T1, 2..=5), TableOptions::default()).is_err());
    }

    #[test]
    fn oracle_cells_past_horizon_are_missing() {
        let t = run_table(&TableSpec::new(TableId::T4, 8..=8), TableOptions::default()).unwrap();
        assert_eq!(t.to_csv(false), "n,oracle_selfdual_semirigid,selfdual_semirigid_bound,oracle_iso_selfdual\n8,-,1851244,-\n");
    }

    #[test]
    fn json_round_trip() {
        let opts = TableOptions { allow_slow: false, terms: true };
        let t = build_table(
            "mixed",
            &[Column::Formula(CountKind::CommutativeSemirigidBound), Column::Oracle(CensusCount::Iso)],
            3..=5,
            opts,
        )
        .unwrap();
        assert_eq!(t.get(5, Column::Formula(CountKind::CommutativeSemirigidBound)).unwrap().rational.as_deref(), Some("45/2"));
        assert_eq!(CountTable::from_json(&t.to_json()).unwrap(), t);
    }
}
