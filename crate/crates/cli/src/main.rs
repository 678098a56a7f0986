use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nilcount_core::bounds::{format_rational, CountKind};
use nilcount_core::burnside;
use nilcount_core::cycletype::{CycleStats, IntegerPartition};
use nilcount_core::exactmath::{self, StirlingTable};
use nilcount_core::oracle::{self, CensusCount, ClassificationReport, GroupElement};
use nilcount_core::table::{self, Column, CountTable, TableId, TableOptions, TableSpec};
use nilcount_core::verify::{self, Level, VerifyOptions};

/// Counts 3-nilpotent semigroups: closed forms, bounds, exact Burnside
/// counts and a brute-force oracle.
#[derive(Parser, Debug)]
#[command(name = "nilcount", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Run the oracle at order 7.
    #[arg(long, global = true)]
    allow_slow: bool,

    /// Stirling cache file, loaded before and written after the run.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Regenerate one of the five reference tables.
    Table {
        /// T1 .. T5.
        id: TableId,
        #[arg(long, default_value = "3..10")]
        n: String,
        /// Print unfloored values as p/q.
        #[arg(long)]
        rational: bool,
        /// Append the per-(r, lambda) summands.
        #[arg(long)]
        terms: bool,
    },
    /// Evaluate one closed-form series.
    Bounds {
        #[arg(long)]
        kind: CountKind,
        #[arg(long, default_value = "3..10")]
        n: String,
        #[arg(long)]
        rational: bool,
        #[arg(long)]
        terms: bool,
    },
    /// Exact isomorphism-class counts.
    Exact {
        #[arg(long, default_value = "3..10")]
        n: String,
        /// Split each total by generator rank.
        #[arg(long)]
        per_rank: bool,
    },
    /// Fixed points of a cycle type on rank-k partial partitions.
    Fixed {
        #[arg(long)]
        lambda: IntegerPartition,
        #[arg(long)]
        k: usize,
    },
    /// Brute-force census.
    Oracle(OracleArgs),
    /// Cycle-type statistics as JSON.
    Stats {
        #[arg(long)]
        lambda: IntegerPartition,
    },
    /// Cross-check everything; nonzero exit on any mismatch.
    Verify {
        #[arg(default_value = "fast")]
        level: Level,
    },
    /// Manage a Stirling cache file.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct OracleArgs {
    #[command(subcommand)]
    fixed: Option<OracleFixed>,
    #[arg(long)]
    n: Option<usize>,
    /// Report format; overrides --format.
    #[arg(long, value_enum)]
    report: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum OracleFixed {
    /// Count enumerated partial partitions fixed by one group element.
    Fixed {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        /// Cycles on 0..r, e.g. "(0 1)(2 3)"; empty for the identity.
        #[arg(long, default_value = "")]
        perm: String,
        /// Follow the permutation with the twist.
        #[arg(long)]
        twist: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Fill the Stirling table up to --max-n and write it.
    Save {
        path: PathBuf,
        #[arg(long, default_value_t = 128)]
        max_n: usize,
    },
    /// Validate a cache file and install it.
    Load { path: PathBuf },
    /// Delete a cache file.
    Clear { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let cache = match (&cli.command, &cli.cache) {
        (Command::Cache { .. } | Command::Verify { .. }, _) | (_, None) => None,
        (_, Some(path)) => Some(warm_cache(path)),
    };

    let mut out = String::new();
    let code = dispatch(&cli, &mut out)?;
    std::io::stdout().write_all(out.as_bytes())?;

    if let (Some(false), Some(path)) = (cache, &cli.cache) {
        write_cache(path)?;
    }
    Ok(code)
}

/// Loads a cache file if present and sound; returns whether it was used.
fn warm_cache(path: &Path) -> bool {
    let Ok(bytes) = fs::read(path) else { return false };
    match StirlingTable::from_bytes(&bytes).and_then(exactmath::install_memo) {
        Ok(()) => true,
        Err(e) => {
            eprintln!("warning: ignoring cache {}: {e}; recomputing", path.display());
            exactmath::clear_memo();
            false
        }
    }
}

fn write_cache(path: &Path) -> Result<()> {
    let bytes = exactmath::memo_snapshot().to_bytes();
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<ExitCode> {
    let opts = |terms| TableOptions { allow_slow: cli.allow_slow, terms };
    match &cli.command {
        Command::Table { id, n, rational, terms } => {
            let spec = TableSpec::new(*id, table::parse_range(n)?);
            emit(out, cli.format, &table::run_table(&spec, opts(*terms))?, *rational);
        }
        Command::Bounds { kind, n, rational, terms } => {
            let t = table::build_table(kind.name(), &[Column::Formula(*kind)], checked_range(n)?, opts(*terms))?;
            emit(out, cli.format, &t, *rational);
        }
        Command::Exact { n, per_rank } => exact(out, cli.format, checked_range(n)?, *per_rank)?,
        Command::Fixed { lambda, k } => {
            let value = burnside::fixed_partial_partitions(lambda, *k);
            match cli.format {
                Format::Csv => out.push_str(&format!("lambda,k,fixed\n\"{lambda}\",{k},{value}\n")),
                Format::Json => out.push_str(&format!(
                    "{{\"lambda\": \"{lambda}\", \"k\": {k}, \"fixed\": \"{value}\"}}\n"
                )),
            }
        }
        Command::Oracle(args) => oracle_cmd(out, cli, args)?,
        Command::Stats { lambda } => {
            out.push_str(&serde_json::to_string_pretty(&CycleStats::of(lambda))?);
            out.push('\n');
        }
        Command::Verify { level } => {
            let report = verify::verify(
                *level,
                &VerifyOptions { allow_slow: cli.allow_slow, cache: cli.cache.as_deref() },
            );
            match cli.format {
                Format::Csv => out.push_str(&report.render()),
                Format::Json => {
                    out.push_str(&serde_json::to_string_pretty(&report)?);
                    out.push('\n');
                }
            }
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Cache { action } => return cache_cmd(out, action),
    }
    Ok(ExitCode::SUCCESS)
}

fn checked_range(s: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let range = table::parse_range(s)?;
    if *range.start() < 3 {
        bail!("invalid range {s}: orders start at 3");
    }
    Ok(range)
}

fn emit(out: &mut String, format: Format, t: &CountTable, rational: bool) {
    match format {
        Format::Csv => out.push_str(&t.to_csv(rational)),
        Format::Json => out.push_str(&t.to_json()),
    }
}

fn exact(out: &mut String, format: Format, ns: std::ops::RangeInclusive<usize>, per_rank: bool) -> Result<()> {
    if !per_rank {
        let t = table::build_table("iso_exact", &[Column::Formula(CountKind::IsoExact)], ns, TableOptions::default())?;
        emit(out, format, &t, false);
        return Ok(());
    }
    let mut rows = Vec::new();
    for n in ns {
        let terms = burnside::iso_classes_terms(n)?;
        for r in 1..=n - 2 {
            rows.push((n, r, format_rational(&terms.rank_total(r))));
        }
    }
    match format {
        Format::Csv => {
            out.push_str("n,r,iso_exact\n");
            for (n, r, v) in rows {
                out.push_str(&format!("{n},{r},{v}\n"));
            }
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .into_iter()
                .map(|(n, r, v)| serde_json::json!({ "n": n, "r": r, "value": v }))
                .collect();
            out.push_str(&serde_json::to_string_pretty(&rows)?);
            out.push('\n');
        }
    }
    Ok(())
}

fn oracle_cmd(out: &mut String, cli: &Cli, args: &OracleArgs) -> Result<()> {
    if let Some(OracleFixed::Fixed { r, k, perm, twist }) = &args.fixed {
        let g = GroupElement::parse_cycles(*r, perm, *twist)?;
        let value = oracle::fixed_points_brute(*r, *k, &g)?;
        match cli.format {
            Format::Csv => out.push_str(&format!("r,k,fixed\n{r},{k},{value}\n")),
            Format::Json => out.push_str(&format!("{{\"r\": {r}, \"k\": {k}, \"fixed\": \"{value}\"}}\n")),
        }
        return Ok(());
    }
    let Some(n) = args.n else { bail!("oracle needs --n or the fixed subcommand") };
    let report = oracle::orbit_census(n, cli.allow_slow)?;
    match args.report.unwrap_or(cli.format) {
        Format::Csv => out.push_str(&census_csv(&report)),
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(&census_json(&report))?);
            out.push('\n');
        }
    }
    Ok(())
}

fn census_csv(report: &ClassificationReport) -> String {
    let mut s = String::from("n,r");
    for c in CensusCount::ALL {
        s.push(',');
        s.push_str(c.name());
    }
    s.push('\n');
    let mut row = |r: &str, counts: &BTreeMap<CensusCount, _>| {
        s.push_str(&format!("{},{r}", report.n));
        for c in CensusCount::ALL {
            s.push_str(&format!(",{}", counts[&c]));
        }
        s.push('\n');
    };
    for (r, counts) in &report.per_rank {
        row(&r.to_string(), counts);
    }
    row("all", &report.counts);
    s
}

fn counts_json<V: std::fmt::Display>(m: &BTreeMap<CensusCount, V>) -> serde_json::Value {
    CensusCount::ALL
        .iter()
        .map(|c| (c.name().to_string(), serde_json::Value::String(m[c].to_string())))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn census_json(report: &ClassificationReport) -> serde_json::Value {
    let per_rank: serde_json::Map<_, _> =
        report.per_rank.iter().map(|(r, m)| (r.to_string(), counts_json(m))).collect();
    serde_json::json!({ "n": report.n, "counts": counts_json(&report.counts), "per_rank": per_rank })
}

fn cache_cmd(out: &mut String, action: &CacheAction) -> Result<ExitCode> {
    match action {
        CacheAction::Save { path, max_n } => {
            exactmath::presize(*max_n);
            write_cache(path)?;
            out.push_str(&format!("saved Stirling table to row {max_n} in {}\n", path.display()));
        }
        CacheAction::Load { path } => {
            let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            match StirlingTable::from_bytes(&bytes) {
                Ok(t) => {
                    let max_n = t.max_n();
                    exactmath::install_memo(t)?;
                    out.push_str(&format!("loaded Stirling table to row {max_n} from {}\n", path.display()));
                }
                Err(e) => {
                    exactmath::clear_memo();
                    eprintln!("refusing {}: {e}; the table will be recomputed", path.display());
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
        CacheAction::Clear { path } => {
            exactmath::clear_memo();
            match fs::remove_file(path) {
                Ok(()) => out.push_str(&format!("removed {}\n", path.display())),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                    out.push_str(&format!("no cache at {}\n", path.display()))
                }
                Err(e) => return Err(e).with_context(|| format!("removing {}", path.display())),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
