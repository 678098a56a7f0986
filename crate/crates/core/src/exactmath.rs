//! Arbitrary-precision combinatorial kernels.
//!
//! Stirling numbers of the second kind live in a process-wide triangular memo
//! that grows on demand. Every other kernel here is either a thin wrapper over
//! that memo (partial partitions, Bell numbers, the scaled Stirling array) or a
//! direct product (factorials, binomials).

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Triangular table of Stirling numbers of the second kind, `rows[n][k] = S(n, k)`
/// for `0 <= k <= n <= max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

const CACHE_MAGIC: &[u8; 8] = b"NILSTIRL";
const CACHE_VERSION: u32 = 1;

impl Default for StirlingTable {
    fn default() -> Self {
        Self::new()
    }
}

impl StirlingTable {
    /// A table holding only `S(0, 0) = 1`.
    pub fn new() -> Self {
        StirlingTable { rows: vec![vec![BigInt::one()]] }
    }

    pub fn with_max(max_n: usize) -> Self {
        let mut table = Self::new();
        table.extend_to(max_n);
        table
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Grows the table by the additive recurrence until row `max_n` exists.
    pub fn extend_to(&mut self, max_n: usize) {
        while self.rows.len() <= max_n {
            let prev = self.rows.last().expect("row 0 always present");
            let n = prev.len();
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::zero());
            for k in 1..=n {
                let carry = if k < n { &prev[k] * k } else { BigInt::zero() };
                row.push(carry + &prev[k - 1]);
            }
            self.rows.push(row);
        }
    }

    /// `S(n, k)` if row `n` is present, treating out-of-range `k` as zero.
    pub fn get(&self, n: usize, k: i64) -> Option<BigInt> {
        let row = self.rows.get(n)?;
        if k < 0 || k as usize > n {
            return Some(BigInt::zero());
        }
        Some(row[k as usize].clone())
    }

    pub fn row(&self, n: usize) -> Option<&[BigInt]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    /// Checks every entry against the recurrence and the boundary values.
    /// Returns the first offending `(n, k)`.
    pub fn validate(&self) -> std::result::Result<(), (usize, usize)> {
        if self.rows.first().map(|r| r.as_slice()) != Some(&[BigInt::one()][..]) {
            return Err((0, 0));
        }
        for n in 1..self.rows.len() {
            let row = &self.rows[n];
            let prev = &self.rows[n - 1];
            if row.len() != n + 1 {
                return Err((n, row.len()));
            }
            for k in 0..=n {
                let expected = if k == 0 {
                    BigInt::zero()
                } else {
                    let carry = if k < n { &prev[k] * k } else { BigInt::zero() };
                    carry + &prev[k - 1]
                };
                if row[k] != expected {
                    return Err((n, k));
                }
            }
        }
        Ok(())
    }

    /// Serializes as: magic, big-endian `u32` version, big-endian `u32` max_n,
    /// then every entry row by row as a big-endian `u32` byte length followed by
    /// the big-endian magnitude bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(CACHE_MAGIC);
        out.extend_from_slice(&CACHE_VERSION.to_be_bytes());
        out.extend_from_slice(&(self.max_n() as u32).to_be_bytes());
        for row in &self.rows {
            for value in row {
                let (_, bytes) = value.to_bytes_be();
                let bytes = if value.is_zero() { Vec::new() } else { bytes };
                out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
                out.extend_from_slice(&bytes);
            }
        }
        out
    }

    /// Parses and validates a serialized table. Structural damage and
    /// recurrence violations are both rejected.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let corrupt = |what: String| Error::CorruptCache(what);
        let mut cursor = bytes;
        let mut take = |len: usize| -> Result<&[u8]> {
            if cursor.len() < len {
                return Err(corrupt("truncated".into()));
            }
            let (head, tail) = cursor.split_at(len);
            cursor = tail;
            Ok(head)
        };
        if take(8)? != CACHE_MAGIC {
            return Err(corrupt("bad magic".into()));
        }
        let version = u32::from_be_bytes(take(4)?.try_into().unwrap());
        if version != CACHE_VERSION {
            return Err(corrupt(format!("unsupported version {version}")));
        }
        let max_n = u32::from_be_bytes(take(4)?.try_into().unwrap()) as usize;
        // Each entry needs at least its 4-byte length prefix.
        if max_n > 100_000 {
            return Err(corrupt(format!("implausible max_n {max_n}")));
        }
        let mut rows = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = Vec::with_capacity(n + 1);
            for _ in 0..=n {
                let len = u32::from_be_bytes(take(4)?.try_into().unwrap()) as usize;
                let mag = take(len)?;
                row.push(BigInt::from_bytes_be(num_bigint::Sign::Plus, mag));
            }
            rows.push(row);
        }
        if !cursor.is_empty() {
            return Err(corrupt("trailing bytes".into()));
        }
        let table = StirlingTable { rows };
        table
            .validate()
            .map_err(|(n, k)| corrupt(format!("recurrence fails at S({n}, {k})")))?;
        Ok(table)
    }
}

fn global() -> &'static RwLock<StirlingTable> {
    static TABLE: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(StirlingTable::with_max(16)))
}

/// Snapshot of the shared memo.
pub fn memo_snapshot() -> StirlingTable {
    global().read().unwrap().clone()
}

/// Replaces the shared memo with a table that has already passed validation.
pub fn install_memo(table: StirlingTable) -> Result<()> {
    table
        .validate()
        .map_err(|(n, k)| Error::CorruptCache(format!("recurrence fails at S({n}, {k})")))?;
    *global().write().unwrap() = table;
    Ok(())
}

/// Drops the shared memo back to its initial size.
pub fn clear_memo() {
    *global().write().unwrap() = StirlingTable::with_max(16);
}

/// Ensures rows up to `max_n` are memoized.
pub fn presize(max_n: usize) {
    if global().read().unwrap().max_n() >= max_n {
        return;
    }
    global().write().unwrap().extend_to(max_n);
}

/// Stirling number of the second kind `S(n, k)`; zero whenever `k < 0`, `k > n`,
/// or `k = 0 < n`.
pub fn stirling2(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    if let Some(v) = global().read().unwrap().get(n, k) {
        return v;
    }
    let mut table = global().write().unwrap();
    table.extend_to(n);
    table.get(n, k).expect("row was just extended")
}

/// Number of partial partitions of an `n`-set into `k` non-empty blocks.
pub fn partial_partition_count(n: usize, k: usize) -> BigInt {
    stirling2(n + 1, k as i64 + 1)
}

pub fn bell(m: usize) -> BigInt {
    presize(m);
    let table = global().read().unwrap();
    table.row(m).expect("presized").iter().sum()
}

/// `2^(p - q) * S(p, q)`: self-dual partitions of a doubled `p`-set into `2q`
/// blocks that never join an element with its mirror.
pub fn scaled_stirling(p: usize, q: usize) -> BigInt {
    if q > p {
        return BigInt::zero();
    }
    stirling2(p, q as i64) << (p - q)
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
