//! Brute-force ground truth: explicit partial partitions of the `r x r` grid.
//!
//! A partial partition is stored as one label per cell of `X x X` in row-major
//! order (`(x, y)` at index `x * r + y`). Label 0 marks the vacant part, labels
//! `1..=k` the blocks, and the labels are canonical: block labels first appear
//! in increasing order along the scan. Two partial partitions are equal exactly
//! when their label arrays are.
//!
//! Orbits under `S_r` (isomorphism) and `S_r x <twist>` (equivalence) are
//! counted by keeping only partitions that are lexicographically minimal in
//! their equivalence orbit, so no seen-set is needed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::check_order;
use crate::error::{Error, Result};
use crate::exactmath::factorial;

/// Largest grid side the `u8` cell labels can represent.
pub const MAX_RANK: usize = 15;
/// Largest order the census runs without `allow_slow`.
pub const CENSUS_CAP: usize = 6;
/// Largest order the census runs at all.
pub const CENSUS_SLOW_CAP: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialPartition {
    r: usize,
    k: usize,
    cells: Vec<u8>,
}

impl PartialPartition {
    /// Builds from arbitrary labels (0 = vacant); labels are canonicalized and
    /// `k` is the number of distinct non-zero labels.
    pub fn from_labels(r: usize, labels: &[u8]) -> Result<Self> {
        if labels.len() != r * r || r == 0 || r > MAX_RANK {
            return Err(Error::Precondition(format!(
                "{} labels do not fit a {r}x{r} grid",
                labels.len()
            )));
        }
        let mut cells = labels.to_vec();
        let k = canonicalize(&mut cells);
        Ok(PartialPartition { r, k, cells })
    }

    /// Builds from explicit blocks of `(x, y)` cells; unlisted cells are vacant.
    pub fn from_blocks(r: usize, blocks: &[&[(usize, usize)]]) -> Result<Self> {
        let mut labels = vec![0u8; r * r];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Precondition("empty block".into()));
            }
            for &(x, y) in block.iter() {
                if x >= r || y >= r || labels[x * r + y] != 0 {
                    return Err(Error::Precondition(format!("bad or repeated cell ({x}, {y})")));
                }
                labels[x * r + y] = b as u8 + 1;
            }
        }
        Self::from_labels(r, &labels)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// Label of cell `(x, y)`.
    pub fn label(&self, x: usize, y: usize) -> u8 {
        self.cells[x * self.r + y]
    }

    /// Blocks as sorted lists of cells, in label order.
    pub fn blocks(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.k];
        for (i, &l) in self.cells.iter().enumerate() {
            if l > 0 {
                out[l as usize - 1].push((i / self.r, i % self.r));
            }
        }
        out
    }
}

impl fmt::Display for PartialPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &l) in self.cells.iter().enumerate() {
            if i > 0 && i % self.r == 0 {
                f.write_str("|")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Relabels non-zero labels by first occurrence; returns the number of blocks.
fn canonicalize(cells: &mut [u8]) -> usize {
    let mut map = [0u8; 256];
    let mut next = 1u8;
    for c in cells.iter_mut() {
        if *c == 0 {
            continue;
        }
        if map[*c as usize] == 0 {
            map[*c as usize] = next;
            next += 1;
        }
        *c = map[*c as usize];
    }
    (next - 1) as usize
}

/// An element of `S_r x <twist>`: first permute coordinates by `pi`, then swap
/// them if `twisted`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub pi: Vec<usize>,
    pub twisted: bool,
}

impl GroupElement {
    pub fn new(pi: Vec<usize>, twisted: bool) -> Result<Self> {
        let r = pi.len();
        let mut seen = vec![false; r];
        for &p in &pi {
            if p >= r || std::mem::replace(&mut seen[p], true) {
                return Err(Error::BadPermutation(pi, r));
            }
        }
        Ok(GroupElement { pi, twisted })
    }

    pub fn identity(r: usize) -> Self {
        GroupElement { pi: (0..r).collect(), twisted: false }
    }

    pub fn twist(r: usize) -> Self {
        GroupElement { pi: (0..r).collect(), twisted: true }
    }

    pub fn r(&self) -> usize {
        self.pi.len()
    }

    pub fn is_identity(&self) -> bool {
        !self.twisted && self.pi.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self` followed by `other`. The twist commutes with every coordinate
    /// permutation, so twists simply add.
    pub fn then(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            pi: self.pi.iter().map(|&x| other.pi[x]).collect(),
            twisted: self.twisted ^ other.twisted,
        }
    }

    /// Image of cell `(x, y)`.
    pub fn map_cell(&self, x: usize, y: usize) -> (usize, usize) {
        let (a, b) = (self.pi[x], self.pi[y]);
        if self.twisted {
            (b, a)
        } else {
            (a, b)
        }
    }

    /// `src[i]` is the cell sent to `i`, so the image of a label array `p` is
    /// `i -> p[src[i]]`.
    fn source_table(&self) -> Vec<u8> {
        let r = self.r();
        let mut src = vec![0u8; r * r];
        for x in 0..r {
            for y in 0..r {
                let (a, b) = self.map_cell(x, y);
                src[a * r + b] = (x * r + y) as u8;
            }
        }
        src
    }

    /// Parses cycle notation such as `(0 1)(2 3 4)` on points `0..r`; the empty
    /// string is the identity.
    pub fn parse_cycles(r: usize, spec: &str, twisted: bool) -> Result<Self> {
        let mut pi: Vec<usize> = (0..r).collect();
        let bad = || Error::Precondition(format!("cannot parse cycles {spec:?}"));
        for cycle in spec.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let body = cycle.strip_prefix('(').ok_or_else(bad)?;
            let points: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            for (i, &p) in points.iter().enumerate() {
                if p >= r {
                    return Err(bad());
                }
                pi[p] = points[(i + 1) % points.len()];
            }
        }
        Self::new(pi, twisted)
    }
}

/// All of `S_r x <twist>` with precomputed cell tables; untwisted elements come
/// first and the identity is element 0.
pub struct Group {
    r: usize,
    elements: Vec<GroupElement>,
    sources: Vec<Vec<u8>>,
}

impl Group {
    pub fn new(r: usize) -> Self {
        let perms = permutations(r);
        let elements: Vec<GroupElement> = [false, true]
            .into_iter()
            .flat_map(|t| perms.iter().map(move |p| GroupElement { pi: p.clone(), twisted: t }))
            .collect();
        let sources = elements.iter().map(GroupElement::source_table).collect();
        Group { r, elements, sources }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Order of `S_r`.
    pub fn sym_order(&self) -> usize {
        self.elements.len() / 2
    }
}

/// All permutations of `0..r`, lexicographic, identity first.
pub fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

/// Compares the canonical image `i -> p[src[i]]` with `p` itself, stopping at the
/// first difference.
fn compare_image(p: &[u8], src: &[u8], relabel: &mut [u8; 256]) -> std::cmp::Ordering {
    relabel.fill(0);
    let mut next = 1u8;
    for (i, &s) in src.iter().enumerate() {
        let old = p[s as usize];
        let new = if old == 0 {
            0
        } else {
            let slot = &mut relabel[old as usize];
            if *slot == 0 {
                *slot = next;
                next += 1;
            }
            *slot
        };
        match new.cmp(&p[i]) {
            std::cmp::Ordering::Equal => {}
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Whether relocating cells by `src` leaves every label where it was, i.e. the
/// group element maps each block onto itself.
fn fixes_blocks(p: &[u8], src: &[u8]) -> bool {
    src.iter().enumerate().all(|(i, &s)| p[s as usize] == p[i])
}

fn is_symmetric(p: &[u8], r: usize) -> bool {
    (0..r).all(|x| (x + 1..r).all(|y| p[x * r + y] == p[y * r + x]))
}

/// Applies `g` to `p` and re-canonicalizes.
pub fn act(p: &PartialPartition, g: &GroupElement) -> Result<PartialPartition> {
    if p.r != g.r() {
        return Err(Error::RankMismatch { partition: p.r, element: g.r() });
    }
    let src = g.source_table();
    let mut cells: Vec<u8> = src.iter().map(|&s| p.cells[s as usize]).collect();
    canonicalize(&mut cells);
    Ok(PartialPartition { r: p.r, k: p.k, cells })
}

/// Streams every canonical rank-`k` partial partition of the `r x r` grid in
/// lexicographic order.
pub struct PartialPartitions {
    r: usize,
    k: u8,
    cells: Vec<u8>,
    fixed: usize,
    state: EnumState,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EnumState {
    Fresh,
    Running,
    Done,
}

impl PartialPartitions {
    fn with_prefix(r: usize, k: usize, prefix: &[u8]) -> Self {
        let mut cells = vec![0u8; r * r];
        cells[..prefix.len()].copy_from_slice(prefix);
        PartialPartitions { r, k: k as u8, cells, fixed: prefix.len(), state: EnumState::Fresh }
    }

    /// Minimal completion of `cells[..from]` with labels up to `k`.
    fn fill_minimal(&mut self, from: usize) -> bool {
        let m = self.cells[..from].iter().copied().max().unwrap_or(0);
        let missing = (self.k - m) as usize;
        let n = self.cells.len();
        if n - from < missing {
            return false;
        }
        for c in &mut self.cells[from..n - missing] {
            *c = 0;
        }
        for (j, c) in self.cells[n - missing..].iter_mut().enumerate() {
            *c = m + 1 + j as u8;
        }
        true
    }

    fn advance(&mut self) -> bool {
        let n = self.cells.len();
        let mut prefix_max = vec![0u8; n + 1];
        for i in 0..n {
            prefix_max[i + 1] = prefix_max[i].max(self.cells[i]);
        }
        for i in (self.fixed..n).rev() {
            let v = self.cells[i] + 1;
            if v > (prefix_max[i] + 1).min(self.k) {
                continue;
            }
            let m = prefix_max[i].max(v);
            if n - i - 1 < (self.k - m) as usize {
                continue;
            }
            self.cells[i] = v;
            return self.fill_minimal(i + 1);
        }
        false
    }

    fn next_cells(&mut self) -> Option<&[u8]> {
        let ok = match self.state {
            EnumState::Done => false,
            EnumState::Fresh => self.fill_minimal(self.fixed),
            EnumState::Running => self.advance(),
        };
        self.state = if ok { EnumState::Running } else { EnumState::Done };
        ok.then_some(self.cells.as_slice())
    }
}

impl Iterator for PartialPartitions {
    type Item = PartialPartition;

    fn next(&mut self) -> Option<PartialPartition> {
        let (r, k) = (self.r, self.k as usize);
        self.next_cells()
            .map(|c| PartialPartition { r, k, cells: c.to_vec() })
    }
}

fn check_enum_args(r: usize, k: usize) -> Result<()> {
    if r == 0 || r > MAX_RANK {
        return Err(Error::Precondition(format!("grid side r = {r} outside 1..={MAX_RANK}")));
    }
    if k == 0 || k > r * r {
        return Err(Error::RankOutOfRange { r, k, max: r * r });
    }
    Ok(())
}

pub fn enumerate(r: usize, k: usize) -> Result<PartialPartitions> {
    check_enum_args(r, k)?;
    Ok(PartialPartitions::with_prefix(r, k, &[]))
}

/// Canonical prefixes of length `len` that still admit a rank-`k` completion;
/// their completion streams partition the full stream.
fn shard_prefixes(n_cells: usize, k: usize, len: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, max: u8, len: usize, n: usize, k: u8, out: &mut Vec<Vec<u8>>) {
        if n - prefix.len() < (k - max) as usize {
            return;
        }
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=(max + 1).min(k) {
            prefix.push(v);
            rec(prefix, max.max(v), len, n, k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 0, len.min(n_cells), n_cells, k as u8, &mut out);
    out
}

/// Visits every canonical rank-`k` partial partition in parallel shards, folding
/// each shard into an accumulator with `fold` and merging with `merge`.
fn par_visit<A, F, M>(r: usize, k: usize, init: impl Fn() -> A + Sync, fold: F, merge: M) -> A
where
    A: Send,
    F: Fn(&mut A, &[u8]) + Sync,
    M: Fn(A, A) -> A + Sync + Send,
{
    let n_cells = r * r;
    let prefix_len = n_cells.saturating_sub(12).min(8);
    shard_prefixes(n_cells, k, prefix_len)
        .into_par_iter()
        .map(|prefix| {
            let mut acc = init();
            let mut stream = PartialPartitions::with_prefix(r, k, &prefix);
            while let Some(cells) = stream.next_cells() {
                fold(&mut acc, cells);
            }
            acc
        })
        .reduce(&init, &merge)
}

/// Structural flags of one partial partition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// Only the identity permutation stabilizes it.
    pub rigid: bool,
    /// Every stabilizing permutation maps each block onto itself.
    pub semirigid: bool,
    /// Every block is closed under the twist.
    pub commutative: bool,
    /// Some permutation followed by the twist stabilizes it.
    pub selfdual: bool,
    /// Order of its stabilizer in `S_r`.
    pub stabilizer: usize,
}

fn classify_cells(p: &[u8], r: usize, group: &Group) -> Classification {
    let mut relabel = [0u8; 256];
    let mut flags = Classification {
        rigid: true,
        semirigid: true,
        commutative: is_symmetric(p, r),
        selfdual: false,
        stabilizer: 0,
    };
    for (idx, (g, src)) in group.elements.iter().zip(&group.sources).enumerate() {
        if compare_image(p, src, &mut relabel) != std::cmp::Ordering::Equal {
            continue;
        }
        if g.twisted {
            flags.selfdual = true;
        } else {
            flags.stabilizer += 1;
            if idx != 0 {
                flags.rigid = false;
                if !fixes_blocks(p, src) {
                    flags.semirigid = false;
                }
            }
        }
    }
    flags
}

pub fn classify(p: &PartialPartition) -> Classification {
    classify_cells(&p.cells, p.r, &Group::new(p.r))
}

/// Number of canonical rank-`k` partial partitions fixed by `g`.
pub fn fixed_points_brute(r: usize, k: usize, g: &GroupElement) -> Result<BigInt> {
    check_enum_args(r, k)?;
    if g.r() != r {
        return Err(Error::RankMismatch { partition: r, element: g.r() });
    }
    let src = g.source_table();
    let count = par_visit(
        r,
        k,
        || 0u64,
        |acc, p| {
            let mut relabel = [0u8; 256];
            if compare_image(p, &src, &mut relabel) == std::cmp::Ordering::Equal {
                *acc += 1;
            }
        },
        |a, b| a + b,
    );
    Ok(BigInt::from(count))
}

/// Number of rank-`k` partial partitions fixed by `pi` followed by the twist
/// whose blocks are each mapped onto themselves by `pi^2`.
pub fn twisted_square_stable_brute(r: usize, k: usize, pi: &[usize]) -> Result<BigInt> {
    check_enum_args(r, k)?;
    let g = GroupElement::new(pi.to_vec(), true)?;
    let square = GroupElement::new(pi.to_vec(), false)?.then(&GroupElement::new(pi.to_vec(), false)?);
    let (src, src_sq) = (g.source_table(), square.source_table());
    let count = par_visit(
        r,
        k,
        || 0u64,
        |acc, p| {
            let mut relabel = [0u8; 256];
            if compare_image(p, &src, &mut relabel) == std::cmp::Ordering::Equal
                && fixes_blocks(p, &src_sq)
            {
                *acc += 1;
            }
        },
        |a, b| a + b,
    );
    Ok(BigInt::from(count))
}

/// Number of semirigid rank-`k` partial partitions fixed by `g`.
pub fn semirigid_fixed_points_brute(r: usize, k: usize, g: &GroupElement) -> Result<BigInt> {
    check_enum_args(r, k)?;
    let group = Group::new(r);
    let src = g.source_table();
    let count = par_visit(
        r,
        k,
        || 0u64,
        |acc, p| {
            let mut relabel = [0u8; 256];
            if compare_image(p, &src, &mut relabel) == std::cmp::Ordering::Equal
                && classify_cells(p, r, &group).semirigid
            {
                *acc += 1;
            }
        },
        |a, b| a + b,
    );
    Ok(BigInt::from(count))
}

/// c-cycle structure of one concrete permutation, found by walking orbits on
/// `X x X` directly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CcycleCensus {
    /// Lengths of the c-cycles of `pi`, `{length: count}`.
    pub lengths: BTreeMap<usize, usize>,
    /// c-cycles of `pi` closed under the twist.
    pub symmetric: usize,
    /// c-cycles of `pi^2` mapped onto themselves by `pi` followed by the twist.
    pub square_singular: usize,
    /// Pairs of distinct c-cycles of `pi^2` swapped by `pi` followed by the twist.
    pub square_pairs: usize,
}

/// Orbit index of every cell under the coordinate-wise action of `pi`.
fn cell_orbits(pi: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let r = pi.len();
    let mut id = vec![usize::MAX; r * r];
    let mut sizes = Vec::new();
    for start in 0..r * r {
        if id[start] != usize::MAX {
            continue;
        }
        let (mut x, mut y) = (start / r, start % r);
        let mut len = 0;
        while id[x * r + y] == usize::MAX {
            id[x * r + y] = sizes.len();
            len += 1;
            (x, y) = (pi[x], pi[y]);
        }
        sizes.push(len);
    }
    (id, sizes)
}

pub fn ccycle_census(pi: &[usize]) -> CcycleCensus {
    let r = pi.len();
    let (id, sizes) = cell_orbits(pi);
    let mut out = CcycleCensus::default();
    for &s in &sizes {
        *out.lengths.entry(s).or_default() += 1;
    }
    let mut seen = vec![false; sizes.len()];
    for x in 0..r {
        for y in 0..r {
            let c = id[x * r + y];
            if !std::mem::replace(&mut seen[c], true) && id[y * r + x] == c {
                out.symmetric += 1;
            }
        }
    }

    let square: Vec<usize> = pi.iter().map(|&x| pi[x]).collect();
    let (sq_id, sq_sizes) = cell_orbits(&square);
    let mut seen = vec![false; sq_sizes.len()];
    for x in 0..r {
        for y in 0..r {
            let c = sq_id[x * r + y];
            if !std::mem::replace(&mut seen[c], true) && sq_id[pi[y] * r + pi[x]] == c {
                out.square_singular += 1;
            }
        }
    }
    out.square_pairs = (sq_sizes.len() - out.square_singular) / 2;
    out
}

/// The counts the census reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusCount {
    Presentation,
    Identity,
    Iso,
    Equivalence,
    IsoSemirigid,
    IsoRigid,
    IsoCommutative,
    IsoSelfdual,
    EquivalenceSemirigid,
    SelfdualSemirigid,
}

impl CensusCount {
    pub const ALL: [CensusCount; 10] = [
        CensusCount::Presentation,
        CensusCount::Identity,
        CensusCount::Iso,
        CensusCount::Equivalence,
        CensusCount::IsoSemirigid,
        CensusCount::IsoRigid,
        CensusCount::IsoCommutative,
        CensusCount::IsoSelfdual,
        CensusCount::EquivalenceSemirigid,
        CensusCount::SelfdualSemirigid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CensusCount::Presentation => "presentation",
            CensusCount::Identity => "identity",
            CensusCount::Iso => "iso",
            CensusCount::Equivalence => "equivalence",
            CensusCount::IsoSemirigid => "iso_semirigid",
            CensusCount::IsoRigid => "iso_rigid",
            CensusCount::IsoCommutative => "iso_commutative",
            CensusCount::IsoSelfdual => "iso_selfdual",
            CensusCount::EquivalenceSemirigid => "equivalence_semirigid",
            CensusCount::SelfdualSemirigid => "selfdual_semirigid",
        }
    }
}

impl fmt::Display for CensusCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CensusCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().replace('-', "_").to_ascii_lowercase();
        CensusCount::ALL
            .into_iter()
            .find(|c| c.name() == wanted)
            .ok_or_else(|| Error::Precondition(format!("unknown census count {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Tally([u64; 10]);

impl Tally {
    fn add(&mut self, c: CensusCount, v: u64) {
        self.0[c as usize] += v;
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub n: usize,
    pub counts: BTreeMap<CensusCount, BigInt>,
    /// The same counts restricted to each generator rank `r`.
    pub per_rank: BTreeMap<usize, BTreeMap<CensusCount, BigInt>>,
}

impl ClassificationReport {
    pub fn get(&self, c: CensusCount) -> &BigInt {
        &self.counts[&c]
    }
}

/// Census of one rank: orbits of `S_r x <twist>` on rank-`k` partial partitions.
fn census_rank(n: usize, r: usize, k: usize) -> Tally {
    let group = Group::new(r);
    let sym_order = group.sym_order() as u64;
    let labelings = factorial(n) / factorial(r);
    let labelings: u64 = labelings.try_into().expect("n! / r! fits u64 within the census cap");
    par_visit(
        r,
        k,
        Tally::default,
        |tally, p| {
            let mut relabel = [0u8; 256];
            // skip anything with a smaller image; element 0 is the identity
            let minimal = group.sources[1..]
                .iter()
                .all(|src| compare_image(p, src, &mut relabel) != std::cmp::Ordering::Less);
            if !minimal {
                return;
            }
            let flags = classify_cells(p, r, &group);
            let iso_classes = if flags.selfdual { 1 } else { 2 };
            let orbit = sym_order / flags.stabilizer as u64;
            tally.add(CensusCount::Equivalence, 1);
            tally.add(CensusCount::Iso, iso_classes);
            tally.add(CensusCount::Presentation, iso_classes * orbit);
            tally.add(CensusCount::Identity, iso_classes * orbit * labelings);
            if flags.selfdual {
                tally.add(CensusCount::IsoSelfdual, 1);
            }
            if flags.semirigid {
                tally.add(CensusCount::IsoSemirigid, iso_classes);
                tally.add(CensusCount::EquivalenceSemirigid, 1);
                if flags.selfdual {
                    tally.add(CensusCount::SelfdualSemirigid, 1);
                }
            }
            if flags.rigid {
                tally.add(CensusCount::IsoRigid, iso_classes);
            }
            if flags.commutative {
                tally.add(CensusCount::IsoCommutative, iso_classes);
            }
        },
        Tally::merge,
    )
}

/// Exhaustive classification of all 3-nilpotent semigroups of order `n`.
pub fn orbit_census(n: usize, allow_slow: bool) -> Result<ClassificationReport> {
    check_order(n)?;
    let cap = if allow_slow { CENSUS_SLOW_CAP } else { CENSUS_CAP };
    if n > cap {
        let hint = if allow_slow || n > CENSUS_SLOW_CAP { "" } else { " (pass --allow-slow for n = 7)" };
        return Err(Error::OracleCap { n, cap, hint });
    }
    let to_map = |t: &Tally| -> BTreeMap<CensusCount, BigInt> {
        CensusCount::ALL.into_iter().map(|c| (c, BigInt::from(t.0[c as usize]))).collect()
    };
    let mut total = Tally::default();
    let mut per_rank = BTreeMap::new();
    for r in 1..=n - 2 {
        let k = n - r - 1;
        let tally = if k <= r * r { census_rank(n, r, k) } else { Tally::default() };
        per_rank.insert(r, to_map(&tally));
        total = total.merge(tally);
    }
    Ok(ClassificationReport { n, counts: to_map(&total), per_rank })
}
