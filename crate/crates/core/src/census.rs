//! Brute-force scans of whole function spaces and family verification.
//!
//! Function index `m` in `[0, k^(k^n))` denotes the table whose entry `j` is
//! digit `j` of `m` in base `k`, most significant first. Scans work on
//! contiguous index ranges so they can be split across workers and merged.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::families::{sample_rng, Family, Mode};
use crate::gap::{classify, ess_gap_raw, minus_structure, GapScratch};
use crate::ktable::{check_base, table_len, KTable};
use crate::{BigCount, Error};

/// Default cap on the number of tables a scan or verification may visit.
pub const DEFAULT_CAP: u64 = 1 << 34;

pub type Cell = (usize, Option<usize>);

/// Counts of functions per `(ess, gap)` cell; gap is `None` when undefined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    pub k: usize,
    pub n: usize,
    pub cells: BTreeMap<Cell, BigCount>,
    pub total: BigCount,
}

impl Distribution {
    pub fn new(k: usize, n: usize) -> Self {
        Distribution {
            k,
            n,
            cells: BTreeMap::new(),
            total: BigUint::zero(),
        }
    }

    pub fn get(&self, ess: usize, gap: Option<usize>) -> BigCount {
        self.cells.get(&(ess, gap)).cloned().unwrap_or_default()
    }

    /// Sum over all cells with the given `ess`.
    pub fn ess_total(&self, ess: usize) -> BigCount {
        self.cells.iter().filter(|((e, _), _)| *e == ess).map(|(_, c)| c).sum()
    }

    pub fn merge(&mut self, other: &Distribution) {
        assert_eq!((self.k, self.n), (other.k, other.n), "merging distributions of different spaces");
        for (cell, count) in &other.cells {
            *self.cells.entry(*cell).or_default() += count;
        }
        self.total += &other.total;
    }

    fn absorb(&mut self, counts: BTreeMap<Cell, u64>) {
        for (cell, c) in counts {
            *self.cells.entry(cell).or_default() += c;
            self.total += c;
        }
    }
}

impl fmt::Display for Distribution {
    /// TSV rows sorted by `(ess, gap)`, header included.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ess\tgap\tcount")?;
        for ((ess, gap), count) in &self.cells {
            match gap {
                Some(g) => writeln!(f, "{ess}\t{g}\t{count}")?,
                None => writeln!(f, "{ess}\t-\t{count}")?,
            }
        }
        Ok(())
    }
}

/// Number of functions in `P_k^n`, if it fits in a `u64`.
pub fn space_size(k: usize, n: usize) -> Result<BigCount, Error> {
    check_base(k)?;
    let len = table_len(k, n).ok_or(Error::TableTooLarge { k, n })?;
    if len > 64 * 64 {
        return Err(Error::TableTooLarge { k, n });
    }
    Ok(BigUint::from(k).pow(len as u32))
}

/// Checks an exhaustive scan of `P_k^n` against `cap` and returns its size.
pub fn exhaustive_budget(k: usize, n: usize, cap: u64) -> Result<u64, Error> {
    let size = space_size(k, n)?;
    match size.to_u64() {
        Some(s) if s <= cap => Ok(s),
        _ => Err(Error::Infeasible { required: size, cap }),
    }
}

/// Splits `[0, total)` into `parts` contiguous ranges of near-equal size.
pub fn split_range(total: u64, parts: usize) -> Vec<(u64, u64)> {
    let parts = parts.max(1) as u64;
    let (q, r) = (total / parts, total % parts);
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..parts {
        let end = start + q + (i < r) as u64;
        if end > start {
            out.push((start, end));
        }
        start = end;
    }
    out
}

fn decode_function(k: usize, mut m: u64, values: &mut [u8]) {
    for v in values.iter_mut().rev() {
        *v = (m % k as u64) as u8;
        m /= k as u64;
    }
}

fn increment(k: u8, values: &mut [u8]) {
    for v in values.iter_mut().rev() {
        *v += 1;
        if *v < k {
            return;
        }
        *v = 0;
    }
}

/// Visits the function indices `start..end`, calling `visit` on each table's
/// values with its `(ess, gap)`.
fn scan_with(k: usize, n: usize, start: u64, end: u64, mut visit: impl FnMut(&[u8], Cell)) -> Result<(), Error> {
    let total = exhaustive_budget(k, n, u64::MAX)?;
    if start > end || end > total {
        return Err(Error::IndexOutOfRange {
            index: end as usize,
            len: total as usize,
        });
    }
    let len = table_len(k, n).expect("checked above");
    let mut values = vec![0u8; len];
    decode_function(k, start, &mut values);
    let mut scratch = GapScratch::default();
    for _ in start..end {
        let cell = ess_gap_raw(k, n, &values, &mut scratch);
        visit(&values, cell);
        increment(k as u8, &mut values);
    }
    Ok(())
}

/// Exhaustive census of the function indices `start..end` of `P_k^n`.
pub fn scan_range(k: usize, n: usize, start: u64, end: u64) -> Result<Distribution, Error> {
    let mut counts = BTreeMap::new();
    scan_with(k, n, start, end, |_, cell| *counts.entry(cell).or_insert(0u64) += 1)?;
    let mut dist = Distribution::new(k, n);
    dist.absorb(counts);
    Ok(dist)
}

/// Full sequential census of `P_k^n`, refused above `cap`.
pub fn census_exhaustive(k: usize, n: usize, cap: u64) -> Result<Distribution, Error> {
    let total = exhaustive_budget(k, n, cap)?;
    scan_range(k, n, 0, total)
}

/// Every table of `P_k^n` in the given cell, in index order.
pub fn collect_cell(k: usize, n: usize, cell: Cell, cap: u64) -> Result<Vec<KTable>, Error> {
    let total = exhaustive_budget(k, n, cap)?;
    let mut out = Vec::new();
    scan_with(k, n, 0, total, |values, c| {
        if c == cell {
            out.push(KTable::from_raw(k, n, values.to_vec()));
        }
    })?;
    Ok(out)
}

/// The `index`-th uniform random table of a seeded sample.
pub fn sample_table(k: usize, n: usize, seed: u64, index: u64) -> Result<KTable, Error> {
    check_base(k)?;
    let len = table_len(k, n).ok_or(Error::TableTooLarge { k, n })?;
    let mut rng = sample_rng(seed, index);
    let values = (0..len).map(|_| rng.random_range(0..k as u8)).collect();
    Ok(KTable::from_raw(k, n, values))
}

/// Census of samples `start..end` of the seeded stream. Splitting the index
/// range across workers and merging gives the same result.
pub fn sample_range(k: usize, n: usize, seed: u64, start: u64, end: u64) -> Result<Distribution, Error> {
    let mut counts = BTreeMap::new();
    let mut scratch = GapScratch::default();
    for i in start..end {
        let f = sample_table(k, n, seed, i)?;
        let cell = ess_gap_raw(k, n, f.values(), &mut scratch);
        *counts.entry(cell).or_insert(0u64) += 1;
    }
    let mut dist = Distribution::new(k, n);
    dist.absorb(counts);
    Ok(dist)
}

pub fn census_sample(k: usize, n: usize, count: u64, seed: u64) -> Result<Distribution, Error> {
    sample_range(k, n, seed, 0, count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    FormulaMismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::FormulaMismatch => "formula-mismatch",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub family: Family,
    pub mode: Mode,
    pub emitted: BigCount,
    pub distinct: BigCount,
    pub predicate_failures: BigCount,
    /// Closed-form class size; only compared in all-mode.
    pub formula_value: Option<BigCount>,
    pub verdict: Verdict,
}

impl VerifyReport {
    fn new(family: Family, mode: Mode, emitted: u64, distinct: u64, failures: u64, formula: Option<BigCount>) -> Self {
        let distinct = BigUint::from(distinct);
        let verdict = if failures > 0 || distinct != BigUint::from(emitted) {
            Verdict::Fail
        } else if formula.as_ref().is_some_and(|v| *v != distinct) {
            Verdict::FormulaMismatch
        } else {
            Verdict::Pass
        };
        VerifyReport {
            family,
            mode,
            emitted: emitted.into(),
            distinct,
            predicate_failures: failures.into(),
            formula_value: formula,
            verdict,
        }
    }
}

impl fmt::Display for VerifyReport {
    /// One `key: value` line per field.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family: {}", self.family)?;
        match self.mode {
            Mode::All => writeln!(f, "mode: all")?,
            Mode::Sample { count, seed } => writeln!(f, "mode: sample {count} seed {seed}")?,
        }
        writeln!(f, "emitted: {}", self.emitted)?;
        writeln!(f, "distinct: {}", self.distinct)?;
        writeln!(f, "predicate_failures: {}", self.predicate_failures)?;
        match &self.formula_value {
            Some(v) => writeln!(f, "formula_value: {v}")?,
            None => writeln!(f, "formula_value: -")?,
        }
        writeln!(f, "verdict: {}", self.verdict)
    }
}

/// The defining property of each family, checked through the gap module.
pub fn family_predicate(family: &Family, f: &KTable) -> bool {
    let n = family.n();
    if f.k() != family.k() || f.n() != n {
        return false;
    }
    match *family {
        Family::Gnn { .. } => f.ess() == n && crate::gap::gap(f) == Some(n),
        Family::RepFree { .. } => crate::gap::all_minors_zero(f),
        Family::Gpk { p, .. } => {
            let r = classify(f);
            r.ess == n && r.gap == Some(p) && (p > 2 || r.plus_member)
        }
        Family::G2Plus { .. } => {
            let r = classify(f);
            r.ess == n && r.gap == Some(2) && r.plus_member
        }
        Family::G2Minus { .. } => {
            let r = classify(f);
            r.ess == n
                && r.gap == Some(2)
                && r.minus_member
                && matches!(minus_structure(f), Ok(Some(s)) if s.t.oddsupp_determined().is_some())
        }
        Family::G2k3 { .. } => {
            f.ess() == 3
                && crate::gap::gap(f) == Some(2)
                && f.nontrivial_minors().iter().all(|(_, m)| m.ess() == 1)
        }
    }
}

/// Runs a generator, checks every table, counts distinct tables and, in
/// all-mode, compares against the family's closed form.
pub fn verify_family(family: Family, mode: Mode, cap: u64) -> Result<VerifyReport, Error> {
    let budget = match mode {
        Mode::All => family.all_mode_len()?,
        Mode::Sample { count, .. } => BigUint::from(count),
    };
    if budget.to_u64().map_or(true, |b| b > cap) {
        return Err(Error::Infeasible { required: budget, cap });
    }
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let (mut emitted, mut failures) = (0u64, 0u64);
    for f in family.generate(mode)? {
        emitted += 1;
        if !family_predicate(&family, &f) {
            failures += 1;
        }
        seen.insert(f.into_values());
    }
    let formula = match mode {
        Mode::All => family.formula()?,
        Mode::Sample { .. } => None,
    };
    Ok(VerifyReport::new(family, mode, emitted, seen.len() as u64, failures, formula))
}
