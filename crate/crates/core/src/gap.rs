//! Essential arity gap and the classes built on it.
//!
//! `gap(f) = ess(f) - max ess(g)` over the nontrivial identification minors
//! `g` of `f`. It is undefined (here: `None`) when `f` has fewer than two
//! essential variables.

use alloc::vec;
use alloc::vec::Vec;

use crate::ktable::{essential_mask, has_repetition, identify_into, KTable, VarSet};
use crate::Error;

/// Reusable buffers for classifying many tables of one shape.
#[derive(Debug, Default)]
pub struct GapScratch {
    minor: Vec<u8>,
}

impl GapScratch {
    pub fn new() -> Self {
        Self::default()
    }
}

/// `(ess, gap)` of a raw value table, stopping early once some minor
/// reaches the `ess - 1` ceiling.
pub fn ess_gap_raw(k: usize, n: usize, values: &[u8], scratch: &mut GapScratch) -> (usize, Option<usize>) {
    let mask = essential_mask(k, n, values);
    let ess = mask.count_ones() as usize;
    if ess < 2 {
        return (ess, None);
    }
    scratch.minor.resize(values.len(), 0);
    let mut best = 0usize;
    'outer: for i in 0..n {
        if mask & (1 << i) == 0 {
            continue;
        }
        for j in 0..n {
            if j == i || mask & (1 << j) == 0 {
                continue;
            }
            identify_into(k, n, values, i, j, &mut scratch.minor);
            let m = essential_mask(k, n, &scratch.minor).count_ones() as usize;
            if m > best {
                best = m;
                if best == ess - 1 {
                    break 'outer;
                }
            }
        }
    }
    (ess, Some(ess - best))
}

pub fn gap(f: &KTable) -> Option<usize> {
    ess_gap_raw(f.k(), f.n(), f.values(), &mut GapScratch::new()).1
}

/// Membership in `G_{n,k}^n`: all `n` variables essential and gap `n`.
pub fn in_gnn(f: &KTable) -> bool {
    let n = f.n();
    let (ess, gap) = ess_gap_raw(f.k(), n, f.values(), &mut GapScratch::new());
    let member = n >= 2 && ess == n && gap == Some(n);
    debug_assert!(structural_gnn(f).map_or(true, |s| s == member));
    member
}

/// The table-shape characterisation of `G_{n,k}^n` for `2 <= n <= k`:
/// constant on tuples with a repeated entry and not constant overall.
/// `None` outside that parameter range.
pub fn structural_gnn(f: &KTable) -> Option<bool> {
    let (k, n) = (f.k(), f.n());
    if n < 2 || n > k {
        return None;
    }
    let mut point = vec![0u8; n];
    let mut eq_value = None;
    for (m, &v) in f.values().iter().enumerate() {
        crate::ktable::decode_into(k, m, &mut point);
        if has_repetition(&point) {
            match eq_value {
                None => eq_value = Some(v),
                Some(c) if c != v => return Some(false),
                Some(_) => {}
            }
        }
    }
    Some(!f.is_constant())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorInfo {
    pub pair: (usize, usize),
    pub essential: VarSet,
}

/// Essential sets of all nontrivial minors, in lexicographic pair order.
pub fn minor_profile(f: &KTable) -> Vec<MinorInfo> {
    let (k, n) = (f.k(), f.n());
    let ess = f.essential_set();
    let mut buf = vec![0u8; f.len()];
    let mut out = Vec::new();
    for i in ess.iter() {
        for j in ess.iter().filter(|&j| j != i) {
            identify_into(k, n, f.values(), i - 1, j - 1, &mut buf);
            out.push(MinorInfo {
                pair: (i, j),
                essential: VarSet::from_mask(n, essential_mask(k, n, &buf)),
            });
        }
    }
    out
}

/// `f = h + g` with `h = f_{u<-v}` for a collapsing pair `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub pair: (usize, usize),
    pub h: KTable,
    pub g: KTable,
    /// Every identification minor of `g` is the zero table.
    pub g_minors_zero: bool,
}

/// Pair of a largest minor and its number of essential variables.
pub type BestMinor = Option<((usize, usize), usize)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub essential: VarSet,
    pub ess: usize,
    pub gap: Option<usize>,
    /// First pair (lexicographically) whose minor attains the maximum ess.
    pub best_minor: BestMinor,
    pub plus_member: bool,
    pub minus_member: bool,
    pub gnn_member: bool,
    pub decomposition: Option<Decomposition>,
}

fn gap_from_profile(ess: usize, profile: &[MinorInfo]) -> (Option<usize>, BestMinor) {
    if ess < 2 {
        return (None, None);
    }
    let mut best: Option<&MinorInfo> = None;
    for info in profile {
        if best.map_or(true, |b| info.essential.len() > b.essential.len()) {
            best = Some(info);
        }
    }
    let best = best.expect("ess >= 2 gives at least two minors");
    (Some(ess - best.essential.len()), Some((best.pair, best.essential.len())))
}

/// Some minor of size `ess - gap` keeps the substituted-in variable.
fn plus_from_profile(ess: usize, gap: Option<usize>, profile: &[MinorInfo]) -> bool {
    match gap {
        Some(p) if p >= 2 => profile
            .iter()
            .any(|m| m.essential.len() == ess - p && m.essential.contains(m.pair.1)),
        _ => false,
    }
}

/// No minor keeps the substituted-in variable.
fn minus_from_profile(gap: Option<usize>, profile: &[MinorInfo]) -> bool {
    match gap {
        Some(p) if p >= 2 => profile.iter().all(|m| !m.essential.contains(m.pair.1)),
        _ => false,
    }
}

pub fn classify(f: &KTable) -> GapReport {
    let essential = f.essential_set();
    let ess = essential.len();
    let profile = minor_profile(f);
    let (gap, best_minor) = gap_from_profile(ess, &profile);
    let n = f.n();
    GapReport {
        essential,
        ess,
        gap,
        best_minor,
        plus_member: plus_from_profile(ess, gap, &profile),
        minus_member: minus_from_profile(gap, &profile),
        gnn_member: n >= 2 && ess == n && gap == Some(n),
        decomposition: decompose_with(f, ess, gap, &profile),
    }
}

/// True iff `f_{i<-j}` is the zero table for every ordered pair `i != j`.
pub fn all_minors_zero(f: &KTable) -> bool {
    let (k, n) = (f.k(), f.n());
    let mut buf = vec![0u8; f.len()];
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            identify_into(k, n, f.values(), i, j, &mut buf);
            if buf.iter().any(|&v| v != 0) {
                return false;
            }
        }
    }
    true
}

/// Splits `f = h + g` along the lexicographically first collapsing pair:
/// `ess(f_{u<-v}) = ess(f) - gap(f)` with `x_v` fictive in `f_{u<-v}`.
/// `None` when the gap is undefined or below 2, or no such pair exists.
pub fn decompose(f: &KTable) -> Option<Decomposition> {
    let profile = minor_profile(f);
    let ess = f.ess();
    let (gap, _) = gap_from_profile(ess, &profile);
    decompose_with(f, ess, gap, &profile)
}

fn decompose_with(f: &KTable, ess: usize, gap: Option<usize>, profile: &[MinorInfo]) -> Option<Decomposition> {
    let p = gap.filter(|&p| p >= 2)?;
    let target = ess - p;
    let info = profile
        .iter()
        .find(|m| m.essential.len() == target && !m.essential.contains(m.pair.1))?;
    let (u, v) = info.pair;
    let h = f.identify(u, v).ok()?;
    let g = f.ring_sub(&h).ok()?;
    let g_minors_zero = all_minors_zero(&g);
    Some(Decomposition {
        pair: (u, v),
        h,
        g,
        g_minors_zero,
    })
}

/// `f = t + g` split by support for the minus subclass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusStructure {
    /// `f` on tuples with a repeated entry, 0 elsewhere.
    pub t: KTable,
    /// `f` on repetition-free tuples, 0 elsewhere.
    pub g: KTable,
    /// The `(n-2)`-ary symmetric function every minor `t_{i<-j}` reduces
    /// to once its two fictive positions are dropped.
    pub h_sym: KTable,
}

/// Requires `3 < n <= k`. Returns `None` when `f` is not in the minus
/// subclass or any structural check on the split fails.
pub fn minus_structure(f: &KTable) -> Result<Option<MinusStructure>, Error> {
    let (k, n) = (f.k(), f.n());
    if n <= 3 || n > k {
        return Err(Error::range("minus_structure", alloc::format!("needs 3 < n <= k, got k = {k}, n = {n}")));
    }
    let profile = minor_profile(f);
    let ess = f.ess();
    let (gap, _) = gap_from_profile(ess, &profile);
    if ess != n || !minus_from_profile(gap, &profile) {
        return Ok(None);
    }

    let mut point = vec![0u8; n];
    let mut t = Vec::with_capacity(f.len());
    let mut g = Vec::with_capacity(f.len());
    for (m, &v) in f.values().iter().enumerate() {
        crate::ktable::decode_into(k, m, &mut point);
        if has_repetition(&point) {
            t.push(v);
            g.push(0);
        } else {
            t.push(0);
            g.push(v);
        }
    }
    let t = KTable::from_raw(k, n, t);
    let g = KTable::from_raw(k, n, g);

    if !t.is_totally_symmetric() || !all_minors_zero(&g) {
        return Ok(None);
    }
    let mut h_sym: Option<KTable> = None;
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            let minor = t.identify(i, j)?;
            if minor.essential_set() != VarSet::from_positions(n, &[i, j])?.complement() {
                return Ok(None);
            }
            let rest: Vec<usize> = (1..=n).filter(|&p| p != i && p != j).collect();
            let reduced = minor.project(&rest)?;
            match &h_sym {
                None => h_sym = Some(reduced),
                Some(h) if *h != reduced => return Ok(None),
                Some(_) => {}
            }
        }
    }
    let h_sym = h_sym.expect("n > 3 gives at least one pair");
    if !h_sym.is_totally_symmetric() {
        return Ok(None);
    }
    Ok(Some(MinusStructure { t, g, h_sym }))
}
