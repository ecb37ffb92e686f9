//! Dense tables of k-valued functions.
//!
//! Entry `m` of a table over `(k, n)` holds `f(a_1, .., a_n)` where
//! `m = a_1 k^(n-1) + .. + a_n`, so the first variable is the most
//! significant digit. Variable positions are 1-based at the public surface.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, MAX_K, MAX_TABLE_LEN};

pub(crate) fn check_base(k: usize) -> Result<(), Error> {
    if (2..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidBase(k))
    }
}

/// `k^n`, or `None` past [`MAX_TABLE_LEN`].
pub(crate) fn table_len(k: usize, n: usize) -> Option<usize> {
    let mut len = 1usize;
    for _ in 0..n {
        len = len.checked_mul(k)?;
        if len > MAX_TABLE_LEN {
            return None;
        }
    }
    Some(len)
}

fn checked_len(k: usize, n: usize) -> Result<usize, Error> {
    check_base(k)?;
    table_len(k, n).ok_or(Error::TableTooLarge { k, n })
}

/// Stride of 0-based position `pos`: `k^(n-1-pos)`.
#[inline]
pub(crate) fn stride(k: usize, n: usize, pos: usize) -> usize {
    let mut s = 1;
    for _ in pos + 1..n {
        s *= k;
    }
    s
}

/// Bit `pos` is set iff 0-based position `pos` is essential.
pub(crate) fn essential_mask(k: usize, n: usize, values: &[u8]) -> u64 {
    let mut mask = 0u64;
    let mut s = 1usize;
    for pos in (0..n).rev() {
        if varies_along(values, k, s) {
            mask |= 1 << pos;
        }
        s *= k;
    }
    mask
}

fn varies_along(values: &[u8], k: usize, stride: usize) -> bool {
    for block in values.chunks_exact(stride * k) {
        let (head, rest) = block.split_at(stride);
        for chunk in rest.chunks_exact(stride) {
            if chunk != head {
                return true;
            }
        }
    }
    false
}

/// Writes `f_{i<-j}` (0-based positions) into `out`.
pub(crate) fn identify_into(k: usize, n: usize, values: &[u8], i: usize, j: usize, out: &mut [u8]) {
    let si = stride(k, n, i);
    let sj = stride(k, n, j);
    for (m, slot) in out.iter_mut().enumerate() {
        let ai = (m / si) % k;
        let aj = (m / sj) % k;
        *slot = values[m - ai * si + aj * si];
    }
}

/// A subset of the variable positions `1..=n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet {
    n: u8,
    bits: u64,
}

impl VarSet {
    pub fn empty(n: usize) -> Self {
        VarSet { n: n as u8, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        let bits = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        VarSet { n: n as u8, bits }
    }

    /// Builds a set from 1-based positions.
    pub fn from_positions(n: usize, positions: &[usize]) -> Result<Self, Error> {
        let mut set = VarSet::empty(n);
        for &p in positions {
            if p == 0 || p > n {
                return Err(Error::PositionOutOfRange { position: p, n });
            }
            set.bits |= 1 << (p - 1);
        }
        Ok(set)
    }

    pub(crate) fn from_mask(n: usize, bits: u64) -> Self {
        VarSet { n: n as u8, bits }
    }

    pub fn arity(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, position: usize) -> bool {
        position >= 1 && position <= self.arity() && self.bits & (1 << (position - 1)) != 0
    }

    pub fn complement(&self) -> Self {
        VarSet {
            n: self.n,
            bits: VarSet::full(self.arity()).bits & !self.bits,
        }
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn mask(&self) -> u64 {
        self.bits
    }

    /// Members as ascending 1-based positions.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.arity()).filter(move |&p| self.contains(p))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, p) in self.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// A subset of the value set `K`, one bit per residue.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueSet(pub u64);

impl ValueSet {
    pub fn contains(&self, value: u8) -> bool {
        self.0 & (1 << value) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..64u8).filter(move |&v| self.contains(v))
    }
}

impl fmt::Debug for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A point of `K^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tuple {
    k: u8,
    entries: Vec<u8>,
}

impl Tuple {
    pub fn new(k: usize, entries: Vec<u8>) -> Result<Self, Error> {
        check_base(k)?;
        if let Some(&bad) = entries.iter().find(|&&v| v as usize >= k) {
            return Err(Error::ValueOutOfRange {
                value: bad as usize,
                k,
            });
        }
        Ok(Tuple { k: k as u8, entries })
    }

    /// Inverse of [`Tuple::index`].
    pub fn from_index(k: usize, n: usize, index: usize) -> Result<Self, Error> {
        let len = checked_len(k, n)?;
        if index >= len {
            return Err(Error::IndexOutOfRange { index, len });
        }
        let mut entries = vec![0u8; n];
        let mut rest = index;
        for slot in entries.iter_mut().rev() {
            *slot = (rest % k) as u8;
            rest /= k;
        }
        Ok(Tuple { k: k as u8, entries })
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Positional index `a_1 k^(n-1) + .. + a_n`.
    pub fn index(&self) -> usize {
        encode(self.k(), &self.entries)
    }

    pub fn has_repetition(&self) -> bool {
        has_repetition(&self.entries)
    }

    pub fn oddsupp(&self) -> ValueSet {
        oddsupp(&self.entries)
    }
}

pub(crate) fn encode(k: usize, entries: &[u8]) -> usize {
    entries.iter().fold(0, |acc, &v| acc * k + v as usize)
}

/// Decodes `index` into `out` (most significant digit first).
pub(crate) fn decode_into(k: usize, mut index: usize, out: &mut [u8]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % k) as u8;
        index /= k;
    }
}

/// True iff two entries coincide.
pub fn has_repetition(entries: &[u8]) -> bool {
    let mut seen = 0u64;
    for &v in entries {
        if seen & (1 << v) != 0 {
            return true;
        }
        seen |= 1 << v;
    }
    false
}

/// The values occurring an odd number of times.
pub fn oddsupp(entries: &[u8]) -> ValueSet {
    ValueSet(entries.iter().fold(0u64, |acc, &v| acc ^ (1 << v)))
}

/// A total function `K^n -> K` stored as its full value table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KTable {
    k: u8,
    n: u8,
    values: Vec<u8>,
}

impl KTable {
    pub fn new(k: usize, n: usize, values: Vec<u8>) -> Result<Self, Error> {
        let len = checked_len(k, n)?;
        if values.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                got: values.len(),
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| v as usize >= k) {
            return Err(Error::ValueOutOfRange {
                value: bad as usize,
                k,
            });
        }
        Ok(KTable {
            k: k as u8,
            n: n as u8,
            values,
        })
    }

    /// Caller guarantees every value is below `k` and the length is `k^n`.
    pub(crate) fn from_raw(k: usize, n: usize, values: Vec<u8>) -> Self {
        debug_assert_eq!(Some(values.len()), table_len(k, n));
        debug_assert!(values.iter().all(|&v| (v as usize) < k));
        KTable {
            k: k as u8,
            n: n as u8,
            values,
        }
    }

    pub fn constant(k: usize, n: usize, value: u8) -> Result<Self, Error> {
        let len = checked_len(k, n)?;
        if value as usize >= k {
            return Err(Error::ValueOutOfRange {
                value: value as usize,
                k,
            });
        }
        Ok(KTable::from_raw(k, n, vec![value; len]))
    }

    pub fn zero(k: usize, n: usize) -> Result<Self, Error> {
        KTable::constant(k, n, 0)
    }

    /// Tabulates `f` over every point; results are reduced mod `k`.
    pub fn from_fn(k: usize, n: usize, mut f: impl FnMut(&[u8]) -> usize) -> Result<Self, Error> {
        let len = checked_len(k, n)?;
        let mut point = vec![0u8; n];
        let mut values = Vec::with_capacity(len);
        for m in 0..len {
            decode_into(k, m, &mut point);
            values.push((f(&point) % k) as u8);
        }
        Ok(KTable::from_raw(k, n, values))
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u8> {
        self.values
    }

    pub fn value(&self, index: usize) -> Result<u8, Error> {
        self.values.get(index).copied().ok_or(Error::IndexOutOfRange {
            index,
            len: self.len(),
        })
    }

    /// Value at a point given as raw entries.
    pub fn eval(&self, point: &[u8]) -> Result<u8, Error> {
        if point.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: point.len(),
            });
        }
        if let Some(&bad) = point.iter().find(|&&v| v >= self.k) {
            return Err(Error::ValueOutOfRange {
                value: bad as usize,
                k: self.k(),
            });
        }
        Ok(self.values[encode(self.k(), point)])
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn check_position(&self, position: usize) -> Result<usize, Error> {
        if position == 0 || position > self.n() {
            Err(Error::PositionOutOfRange {
                position,
                n: self.n(),
            })
        } else {
            Ok(position - 1)
        }
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(usize, usize), Error> {
        let a = self.check_position(i)?;
        let b = self.check_position(j)?;
        if a == b {
            return Err(Error::SamePosition(i));
        }
        Ok((a, b))
    }

    pub fn is_essential(&self, position: usize) -> Result<bool, Error> {
        let pos = self.check_position(position)?;
        let s = stride(self.k(), self.n(), pos);
        Ok(varies_along(&self.values, self.k(), s))
    }

    pub fn essential_set(&self) -> VarSet {
        VarSet::from_mask(self.n(), essential_mask(self.k(), self.n(), &self.values))
    }

    pub fn fictive_set(&self) -> VarSet {
        self.essential_set().complement()
    }

    pub fn ess(&self) -> usize {
        self.essential_set().len()
    }

    /// The minor `f_{i<-j}`: every occurrence of `x_i` is replaced by `x_j`.
    /// The result keeps arity `n` with position `i` fictive.
    pub fn identify(&self, i: usize, j: usize) -> Result<KTable, Error> {
        let (a, b) = self.check_pair(i, j)?;
        let mut out = vec![0u8; self.len()];
        identify_into(self.k(), self.n(), &self.values, a, b, &mut out);
        Ok(KTable::from_raw(self.k(), self.n(), out))
    }

    /// Minors over ordered pairs of distinct essential positions, in
    /// lexicographic pair order.
    pub fn nontrivial_minors(&self) -> Vec<((usize, usize), KTable)> {
        let ess = self.essential_set();
        let mut minors = Vec::new();
        for i in ess.iter() {
            for j in ess.iter().filter(|&j| j != i) {
                let mut out = vec![0u8; self.len()];
                identify_into(self.k(), self.n(), &self.values, i - 1, j - 1, &mut out);
                minors.push(((i, j), KTable::from_raw(self.k(), self.n(), out)));
            }
        }
        minors
    }

    /// Distinct functions among the nontrivial minors, in table order.
    pub fn minor_set(&self) -> Vec<KTable> {
        let mut set: Vec<KTable> = self.nontrivial_minors().into_iter().map(|(_, m)| m).collect();
        set.sort();
        set.dedup();
        set
    }

    fn check_shape(&self, other: &KTable) -> Result<(), Error> {
        if self.k != other.k || self.n != other.n {
            return Err(Error::ShapeMismatch {
                left: (self.k(), self.n()),
                right: (other.k(), other.n()),
            });
        }
        Ok(())
    }

    /// Pointwise `f + g mod k`.
    pub fn ring_add(&self, other: &KTable) -> Result<KTable, Error> {
        self.check_shape(other)?;
        let k = self.k;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| ((a as u16 + b as u16) % k as u16) as u8)
            .collect();
        Ok(KTable::from_raw(self.k(), self.n(), values))
    }

    /// Pointwise `f - g mod k`.
    pub fn ring_sub(&self, other: &KTable) -> Result<KTable, Error> {
        self.check_shape(other)?;
        let k = self.k;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| ((a as u16 + k as u16 - b as u16) % k as u16) as u8)
            .collect();
        Ok(KTable::from_raw(self.k(), self.n(), values))
    }

    /// `f(.., x_j, .., x_i, ..)` with positions `i` and `j` swapped.
    pub fn swap_positions(&self, i: usize, j: usize) -> Result<KTable, Error> {
        let (a, b) = self.check_pair(i, j)?;
        let (k, n) = (self.k(), self.n());
        let (sa, sb) = (stride(k, n, a), stride(k, n, b));
        let values = (0..self.len())
            .map(|m| {
                let da = (m / sa) % k;
                let db = (m / sb) % k;
                self.values[m - da * sa - db * sb + db * sa + da * sb]
            })
            .collect();
        Ok(KTable::from_raw(k, n, values))
    }

    /// `g(x_1, .., x_n) = f(x_{perm[0]}, .., x_{perm[n-1]})` for 1-based `perm`.
    pub fn permute(&self, perm: &[usize]) -> Result<KTable, Error> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        let mut seen = 0u64;
        for &p in perm {
            self.check_position(p)?;
            if seen & (1 << (p - 1)) != 0 {
                return Err(Error::SamePosition(p));
            }
            seen |= 1 << (p - 1);
        }
        let mut source = vec![0u8; n];
        KTable::from_fn(self.k(), n, |point| {
            for (slot, &p) in source.iter_mut().zip(perm) {
                *slot = point[p - 1];
            }
            self.values[encode(self.k(), &source)] as usize
        })
    }

    pub fn is_symmetric_pair(&self, i: usize, j: usize) -> Result<bool, Error> {
        Ok(self.swap_positions(i, j)? == *self)
    }

    /// Invariance under every permutation of the essential positions,
    /// checked through adjacent transpositions of the sorted essential set.
    pub fn is_totally_symmetric(&self) -> bool {
        let ess: Vec<usize> = self.essential_set().iter().collect();
        ess.windows(2)
            .all(|w| self.swap_positions(w[0], w[1]).map(|t| t == *self).unwrap_or(false))
    }

    /// Restriction to the given 1-based positions, in the given order, with
    /// every other variable fixed to 0. This is the lower-arity form of `f`
    /// when all dropped positions are fictive.
    pub fn project(&self, keep: &[usize]) -> Result<KTable, Error> {
        let mut positions = Vec::with_capacity(keep.len());
        for &p in keep {
            positions.push(self.check_position(p)?);
        }
        let strides: Vec<usize> = positions
            .iter()
            .map(|&pos| stride(self.k(), self.n(), pos))
            .collect();
        KTable::from_fn(self.k(), keep.len(), |point| {
            let m: usize = point.iter().zip(&strides).map(|(&v, &s)| v as usize * s).sum();
            self.values[m] as usize
        })
    }

    /// The induced map `Sub(K) -> K` on realized oddsupp values, when `f`
    /// is constant on every oddsupp fiber.
    pub fn oddsupp_determined(&self) -> Option<BTreeMap<ValueSet, u8>> {
        let mut point = vec![0u8; self.n()];
        let mut map = BTreeMap::new();
        for (m, &v) in self.values.iter().enumerate() {
            decode_into(self.k(), m, &mut point);
            match map.entry(oddsupp(&point)) {
                alloc::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
                alloc::collections::btree_map::Entry::Occupied(e) => {
                    if *e.get() != v {
                        return None;
                    }
                }
            }
        }
        Some(map)
    }
}

impl fmt::Debug for KTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KTable(k={}, n={}, {:?})", self.k, self.n, self.values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_2_1() -> KTable {
        // x1^0 x2^0 x3^0 + x1^1 x2^0 x3^2
        KTable::from_fn(3, 3, |x| match x {
            [0, 0, 0] | [1, 0, 2] => 1,
            _ => 0,
        })
        .unwrap()
    }

    fn xor() -> KTable {
        KTable::new(2, 2, vec![0, 1, 1, 0]).unwrap()
    }

    #[test]
    fn tuple_codec() {
        assert_eq!(Tuple::new(3, vec![1, 0, 2]).unwrap().index(), 11);
        assert_eq!(Tuple::new(2, vec![0, 0, 0, 0]).unwrap().index(), 0);
        assert_eq!(Tuple::from_index(3, 2, 7).unwrap().entries(), &[2, 1]);
        assert!(matches!(
            Tuple::new(3, vec![3]),
            Err(Error::ValueOutOfRange { value: 3, k: 3 })
        ));
        assert!(matches!(
            Tuple::from_index(3, 2, 9),
            Err(Error::IndexOutOfRange { index: 9, len: 9 })
        ));
        for (k, n) in [(2, 5), (3, 3), (4, 3), (5, 2)] {
            for m in 0..table_len(k, n).unwrap() {
                assert_eq!(Tuple::from_index(k, n, m).unwrap().index(), m);
            }
        }
    }

    #[test]
    fn essential_variables() {
        let f = example_2_1();
        assert!(f.is_essential(2).unwrap());
        assert_eq!(f.essential_set(), VarSet::full(3));
        let c = KTable::constant(3, 3, 2).unwrap();
        assert!((1..=3).all(|i| !c.is_essential(i).unwrap()));
        assert!(c.essential_set().is_empty());
        let g = KTable::from_fn(3, 3, |x| (x[0] == 0 && x[2] == 0) as usize).unwrap();
        assert!(!g.is_essential(2).unwrap());
        assert_eq!(xor().essential_set(), VarSet::full(2));
        assert!(matches!(
            f.is_essential(4),
            Err(Error::PositionOutOfRange { position: 4, n: 3 })
        ));
    }

    #[test]
    fn nullary_tables() {
        let c = KTable::constant(5, 0, 3).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.essential_set().is_empty());
        assert!(c.nontrivial_minors().is_empty());
    }

    #[test]
    fn identification_minors() {
        let f = example_2_1();
        let x1x3 = KTable::from_fn(3, 3, |x| (x[0] == 0 && x[2] == 0) as usize).unwrap();
        assert_eq!(f.identify(2, 1).unwrap(), x1x3);
        assert_eq!(x1x3.identify(2, 3).unwrap(), x1x3);
        assert_eq!(x1x3.identify(2, 1).unwrap(), x1x3);
        assert_eq!(f.nontrivial_minors().len(), 6);
        assert!(KTable::zero(3, 3).unwrap().nontrivial_minors().is_empty());
        assert!(matches!(f.identify(2, 2), Err(Error::SamePosition(2))));
        assert!(f.identify(0, 1).is_err());
    }

    #[test]
    fn ring_operations() {
        let f = example_2_1();
        assert!(f.ring_sub(&f).unwrap().is_zero());
        let two = KTable::constant(3, 2, 2).unwrap();
        assert_eq!(two.ring_add(&two).unwrap(), KTable::constant(3, 2, 1).unwrap());
        let h = KTable::from_fn(3, 3, |x| x[0] as usize * 2 + x[1] as usize).unwrap();
        assert_eq!(f.ring_sub(&h).unwrap().ring_add(&h).unwrap(), f);
        assert!(matches!(
            f.ring_add(&two),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn repetition_and_oddsupp() {
        assert!(has_repetition(&[0, 1, 0]));
        assert!(!has_repetition(&[0, 1, 2]));
        assert!(has_repetition(&[0, 1, 1, 0]));
        assert_eq!(oddsupp(&[1, 1, 2]), ValueSet(0b100));
        assert_eq!(oddsupp(&[0, 1, 2]), ValueSet(0b111));
        assert_eq!(oddsupp(&[2, 2, 2]), ValueSet(0b100));
    }

    #[test]
    fn pigeonhole_repetition() {
        for m in 0..table_len(3, 4).unwrap() {
            assert!(Tuple::from_index(3, 4, m).unwrap().has_repetition());
        }
    }

    #[test]
    fn symmetry_checks() {
        assert!(xor().is_totally_symmetric());
        let g = KTable::from_fn(3, 3, |x| (x[0] == 0 && x[2] == 0) as usize).unwrap();
        assert!(g.is_symmetric_pair(1, 3).unwrap());
        assert!(!g.is_symmetric_pair(1, 2).unwrap());
        assert!(!g.is_symmetric_pair(2, 3).unwrap());
        assert!(g.is_totally_symmetric());
        // x2^0 + 2 x1^1 x2^0 x3^2 + 2 x1^2 x2^0 x3^1
        let r = KTable::from_fn(3, 3, |x| match x {
            [1, 0, 2] | [2, 0, 1] => 0,
            [_, 0, _] => 1,
            _ => 0,
        })
        .unwrap();
        assert_eq!(r.eval(&[1, 0, 2]).unwrap(), 0);
        assert_eq!(r.eval(&[2, 0, 1]).unwrap(), 0);
        assert!(r.is_symmetric_pair(1, 3).unwrap());
        assert!(matches!(r.is_symmetric_pair(1, 4), Err(Error::PositionOutOfRange { .. })));
    }

    #[test]
    fn oddsupp_factorisation() {
        let c = KTable::constant(3, 3, 1).unwrap();
        let map = c.oddsupp_determined().unwrap();
        assert!(map.values().all(|&v| v == 1));

        let map = xor().oddsupp_determined().unwrap();
        assert_eq!(map.len(), 2);
        assert_eq!(map[&ValueSet(0)], 0);
        assert_eq!(map[&ValueSet(0b11)], 1);

        let x1 = KTable::from_fn(3, 2, |x| (x[0] == 0) as usize).unwrap();
        assert!(x1.oddsupp_determined().is_none());
    }

    #[test]
    fn projection_and_permutation() {
        let g = KTable::from_fn(3, 3, |x| (x[0] == 0 && x[2] == 0) as usize).unwrap();
        let p = g.project(&[1, 3]).unwrap();
        assert_eq!(p, KTable::from_fn(3, 2, |x| (x[0] == 0 && x[1] == 0) as usize).unwrap());
        let h = KTable::from_fn(3, 3, |x| x[0] as usize + 2 * x[1] as usize).unwrap();
        assert_eq!(h.permute(&[2, 1, 3]).unwrap(), h.swap_positions(1, 2).unwrap());
        assert_eq!(h.permute(&[1, 2, 3]).unwrap(), h);
        assert!(h.permute(&[1, 1, 3]).is_err());
    }
}
