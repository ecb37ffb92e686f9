//! Generators for the canonical gap families and exact counting formulas.
//!
//! Every generator is a deterministic iterator. In [`Mode::All`] coefficient
//! vectors are enumerated in radix-k order (first coefficient most
//! significant). In [`Mode::Sample`] draw number `i` uses its own ChaCha8
//! stream: seeded from the master seed, stream id `i`. Samples are therefore
//! independent of how a run is partitioned.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ktable::{check_base, decode_into, essential_mask, has_repetition, oddsupp, table_len, KTable, ValueSet};
use crate::{BigCount, Error};

/// Largest exponent a counting formula will materialise.
const MAX_EXPONENT: usize = 1 << 22;

/// Largest candidate space the minus-family search will scan.
pub const MINUS_SEARCH_CAP: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Gnn { k: usize, n: usize },
    RepFree { k: usize, n: usize },
    Gpk { k: usize, n: usize, p: usize },
    G2Plus { k: usize, n: usize },
    G2Minus { k: usize, n: usize },
    G2k3 { k: usize },
}

impl Family {
    pub const TAGS: [&'static str; 6] = ["gnn", "repfree", "gpk", "g2plus", "g2minus", "g2k3"];

    /// Builds a family from its tag; `n` defaults to 3 for `g2k3`.
    pub fn from_tag(tag: &str, k: usize, n: Option<usize>, p: Option<usize>) -> Result<Self, Error> {
        let need_n = || n.ok_or_else(|| Error::range("family", format!("{tag} needs n")));
        let family = match tag {
            "gnn" => Family::Gnn { k, n: need_n()? },
            "repfree" => Family::RepFree { k, n: need_n()? },
            "gpk" => Family::Gpk {
                k,
                n: need_n()?,
                p: p.ok_or_else(|| Error::range("family", "gpk needs p"))?,
            },
            "g2plus" => Family::G2Plus { k, n: need_n()? },
            "g2minus" => Family::G2Minus { k, n: need_n()? },
            "g2k3" => {
                if let Some(n) = n.filter(|&n| n != 3) {
                    return Err(Error::range("g2k3", format!("arity is fixed at 3, got n = {n}")));
                }
                Family::G2k3 { k }
            }
            other => return Err(Error::range("family", format!("unknown family {other:?}"))),
        };
        family.validate()?;
        Ok(family)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Family::Gnn { .. } => "gnn",
            Family::RepFree { .. } => "repfree",
            Family::Gpk { .. } => "gpk",
            Family::G2Plus { .. } => "g2plus",
            Family::G2Minus { .. } => "g2minus",
            Family::G2k3 { .. } => "g2k3",
        }
    }

    pub fn k(&self) -> usize {
        match *self {
            Family::Gnn { k, .. }
            | Family::RepFree { k, .. }
            | Family::Gpk { k, .. }
            | Family::G2Plus { k, .. }
            | Family::G2Minus { k, .. }
            | Family::G2k3 { k } => k,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            Family::Gnn { n, .. }
            | Family::RepFree { n, .. }
            | Family::Gpk { n, .. }
            | Family::G2Plus { n, .. }
            | Family::G2Minus { n, .. } => n,
            Family::G2k3 { .. } => 3,
        }
    }

    pub fn p(&self) -> Option<usize> {
        match *self {
            Family::Gnn { n, .. } => Some(n),
            Family::Gpk { p, .. } => Some(p),
            Family::G2Plus { .. } | Family::G2Minus { .. } | Family::G2k3 { .. } => Some(2),
            Family::RepFree { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let k = self.k();
        check_base(k)?;
        let n = self.n();
        let tag = self.tag();
        let ok = match *self {
            Family::Gnn { .. } | Family::RepFree { .. } => 2 <= n && n <= k,
            Family::Gpk { p, .. } => 2 <= p && p < n && n <= k,
            Family::G2Plus { .. } | Family::G2Minus { .. } => 3 < n && n <= k,
            Family::G2k3 { .. } => k >= 3,
        };
        if !ok {
            let need = match self {
                Family::Gnn { .. } | Family::RepFree { .. } => "2 <= n <= k",
                Family::Gpk { .. } => "2 <= p < n <= k",
                Family::G2Plus { .. } | Family::G2Minus { .. } => "3 < n <= k",
                Family::G2k3 { .. } => "k >= 3",
            };
            return Err(Error::range(tag, format!("needs {need}; got {self}")));
        }
        if table_len(k, n).is_none() {
            return Err(Error::TableTooLarge { k, n });
        }
        Ok(())
    }

    /// Number of tables the generator emits in all-mode.
    pub fn all_mode_len(&self) -> Result<BigCount, Error> {
        self.validate()?;
        let (k, n) = (self.k(), self.n());
        let r = repfree_count(k, n);
        Ok(match *self {
            Family::Gnn { .. } => count_gnn(k, n)?,
            Family::RepFree { .. } => pow(k, r)?,
            Family::Gpk { p, .. } => (pow(k, r)? - 1u32) * count_exact_ess(k, n, n - p)?,
            Family::G2Plus { .. } => count_g2_plus(k, n)?,
            Family::G2Minus { .. } => {
                let search = minus_candidates(k, n)?;
                BigUint::from(search.parts.len()) * pow(k, r)?
            }
            Family::G2k3 { .. } => BigUint::from(8u32) * (pow(k, k)? - k) * pow(k, r)?,
        })
    }

    /// The closed-form class size this family is checked against, if any.
    pub fn formula(&self) -> Result<Option<BigCount>, Error> {
        self.validate()?;
        let (k, n) = (self.k(), self.n());
        Ok(match *self {
            Family::Gnn { .. } => Some(count_gnn(k, n)?),
            Family::RepFree { .. } => Some(pow(k, repfree_count(k, n))?),
            Family::Gpk { p, .. } if p > 2 => Some(count_gpk(k, n, p)?),
            Family::Gpk { p, .. } => Some(gpk_formula(k, n, p)?),
            Family::G2Plus { .. } => Some(count_g2_plus(k, n)?),
            Family::G2Minus { .. } => None,
            Family::G2k3 { .. } => Some(count_g2k3(k)?),
        })
    }

    pub fn generate(&self, mode: Mode) -> Result<Generator, Error> {
        self.validate()?;
        let (k, n) = (self.k(), self.n());
        let inner = match *self {
            Family::Gnn { .. } => Inner::Coeff(CoeffGen::new(k, n, true, mode)),
            Family::RepFree { .. } => Inner::Coeff(CoeffGen::new(k, n, false, mode)),
            Family::Gpk { p, .. } => Inner::Gpk(GpkGen::new(k, n, p, mode)),
            Family::G2Plus { .. } => Inner::Gpk(GpkGen::new(k, n, 2, mode)),
            Family::G2Minus { .. } => Inner::Sum(SumGen::new(minus_candidates(k, n)?.parts, k, n, mode)),
            Family::G2k3 { k } => Inner::Sum(SumGen::new(g2k3_symmetric_parts(k)?, k, 3, mode)),
        };
        Ok(Generator { inner })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Gpk { k, n, p } => write!(f, "gpk(k={k}, n={n}, p={p})"),
            Family::G2k3 { k } => write!(f, "g2k3(k={k})"),
            _ => write!(f, "{}(k={}, n={})", self.tag(), self.k(), self.n()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    All,
    Sample { count: u64, seed: u64 },
}

/// Per-draw random stream; see the module docs for the split rule.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Indices of repetition-free tuples of `K^n`, ascending.
pub fn repfree_indices(k: usize, n: usize) -> Vec<usize> {
    let len = table_len(k, n).unwrap_or(0);
    let mut point = vec![0u8; n];
    (0..len)
        .filter(|&m| {
            decode_into(k, m, &mut point);
            !has_repetition(&point)
        })
        .collect()
}

/// `C(k, n) * n!`, the number of repetition-free tuples.
fn repfree_count(k: usize, n: usize) -> usize {
    if n > k {
        return 0;
    }
    (k - n + 1..=k).product()
}

/// Radix-k counter over a fixed number of digits, least significant last.
#[derive(Clone, Debug)]
struct Odometer {
    k: u8,
    digits: Vec<u8>,
    started: bool,
    done: bool,
}

impl Odometer {
    fn new(k: usize, width: usize) -> Self {
        Odometer {
            k: k as u8,
            digits: vec![0; width],
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> Option<&[u8]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.digits);
        }
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.k {
                return Some(&self.digits);
            }
            *d = 0;
        }
        self.done = true;
        None
    }

    fn reset(&mut self) {
        self.digits.iter_mut().for_each(|d| *d = 0);
        self.started = false;
        self.done = false;
    }
}

fn random_digits(rng: &mut ChaCha8Rng, k: usize, out: &mut [u8]) {
    for d in out.iter_mut() {
        *d = rng.random_range(0..k as u8);
    }
}

fn all_equal(digits: &[u8]) -> bool {
    digits.windows(2).all(|w| w[0] == w[1])
}

/// Table equal to `default` on tuples with a repetition and to `coeffs` on
/// the repetition-free ones.
fn assemble(k: usize, n: usize, rep: &[usize], default: u8, coeffs: &[u8]) -> KTable {
    let len = table_len(k, n).expect("validated shape");
    let mut values = vec![default; len];
    for (&m, &c) in rep.iter().zip(coeffs) {
        values[m] = c;
    }
    KTable::from_raw(k, n, values)
}

/// Stream of tables from some family.
pub struct Generator {
    inner: Inner,
}

enum Inner {
    Coeff(CoeffGen),
    Gpk(GpkGen),
    Sum(SumGen),
}

impl Iterator for Generator {
    type Item = KTable;

    fn next(&mut self) -> Option<KTable> {
        match &mut self.inner {
            Inner::Coeff(g) => g.next(),
            Inner::Gpk(g) => g.next(),
            Inner::Sum(g) => g.next(),
        }
    }
}

#[derive(Clone, Debug)]
enum Cursor {
    All(Odometer),
    Sample { next: u64, count: u64, seed: u64 },
}

impl Cursor {
    fn new(mode: Mode, k: usize, width: usize) -> Self {
        match mode {
            Mode::All => Cursor::All(Odometer::new(k, width)),
            Mode::Sample { count, seed } => Cursor::Sample { next: 0, count, seed },
        }
    }

    fn next_sample(&mut self) -> Option<ChaCha8Rng> {
        match self {
            Cursor::Sample { next, count, seed } if *next < *count => {
                let rng = sample_rng(*seed, *next);
                *next += 1;
                Some(rng)
            }
            _ => None,
        }
    }
}

/// The G_{n,k}^n form and the repetition-free (p_k) form: one coefficient
/// shared by every tuple with a repetition, a free coefficient per
/// repetition-free tuple.
struct CoeffGen {
    k: usize,
    n: usize,
    rep: Vec<usize>,
    /// Shared coefficient is free and the all-equal vectors are excluded;
    /// otherwise it is pinned to 0.
    gnn: bool,
    cursor: Cursor,
}

impl CoeffGen {
    fn new(k: usize, n: usize, gnn: bool, mode: Mode) -> Self {
        let rep = repfree_indices(k, n);
        let width = rep.len() + gnn as usize;
        CoeffGen {
            k,
            n,
            gnn,
            cursor: Cursor::new(mode, k, width),
            rep,
        }
    }

    fn build(&self, digits: &[u8]) -> KTable {
        if self.gnn {
            assemble(self.k, self.n, &self.rep, digits[0], &digits[1..])
        } else {
            assemble(self.k, self.n, &self.rep, 0, digits)
        }
    }
}

impl Iterator for CoeffGen {
    type Item = KTable;

    fn next(&mut self) -> Option<KTable> {
        if let Cursor::All(odo) = &mut self.cursor {
            loop {
                let digits = odo.advance()?;
                if self.gnn && all_equal(digits) {
                    continue;
                }
                let digits = digits.to_vec();
                return Some(self.build(&digits));
            }
        }
        let mut rng = self.cursor.next_sample()?;
        let mut digits = vec![0u8; self.rep.len() + self.gnn as usize];
        loop {
            random_digits(&mut rng, self.k, &mut digits);
            if !(self.gnn && all_equal(&digits)) {
                return Some(self.build(&digits));
            }
        }
    }
}

/// Lexicographic `size`-subsets of `1..=n`.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for p in start..=n {
            cur.push(p);
            rec(p + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, size, &mut Vec::new(), &mut out);
    out
}

/// For each point of `K^n`, its index in the table over the given positions.
fn lift_map(k: usize, n: usize, positions: &[usize]) -> Vec<usize> {
    let len = table_len(k, n).expect("validated shape");
    let mut point = vec![0u8; n];
    (0..len)
        .map(|m| {
            decode_into(k, m, &mut point);
            positions.iter().fold(0, |acc, &p| acc * k + point[p - 1] as usize)
        })
        .collect()
}

fn exact_ess(k: usize, arity: usize, h: &[u8]) -> bool {
    let full = if arity == 0 { 0 } else { (1u64 << arity) - 1 };
    essential_mask(k, arity, h) == full
}

/// `f = h + g`: `h` depends exactly on a chosen `(n-p)`-subset of the
/// positions, `g` is a nonzero function supported on repetition-free tuples
/// (so all of its minors are the zero table).
struct GpkGen {
    k: usize,
    n: usize,
    rep: Vec<usize>,
    subsets: Vec<Vec<usize>>,
    lifts: Vec<Vec<usize>>,
    h_arity: usize,
    state: GpkState,
}

enum GpkState {
    All {
        subset: usize,
        h: Odometer,
        current_h: Option<Vec<u8>>,
        g: Odometer,
    },
    Sample(Cursor),
}

impl GpkGen {
    fn new(k: usize, n: usize, p: usize, mode: Mode) -> Self {
        let h_arity = n - p;
        let subsets = subsets(n, h_arity);
        let lifts = subsets.iter().map(|s| lift_map(k, n, s)).collect();
        let rep = repfree_indices(k, n);
        let h_len = table_len(k, h_arity).expect("validated shape");
        let state = match mode {
            Mode::All => GpkState::All {
                subset: 0,
                h: Odometer::new(k, h_len),
                current_h: None,
                g: Odometer::new(k, rep.len()),
            },
            Mode::Sample { .. } => GpkState::Sample(Cursor::new(mode, k, 0)),
        };
        GpkGen {
            k,
            n,
            rep,
            subsets,
            lifts,
            h_arity,
            state,
        }
    }

    fn h_is_exact(&self, h: &[u8]) -> bool {
        exact_ess(self.k, self.h_arity, h)
    }

    fn build(&self, subset: usize, h: &[u8], g: &[u8]) -> KTable {
        let lift = &self.lifts[subset];
        let mut values: Vec<u8> = lift.iter().map(|&m| h[m]).collect();
        let k = self.k as u8;
        for (&m, &c) in self.rep.iter().zip(g) {
            values[m] = (values[m] + c) % k;
        }
        KTable::from_raw(self.k, self.n, values)
    }
}

impl Iterator for GpkGen {
    type Item = KTable;

    fn next(&mut self) -> Option<KTable> {
        match &mut self.state {
            GpkState::All { .. } => loop {
                let GpkState::All { subset, h, current_h, g } = &mut self.state else {
                    unreachable!()
                };
                if *subset >= self.subsets.len() {
                    return None;
                }
                if current_h.is_none() {
                    match h.advance() {
                        Some(digits) => {
                            let digits = digits.to_vec();
                            if !exact_ess(self.k, self.h_arity, &digits) {
                                continue;
                            }
                            *current_h = Some(digits);
                            g.reset();
                            // skip the zero g
                            g.advance();
                        }
                        None => {
                            *subset += 1;
                            h.reset();
                            continue;
                        }
                    }
                }
                let GpkState::All { subset, current_h, g, .. } = &mut self.state else {
                    unreachable!()
                };
                match g.advance() {
                    Some(gd) => {
                        let gd = gd.to_vec();
                        let (s, hd) = (*subset, current_h.clone().expect("set above"));
                        return Some(self.build(s, &hd, &gd));
                    }
                    None => *current_h = None,
                }
            },
            GpkState::Sample(cursor) => {
                let mut rng = cursor.next_sample()?;
                let subset = rng.random_range(0..self.subsets.len());
                let mut h = vec![0u8; table_len(self.k, self.h_arity).expect("validated shape")];
                loop {
                    random_digits(&mut rng, self.k, &mut h);
                    if self.h_is_exact(&h) {
                        break;
                    }
                }
                let mut g = vec![0u8; self.rep.len()];
                loop {
                    random_digits(&mut rng, self.k, &mut g);
                    if g.iter().any(|&c| c != 0) {
                        break;
                    }
                }
                Some(self.build(subset, &h, &g))
            }
        }
    }
}

/// `f = t + g` for `t` from a fixed list of parts supported on tuples with a
/// repetition and `g` ranging over every function supported on the
/// repetition-free tuples (zero included).
struct SumGen {
    k: usize,
    n: usize,
    parts: Vec<KTable>,
    rep: Vec<usize>,
    part: usize,
    g: Odometer,
    cursor: Cursor,
}

impl SumGen {
    fn new(parts: Vec<KTable>, k: usize, n: usize, mode: Mode) -> Self {
        let rep = repfree_indices(k, n);
        SumGen {
            k,
            n,
            g: Odometer::new(k, rep.len()),
            cursor: Cursor::new(mode, k, 0),
            parts,
            rep,
            part: 0,
        }
    }

    fn build(&self, part: usize, g: &[u8]) -> KTable {
        let mut values = self.parts[part].values().to_vec();
        for (&m, &c) in self.rep.iter().zip(g) {
            values[m] = c;
        }
        KTable::from_raw(self.k, self.n, values)
    }
}

impl Iterator for SumGen {
    type Item = KTable;

    fn next(&mut self) -> Option<KTable> {
        if let Cursor::All(_) = self.cursor {
            loop {
                if self.part >= self.parts.len() {
                    return None;
                }
                match self.g.advance() {
                    Some(g) => {
                        let g = g.to_vec();
                        return Some(self.build(self.part, &g));
                    }
                    None => {
                        self.part += 1;
                        self.g.reset();
                    }
                }
            }
        }
        if self.parts.is_empty() {
            return None;
        }
        let mut rng = self.cursor.next_sample()?;
        let part = rng.random_range(0..self.parts.len());
        let mut g = vec![0u8; self.rep.len()];
        random_digits(&mut rng, self.k, &mut g);
        Some(self.build(part, &g))
    }
}

fn check_alpha(alpha: u8, k: usize) -> Result<(), Error> {
    check_base(k)?;
    if alpha as usize >= k {
        return Err(Error::ValueOutOfRange {
            value: alpha as usize,
            k,
        });
    }
    Ok(())
}

/// `s(x1, x2) = 1` iff `x1 = x2`.
pub fn aux_s(k: usize) -> Result<KTable, Error> {
    KTable::from_fn(k, 2, |x| (x[0] == x[1]) as usize)
}

/// `u^(a)(x1, x2) = 1` iff `x1 = x2 != a`.
pub fn aux_u(alpha: u8, k: usize) -> Result<KTable, Error> {
    check_alpha(alpha, k)?;
    KTable::from_fn(k, 2, |x| (x[0] == x[1] && x[0] != alpha) as usize)
}

/// `v^(a)(x1, x2) = 1` iff `x1 = a != x2`.
pub fn aux_v(alpha: u8, k: usize) -> Result<KTable, Error> {
    check_alpha(alpha, k)?;
    KTable::from_fn(k, 2, |x| (x[0] == alpha && x[1] != alpha) as usize)
}

/// Ternary symmetric-part shapes; each is summed over `i` with weight `a[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetricForm {
    /// `x3^i s(x1,x2) + x2^i u^(i)(x1,x3) + x1^i u^(i)(x2,x3)`
    Singleton,
    /// `x1^i x2^i + x1^i u^(i)(x2,x3) + x2^i u^(i)(x1,x3)`
    OneRepeated,
    /// `x1^i x2^i + x2^i v^(i)(x3,x1) + x2^i u^(i)(x1,x3)`
    TwoRepeated,
    /// `x1^i x2^i + x1^i v^(i)(x3,x2) + x2^i v^(i)(x3,x1)`
    Repeated,
}

impl SymmetricForm {
    /// Argument permutations giving the distinct variants of each shape.
    pub fn permutations(self) -> &'static [[usize; 3]] {
        match self {
            SymmetricForm::Singleton | SymmetricForm::Repeated => &[[1, 2, 3]],
            SymmetricForm::OneRepeated => &[[1, 2, 3], [1, 3, 2], [2, 3, 1]],
            SymmetricForm::TwoRepeated => &[[1, 2, 3], [1, 3, 2], [2, 1, 3]],
        }
    }

    pub const ALL: [SymmetricForm; 4] = [
        SymmetricForm::Singleton,
        SymmetricForm::OneRepeated,
        SymmetricForm::TwoRepeated,
        SymmetricForm::Repeated,
    ];
}

/// `sum_i a[i] * [form term_i]` as a ternary table over `K`, `|a| = k`.
pub fn symmetric_form(form: SymmetricForm, a: &[u8]) -> Result<KTable, Error> {
    let k = a.len();
    check_base(k)?;
    if let Some(&bad) = a.iter().find(|&&c| c as usize >= k) {
        return Err(Error::ValueOutOfRange {
            value: bad as usize,
            k,
        });
    }
    let s = aux_s(k)?;
    let us: Vec<KTable> = (0..k as u8).map(|i| aux_u(i, k)).collect::<Result<_, _>>()?;
    let vs: Vec<KTable> = (0..k as u8).map(|i| aux_v(i, k)).collect::<Result<_, _>>()?;
    let ev = |t: &KTable, x: u8, y: u8| t.values()[x as usize * k + y as usize] as usize;
    KTable::from_fn(k, 3, |x| {
        let (x1, x2, x3) = (x[0], x[1], x[2]);
        let id = |v: u8, i: usize| (v as usize == i) as usize;
        (0..k)
            .map(|i| {
                let (u, v) = (&us[i], &vs[i]);
                let term = match form {
                    SymmetricForm::Singleton => {
                        id(x3, i) * ev(&s, x1, x2) + id(x2, i) * ev(u, x1, x3) + id(x1, i) * ev(u, x2, x3)
                    }
                    SymmetricForm::OneRepeated => {
                        id(x1, i) * id(x2, i) + id(x1, i) * ev(u, x2, x3) + id(x2, i) * ev(u, x1, x3)
                    }
                    SymmetricForm::TwoRepeated => {
                        id(x1, i) * id(x2, i) + id(x2, i) * ev(v, x3, x1) + id(x2, i) * ev(u, x1, x3)
                    }
                    SymmetricForm::Repeated => {
                        id(x1, i) * id(x2, i) + id(x1, i) * ev(v, x3, x2) + id(x2, i) * ev(v, x3, x1)
                    }
                };
                a[i] as usize * term
            })
            .sum()
    })
}

/// Non-constant coefficient vectors of length `k`, in radix order.
pub fn admissible_coeffs(k: usize) -> Vec<Vec<u8>> {
    let mut odo = Odometer::new(k, k);
    let mut out = Vec::new();
    while let Some(d) = odo.advance() {
        if !all_equal(d) {
            out.push(d.to_vec());
        }
    }
    out
}

/// The `8 (k^k - k)` symmetric parts of the ternary gap-2 forms, ordered by
/// coefficient vector, then shape, then permutation.
pub fn g2k3_symmetric_parts(k: usize) -> Result<Vec<KTable>, Error> {
    if k < 3 {
        return Err(Error::range("g2k3", format!("needs k >= 3, got {k}")));
    }
    if table_len(k, k).is_none() {
        return Err(Error::TableTooLarge { k, n: k });
    }
    let mut parts = Vec::new();
    for a in admissible_coeffs(k) {
        for form in SymmetricForm::ALL {
            let base = symmetric_form(form, &a)?;
            for perm in form.permutations() {
                parts.push(base.permute(perm)?);
            }
        }
    }
    Ok(parts)
}

/// Outcome of the oddsupp-candidate search for the minus family.
#[derive(Clone, Debug)]
pub struct MinusSearch {
    /// Size of the candidate space: `k^(number of admissible subsets)`.
    pub points: u64,
    /// Value subsets with size of the parity of `n`, at most `n`.
    pub subsets: Vec<ValueSet>,
    /// Subsets that occur as the oddsupp of some tuple with a repetition.
    pub realized: Vec<ValueSet>,
    /// Distinct valid symmetric parts `t`, in candidate order.
    pub parts: Vec<KTable>,
}

/// Scans every map `t*: subsets -> K`, builds `t = t* o oddsupp` on tuples
/// with a repetition (0 elsewhere) and keeps the `t` whose minors satisfy
/// `Ess(t_{i<-j}) = X_n \ {x_i, x_j}`. Assignments differing only on
/// subsets realized solely by repetition-free tuples give the same `t` and
/// are folded into the one that is zero there.
pub fn minus_candidates(k: usize, n: usize) -> Result<MinusSearch, Error> {
    Family::G2Minus { k, n }.validate()?;
    let subsets: Vec<ValueSet> = (0u64..1 << k)
        .map(ValueSet)
        .filter(|s| s.len() <= n && s.len() % 2 == n % 2)
        .collect();
    let points = (k as u64)
        .checked_pow(subsets.len() as u32)
        .filter(|&p| p <= MINUS_SEARCH_CAP)
        .ok_or_else(|| Error::Infeasible {
            required: BigUint::from(k).pow(subsets.len() as u32),
            cap: MINUS_SEARCH_CAP,
        })?;

    let len = table_len(k, n).expect("validated shape");
    let mut point = vec![0u8; n];
    // slot of each table entry in `subsets`, or None for repetition-free tuples
    let mut slot_of: Vec<Option<usize>> = Vec::with_capacity(len);
    let mut realized_mask = vec![false; subsets.len()];
    for m in 0..len {
        decode_into(k, m, &mut point);
        if has_repetition(&point) {
            let slot = subsets.binary_search(&oddsupp(&point)).expect("parity and size hold");
            realized_mask[slot] = true;
            slot_of.push(Some(slot));
        } else {
            slot_of.push(None);
        }
    }
    let realized = subsets
        .iter()
        .zip(&realized_mask)
        .filter(|(_, &r)| r)
        .map(|(&s, _)| s)
        .collect();

    let mut parts = Vec::new();
    let mut odo = Odometer::new(k, subsets.len());
    let mut minor = vec![0u8; len];
    while let Some(assign) = odo.advance() {
        if assign.iter().zip(&realized_mask).any(|(&v, &r)| !r && v != 0) {
            continue;
        }
        let values: Vec<u8> = slot_of.iter().map(|s| s.map_or(0, |s| assign[s])).collect();
        let valid = (0..n).all(|i| {
            (0..n).filter(|&j| j != i).all(|j| {
                crate::ktable::identify_into(k, n, &values, i, j, &mut minor);
                let full = (1u64 << n) - 1;
                essential_mask(k, n, &minor) == full & !(1 << i) & !(1 << j)
            })
        });
        if valid {
            parts.push(KTable::from_raw(k, n, values));
        }
    }
    Ok(MinusSearch {
        points,
        subsets,
        realized,
        parts,
    })
}

fn pow(base: usize, exp: usize) -> Result<BigCount, Error> {
    if exp > MAX_EXPONENT {
        return Err(Error::range("count", format!("exponent {exp} is too large to evaluate")));
    }
    Ok(BigUint::from(base).pow(exp as u32))
}

fn binomial(n: usize, r: usize) -> BigCount {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `k^e` with `e = k^(n-j)`, guarding the inner power.
fn tower(k: usize, height: usize) -> Result<BigCount, Error> {
    let exp = table_len(k, height).filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| {
        Error::range("count", format!("k^(k^{height}) for k = {k} is too large to evaluate"))
    })?;
    pow(k, exp)
}

fn check_counting(family: &'static str, k: usize, ok: bool, need: &str, got: String) -> Result<(), Error> {
    check_base(k)?;
    if ok {
        Ok(())
    } else {
        Err(Error::range(family, format!("needs {need}; got {got}")))
    }
}

/// `|G_{n,k}^n| = k^(C(k,n) n! + 1) - k` for `2 <= n <= k`.
pub fn count_gnn(k: usize, n: usize) -> Result<BigCount, Error> {
    check_counting("gnn", k, 2 <= n && n <= k, "2 <= n <= k", format!("k = {k}, n = {n}"))?;
    Ok(pow(k, repfree_count(k, n) + 1)? - k)
}

/// Functions in `P_k^n` with exactly `m` essential variables, by
/// inclusion-exclusion: `sum_{j=p}^n (-1)^(j-p) C(j,p) C(n,j) k^(k^(n-j))`
/// with `p = n - m`.
pub fn count_exact_ess(k: usize, n: usize, m: usize) -> Result<BigCount, Error> {
    check_counting("exact-ess", k, m <= n, "m <= n", format!("n = {n}, m = {m}"))?;
    let p = n - m;
    let (mut plus, mut minus) = (BigUint::zero(), BigUint::zero());
    for j in p..=n {
        let term = binomial(j, p) * binomial(n, j) * tower(k, n - j)?;
        if (j - p) % 2 == 0 {
            plus += term;
        } else {
            minus += term;
        }
    }
    Ok(plus - minus)
}

fn gpk_formula(k: usize, n: usize, p: usize) -> Result<BigCount, Error> {
    Ok((pow(k, repfree_count(k, n))? - 1u32) * count_exact_ess(k, n, n - p)?)
}

/// `|G_{p,k}^n| = (k^(C(k,n) n!) - 1) |P_{n-p,k}^n|` for `2 < p < n <= k`.
pub fn count_gpk(k: usize, n: usize, p: usize) -> Result<BigCount, Error> {
    check_counting(
        "gpk",
        k,
        2 < p && p < n && n <= k,
        "2 < p < n <= k",
        format!("k = {k}, n = {n}, p = {p}"),
    )?;
    gpk_formula(k, n, p)
}

/// `|G_{2,k}^{n,+}| = (k^(C(k,n) n!) - 1) sum_{j=2}^n (-1)^j C(j,2) C(n,j)
/// k^(k^(n-j))` for `3 < n <= k`.
pub fn count_g2_plus(k: usize, n: usize) -> Result<BigCount, Error> {
    check_counting("g2plus", k, 3 < n && n <= k, "3 < n <= k", format!("k = {k}, n = {n}"))?;
    let (mut plus, mut minus) = (BigUint::zero(), BigUint::zero());
    for j in 2..=n {
        let term = binomial(j, 2) * binomial(n, j) * tower(k, n - j)?;
        if j % 2 == 0 {
            plus += term;
        } else {
            minus += term;
        }
    }
    Ok((pow(k, repfree_count(k, n))? - 1u32) * (plus - minus))
}

/// The closed form `8 * 729 * C(k,3) * (k^k - k)` for the ternary gap-2
/// class. Exact at `k = 3` only up to the caveats in [`g2k3_experiment`].
pub fn count_g2k3(k: usize) -> Result<BigCount, Error> {
    check_counting("g2k3", k, k >= 3, "k >= 3", format!("k = {k}"))?;
    Ok(BigUint::from(5832u32) * binomial(k, 3) * (pow(k, k)? - k))
}

/// Size of the repetition-free family: `k^(C(k,n) n!)`.
pub fn count_repfree(k: usize, n: usize) -> Result<BigCount, Error> {
    check_counting("repfree", k, n <= k, "n <= k", format!("k = {k}, n = {n}"))?;
    pow(k, repfree_count(k, n))
}

/// Comparison of the ternary gap-2 forms against the closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2k3Experiment {
    pub k: usize,
    /// Distinct symmetric parts produced by the forms.
    pub symmetric_parts: usize,
    /// Tables the generator emits: parts times repetition-free completions.
    pub emitted: BigCount,
    /// [`count_g2k3`].
    pub formula: BigCount,
    /// Emitted tables with all three variables essential (they then have
    /// gap 2 since every minor has exactly one essential variable).
    pub members: BigCount,
    /// Emitted tables with a fictive variable, per symmetric part shape.
    pub degenerate: BigCount,
}

/// Counts, without enumerating the completions, how many generated tables
/// really have three essential variables. For a fixed symmetric part the
/// completions making a set `F` of variables fictive are counted exactly
/// (union-find over points that must agree), then combined by
/// inclusion-exclusion over `F`.
pub fn g2k3_experiment(k: usize) -> Result<G2k3Experiment, Error> {
    let mut parts = g2k3_symmetric_parts(k)?;
    let generated = parts.len();
    parts.sort();
    parts.dedup();
    if parts.len() != generated {
        return Err(Error::range("g2k3", "symmetric parts are not pairwise distinct"));
    }
    let r = repfree_count(k, 3);
    let completions = pow(k, r)?;
    let mut degenerate = BigUint::zero();
    for part in &parts {
        let (mut plus, mut minus) = (BigUint::zero(), BigUint::zero());
        for fset in 1u8..8 {
            let count = match forced_completions(part, fset) {
                Some(free) => pow(k, free)?,
                None => BigUint::zero(),
            };
            if fset.count_ones() % 2 == 1 {
                plus += count;
            } else {
                minus += count;
            }
        }
        degenerate += plus - minus;
    }
    let emitted = BigUint::from(parts.len()) * &completions;
    Ok(G2k3Experiment {
        k,
        symmetric_parts: parts.len(),
        members: &emitted - &degenerate,
        emitted,
        formula: count_g2k3(k)?,
        degenerate,
    })
}

/// Number of free classes when every variable in `fset` (bit `i` for
/// position `i + 1`) must be fictive and values on tuples with a repetition
/// are fixed by `part`; `None` on a contradiction.
fn forced_completions(part: &KTable, fset: u8) -> Option<usize> {
    let k = part.k();
    let len = part.len();
    let mut parent: Vec<usize> = (0..len).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut point = [0u8; 3];
    for m in 0..len {
        decode_into(k, m, &mut point);
        for (pos, &digit) in point.iter().enumerate() {
            if fset & (1 << pos) == 0 {
                continue;
            }
            let base = m - digit as usize * crate::ktable::stride(k, 3, pos);
            let (a, b) = (find(&mut parent, m), find(&mut parent, base));
            parent[a] = b;
        }
    }
    let mut fixed: Vec<Option<u8>> = vec![None; len];
    for m in 0..len {
        decode_into(k, m, &mut point);
        if !has_repetition(&point) {
            continue;
        }
        let root = find(&mut parent, m);
        let v = part.values()[m];
        match fixed[root] {
            None => fixed[root] = Some(v),
            Some(w) if w != v => return None,
            Some(_) => {}
        }
    }
    Some((0..len).filter(|&m| find(&mut parent, m) == m && fixed[m].is_none()).count())
}
