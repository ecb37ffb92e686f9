//! Analysis of finite k-valued functions by their essential arity gap.
//!
//! A function `f: K^n -> K` over `K = {0, .., k-1}` is stored densely as a
//! [`KTable`]. On top of that the crate provides essential-variable scans,
//! identification minors, gap computation and class membership ([`gap`]),
//! constructive generators and exact counting formulas for the canonical
//! families ([`families`]), brute-force census kernels ([`census`]) and a
//! sum-of-conjunctions text front end ([`scform`]).
//!
//! The crate is `no_std` and only needs `alloc`. Threads, files and the
//! command line live in the `gapkit` companion crate.

#![no_std]

extern crate alloc;

pub mod census;
mod error;
pub mod families;
pub mod gap;
pub mod ktable;
pub mod scform;

pub use error::Error;
pub use ktable::{KTable, Tuple, ValueSet, VarSet};

/// Exact non-negative integer used by every counting routine.
pub type BigCount = num_bigint::BigUint;

/// Largest supported base.
pub const MAX_K: usize = 64;

/// Largest supported table length `k^n`.
pub const MAX_TABLE_LEN: usize = 1 << 24;
