//! Space-time tradeoffs for permutation problems over idempotent semirings.
//!
//! The crate is organised around the *chain efficiency* of a set system
//! `A ⊆ 2^[n]`, `η(A) = (c(A) / (|A|² · n!))^(1/n)`, where `c(A)` counts the
//! maximal chains of `A`. A system with high efficiency, together with a
//! family of relabelings whose chains cover every permutation, gives a
//! restricted subset dynamic program with a small space-time product.
//!
//! * [`semiring`] and [`problem`] describe permutation problems of bounded
//!   degree, with adapters for TSP and directed feedback arc set.
//! * [`poset`] builds the posets of interest and counts their ideals and
//!   linear extensions exactly, by several independent algorithms.
//! * [`setsystem`] counts maximal chains, builds Cartesian powers and the
//!   tower of cubes.
//! * [`cover`] constructs permutation covers (greedy and randomized).
//! * [`solver`] has Held–Karp, the polynomial-space divide and conquer TSP
//!   solver and the chain-tradeoff solver.
//! * [`bounds`] evaluates the numeric upper bounds on efficiency.
//!
//! The crate is `no_std` (it needs `alloc`). The `parallel` feature pulls in
//! `std` and rayon and parallelises the heavier counting loops.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bigcount;
pub mod bounds;
pub mod cover;
mod error;
pub mod perm;
pub mod poset;
pub mod problem;
pub mod semiring;
pub mod setsystem;
pub mod solver;
mod wide;

pub use bigcount::BigCount;
pub use error::{Error, Result};

/// Default cap on resident table entries for the memory hungry methods.
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 28;

/// Resource limits shared by counting and solving routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of table entries held at once.
    pub max_entries: u64,
}

impl Budget {
    pub const fn new(max_entries: u64) -> Self {
        Budget { max_entries }
    }

    pub(crate) fn check(&self, what: &'static str, needed: u64) -> Result<()> {
        if needed > self.max_entries {
            Err(Error::ResourceLimit {
                what,
                needed,
                limit: self.max_entries,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_MEMORY_BUDGET)
    }
}
