//! Exact solvers for permutation problems.
//!
//! * [`solve_held_karp`]: dynamic programming over all subsets.
//! * [`solve_gurevich_shelah`]: polynomial-space divide and conquer for TSP.
//! * [`solve_chain_tradeoff`]: the subset DP restricted to relabelled chains
//!   of a set system, repeated for every tuple of a permutation cover.

use alloc::vec::Vec;

use crate::semiring::Semiring;

mod dp;
mod gurevich_shelah;
mod held_karp;
mod tradeoff;

pub use gurevich_shelah::{gurevich_shelah_space_bound, solve_gurevich_shelah};
pub use held_karp::solve_held_karp;
pub use tradeoff::{solve_chain_tradeoff, tradeoff_cover, tradeoff_space_bound, CoverStrategy, SolverConfig};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Largest number of table entries alive at once.
    pub peak_resident_entries: u64,
    /// Number of `⊕=` updates performed.
    pub total_dp_updates: u64,
    /// Number of cover tuples swept (1 for the classical solvers).
    pub cover_product_size: u64,
    /// Entries of the one extra DP run used to recover a witness.
    pub witness_resident_entries: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult<S: Semiring> {
    pub value: S,
    /// A permutation attaining `value`, when the semiring selects one.
    pub witness: Option<Vec<usize>>,
    pub stats: SolveStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    HeldKarp,
    GurevichShelah,
    ChainTradeoff,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::HeldKarp => "held-karp",
            Algorithm::GurevichShelah => "gurevich-shelah",
            Algorithm::ChainTradeoff => "chain-tradeoff",
        }
    }
}
