//! Permutations of `0..n` stored as image arrays.
//!
//! Composition follows `(p · q)(i) = p(q(i))`. A permutation `π` is also read
//! as the sequence `π(0), π(1), …, π(n-1)`; its prefix sets are what chain
//! checks look at.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::{Error, Result};

pub fn is_permutation(p: &[usize]) -> bool {
    let n = p.len();
    if n > 64 {
        let mut seen = alloc::vec![false; n];
        for &x in p {
            if x >= n || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        return true;
    }
    let mut seen = 0u64;
    for &x in p {
        if x >= n || seen >> x & 1 == 1 {
            return false;
        }
        seen |= 1 << x;
    }
    true
}

pub fn check_permutation(p: &[usize]) -> Result<()> {
    if is_permutation(p) {
        Ok(())
    } else {
        Err(Error::InvalidPermutation { n: p.len() })
    }
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// `outer · inner`, i.e. `i ↦ outer(inner(i))`.
pub fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    debug_assert_eq!(outer.len(), inner.len());
    inner.iter().map(|&i| outer[i]).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Advances to the next permutation in lexicographic order, returning
/// `false` (and leaving `p` sorted) after the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p = identity(n);
    loop {
        out.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    out
}

pub fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lexicographic rank (Lehmer code) for `n ≤ 20`.
pub fn rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut used = 0u64;
    let mut r = 0usize;
    for (i, &x) in p.iter().enumerate() {
        let smaller_unused = (x as u32) - (used & ((1u64 << x) - 1)).count_ones();
        r += smaller_unused as usize * factorial_u64(n - 1 - i) as usize;
        used |= 1 << x;
    }
    r
}

pub fn unrank(n: usize, mut r: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = identity(n);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial_u64(n - 1 - i) as usize;
        out.push(pool.remove(r / f));
        r %= f;
    }
    out
}

/// Bitmasks of the prefix sets `{p(0), …, p(j-1)}` for `j = 0..=n`.
pub fn prefix_masks(p: &[usize]) -> impl Iterator<Item = u64> + '_ {
    core::iter::once(0u64).chain(p.iter().scan(0u64, |acc, &x| {
        *acc |= 1 << x;
        Some(*acc)
    }))
}

/// Reproducible permutation source: ChaCha8 seeded from a `u64`, Fisher–Yates
/// with rejection sampling on 64-bit draws. The stream depends only on the
/// seed, never on the platform word size.
pub struct PermutationSampler {
    rng: ChaCha8Rng,
}

impl PermutationSampler {
    pub fn new(seed: u64) -> Self {
        PermutationSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform integer in `0..bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
        loop {
            let v = self.rng.next_u64();
            if v <= zone {
                return v % bound;
            }
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p = identity(n);
        for i in (1..n).rev() {
            let j = self.below(i as u64 + 1) as usize;
            p.swap(i, j);
        }
        p
    }
}
