//! Permutation covers: families `F` such that every `π ∈ S_n` has some
//! `π' ∈ F` with `π' · π` tracing a maximal chain of the set system.
//!
//! `S(π') = {π : π' · π ∈ C}` where `C` is the set of chain permutations, so
//! `S(π') = π'⁻¹ · C`. Both constructions work on lexicographic ranks of
//! `S_n` with bitsets, which is why certification is limited to small `n`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::perm::{compose, factorial_u64, identity, inverse, rank, unrank, PermutationSampler};
use crate::setsystem::SetSystem;
use crate::{Error, Result};

/// Largest universe whose `S_n` the greedy construction materialises.
pub const MAX_GREEDY_UNIVERSE: usize = 7;
/// Largest universe [`verify_cover`] enumerates.
pub const MAX_VERIFY_UNIVERSE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationCover {
    pub n: usize,
    pub perms: Vec<Vec<usize>>,
    /// Full coverage checked by enumeration.
    pub certified: bool,
    /// How the size was chosen, for uncertified covers.
    pub note: Option<String>,
}

impl PermutationCover {
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }
}

/// Maximal chains of `a` as sequences.
pub fn chain_permutations(a: &SetSystem) -> Vec<Vec<usize>> {
    fn walk(a: &SetSystem, set: u64, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if seq.len() == a.universe() {
            out.push(seq.clone());
            return;
        }
        for x in 0..a.universe() {
            if set >> x & 1 == 0 && a.contains(set | 1 << x) {
                seq.push(x);
                walk(a, set | 1 << x, seq, out);
                seq.pop();
            }
        }
    }
    let mut out = Vec::new();
    if a.contains(0) {
        walk(a, 0, &mut Vec::new(), &mut out);
    }
    out
}

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(len: usize) -> Self {
        Bitset(alloc::vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// `(n! / c) · (n ln n)²`, the size guarantee for greedy covers.
pub fn greedy_size_bound(n: usize, chains: u64) -> f64 {
    let nl = n as f64 * libm::log(n as f64);
    factorial_u64(n) as f64 / chains as f64 * nl * nl
}

/// Greedy set cover over `S_n`; ties go to the lexicographically smallest
/// permutation.
pub fn greedy_cover(a: &SetSystem) -> Result<PermutationCover> {
    let n = a.universe();
    if n > MAX_GREEDY_UNIVERSE {
        return Err(Error::ResourceLimit {
            what: "greedy cover universe",
            needed: n as u64,
            limit: MAX_GREEDY_UNIVERSE as u64,
        });
    }
    let chains = chain_permutations(a);
    if chains.is_empty() {
        return Err(Error::NoChains);
    }
    let total = factorial_u64(n) as usize;
    let mut covered = Bitset::new(total);
    let mut remaining = total;
    let mut perms = Vec::new();
    // member ranks of S(π') for every π', computed once
    let sets: Vec<Vec<u32>> = (0..total)
        .map(|r| {
            let inv = inverse(&unrank(n, r));
            chains.iter().map(|c| rank(&compose(&inv, c)) as u32).collect()
        })
        .collect();
    while remaining > 0 {
        let mut best = (0usize, 0usize);
        for (r, s) in sets.iter().enumerate() {
            let gain = s.iter().filter(|&&x| !covered.get(x as usize)).count();
            if gain > best.1 {
                best = (r, gain);
            }
        }
        for &x in &sets[best.0] {
            if !covered.get(x as usize) {
                covered.set(x as usize);
                remaining -= 1;
            }
        }
        perms.push(unrank(n, best.0));
    }
    Ok(PermutationCover {
        n,
        perms,
        certified: true,
        note: None,
    })
}

/// `⌈factor · (n!/c(A)) · n ln n⌉` (at least one) seeded uniform permutations.
pub fn randomized_cover(a: &SetSystem, seed: u64, factor: f64) -> Result<PermutationCover> {
    let n = a.universe();
    let chains = a.count_maximal_chains();
    if chains.is_zero() {
        return Err(Error::NoChains);
    }
    let ratio = crate::bigcount::BigCount::factorial(n as u64).to_f64() / chains.to_f64();
    let target = factor * ratio * n as f64 * libm::log(n as f64);
    let count = (libm::ceil(target) as usize).max(1);
    let mut sampler = PermutationSampler::new(seed);
    let perms: Vec<Vec<usize>> = (0..count).map(|_| sampler.permutation(n)).collect();
    let mut cover = PermutationCover {
        n,
        perms,
        certified: false,
        note: None,
    };
    if n <= MAX_GREEDY_UNIVERSE {
        cover.certified = verify_cover(a, &cover)?;
        if !cover.certified {
            cover.note = Some(alloc::format!(
                "{count} samples did not cover S_{n}; increase the size factor"
            ));
        }
    } else {
        cover.note = Some(alloc::format!(
            "{count} samples = {factor} · (n!/c) · n ln n; each π is missed with probability at most n^-n·{factor}, not enumerated"
        ));
    }
    Ok(cover)
}

/// Checks every `π ∈ S_n` for a covering `π'`.
pub fn verify_cover(a: &SetSystem, cover: &PermutationCover) -> Result<bool> {
    let n = a.universe();
    if cover.n != n || cover.perms.iter().any(|p| p.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cover.n,
        });
    }
    if n > MAX_VERIFY_UNIVERSE {
        return Err(Error::ResourceLimit {
            what: "cover verification universe",
            needed: n as u64,
            limit: MAX_VERIFY_UNIVERSE as u64,
        });
    }
    for p in &cover.perms {
        crate::perm::check_permutation(p)?;
    }
    let total = factorial_u64(n) as usize;
    let chains = chain_permutations(a);
    let mut covered = Bitset::new(total);
    for p in &cover.perms {
        let inv = inverse(p);
        for c in &chains {
            covered.set(rank(&compose(&inv, c)));
        }
    }
    Ok(covered.count() == total)
}

/// The single-permutation cover `{id}`.
pub fn identity_cover(n: usize) -> PermutationCover {
    PermutationCover {
        n,
        perms: alloc::vec![identity(n)],
        certified: false,
        note: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use crate::poset::bucket_order;
    use crate::Budget;

    /// Direct definition of coverage, no rank tricks.
    fn covers_naively(a: &SetSystem, f: &[Vec<usize>]) -> bool {
        all_permutations(a.universe()).iter().all(|pi| {
            f.iter()
                .any(|pp| a.chain_correspondence(&compose(pp, pi)).unwrap())
        })
    }

    #[test]
    fn power_set_needs_one() {
        let a = SetSystem::power_set(3).unwrap();
        let c = greedy_cover(&a).unwrap();
        assert_eq!(c.perms, [identity(3)]);
        assert!(verify_cover(&a, &identity_cover(3)).unwrap());
    }

    #[test]
    fn chain_system_needs_everything() {
        let a = SetSystem::chain(3).unwrap();
        let c = greedy_cover(&a).unwrap();
        assert_eq!(c.len(), 6);
        assert!(covers_naively(&a, &c.perms));
        assert!(!verify_cover(&a, &identity_cover(3)).unwrap());
    }

    #[test]
    fn bucket_cover_within_bound() {
        let a = SetSystem::from_poset_ideals(&bucket_order(3, 2).unwrap(), Budget::default()).unwrap();
        let c = greedy_cover(&a).unwrap();
        assert!(verify_cover(&a, &c).unwrap());
        assert!(covers_naively(&a, &c.perms));
        assert!((c.len() as f64) <= greedy_size_bound(6, 36));
        assert!(greedy_size_bound(6, 36) < 2312.0 && greedy_size_bound(6, 36) > 2310.0);
    }

    #[test]
    fn greedy_errors() {
        let empty = SetSystem::new(3, alloc::vec![0b001, 0b111]).unwrap();
        assert_eq!(greedy_cover(&empty), Err(Error::NoChains));
        let big = SetSystem::chain(8).unwrap();
        assert!(matches!(greedy_cover(&big), Err(Error::ResourceLimit { .. })));
        assert_eq!(randomized_cover(&empty, 1, 1.0), Err(Error::NoChains));
    }

    #[test]
    fn randomized_is_reproducible_and_certified() {
        let a = SetSystem::chain(4).unwrap();
        let c = randomized_cover(&a, 42, 2.0).unwrap();
        assert_eq!(c.len(), 267); // ⌈2 · 24 · 4 ln 4⌉
        assert_eq!(c, randomized_cover(&a, 42, 2.0).unwrap());
        assert_eq!(c.certified, covers_naively(&a, &c.perms));
        let p = randomized_cover(&SetSystem::power_set(3).unwrap(), 9, 1.0).unwrap();
        assert!(p.certified);
    }

    #[test]
    fn dimension_mismatch() {
        let a = SetSystem::power_set(3).unwrap();
        assert!(matches!(
            verify_cover(&a, &identity_cover(4)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
