//! Set systems over `[n]`, maximal chains and chain efficiency.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;

use crate::bigcount::{BigCount, Decimal};
use crate::perm::{check_permutation, prefix_masks};
use crate::poset::{ideal_masks, Poset};
use crate::{Budget, Error, Result};

pub const MAX_UNIVERSE: usize = 64;

/// Decimal places carried by efficiency reports.
pub const EFFICIENCY_SCALE: u32 = 12;

#[inline]
fn by_size(a: &u64, b: &u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then(a.cmp(b))
}

fn universe_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A family of subsets of `0..n`, deduplicated and sorted by
/// `(popcount, value)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetSystem {
    n: usize,
    members: Vec<u64>,
}

impl SetSystem {
    pub fn new(n: usize, mut members: Vec<u64>) -> Result<Self> {
        if n > MAX_UNIVERSE {
            return Err(Error::InvalidSize(format!("universe {n} exceeds {MAX_UNIVERSE}")));
        }
        if let Some(&bad) = members.iter().find(|&&m| m & !universe_mask(n) != 0) {
            return Err(Error::InvalidSetSystem(format!(
                "member {bad:#x} is not a subset of a {n}-element universe"
            )));
        }
        members.sort_unstable_by(by_size);
        members.dedup();
        Ok(SetSystem { n, members })
    }

    pub fn power_set(n: usize) -> Result<Self> {
        if n > 24 {
            return Err(Error::InvalidSize(format!("power set on {n} elements")));
        }
        SetSystem::new(n, (0..1u64 << n).collect())
    }

    /// Prefixes `∅, {0}, {0,1}, …` of the identity order.
    pub fn chain(n: usize) -> Result<Self> {
        SetSystem::new(n, (0..=n).map(universe_mask).collect())
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> u64 {
        universe_mask(self.n)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn contains(&self, set: u64) -> bool {
        self.members.binary_search_by(|m| by_size(m, &set)).is_ok()
    }

    pub fn has_endpoints(&self) -> bool {
        self.contains(0) && self.contains(self.full_mask())
    }

    /// Every ideal of `p`; contains `∅` and the full set.
    pub fn from_poset_ideals(p: &Poset, budget: Budget) -> Result<Self> {
        Ok(SetSystem {
            n: p.len(),
            members: ideal_masks(p, budget)?,
        })
    }

    /// Tower of `t`-cubes with `k` blocks; block `i` is `[i·t, (i+1)·t)`.
    pub fn tower_of_cubes(t: usize, k: usize) -> Result<Self> {
        if t == 0 || k == 0 || t * k > MAX_UNIVERSE {
            return Err(Error::InvalidSize(format!("tower of {t}-cubes with {k} blocks")));
        }
        if t > 24 {
            return Err(Error::InvalidSize(format!("cube dimension {t} too large")));
        }
        let mut members = Vec::with_capacity(k * ((1 << t) - 1) + 1);
        for s in 0..k {
            let base = universe_mask(s * t);
            for sub in 0..1u64 << t {
                if s > 0 && sub == 0 {
                    continue; // already listed as the full cube of block s-1
                }
                members.push(base | sub << (s * t));
            }
        }
        SetSystem::new(t * k, members)
    }

    /// `k` disjoint copies; copy `j` occupies bits `[j·n, (j+1)·n)`.
    pub fn cartesian_power(&self, k: usize, budget: Budget) -> Result<Self> {
        if k == 0 || k * self.n > MAX_UNIVERSE {
            return Err(Error::InvalidSize(format!(
                "power {k} of a {}-element universe",
                self.n
            )));
        }
        let size = (self.members.len() as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        budget.check("cartesian power", size)?;
        let mut members = alloc::vec![0u64];
        for j in 0..k {
            let mut next = Vec::with_capacity(members.len() * self.members.len());
            for &prefix in &members {
                for &m in &self.members {
                    next.push(prefix | m << (j * self.n));
                }
            }
            members = next;
        }
        SetSystem::new(k * self.n, members)
    }

    /// Whether every prefix set of the sequence `pi` is a member.
    pub fn chain_correspondence(&self, pi: &[usize]) -> Result<bool> {
        if pi.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: pi.len(),
            });
        }
        check_permutation(pi)?;
        Ok(prefix_masks(pi).all(|m| self.contains(m)))
    }

    /// `c(A)`: DP over members in order of cardinality.
    pub fn count_maximal_chains(&self) -> BigCount {
        if !self.contains(0) {
            return BigCount::zero();
        }
        let mut ways: Vec<BigUint> = alloc::vec![BigUint::from(0u32); self.members.len()];
        ways[0] = BigUint::from(1u32);
        for i in 1..self.members.len() {
            let b = self.members[i];
            let mut acc = BigUint::from(0u32);
            let mut rest = b;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                rest &= rest - 1;
                if let Ok(j) = self.members[..i].binary_search_by(|m| by_size(m, &(b ^ low))) {
                    acc += &ways[j];
                }
            }
            ways[i] = acc;
        }
        match self.members.binary_search_by(|m| by_size(m, &self.full_mask())) {
            Ok(j) => BigCount(ways.swap_remove(j)),
            Err(_) => BigCount::zero(),
        }
    }

    pub fn chain_efficiency(&self) -> EfficiencyReport {
        EfficiencyReport::new(
            self.n,
            BigCount::from(self.members.len() as u64),
            self.count_maximal_chains(),
            "maximal-chain dp".into(),
        )
    }
}

/// Exact size and chain count plus `1/η = (|A|² · n! / c(A))^(1/n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EfficiencyReport {
    pub n: usize,
    /// `|A|`, or `α(P)` for posets.
    pub size: BigCount,
    /// `c(A)`, or `λ(P)` for posets.
    pub chains: BigCount,
    /// Truncated to [`EFFICIENCY_SCALE`] decimals; `None` when `c(A) = 0`
    /// (efficiency zero).
    pub inv_eta: Option<Decimal>,
    pub method: String,
}

impl EfficiencyReport {
    pub fn new(n: usize, size: BigCount, chains: BigCount, method: String) -> Self {
        let inv_eta = (!chains.is_zero() && n > 0).then(|| {
            let num = &size.0 * &size.0 * BigCount::factorial(n as u64).0;
            Decimal::root_of_ratio(&num, &chains.0, n as u32, EFFICIENCY_SCALE)
        });
        EfficiencyReport {
            n,
            size,
            chains,
            inv_eta,
            method,
        }
    }

    pub fn inv_eta_f64(&self) -> f64 {
        self.inv_eta.as_ref().map_or(f64::INFINITY, Decimal::to_f64)
    }

    pub fn eta_f64(&self) -> f64 {
        1.0 / self.inv_eta_f64()
    }

    pub fn is_zero_efficiency(&self) -> bool {
        self.inv_eta.is_none()
    }

    /// `|(1/η)^n · c − |A|² · n!| / (|A|² · n!)`, from the stored decimal.
    pub fn relative_residual(&self) -> f64 {
        let Some(inv) = self.inv_eta_f64().is_finite().then(|| self.inv_eta_f64()) else {
            return f64::INFINITY;
        };
        let log_lhs = self.n as f64 * libm::log2(inv) + self.chains.log2();
        let log_rhs = 2.0 * self.size.log2() + BigCount::factorial(self.n as u64).log2();
        libm::fabs(libm::exp2(log_lhs - log_rhs) - 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use crate::poset::{antichain, chain, make_matching_complement};

    #[test]
    fn ordering_and_membership() {
        let a = SetSystem::new(3, alloc::vec![0b111, 0, 0b100, 0b011, 0b100]).unwrap();
        assert_eq!(a.members(), &[0, 0b100, 0b011, 0b111]);
        assert!(a.contains(0b011));
        assert!(!a.contains(0b001));
        assert!(SetSystem::new(2, alloc::vec![0b100]).is_err());
    }

    #[test]
    fn ideals_of_small_posets() {
        let c = SetSystem::from_poset_ideals(&chain(3).unwrap(), Budget::default()).unwrap();
        assert_eq!(c.members(), &[0, 1, 3, 7]);
        let a = SetSystem::from_poset_ideals(&antichain(4).unwrap(), Budget::default()).unwrap();
        assert_eq!(a, SetSystem::power_set(4).unwrap());
        let b = SetSystem::from_poset_ideals(&crate::poset::bucket_order(13, 2).unwrap(), Budget::default())
            .unwrap();
        assert_eq!(b.len(), (1 << 14) - 1);
    }

    #[test]
    fn towers() {
        let t = SetSystem::tower_of_cubes(2, 2).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.universe(), 4);
        assert_eq!(t.count_maximal_chains(), BigCount::from(4u64));
        assert!(t.chain_correspondence(&[0, 1, 2, 3]).unwrap());
        assert!(!t.chain_correspondence(&[0, 2, 1, 3]).unwrap());
        for k in 1..5 {
            assert_eq!(SetSystem::tower_of_cubes(1, k).unwrap(), SetSystem::chain(k).unwrap());
        }
        assert!(SetSystem::tower_of_cubes(33, 2).is_err());
    }

    #[test]
    fn tower_closed_forms() {
        for t in 1..=5usize {
            for k in 1..=(20 / t).min(4) {
                let a = SetSystem::tower_of_cubes(t, k).unwrap();
                assert_eq!(a.len(), k * ((1 << t) - 1) + 1);
                assert_eq!(a.count_maximal_chains(), BigCount::factorial(t as u64).pow(k as u32));
            }
        }
    }

    #[test]
    fn chain_counts() {
        assert_eq!(SetSystem::power_set(5).unwrap().count_maximal_chains(), BigCount::from(120u64));
        let no_empty = SetSystem::new(2, alloc::vec![1, 3]).unwrap();
        assert_eq!(no_empty.count_maximal_chains(), BigCount::zero());
        let no_full = SetSystem::new(2, alloc::vec![0, 1]).unwrap();
        assert_eq!(no_full.count_maximal_chains(), BigCount::zero());
    }

    #[test]
    fn efficiency_of_power_set_is_four() {
        for n in 1..=8 {
            let r = SetSystem::power_set(n).unwrap().chain_efficiency();
            assert_eq!(alloc::format!("{}", r.inv_eta.unwrap()), "4.000000000000");
        }
        let r = SetSystem::new(2, alloc::vec![1]).unwrap().chain_efficiency();
        assert!(r.is_zero_efficiency());
    }

    #[test]
    fn powers() {
        let a = SetSystem::new(1, alloc::vec![0, 1]).unwrap();
        assert_eq!(a.cartesian_power(3, Budget::default()).unwrap(), SetSystem::power_set(3).unwrap());
        let c2 = SetSystem::chain(2).unwrap();
        let sq = c2.cartesian_power(2, Budget::default()).unwrap();
        assert_eq!(sq.len(), 9);
        assert_eq!(sq.count_maximal_chains(), BigCount::from(6u64));
        assert_eq!(c2.cartesian_power(1, Budget::default()).unwrap(), c2);
        assert!(matches!(
            SetSystem::power_set(4).unwrap().cartesian_power(3, Budget::new(100)),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn correspondence_oracle() {
        let p = make_matching_complement(2).unwrap();
        let a = SetSystem::from_poset_ideals(&p, Budget::default()).unwrap();
        let hits = all_permutations(4)
            .iter()
            .filter(|pi| a.chain_correspondence(pi).unwrap())
            .count();
        assert_eq!(BigCount::from(hits as u64), a.count_maximal_chains());
        assert!(matches!(
            a.chain_correspondence(&[0, 1, 2]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            a.chain_correspondence(&[0, 1, 1, 2]),
            Err(Error::InvalidPermutation { .. })
        ));
        let c = SetSystem::chain(3).unwrap();
        for pi in all_permutations(3) {
            assert_eq!(c.chain_correspondence(&pi).unwrap(), pi == [0, 1, 2]);
        }
    }
}
