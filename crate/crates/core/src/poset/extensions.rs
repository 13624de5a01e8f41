//! Linear extension counting.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::ideals::next_ideal_layer;
use super::layered::{LayeredProblem, Symmetry};
use super::Poset;
use crate::bigcount::BigCount;
use crate::{Budget, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionMethod {
    /// Backtracking over all topological orders.
    Brute,
    /// `λ(I) = Σ_{v maximal in I} λ(I ∖ v)` over the ideal lattice.
    IdealDp,
    /// Completion counts over subsets of the lower side of a height-two poset.
    BipartiteFst,
    /// Completion counts over rotation classes of a circulant.
    Orbit,
}

impl ExtensionMethod {
    pub fn name(self) -> &'static str {
        match self {
            ExtensionMethod::Brute => "brute",
            ExtensionMethod::IdealDp => "ideal-dp",
            ExtensionMethod::BipartiteFst => "bipartite-fst",
            ExtensionMethod::Orbit => "orbit",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "brute" => ExtensionMethod::Brute,
            "ideal-dp" => ExtensionMethod::IdealDp,
            "bipartite-fst" => ExtensionMethod::BipartiteFst,
            "orbit" => ExtensionMethod::Orbit,
            _ => return None,
        })
    }
}

pub const MAX_BRUTE_ELEMENTS: usize = 10;

pub fn count_linear_extensions(
    p: &Poset,
    method: ExtensionMethod,
    budget: Budget,
) -> Result<BigCount> {
    match method {
        ExtensionMethod::Brute => {
            if p.len() > MAX_BRUTE_ELEMENTS {
                return Err(Error::MethodMismatch {
                    method: "brute",
                    reason: format!("{} elements, limit is {MAX_BRUTE_ELEMENTS}", p.len()),
                });
            }
            Ok(BigCount::from(brute(p, 0)))
        }
        ExtensionMethod::IdealDp => ideal_dp(p, budget),
        ExtensionMethod::BipartiteFst => {
            let split = p.bipartite_split().ok_or_else(|| Error::MethodMismatch {
                method: "bipartite-fst",
                reason: "poset has height greater than two".into(),
            })?;
            LayeredProblem {
                m: split.lower.len() as u32,
                upper_neighbors: &split.upper_neighbors,
                symmetry: Symmetry::None,
            }
            .count(budget)
        }
        ExtensionMethod::Orbit => {
            let c = p.as_circulant().ok_or_else(|| Error::MethodMismatch {
                method: "orbit",
                reason: "poset is not in circulant bipartite form".into(),
            })?;
            let nbrs: Vec<u64> = (0..c.side()).map(|j| c.neighbors(j)).collect();
            LayeredProblem {
                m: c.side(),
                upper_neighbors: &nbrs,
                symmetry: Symmetry::Cyclic,
            }
            .count(budget)
        }
    }
}

fn brute(p: &Poset, placed: u64) -> u64 {
    if placed == p.full_mask() {
        return 1;
    }
    let mut free = p.full_mask() & !placed;
    let mut total = 0;
    while free != 0 {
        let v = free.trailing_zeros() as usize;
        free &= free - 1;
        if p.below(v) & !placed == 0 {
            total += brute(p, placed | 1 << v);
        }
    }
    total
}

/// Forward form of the ideal recurrence: each ideal passes its count to the
/// ideals one element larger.
fn ideal_dp(p: &Poset, budget: Budget) -> Result<BigCount> {
    let mut layer = alloc::vec![0u64];
    let mut counts = alloc::vec![BigUint::from(1u32)];
    for _ in 0..p.len() {
        let next = next_ideal_layer(p, &layer, budget)?;
        budget.check("ideal-dp layers", (2 * (layer.len() + next.len())) as u64)?;
        let mut next_counts = alloc::vec![BigUint::from(0u32); next.len()];
        for (&ideal, count) in layer.iter().zip(&counts) {
            let mut free = p.full_mask() & !ideal;
            while free != 0 {
                let v = free.trailing_zeros() as usize;
                free &= free - 1;
                if p.below(v) & !ideal == 0 {
                    let j = next.binary_search(&(ideal | 1 << v)).unwrap();
                    next_counts[j] += count;
                }
            }
        }
        layer = next;
        counts = next_counts;
    }
    Ok(BigCount(counts.pop().unwrap_or_else(|| BigUint::from(1u32))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{
        antichain, bucket_order, chain, closed_form_matching_complement, make_circulant,
        make_matching_complement,
    };

    fn count(p: &Poset, m: ExtensionMethod) -> BigCount {
        count_linear_extensions(p, m, Budget::default()).unwrap()
    }

    #[test]
    fn trivial_shapes() {
        assert_eq!(count(&antichain(4).unwrap(), ExtensionMethod::Brute), BigCount::from(24u64));
        assert_eq!(count(&antichain(4).unwrap(), ExtensionMethod::IdealDp), BigCount::from(24u64));
        assert_eq!(
            count(&antichain(4).unwrap(), ExtensionMethod::BipartiteFst),
            BigCount::from(24u64)
        );
        assert_eq!(count(&chain(6).unwrap(), ExtensionMethod::IdealDp), BigCount::one());
        assert_eq!(count(&antichain(0).unwrap(), ExtensionMethod::IdealDp), BigCount::one());
    }

    #[test]
    fn matching_complement_small() {
        let p = make_matching_complement(2).unwrap();
        for m in [
            ExtensionMethod::Brute,
            ExtensionMethod::IdealDp,
            ExtensionMethod::BipartiteFst,
            ExtensionMethod::Orbit,
        ] {
            assert_eq!(count(&p, m), BigCount::from(6u64), "{m:?}");
        }
        let p3 = make_matching_complement(3).unwrap();
        assert_eq!(count(&p3, ExtensionMethod::Brute), closed_form_matching_complement(3).unwrap().1);
    }

    #[test]
    fn bucket_orders() {
        let p = bucket_order(3, 2).unwrap();
        assert_eq!(count(&p, ExtensionMethod::BipartiteFst), BigCount::from(36u64));
        let p = bucket_order(2, 3).unwrap();
        assert_eq!(count(&p, ExtensionMethod::IdealDp), BigCount::from(8u64));
    }

    #[test]
    fn circulant_methods_agree() {
        for (m, d) in [(6u32, [0u32, 1].as_slice()), (7, &[0, 2, 3]), (9, &[1, 4, 5, 8])] {
            let p = make_circulant(m, d).unwrap();
            let a = count(&p, ExtensionMethod::IdealDp);
            assert_eq!(count(&p, ExtensionMethod::BipartiteFst), a);
            assert_eq!(count(&p, ExtensionMethod::Orbit), a);
        }
    }

    #[test]
    fn applicability() {
        let c = chain(3).unwrap();
        for m in [ExtensionMethod::BipartiteFst, ExtensionMethod::Orbit] {
            assert!(matches!(
                count_linear_extensions(&c, m, Budget::default()),
                Err(Error::MethodMismatch { .. })
            ));
        }
        assert!(matches!(
            count_linear_extensions(&antichain(11).unwrap(), ExtensionMethod::Brute, Budget::default()),
            Err(Error::MethodMismatch { .. })
        ));
    }
}
