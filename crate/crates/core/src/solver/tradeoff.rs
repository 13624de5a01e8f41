//! Subset DP restricted to relabelled chains of a set system.
//!
//! The instance is padded to `N' = g·n·s` elements, the padded element `p`
//! being forced into position `p`. The elements are cut into `s` groups of
//! `g·n`. For a tuple `(π'_1, …, π'_s)` from a cover of `A^g`, a prefix set
//! `X` is admissible when `π'_i(X ∩ V_i) ∈ A^g` for every group. Every
//! permutation survives for at least one tuple, so the `⊕` over all tuples
//! is the exact answer.

use alloc::vec;
use alloc::vec::Vec;

use crate::cover::{greedy_cover, randomized_cover, PermutationCover};
use crate::problem::{PermutationProblem, MAX_ELEMENTS};
use crate::semiring::Semiring;
use crate::setsystem::SetSystem;
use crate::{Budget, Error, Result};

use super::dp::SubsetDp;
use super::{SolveResult, SolveStats};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoverStrategy {
    Greedy,
    Randomized { seed: u64, factor: f64 },
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub set_system: SetSystem,
    /// Number of copies `g` of the set system per group.
    pub groups: usize,
    pub cover: CoverStrategy,
    pub budget: Budget,
}

impl SolverConfig {
    pub fn new(set_system: SetSystem) -> Self {
        SolverConfig {
            set_system,
            groups: 1,
            cover: CoverStrategy::Greedy,
            budget: Budget::default(),
        }
    }
}

/// Group layout and the precomputed per-permutation image tables.
struct Layout {
    width: usize,
    groups: usize,
    member: Vec<bool>,
    /// `images[k][mask]` is `π'_k(mask)` for masks of one group.
    images: Vec<Vec<u64>>,
}

impl Layout {
    fn admissible(&self, tuple: &[usize], x: u64) -> bool {
        let low = (1u64 << self.width) - 1;
        (0..self.groups).all(|i| {
            let part = (x >> (i * self.width)) & low;
            self.member[self.images[tuple[i]][part as usize] as usize]
        })
    }
}

fn image_table(perm: &[usize]) -> Vec<u64> {
    let w = perm.len();
    (0..1u64 << w)
        .map(|m| {
            (0..w)
                .filter(|&e| m >> e & 1 == 1)
                .fold(0u64, |acc, e| acc | 1 << perm[e])
        })
        .collect()
}

fn tuple_at(mut index: u64, base: usize, len: usize, out: &mut [usize]) {
    for slot in out.iter_mut().take(len) {
        *slot = (index % base as u64) as usize;
        index /= base as u64;
    }
}

/// The cover used for `A^g`; fails unless full coverage was certified.
pub fn tradeoff_cover(config: &SolverConfig) -> Result<(SetSystem, PermutationCover)> {
    let a = &config.set_system;
    if !a.has_endpoints() {
        return Err(Error::InvalidSetSystem(
            "set system must contain the empty set and the universe".into(),
        ));
    }
    if config.groups == 0 {
        return Err(Error::InvalidSize("at least one copy per group".into()));
    }
    let power = a.cartesian_power(config.groups, config.budget)?;
    let cover = match config.cover {
        CoverStrategy::Greedy => greedy_cover(&power)?,
        CoverStrategy::Randomized { seed, factor } => randomized_cover(&power, seed, factor)?,
    };
    if !cover.certified {
        return Err(Error::ResourceLimit {
            what: "certified cover universe",
            needed: power.universe() as u64,
            limit: crate::cover::MAX_GREEDY_UNIVERSE as u64,
        });
    }
    Ok((power, cover))
}

/// Exact `⊕_σ f(σ)` for an idempotent semiring.
pub fn solve_chain_tradeoff<S: Semiring>(
    problem: &PermutationProblem<S>,
    config: &SolverConfig,
) -> Result<SolveResult<S>> {
    if !S::IDEMPOTENT {
        return Err(Error::UnsupportedSemiring);
    }
    let (power, cover) = tradeoff_cover(config)?;
    let n = problem.len();
    let d = problem.degree();
    let width = power.universe();
    let groups = n.div_ceil(width);
    let padded = width * groups;
    if padded > MAX_ELEMENTS {
        return Err(Error::InvalidSize(alloc::format!(
            "padded size {padded} exceeds {MAX_ELEMENTS}"
        )));
    }
    let tuples = (cover.len() as u64)
        .checked_pow(groups as u32)
        .ok_or(Error::ResourceLimit {
            what: "cover tuples",
            needed: u64::MAX,
            limit: u64::MAX,
        })?;

    let mut member = vec![false; 1 << width];
    for &m in power.members() {
        member[m as usize] = true;
    }
    let layout = Layout {
        width,
        groups,
        member,
        images: cover.perms.iter().map(|p| image_table(p)).collect(),
    };
    let real = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let cost = |x: u64, w: &[usize]| -> S {
        let j = x.count_ones() as usize;
        if j <= n {
            if x & !real != 0 {
                S::zero()
            } else {
                problem.cost(x, w)
            }
        } else if *w.last().unwrap() == j - 1 {
            S::one()
        } else {
            S::zero()
        }
    };

    let run_tuple = |index: u64, keep: bool| {
        let mut tuple = vec![0usize; groups];
        tuple_at(index, cover.len(), groups, &mut tuple);
        let admissible = |x: u64| layout.admissible(&tuple, x);
        let dp = SubsetDp {
            n: padded,
            degree: d,
            cost: &cost,
            admissible: &admissible,
        };
        let run = dp.run(keep, config.budget)?;
        let witness = run
            .layers
            .as_deref()
            .and_then(|layers| dp.witness(layers, run.value));
        Ok::<_, Error>((run.value, run.peak, run.updates, witness))
    };

    #[cfg(feature = "parallel")]
    let sweep: Vec<(S, u64, u64)> = {
        use rayon::prelude::*;
        (0..tuples)
            .into_par_iter()
            .map(|i| run_tuple(i, false).map(|r| (r.0, r.1, r.2)))
            .collect::<Result<Vec<_>>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let sweep: Vec<(S, u64, u64)> = (0..tuples)
        .map(|i| run_tuple(i, false).map(|r| (r.0, r.1, r.2)))
        .collect::<Result<Vec<_>>>()?;

    let value = sweep.iter().fold(S::zero(), |acc, r| acc.add(r.0));
    let mut stats = SolveStats {
        peak_resident_entries: sweep.iter().map(|r| r.1).max().unwrap_or(0),
        total_dp_updates: sweep.iter().map(|r| r.2).sum(),
        cover_product_size: tuples,
        witness_resident_entries: 0,
    };
    let mut witness = None;
    if !value.is_zero() {
        if let Some(best) = sweep.iter().position(|r| r.0 == value) {
            let (_, peak, _, w) = run_tuple(best as u64, true)?;
            stats.witness_resident_entries = peak;
            witness = w.map(|mut w| {
                w.truncate(n);
                w
            });
        }
    }
    Ok(SolveResult {
        value,
        witness,
        stats,
    })
}

/// `|A|^{g·s} · N'^d`, the per-tuple state ceiling.
pub fn tradeoff_space_bound(a: &SetSystem, groups: usize, n: usize, degree: usize) -> f64 {
    let width = a.universe() * groups;
    let s = n.div_ceil(width);
    let padded = (width * s) as f64;
    libm::pow(a.len() as f64, (groups * s) as f64) * libm::pow(padded, degree as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{dfas_as_permutation_problem, tsp_as_permutation_problem, DfasInstance, TspInstance};
    use crate::semiring::{Boolean, Counting, MinPlus};
    use crate::solver::solve_held_karp;

    fn tower() -> SetSystem {
        SetSystem::tower_of_cubes(2, 2).unwrap()
    }

    #[test]
    fn rejects_counting() {
        let p = PermutationProblem::new(4, 1, |_, _| Counting(1)).unwrap();
        assert_eq!(
            solve_chain_tradeoff(&p, &SolverConfig::new(tower())).unwrap_err(),
            Error::UnsupportedSemiring
        );
    }

    #[test]
    fn rejects_missing_endpoints() {
        let a = SetSystem::new(2, alloc::vec![0, 1]).unwrap();
        let p = PermutationProblem::new(3, 1, |_, _| Boolean(true)).unwrap();
        assert!(matches!(
            solve_chain_tradeoff(&p, &SolverConfig::new(a)),
            Err(Error::InvalidSetSystem(_))
        ));
    }

    #[test]
    fn tsp_with_padding() {
        let rows: Vec<Vec<u64>> = (0..8)
            .map(|i| (0..8).map(|j| if i == j { 0 } else { (i * 7 + j * 3) % 11 + 1 }).collect())
            .collect();
        let t = TspInstance::from_rows(&rows).unwrap();
        let p = tsp_as_permutation_problem(&t).unwrap();
        let hk = solve_held_karp(&p, Budget::default()).unwrap();
        let ct = solve_chain_tradeoff(&p, &SolverConfig::new(tower())).unwrap();
        assert_eq!(hk.value, ct.value);
        assert_eq!(p.evaluate(&ct.witness.unwrap()).unwrap(), ct.value);
        assert!(ct.stats.cover_product_size > 1);
    }

    #[test]
    fn dfas_two_copies() {
        let g = DfasInstance::new(5, alloc::vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 3), (2, 3)]).unwrap();
        let p = dfas_as_permutation_problem(&g).unwrap();
        let mut cfg = SolverConfig::new(SetSystem::chain(3).unwrap().clone());
        cfg.groups = 2;
        let ct = solve_chain_tradeoff(&p, &cfg).unwrap();
        assert_eq!(ct.value, MinPlus::finite(2));
    }

    #[test]
    fn image_tables() {
        let t = image_table(&[2, 0, 1]);
        assert_eq!(t[0b001], 0b100);
        assert_eq!(t[0b110], 0b011);
    }
}
