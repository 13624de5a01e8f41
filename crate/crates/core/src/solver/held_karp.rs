use crate::problem::PermutationProblem;
use crate::semiring::Semiring;
use crate::{Budget, Result};

use super::dp::SubsetDp;
use super::{SolveResult, SolveStats};

/// Subset DP over every prefix set. Keeps the whole table so a witness can be
/// read back for selective semirings.
pub fn solve_held_karp<S: Semiring>(
    problem: &PermutationProblem<S>,
    budget: Budget,
) -> Result<SolveResult<S>> {
    let n = problem.len();
    let slots = (n as u64).saturating_pow(problem.degree() as u32 - 1);
    let full = 1u64.checked_shl(n as u32).unwrap_or(u64::MAX).saturating_mul(slots);
    budget.check("held-karp table", full)?;
    let cost = |x: u64, w: &[usize]| problem.cost(x, w);
    let admissible = |_: u64| true;
    let dp = SubsetDp {
        n,
        degree: problem.degree(),
        cost: &cost,
        admissible: &admissible,
    };
    let run = dp.run(S::IDEMPOTENT, budget)?;
    let witness = run
        .layers
        .as_deref()
        .and_then(|layers| dp.witness(layers, run.value));
    Ok(SolveResult {
        value: run.value,
        witness,
        stats: SolveStats {
            peak_resident_entries: run.peak,
            total_dp_updates: run.updates,
            cover_product_size: 1,
            witness_resident_entries: 0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{dfas_as_permutation_problem, tsp_as_permutation_problem, DfasInstance, TspInstance};
    use crate::semiring::{Counting, MinPlus};

    #[test]
    fn counts_permutations() {
        let p = PermutationProblem::new(6, 1, |_, _| Counting(1)).unwrap();
        let r = solve_held_karp(&p, Budget::default()).unwrap();
        assert_eq!(r.value, Counting(720));
        assert!(r.witness.is_none());
    }

    #[test]
    fn small_tsp() {
        let t = TspInstance::from_rows(&[
            alloc::vec![0, 1, 5, 4],
            alloc::vec![1, 0, 2, 6],
            alloc::vec![5, 2, 0, 3],
            alloc::vec![4, 6, 3, 0],
        ])
        .unwrap();
        let p = tsp_as_permutation_problem(&t).unwrap();
        let r = solve_held_karp(&p, Budget::default()).unwrap();
        assert_eq!(r.value, MinPlus::finite(10));
        let w = r.witness.unwrap();
        assert_eq!(p.evaluate(&w).unwrap(), r.value);
    }

    #[test]
    fn dfas_cycle() {
        let g = DfasInstance::new(4, alloc::vec![(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]).unwrap();
        let p = dfas_as_permutation_problem(&g).unwrap();
        let r = solve_held_karp(&p, Budget::default()).unwrap();
        assert_eq!(r.value, MinPlus::finite(1));
        assert_eq!(g.backward_arcs(&r.witness.unwrap()), 1);
    }

    #[test]
    fn budget_enforced() {
        let p = PermutationProblem::new(20, 1, |_, _| Counting(1)).unwrap();
        assert!(matches!(
            solve_held_karp(&p, Budget::new(1000)),
            Err(crate::Error::ResourceLimit { .. })
        ));
    }
}
