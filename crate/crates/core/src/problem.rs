//! Permutation problems of bounded degree.
//!
//! A problem over `N` elements asks for `⊕_σ ⊗_j f_j(S_j, window_j)` where
//! `S_j = {σ_1, …, σ_j}` and the window holds the last `min(d, j)` placed
//! elements, oldest first. Elements are `0..N`, prefix sets are bitmasks.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::check_permutation;
use crate::semiring::{MinPlus, Semiring};
use crate::{Error, Result};

pub const MAX_DEGREE: usize = 4;
pub const MAX_ELEMENTS: usize = 64;

pub type CostFn<S> = Box<dyn Fn(u64, &[usize]) -> S + Send + Sync>;

pub struct PermutationProblem<S: Semiring> {
    n: usize,
    degree: usize,
    cost: CostFn<S>,
}

impl<S: Semiring> fmt::Debug for PermutationProblem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationProblem")
            .field("n", &self.n)
            .field("degree", &self.degree)
            .field("semiring", &S::NAME)
            .finish()
    }
}

impl<S: Semiring> PermutationProblem<S> {
    /// `cost(prefix, window)` must be pure.
    pub fn new(
        n: usize,
        degree: usize,
        cost: impl Fn(u64, &[usize]) -> S + Send + Sync + 'static,
    ) -> Result<Self> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::InvalidInstance(format!(
                "element count {n} outside 1..={MAX_ELEMENTS}"
            )));
        }
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidInstance(format!(
                "degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        Ok(PermutationProblem {
            n,
            degree,
            cost: Box::new(cost),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `f_j(prefix, window)` with `j = |prefix|`.
    #[inline]
    pub fn cost(&self, prefix: u64, window: &[usize]) -> S {
        debug_assert_eq!(window.len(), self.degree.min(prefix.count_ones() as usize));
        (self.cost)(prefix, window)
    }

    /// `f(σ)` for a sequence `σ` listing every element once.
    pub fn evaluate(&self, sigma: &[usize]) -> Result<S> {
        if sigma.len() != self.n {
            return Err(Error::InvalidPermutation { n: self.n });
        }
        check_permutation(sigma)?;
        let mut prefix = 0u64;
        let mut acc = S::one();
        for (j, &x) in sigma.iter().enumerate() {
            prefix |= 1 << x;
            let start = (j + 1).saturating_sub(self.degree);
            acc = acc.mul(self.cost(prefix, &sigma[start..=j]));
        }
        Ok(acc)
    }
}

/// Symmetric or asymmetric TSP on `N` cities; `None` is a missing edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TspInstance {
    n: usize,
    weights: Vec<Option<u64>>,
}

impl TspInstance {
    pub fn new(weights: Vec<Vec<Option<u64>>>) -> Result<Self> {
        let n = weights.len();
        if weights.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInstance("weight matrix is not square".into()));
        }
        if weights.iter().flatten().flatten().any(|&w| w == u64::MAX) {
            return Err(Error::InvalidInstance("weight too large".into()));
        }
        Ok(TspInstance {
            n,
            weights: weights.into_iter().flatten().collect(),
        })
    }

    /// Finite complete instance from integer rows.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        TspInstance::new(
            rows.iter()
                .map(|r| r.iter().map(|&w| Some(w)).collect())
                .collect(),
        )
    }

    pub fn cities(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, from: usize, to: usize) -> MinPlus {
        self.weights[from * self.n + to].into()
    }

    /// Length of the closed tour visiting `tour` in order.
    pub fn tour_length(&self, tour: &[usize]) -> MinPlus {
        let k = tour.len();
        (0..k)
            .map(|i| self.weight(tour[i], tour[(i + 1) % k]))
            .fold(MinPlus::one(), MinPlus::mul)
    }
}

/// Degree-2 min-plus problem over cities `1..N` (element `e` is city `e + 1`).
/// City 0 is the fixed start, so the closing edge is charged at the last
/// position.
pub fn tsp_as_permutation_problem(inst: &TspInstance) -> Result<PermutationProblem<MinPlus>> {
    if inst.n < 2 {
        return Err(Error::InvalidInstance("TSP needs at least 2 cities".into()));
    }
    let inst = inst.clone();
    let last = inst.n - 1;
    PermutationProblem::new(last, 2, move |prefix, window| {
        let j = prefix.count_ones() as usize;
        let here = *window.last().unwrap() + 1;
        let step = if j == 1 {
            inst.weight(0, here)
        } else {
            inst.weight(window[0] + 1, here)
        };
        if j == last {
            step.mul(inst.weight(here, 0))
        } else {
            step
        }
    })
}

/// Recover the closed tour (starting at city 0) from a permutation of the
/// adapter's elements.
pub fn tour_from_permutation(sigma: &[usize]) -> Vec<usize> {
    core::iter::once(0).chain(sigma.iter().map(|&e| e + 1)).collect()
}

/// Directed multigraph for feedback arc set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfasInstance {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl DfasInstance {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::InvalidInstance(format!("vertex count {n}")));
        }
        for &(u, v) in &arcs {
            if u >= n || v >= n {
                return Err(Error::InvalidInstance(format!("arc ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop at {u}")));
            }
        }
        Ok(DfasInstance { n, arcs })
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Arcs pointing from a later vertex to an earlier one in `order`.
    pub fn backward_arcs(&self, order: &[usize]) -> u64 {
        let mut pos = alloc::vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        self.arcs.iter().filter(|&&(u, v)| pos[u] > pos[v]).count() as u64
    }
}

/// Degree-1 min-plus problem: placing `v` costs the arcs `(v, u)` whose head
/// `u` is already placed.
pub fn dfas_as_permutation_problem(inst: &DfasInstance) -> Result<PermutationProblem<MinPlus>> {
    let mut out: Vec<Vec<(u64, u64)>> = alloc::vec![Vec::new(); inst.n];
    for &(u, v) in &inst.arcs {
        match out[u].iter_mut().find(|(m, _)| *m == 1 << v) {
            Some((_, c)) => *c += 1,
            None => out[u].push((1 << v, 1)),
        }
    }
    PermutationProblem::new(inst.n, 1, move |prefix, window| {
        let v = window[0];
        let back: u64 = out[v]
            .iter()
            .filter(|(m, _)| prefix & m != 0)
            .map(|(_, c)| c)
            .sum();
        MinPlus::finite(back)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use crate::semiring::Boolean;

    fn four() -> TspInstance {
        TspInstance::from_rows(&[
            alloc::vec![0, 1, 2, 3],
            alloc::vec![1, 0, 4, 5],
            alloc::vec![2, 4, 0, 6],
            alloc::vec![3, 5, 6, 0],
        ])
        .unwrap()
    }

    #[test]
    fn tsp_adapter_hand_evaluation() {
        let p = tsp_as_permutation_problem(&four()).unwrap();
        assert_eq!(p.len(), 3);
        // tour 1-2-3-4-1 in 1-based city names
        assert_eq!(p.evaluate(&[0, 1, 2]).unwrap(), MinPlus::finite(14));
    }

    #[test]
    fn tsp_adapter_brute_force_minimum() {
        let p = tsp_as_permutation_problem(&four()).unwrap();
        let best = all_permutations(3)
            .iter()
            .map(|s| p.evaluate(s).unwrap())
            .min()
            .unwrap();
        assert_eq!(best, MinPlus::finite(14));
    }

    #[test]
    fn two_cities() {
        let inst = TspInstance::from_rows(&[alloc::vec![0, 5], alloc::vec![5, 0]]).unwrap();
        let p = tsp_as_permutation_problem(&inst).unwrap();
        assert_eq!(p.evaluate(&[0]).unwrap(), MinPlus::finite(10));
        let one = TspInstance::from_rows(&[alloc::vec![0]]).unwrap();
        assert!(matches!(
            tsp_as_permutation_problem(&one),
            Err(Error::InvalidInstance(_))
        ));
    }

    #[test]
    fn infinite_edge_annihilates() {
        let mut rows = alloc::vec![alloc::vec![None; 4]; 4];
        for (a, b, w) in [(0, 2, 3), (2, 1, 4), (1, 3, 5), (3, 0, 6)] {
            rows[a][b] = Some(w);
        }
        let inst = TspInstance::new(rows).unwrap();
        let p = tsp_as_permutation_problem(&inst).unwrap();
        let vals: Vec<_> = all_permutations(3)
            .iter()
            .map(|s| p.evaluate(s).unwrap())
            .collect();
        assert_eq!(vals.iter().min(), Some(&MinPlus::finite(18)));
        assert_eq!(vals.iter().filter(|v| !v.is_infinite()).count(), 1);
    }

    #[test]
    fn dfas_cases() {
        let cyc = DfasInstance::new(3, alloc::vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let p = dfas_as_permutation_problem(&cyc).unwrap();
        let best = all_permutations(3).iter().map(|s| p.evaluate(s).unwrap()).min();
        assert_eq!(best, Some(MinPlus::finite(1)));

        let full = DfasInstance::new(
            3,
            alloc::vec![(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)],
        )
        .unwrap();
        let p = dfas_as_permutation_problem(&full).unwrap();
        for s in all_permutations(3) {
            assert_eq!(p.evaluate(&s).unwrap(), MinPlus::finite(full.backward_arcs(&s)));
        }
        let best = all_permutations(3).iter().map(|s| p.evaluate(s).unwrap()).min();
        assert_eq!(best, Some(MinPlus::finite(3)));

        let dag = DfasInstance::new(4, alloc::vec![(0, 1), (0, 2), (2, 3), (1, 3)]).unwrap();
        let p = dfas_as_permutation_problem(&dag).unwrap();
        let best = all_permutations(4).iter().map(|s| p.evaluate(s).unwrap()).min();
        assert_eq!(best, Some(MinPlus::finite(0)));

        assert!(DfasInstance::new(2, alloc::vec![(1, 1)]).is_err());
    }

    #[test]
    fn duplicate_arcs_count_twice() {
        let g = DfasInstance::new(2, alloc::vec![(0, 1), (0, 1), (1, 0)]).unwrap();
        let p = dfas_as_permutation_problem(&g).unwrap();
        assert_eq!(p.evaluate(&[0, 1]).unwrap(), MinPlus::finite(1));
        assert_eq!(p.evaluate(&[1, 0]).unwrap(), MinPlus::finite(2));
    }

    #[test]
    fn evaluate_rejects_non_bijection() {
        let p = PermutationProblem::new(3, 1, |_, _| Boolean(true)).unwrap();
        assert_eq!(p.evaluate(&[0, 0, 1]), Err(Error::InvalidPermutation { n: 3 }));
        assert_eq!(p.evaluate(&[0, 1]), Err(Error::InvalidPermutation { n: 3 }));
        assert_eq!(p.evaluate(&[2, 0, 1]).unwrap(), Boolean(true));
    }

    #[test]
    fn single_element_problem() {
        let p = PermutationProblem::new(1, 2, |prefix, w| {
            assert_eq!((prefix, w), (1, &[0usize][..]));
            MinPlus::finite(7)
        })
        .unwrap();
        assert_eq!(p.evaluate(&[0]).unwrap(), MinPlus::finite(7));
    }

    #[test]
    fn window_length_is_min_of_degree_and_position() {
        let p = PermutationProblem::new(5, 3, |prefix, w| {
            assert_eq!(w.len(), 3.min(prefix.count_ones() as usize));
            assert!(w.iter().all(|&x| prefix >> x & 1 == 1));
            Boolean(true)
        })
        .unwrap();
        assert_eq!(p.evaluate(&[4, 2, 0, 1, 3]).unwrap(), Boolean(true));
    }
}
