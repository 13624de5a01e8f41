//! Completion counts `F(S, t)` for height-two posets.
//!
//! `F(S, t)` is the number of ways to finish a linear extension whose prefix
//! holds exactly the lower set `S` and `t` upper elements. With
//! `e(S) = |{y : N(y) ⊆ S}|`,
//!
//! ```text
//! F(S, t) = Σ_{x ∉ S} F(S ∪ {x}, t) + (e(S) - t) · F(S, t + 1),
//! F(X, t) = (|Y| - t)!,
//! ```
//!
//! and `λ = F(∅, 0)`. Only `0 ≤ t ≤ e(S)` is reachable. Layers are processed
//! by `|S|` descending and only two are resident. For circulants, subsets
//! are grouped by rotation and one representative (the numerically smallest
//! rotation) is stored per class.

use alloc::vec::Vec;

#[cfg(test)]
use num_bigint::BigUint;

use crate::bigcount::BigCount;
use crate::wide::{limbs_for_bits, Wide};
use crate::{Budget, Error, Result};

/// `binom[n][k]` for `n, k ≤ 64`.
struct Binomials([[u64; 65]; 65]);

impl Binomials {
    fn new() -> Self {
        let mut b = [[0u64; 65]; 65];
        for n in 0..65 {
            b[n][0] = 1;
            for k in 1..=n {
                b[n][k] = b[n - 1][k - 1].saturating_add(if k < n { b[n - 1][k] } else { 0 });
            }
        }
        Binomials(b)
    }

    /// Position of `s` among subsets of the same size in increasing order.
    #[inline]
    fn colex_rank(&self, mut s: u64) -> usize {
        let mut r = 0u64;
        let mut i = 1;
        while s != 0 {
            let p = s.trailing_zeros() as usize;
            s &= s - 1;
            r += self.0[p][i];
            i += 1;
        }
        r as usize
    }
}

/// Subsets of fixed size `k` out of `m` bits, in increasing numeric order.
pub(crate) fn subsets_of_size(m: u32, k: u32) -> impl Iterator<Item = u64> {
    let limit = 1u64 << m;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut cur = Some(first);
    core::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 {
            None
        } else {
            // Gosper's hack
            let c = s & s.wrapping_neg();
            let r = s + c;
            let n = (((r ^ s) >> 2) / c) | r;
            (n < limit && r != 0).then_some(n)
        };
        Some(s)
    })
    .take_while(move |&s| s < limit)
}

pub(crate) enum Symmetry {
    None,
    /// Rotation of the lower side also rotates the upper side.
    Cyclic,
}

pub(crate) struct LayeredProblem<'a> {
    /// Lower side size.
    pub m: u32,
    /// Neighbourhood (lower indices) of each upper element.
    pub upper_neighbors: &'a [u64],
    pub symmetry: Symmetry,
}

struct Layer<const L: usize> {
    offsets: Vec<usize>,
    values: Vec<Wide<L>>,
}

impl<const L: usize> Layer<L> {
    #[inline]
    fn row(&self, idx: usize) -> &[Wide<L>] {
        &self.values[self.offsets[idx]..self.offsets[idx + 1]]
    }
}

/// Maps a subset of the current size to its stored index.
enum Index {
    Colex,
    Table(Vec<u32>),
}

impl<'a> LayeredProblem<'a> {
    fn full(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    fn rotate(&self, s: u64, r: u32) -> u64 {
        if r == 0 {
            s
        } else {
            ((s << r) | (s >> (self.m - r))) & self.full()
        }
    }

    fn is_canonical(&self, s: u64) -> bool {
        (1..self.m).all(|r| self.rotate(s, r) >= s)
    }

    fn representatives(&self, k: u32) -> Vec<u64> {
        match self.symmetry {
            Symmetry::None => subsets_of_size(self.m, k).collect(),
            Symmetry::Cyclic => subsets_of_size(self.m, k)
                .filter(|&s| self.is_canonical(s))
                .collect(),
        }
    }

    fn index_for(&self, k: u32, reps: &[u64], binom: &Binomials) -> Index {
        match self.symmetry {
            Symmetry::None => Index::Colex,
            Symmetry::Cyclic => {
                let mut table = alloc::vec![0u32; binom.0[self.m as usize][k as usize] as usize];
                for (c, &s) in reps.iter().enumerate() {
                    for r in 0..self.m {
                        table[binom.colex_rank(self.rotate(s, r))] = c as u32;
                    }
                }
                Index::Table(table)
            }
        }
    }

    fn eligible(&self, s: u64) -> usize {
        self.upper_neighbors.iter().filter(|&&nb| nb & !s == 0).count()
    }

    /// Resident entries of the largest pair of layers, without running.
    fn largest_subset_layer(&self, binom: &Binomials) -> u64 {
        (0..=self.m).map(|k| binom.0[self.m as usize][k as usize]).max().unwrap()
    }

    pub fn count(&self, budget: Budget) -> Result<BigCount> {
        if self.m > 40 {
            return Err(Error::MethodMismatch {
                method: "completion-count",
                reason: alloc::format!("lower side {} too large", self.m),
            });
        }
        let binom = Binomials::new();
        let per_layer = match self.symmetry {
            Symmetry::None => self.largest_subset_layer(&binom),
            Symmetry::Cyclic => self.largest_subset_layer(&binom) / self.m as u64 + 1,
        };
        budget.check("completion-count layer", per_layer)?;
        let total = self.m as u64 + self.upper_neighbors.len() as u64;
        let bits = BigCount::factorial(total).0.bits() + 1;
        match limbs_for_bits(bits) {
            Some(1) => self.run::<1>(&binom, budget),
            Some(2) => self.run::<2>(&binom, budget),
            Some(3) => self.run::<3>(&binom, budget),
            Some(4) => self.run::<4>(&binom, budget),
            Some(5) => self.run::<5>(&binom, budget),
            Some(6) => self.run::<6>(&binom, budget),
            Some(7) => self.run::<7>(&binom, budget),
            Some(8) => self.run::<8>(&binom, budget),
            _ => Err(Error::InvalidSize("poset too large for completion counting".into())),
        }
    }

    fn run<const L: usize>(&self, binom: &Binomials, budget: Budget) -> Result<BigCount> {
        let m = self.m;
        let ny = self.upper_neighbors.len();
        // boundary layer: S = X
        let mut values = Vec::with_capacity(ny + 1);
        for t in 0..=ny {
            let f = BigCount::factorial((ny - t) as u64);
            values.push(Wide::<L>::from_biguint(&f.0).expect("limb count covers n!"));
        }
        let mut next = Layer {
            offsets: alloc::vec![0, ny + 1],
            values,
        };
        let mut next_index = Index::Colex;
        let mut reps_k = self.representatives(m.saturating_sub(1));

        for k in (0..m).rev() {
            let reps = core::mem::take(&mut reps_k);
            let lookup = |s: u64| -> usize {
                match &next_index {
                    Index::Colex => binom.colex_rank(s),
                    Index::Table(t) => t[binom.colex_rank(s)] as usize,
                }
            };
            let mut offsets = Vec::with_capacity(reps.len() + 1);
            offsets.push(0usize);
            let mut eligible = Vec::with_capacity(reps.len());
            for &s in &reps {
                let e = self.eligible(s);
                eligible.push(e as u32);
                offsets.push(offsets.last().unwrap() + e + 1);
            }
            let entries = *offsets.last().unwrap();
            let index_entries = match &next_index {
                Index::Colex => 0,
                Index::Table(t) => t.len(),
            };
            budget.check(
                "completion-count layers",
                (entries + next.values.len() + index_entries) as u64,
            )?;

            let compute = |i: usize, out: &mut [Wide<L>]| {
                let s = reps[i];
                let e = eligible[i] as usize;
                let mut free = self.full() & !s;
                while free != 0 {
                    let x = free.trailing_zeros();
                    free &= free - 1;
                    let row = next.row(lookup(s | 1 << x));
                    for (o, v) in out.iter_mut().zip(&row[..=e]) {
                        o.add_assign(v);
                    }
                }
                for t in (0..e).rev() {
                    let carry = out[t + 1].mul_small((e - t) as u64);
                    out[t].add_assign(&carry);
                }
            };
            let mut values = alloc::vec![Wide::<L>::ZERO; entries];
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                let chunk = 1usize << 12;
                let mut pieces: Vec<(usize, &mut [Wide<L>])> = Vec::new();
                let mut rest: &mut [Wide<L>] = &mut values;
                let mut start = 0;
                while start < reps.len() {
                    let end = (start + chunk).min(reps.len());
                    let len = offsets[end] - offsets[start];
                    let (head, tail) = rest.split_at_mut(len);
                    pieces.push((start, head));
                    rest = tail;
                    start = end;
                }
                pieces.into_par_iter().for_each(|(start, piece)| {
                    let end = (start + chunk).min(reps.len());
                    let base = offsets[start];
                    for i in start..end {
                        compute(i, &mut piece[offsets[i] - base..offsets[i + 1] - base]);
                    }
                });
            }
            #[cfg(not(feature = "parallel"))]
            for i in 0..reps.len() {
                let (lo, hi) = (offsets[i], offsets[i + 1]);
                compute(i, &mut values[lo..hi]);
            }

            drop(next_index);
            next = Layer { offsets, values };
            if k > 0 {
                next_index = self.index_for(k, &reps, binom);
                reps_k = self.representatives(k - 1);
            } else {
                next_index = Index::Colex;
            }
        }
        Ok(BigCount(next.row(0)[0].to_biguint()))
    }
}

/// Full `F(S, t)` table for small lower sides (no symmetry reduction).
#[cfg(test)]
pub(crate) fn completion_table(m: u32, upper_neighbors: &[u64]) -> alloc::collections::BTreeMap<(u64, usize), BigUint> {
    use alloc::collections::BTreeMap;
    let ny = upper_neighbors.len();
    let full = (1u64 << m) - 1;
    let e = |s: u64| upper_neighbors.iter().filter(|&&nb| nb & !s == 0).count();
    let mut f: BTreeMap<(u64, usize), BigUint> = BTreeMap::new();
    for t in 0..=ny {
        f.insert((full, t), BigCount::factorial((ny - t) as u64).0);
    }
    for k in (0..m).rev() {
        for s in subsets_of_size(m, k) {
            let es = e(s);
            for t in (0..=es).rev() {
                let mut acc = BigUint::from(0u32);
                for x in 0..m {
                    if s >> x & 1 == 0 {
                        acc += &f[&(s | 1 << x, t)];
                    }
                }
                if t < es {
                    acc += &f[&(s, t + 1)] * BigUint::from((es - t) as u64);
                }
                f.insert((s, t), acc);
            }
        }
    }
    f
}
