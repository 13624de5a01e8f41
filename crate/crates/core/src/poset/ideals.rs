//! Ideal (down-set) counting.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::{CirculantBipartite, Poset};
use crate::bigcount::BigCount;
use crate::{Budget, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdealMethod {
    /// Breadth-first walk over the ideal lattice.
    Lattice,
    /// `Σ_{X' ⊆ X} 2^{|Y ∖ N(X')|}` over the lower side of a height-two poset.
    BipartiteSum,
    /// Weighted closed walks of a sliding-window automaton around a circulant.
    CirculantTransfer,
}

impl IdealMethod {
    pub fn name(self) -> &'static str {
        match self {
            IdealMethod::Lattice => "lattice",
            IdealMethod::BipartiteSum => "bipartite-sum",
            IdealMethod::CirculantTransfer => "circulant-transfer",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "lattice" => IdealMethod::Lattice,
            "bipartite-sum" => IdealMethod::BipartiteSum,
            "circulant-transfer" => IdealMethod::CirculantTransfer,
            _ => return None,
        })
    }
}

pub const MAX_BIPARTITE_SUM_LOWER: usize = 40;

pub fn count_ideals(p: &Poset, method: IdealMethod, budget: Budget) -> Result<BigCount> {
    match method {
        IdealMethod::Lattice => {
            let mut total = 0u128;
            walk_ideal_layers(p, budget, |layer| total += layer.len() as u128)?;
            Ok(BigCount::from(total))
        }
        IdealMethod::BipartiteSum => {
            let split = p.bipartite_split().ok_or_else(|| Error::MethodMismatch {
                method: "bipartite-sum",
                reason: "poset has height greater than two".into(),
            })?;
            if split.lower.len() > MAX_BIPARTITE_SUM_LOWER {
                return Err(Error::MethodMismatch {
                    method: "bipartite-sum",
                    reason: format!(
                        "lower side has {} elements, limit is {MAX_BIPARTITE_SUM_LOWER}",
                        split.lower.len()
                    ),
                });
            }
            Ok(bipartite_sum(
                split.lower.len(),
                split.upper.len(),
                &split.upper_neighbors,
            ))
        }
        IdealMethod::CirculantTransfer => {
            let c = p.as_circulant().ok_or_else(|| Error::MethodMismatch {
                method: "circulant-transfer",
                reason: "poset is not in circulant bipartite form".into(),
            })?;
            Ok(circulant_transfer(&c))
        }
    }
}

/// Visits the ideals of `p` layer by layer (by cardinality); each layer is
/// sorted ascending. Resident memory is two layers.
pub(crate) fn walk_ideal_layers(
    p: &Poset,
    budget: Budget,
    mut visit: impl FnMut(&[u64]),
) -> Result<()> {
    let mut layer = alloc::vec![0u64];
    for _ in 0..=p.len() {
        visit(&layer);
        let next = next_ideal_layer(p, &layer, budget)?;
        layer = next;
    }
    Ok(())
}

pub(crate) fn next_ideal_layer(p: &Poset, layer: &[u64], budget: Budget) -> Result<Vec<u64>> {
    let full = p.full_mask();
    let mut next = Vec::new();
    for &ideal in layer {
        let mut free = full & !ideal;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= free - 1;
            if p.below(v) & !ideal == 0 {
                next.push(ideal | 1 << v);
            }
        }
        budget.check("ideal lattice layer", (layer.len() + next.len()) as u64)?;
    }
    next.sort_unstable();
    next.dedup();
    Ok(next)
}

/// Every ideal of `p`, ordered by `(popcount, value)`.
pub fn ideal_masks(p: &Poset, budget: Budget) -> Result<Vec<u64>> {
    let mut all = Vec::new();
    let mut err = None;
    walk_ideal_layers(p, budget, |layer| {
        if err.is_none() {
            if let Err(e) = budget.check("ideal family", (all.len() + layer.len()) as u64) {
                err = Some(e);
            } else {
                all.extend_from_slice(layer);
            }
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(all),
    }
}

/// OR-tables over byte-sized chunks of the lower side.
struct NeighborhoodTables {
    tables: Vec<[u64; 256]>,
}

impl NeighborhoodTables {
    fn new(lower: usize, upper_neighbors: &[u64]) -> Self {
        // transpose: for each lower element, the upper elements above it
        let mut up = alloc::vec![0u64; lower];
        for (j, &nb) in upper_neighbors.iter().enumerate() {
            for (i, u) in up.iter_mut().enumerate() {
                if nb >> i & 1 == 1 {
                    *u |= 1 << j;
                }
            }
        }
        let tables = up
            .chunks(8)
            .map(|chunk| {
                let mut t = [0u64; 256];
                for (b, slot) in t.iter_mut().enumerate() {
                    *slot = chunk
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| b >> i & 1 == 1)
                        .fold(0, |m, (_, &u)| m | u);
                }
                t
            })
            .collect();
        NeighborhoodTables { tables }
    }

    #[inline]
    fn neighborhood(&self, subset: u64) -> u64 {
        self.tables
            .iter()
            .enumerate()
            .fold(0, |m, (c, t)| m | t[(subset >> (8 * c)) as usize & 0xff])
    }
}

fn block_histogram(tables: &NeighborhoodTables, start: u64, end: u64, hist: &mut [u64]) {
    for s in start..end {
        hist[tables.neighborhood(s).count_ones() as usize] += 1;
    }
}

/// `Σ_{X' ⊆ lower} 2^{upper - |N(X')|}`.
pub(crate) fn bipartite_sum(lower: usize, upper: usize, upper_neighbors: &[u64]) -> BigCount {
    let tables = NeighborhoodTables::new(lower, upper_neighbors);
    let total = 1u64 << lower;
    let mut hist = alloc::vec![0u64; upper + 1];

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let blocks = 1u64 << lower.saturating_sub(16).min(12);
        let step = total / blocks;
        hist = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut h = alloc::vec![0u64; upper + 1];
                block_histogram(&tables, b * step, (b + 1) * step, &mut h);
                h
            })
            .reduce(
                || alloc::vec![0u64; upper + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
    }
    #[cfg(not(feature = "parallel"))]
    block_histogram(&tables, 0, total, &mut hist);

    let sum = hist
        .iter()
        .enumerate()
        .fold(BigUint::from(0u32), |acc, (k, &count)| {
            acc + (BigUint::from(count) << (upper - k))
        });
    BigCount(sum)
}

/// Closed-walk count for a circulant.
///
/// State: membership bits of the last `w` processed lower elements, where
/// `w` is the largest offset. Processing `x_i` (for `i ≥ w`) completes the
/// window `x_{i-w} … x_i` of `y_{i-w}`, which then contributes weight 2 if
/// none of its neighbours is chosen and 1 otherwise. The first `w` bits are
/// fixed per walk so the last `w` upper elements can be closed around the
/// cycle.
pub(crate) fn circulant_transfer(c: &CirculantBipartite) -> BigCount {
    let m = c.side() as usize;
    let w = c.width() as usize;
    let dmask = c.offset_mask();
    let starts = 1u64 << w;

    #[cfg(feature = "parallel")]
    let total: u128 = {
        use rayon::prelude::*;
        (0..starts)
            .into_par_iter()
            .map(|b| walks_from(m, w, dmask, b))
            .sum()
    };
    #[cfg(not(feature = "parallel"))]
    let total: u128 = (0..starts).map(|b| walks_from(m, w, dmask, b)).sum();

    BigCount::from(total)
}

#[inline]
fn weight(window: u64, dmask: u64) -> u128 {
    if window & dmask == 0 {
        2
    } else {
        1
    }
}

/// Weighted walks whose first `w` lower bits are `init`.
fn walks_from(m: usize, w: usize, dmask: u64, init: u64) -> u128 {
    let steps = m - w;
    // `cur[nb]`: after `k` steps the state is `(init >> k) | nb << (w - k)`
    // while `k < w`, and exactly `nb` afterwards.
    let mut cur: Vec<u128> = alloc::vec![1];
    for k in 0..steps {
        if k < w {
            let base = init >> k;
            let mut next = alloc::vec![0u128; cur.len() * 2];
            for (nb, &val) in cur.iter().enumerate() {
                if val == 0 {
                    continue;
                }
                let state = base | (nb as u64) << (w - k);
                for bit in 0..2u64 {
                    let window = state | bit << w;
                    next[nb | (bit as usize) << k] += val * weight(window, dmask);
                }
            }
            cur = next;
        } else {
            let mut next = alloc::vec![0u128; cur.len()];
            for (state, &val) in cur.iter().enumerate() {
                if val == 0 {
                    continue;
                }
                for bit in 0..2u64 {
                    let window = state as u64 | bit << w;
                    next[(window >> 1) as usize] += val * weight(window, dmask);
                }
            }
            cur = next;
        }
    }
    // close the cycle: the final state is x_{m-w} … x_{m-1}
    let mut total = 0u128;
    let window_mask = (1u64 << (w + 1)) - 1;
    for (nb, &val) in cur.iter().enumerate() {
        if val == 0 {
            continue;
        }
        let state = if steps < w {
            (init >> steps) | (nb as u64) << (w - steps)
        } else {
            nb as u64
        };
        let z = state | init << w;
        let closing: u128 = (0..w)
            .map(|k| weight((z >> k) & window_mask, dmask))
            .product();
        total += val * closing;
    }
    total
}
