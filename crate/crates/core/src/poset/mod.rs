//! Finite posets on at most 64 elements and exact counting of their ideals
//! and linear extensions.

use alloc::format;
use alloc::vec::Vec;

use crate::bigcount::BigCount;
use crate::setsystem::EfficiencyReport;
use crate::{Budget, Error, Result};

mod extensions;
mod ideals;
pub(crate) mod layered;

pub use extensions::{count_linear_extensions, ExtensionMethod};
pub use ideals::{count_ideals, ideal_masks, IdealMethod};

pub const MAX_POSET_ELEMENTS: usize = 64;

/// A partial order stored by its strict down-sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    /// `below[v]`: every `u` with `u ≺ v`.
    below: Vec<u64>,
    covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds the order generated by `pairs` (`(u, v)` meaning `u ≺ v`); the
    /// pairs need not be covers, the Hasse diagram is recomputed.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_POSET_ELEMENTS {
            return Err(Error::InvalidSize(format!(
                "{n} elements exceeds the {MAX_POSET_ELEMENTS}-element limit"
            )));
        }
        let mut direct = alloc::vec![0u64; n];
        for &(u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::InvalidInstance(format!("pair ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::Cyclic);
            }
            direct[v] |= 1 << u;
        }
        // Kahn's algorithm over the direct relation
        let mut below = alloc::vec![0u64; n];
        let mut done = 0u64;
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        while done != all {
            let mut progressed = false;
            for v in 0..n {
                if done >> v & 1 == 0 && direct[v] & !done == 0 {
                    let mut b = direct[v];
                    let mut rest = direct[v];
                    while rest != 0 {
                        let u = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        b |= below[u];
                    }
                    below[v] = b;
                    done |= 1 << v;
                    progressed = true;
                }
            }
            if !progressed {
                return Err(Error::Cyclic);
            }
        }
        let mut covers = Vec::new();
        for v in 0..n {
            let mut transitive = 0u64;
            let mut rest = below[v];
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                transitive |= below[w];
            }
            let mut cov = below[v] & !transitive;
            while cov != 0 {
                let u = cov.trailing_zeros() as usize;
                cov &= cov - 1;
                covers.push((u, v));
            }
        }
        covers.sort_unstable();
        Ok(Poset { n, below, covers })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Hasse diagram, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Strict predecessors of `v` as a bitmask.
    pub fn below(&self, v: usize) -> u64 {
        self.below[v]
    }

    pub fn below_masks(&self) -> &[u64] {
        &self.below
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn is_ideal(&self, set: u64) -> bool {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.below[v] & !set != 0 {
                return false;
            }
        }
        true
    }

    /// Splits a poset of height at most two into a lower side (minimal
    /// elements with something above them) and an upper side (everything
    /// else, including isolated elements).
    pub fn bipartite_split(&self) -> Option<BipartiteSplit> {
        for v in 0..self.n {
            let mut rest = self.below[v];
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.below[u] != 0 {
                    return None;
                }
            }
        }
        let has_above: u64 = self.below.iter().fold(0, |a, &b| a | b);
        let lower: Vec<usize> = (0..self.n).filter(|&v| has_above >> v & 1 == 1).collect();
        let upper: Vec<usize> = (0..self.n).filter(|&v| has_above >> v & 1 == 0).collect();
        let upper_neighbors = upper
            .iter()
            .map(|&v| {
                lower
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| self.below[v] >> u & 1 == 1)
                    .fold(0u64, |m, (i, _)| m | 1 << i)
            })
            .collect();
        Some(BipartiteSplit {
            lower,
            upper,
            upper_neighbors,
        })
    }

    /// Recognises the labelling produced by [`CirculantBipartite::to_poset`].
    pub fn as_circulant(&self) -> Option<CirculantBipartite> {
        if self.n < 2 || self.n % 2 != 0 {
            return None;
        }
        let m = (self.n / 2) as u32;
        let side = (1u64 << m) - 1;
        if self.below[..m as usize].iter().any(|&b| b != 0) {
            return None;
        }
        let dmask = self.below[m as usize];
        if dmask == 0 || dmask & !side != 0 {
            return None;
        }
        let offsets: Vec<u32> = (0..m).filter(|&d| dmask >> d & 1 == 1).collect();
        let c = CirculantBipartite::new(m, &offsets).ok()?;
        let ok = (0..m).all(|j| self.below[(m + j) as usize] == c.neighbors(j));
        ok.then_some(c)
    }
}

/// Lower/upper sides of a height-two poset; `upper_neighbors[j]` is the set
/// of lower indices below `upper[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteSplit {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    pub upper_neighbors: Vec<u64>,
}

/// Bipartite poset on `x_0..x_{m-1}, y_0..y_{m-1}` with `x_i ≺ y_j` iff
/// `(i - j) mod m` is one of the offsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CirculantBipartite {
    m: u32,
    offsets: Vec<u32>,
}

impl CirculantBipartite {
    pub fn new(m: u32, offsets: &[u32]) -> Result<Self> {
        if m == 0 || m > 32 {
            return Err(Error::InvalidSize(format!("side size {m} outside 1..=32")));
        }
        if offsets.is_empty() {
            return Err(Error::InvalidSize("empty offset set".into()));
        }
        if let Some(&bad) = offsets.iter().find(|&&d| d >= m) {
            return Err(Error::InvalidOffset { offset: bad, m });
        }
        let mut offsets = offsets.to_vec();
        offsets.sort_unstable();
        offsets.dedup();
        Ok(CirculantBipartite { m, offsets })
    }

    pub fn side(&self) -> u32 {
        self.m
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    /// Regularity degree `|D|`.
    pub fn degree(&self) -> u32 {
        self.offsets.len() as u32
    }

    /// Largest offset, the width of the transfer window.
    pub fn width(&self) -> u32 {
        *self.offsets.last().unwrap()
    }

    pub(crate) fn offset_mask(&self) -> u64 {
        self.offsets.iter().fold(0, |m, &d| m | 1 << d)
    }

    /// Lower indices below `y_j`: `x_{(j + δ) mod m}` for `δ ∈ D`.
    pub fn neighbors(&self, j: u32) -> u64 {
        self.offsets
            .iter()
            .fold(0, |m, &d| m | 1 << ((j + d) % self.m))
    }

    /// `x_i` is element `i`, `y_j` is element `m + j`.
    pub fn to_poset(&self) -> Poset {
        let m = self.m as usize;
        let mut pairs = Vec::new();
        for j in 0..m {
            for &d in &self.offsets {
                pairs.push(((j + d as usize) % m, m + j));
            }
        }
        Poset::from_relations(2 * m, &pairs).expect("circulant relation is a valid order")
    }
}

pub fn make_circulant(m: u32, offsets: &[u32]) -> Result<Poset> {
    Ok(CirculantBipartite::new(m, offsets)?.to_poset())
}

/// Complete bipartite order minus a perfect matching: circulant with
/// offsets `1..m`.
pub fn matching_complement(m: u32) -> Result<CirculantBipartite> {
    if m < 2 {
        return Err(Error::InvalidSize(format!("matching complement needs m ≥ 2, got {m}")));
    }
    CirculantBipartite::new(m, &(1..m).collect::<Vec<_>>())
}

pub fn make_matching_complement(m: u32) -> Result<Poset> {
    Ok(matching_complement(m)?.to_poset())
}

/// 16-per-side circulant with offsets `0..=6` plus two extra elements
/// `d_0 = 32`, `d_1 = 33` and relations `x_0 ≺ y_8 ≺ d_0`, `y_15 ≺ d_1`.
pub fn make_counterexample() -> Poset {
    let base = CirculantBipartite::new(16, &[0, 1, 2, 3, 4, 5, 6]).unwrap();
    let mut pairs: Vec<(usize, usize)> = base.to_poset().covers().to_vec();
    let (y, d0, d1) = (|j: usize| 16 + j, 32, 33);
    pairs.extend([(0, y(8)), (y(8), d0), (y(15), d1)]);
    Poset::from_relations(34, &pairs).unwrap()
}

pub fn chain(n: usize) -> Result<Poset> {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_relations(n, &pairs)
}

pub fn antichain(n: usize) -> Result<Poset> {
    Poset::from_relations(n, &[])
}

/// `k` blocks of `t` elements, each block entirely below the next.
pub fn bucket_order(t: usize, k: usize) -> Result<Poset> {
    if t == 0 || k == 0 || t * k > MAX_POSET_ELEMENTS {
        return Err(Error::InvalidSize(format!("bucket order {t}x{k}")));
    }
    let mut pairs = Vec::new();
    for b in 1..k {
        for u in 0..t {
            for v in 0..t {
                pairs.push(((b - 1) * t + u, b * t + v));
            }
        }
    }
    Poset::from_relations(t * k, &pairs)
}

/// Closed forms for the matching complement on `m + m` elements:
/// `α = 2^(m+1) + m - 1` and `λ = (m-1)! · m! · (m+1)`.
pub fn closed_form_matching_complement(m: u32) -> Result<(BigCount, BigCount)> {
    if m < 2 {
        return Err(Error::InvalidSize(format!("matching complement needs m ≥ 2, got {m}")));
    }
    let alpha = BigCount::pow2(m + 1) + BigCount::from(m as u64 - 1);
    let m = m as u64;
    let lambda = BigCount::factorial(m - 1) * BigCount::factorial(m) * BigCount::from(m + 1);
    Ok((alpha, lambda))
}

/// Exact `α`, `λ` and `1/η` with the fastest applicable methods.
pub fn poset_efficiency(p: &Poset, budget: Budget) -> Result<EfficiencyReport> {
    let (im, em) = default_methods(p);
    let alpha = count_ideals(p, im, budget)?;
    let lambda = count_linear_extensions(p, em, budget)?;
    Ok(EfficiencyReport::new(
        p.len(),
        alpha,
        lambda,
        format!("ideals: {}, extensions: {}", im.name(), em.name()),
    ))
}

/// Method choice used by [`poset_efficiency`].
pub fn default_methods(p: &Poset) -> (IdealMethod, ExtensionMethod) {
    if let Some(c) = p.as_circulant() {
        let im = if c.side() <= 24 {
            IdealMethod::BipartiteSum
        } else {
            IdealMethod::CirculantTransfer
        };
        return (im, ExtensionMethod::Orbit);
    }
    if let Some(split) = p.bipartite_split() {
        let im = if split.lower.len() <= 26 {
            IdealMethod::BipartiteSum
        } else {
            IdealMethod::Lattice
        };
        let em = if split.lower.len() <= 24 {
            ExtensionMethod::BipartiteFst
        } else {
            ExtensionMethod::IdealDp
        };
        return (im, em);
    }
    (IdealMethod::Lattice, ExtensionMethod::IdealDp)
}
