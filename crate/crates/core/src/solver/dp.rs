//! Layered subset DP shared by Held–Karp and the tradeoff solver.
//!
//! State `(X, w)`: `X` is the placed set, `w` the last `min(d-1, |X|)`
//! placed elements (oldest first). This is enough to evaluate
//! `f_{|X|+1}(X ∪ {v}, w ++ [v])`. Only sets accepted by `admissible` get a
//! state, and states holding the `⊕`-identity are not expanded.

use alloc::vec::Vec;

use crate::semiring::Semiring;
use crate::{Budget, Result};

pub(crate) type Cost<'a, S> = dyn Fn(u64, &[usize]) -> S + Sync + 'a;

pub(crate) struct Layer<S> {
    pub masks: Vec<u64>,
    /// `masks.len() * slots` values.
    pub values: Vec<S>,
    pub slots: usize,
    pub window_len: usize,
}

pub(crate) struct DpRun<S> {
    pub value: S,
    pub peak: u64,
    pub updates: u64,
    /// Every layer, when requested.
    pub layers: Option<Vec<Layer<S>>>,
}

pub(crate) struct SubsetDp<'a, S> {
    pub n: usize,
    pub degree: usize,
    pub cost: &'a Cost<'a, S>,
    pub admissible: &'a (dyn Fn(u64) -> bool + Sync + 'a),
}

fn encode(window: &[usize], n: usize) -> usize {
    window.iter().rev().fold(0, |acc, &x| acc * n + x)
}

fn decode(code: usize, len: usize, n: usize, out: &mut Vec<usize>) {
    out.clear();
    let mut c = code;
    for _ in 0..len {
        out.push(c % n);
        c /= n;
    }
}

impl<'a, S: Semiring> SubsetDp<'a, S> {
    fn window_len(&self, size: usize) -> usize {
        (self.degree - 1).min(size)
    }

    fn slots(&self, size: usize) -> usize {
        self.n.pow(self.window_len(size) as u32)
    }

    pub fn run(&self, keep_layers: bool, budget: Budget) -> Result<DpRun<S>> {
        let mut layer = Layer {
            masks: alloc::vec![0u64],
            values: alloc::vec![S::one()],
            slots: 1,
            window_len: 0,
        };
        let mut kept: Vec<Layer<S>> = Vec::new();
        let mut kept_entries = 0u64;
        let mut peak = 1u64;
        let mut updates = 0u64;
        let mut window = Vec::with_capacity(self.degree);
        let mut full = Vec::with_capacity(self.degree);

        for size in 0..self.n {
            let next_len = self.window_len(size + 1);
            let next_slots = self.slots(size + 1);
            let mut masks = Vec::new();
            for (i, &x) in layer.masks.iter().enumerate() {
                let row = &layer.values[i * layer.slots..(i + 1) * layer.slots];
                if row.iter().all(|v| v.is_zero()) {
                    continue;
                }
                for v in 0..self.n {
                    let y = x | 1 << v;
                    if y != x && (self.admissible)(y) {
                        masks.push(y);
                    }
                }
            }
            masks.sort_unstable();
            masks.dedup();
            let entries = (masks.len() * next_slots) as u64;
            let resident = entries + (layer.values.len() as u64) + kept_entries;
            budget.check("subset dp layers", resident)?;
            peak = peak.max(resident);

            let mut values = alloc::vec![S::zero(); masks.len() * next_slots];
            for (i, &x) in layer.masks.iter().enumerate() {
                for code in 0..layer.slots {
                    let g = layer.values[i * layer.slots + code];
                    if g.is_zero() {
                        continue;
                    }
                    decode(code, layer.window_len, self.n, &mut window);
                    for v in 0..self.n {
                        let y = x | 1 << v;
                        if y == x {
                            continue;
                        }
                        let Ok(j) = masks.binary_search(&y) else {
                            continue;
                        };
                        full.clear();
                        full.extend_from_slice(&window);
                        full.push(v);
                        let start = full.len().saturating_sub(self.degree);
                        let c = (self.cost)(y, &full[start..]);
                        let kept_window = &full[full.len() - next_len..];
                        let slot = j * next_slots + encode(kept_window, self.n);
                        values[slot] = values[slot].add(g.mul(c));
                        updates += 1;
                    }
                }
            }
            let next = Layer {
                masks,
                values,
                slots: next_slots,
                window_len: next_len,
            };
            let prev = core::mem::replace(&mut layer, next);
            if keep_layers {
                kept_entries += prev.values.len() as u64;
                kept.push(prev);
            }
        }
        let value = layer.values.iter().fold(S::zero(), |acc, &v| acc.add(v));
        let layers = keep_layers.then(|| {
            kept.push(layer);
            kept
        });
        Ok(DpRun {
            value,
            peak,
            updates,
            layers,
        })
    }

    /// Walks kept layers backwards to a sequence attaining `value`. Needs a
    /// selective `⊕` (min-plus, boolean).
    pub fn witness(&self, layers: &[Layer<S>], value: S) -> Option<Vec<usize>> {
        let last = layers.last()?;
        let full_set = *last.masks.first()?;
        let mut state = (0..last.slots).find(|&c| last.values[c] == value && !value.is_zero())?;
        let mut set = full_set;
        let mut seq = Vec::with_capacity(self.n);
        let mut target = value;
        let mut window = Vec::new();
        let mut full = Vec::new();
        for size in (1..=self.n).rev() {
            let cur = &layers[size];
            let prev = &layers[size - 1];
            decode(state, cur.window_len, self.n, &mut window);
            let mut found = None;
            'search: for v in 0..self.n {
                if set >> v & 1 == 0 {
                    continue;
                }
                if cur.window_len > 0 && *window.last().unwrap() != v {
                    continue;
                }
                let x = set & !(1 << v);
                let Ok(i) = prev.masks.binary_search(&x) else {
                    continue;
                };
                for code in 0..prev.slots {
                    let g = prev.values[i * prev.slots + code];
                    if g.is_zero() {
                        continue;
                    }
                    let mut pw = Vec::new();
                    decode(code, prev.window_len, self.n, &mut pw);
                    full.clear();
                    full.extend_from_slice(&pw);
                    full.push(v);
                    let kept = &full[full.len() - cur.window_len..];
                    if encode(kept, self.n) != state {
                        continue;
                    }
                    let start = full.len().saturating_sub(self.degree);
                    if g.mul((self.cost)(set, &full[start..])) == target {
                        found = Some((v, code, g));
                        break 'search;
                    }
                }
            }
            let (v, code, g) = found?;
            seq.push(v);
            set &= !(1 << v);
            state = code;
            target = g;
        }
        seq.reverse();
        Some(seq)
    }
}
