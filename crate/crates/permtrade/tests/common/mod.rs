//! Brute-force oracles, written without the library's algorithms.
#![allow(dead_code)]

use std::collections::HashSet;

/// Every ordering of `0..n`, by plain recursion.
pub fn orderings(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Down-sets: every relation `u < v` with `v` inside forces `u` inside.
pub fn ideals(n: usize, relations: &[(usize, usize)]) -> u64 {
    (0u64..1 << n)
        .filter(|&x| relations.iter().all(|&(u, v)| x >> v & 1 == 0 || x >> u & 1 == 1))
        .count() as u64
}

pub fn extensions(n: usize, relations: &[(usize, usize)]) -> u64 {
    orderings(n)
        .into_iter()
        .filter(|o| {
            let mut pos = vec![0; n];
            for (i, &x) in o.iter().enumerate() {
                pos[x] = i;
            }
            relations.iter().all(|&(u, v)| pos[u] < pos[v])
        })
        .count() as u64
}

/// Permutations whose every prefix set is a member.
pub fn chains(n: usize, members: &[u64]) -> u64 {
    let set: HashSet<u64> = members.iter().copied().collect();
    orderings(n)
        .into_iter()
        .filter(|o| {
            let mut x = 0u64;
            set.contains(&0)
                && o.iter().all(|&e| {
                    x |= 1 << e;
                    set.contains(&x)
                })
        })
        .count() as u64
}

/// Cheapest closed tour; `None` entries are missing edges.
pub fn tsp(w: &[Vec<Option<u64>>]) -> Option<u64> {
    let n = w.len();
    orderings(n - 1)
        .into_iter()
        .filter_map(|o| {
            let tour: Vec<usize> = std::iter::once(0).chain(o.iter().map(|&c| c + 1)).collect();
            (0..n).map(|i| w[tour[i]][tour[(i + 1) % n]]).sum::<Option<u64>>()
        })
        .min()
}

/// Fewest arcs pointing backwards over all vertex orders.
pub fn dfas(n: usize, arcs: &[(usize, usize)]) -> u64 {
    orderings(n)
        .into_iter()
        .map(|o| {
            let mut pos = vec![0; n];
            for (i, &x) in o.iter().enumerate() {
                pos[x] = i;
            }
            arcs.iter().filter(|&&(u, v)| pos[u] > pos[v]).count() as u64
        })
        .min()
        .unwrap()
}
