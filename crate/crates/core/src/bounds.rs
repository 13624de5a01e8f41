//! Numeric upper bounds on chain efficiency.
//!
//! All evaluations are in `f64`. Factorials and binomials are formed exactly
//! and enter through their base-2 logarithms, so nothing overflows.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::format;

use crate::bigcount::BigCount;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub parameters: Vec<(&'static str, String)>,
    pub value: f64,
    pub auxiliaries: Vec<(&'static str, f64)>,
}

impl BoundReport {
    pub fn auxiliary(&self, key: &str) -> Option<f64> {
        self.auxiliaries.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }
}

/// Binary entropy `h(p) = -p log₂ p - (1-p) log₂ (1-p)`, with `h(0) = h(1) = 0`.
pub fn entropy(p: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * libm::log2(x) };
    term(p) + term(1.0 - p)
}

/// The `p ∈ [0, 1/2]` with `h(p) = y`, for `y ∈ [0, 1]`.
pub fn entropy_inverse(y: f64) -> f64 {
    let y = y.clamp(0.0, 1.0);
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if entropy(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `η ≤ min((e·n)^{3/n}, 1 + 6 log₂ n / n) / 3` for a system over `n ≥ 3`.
pub fn basic_upper_bound(n: u64) -> Result<BoundReport> {
    if n < 3 {
        return Err(Error::InvalidSize(format!("basic bound needs n >= 3, got {n}")));
    }
    let nf = n as f64;
    let explicit = libm::pow(core::f64::consts::E * nf, 3.0 / nf) / 3.0;
    let simplified = (1.0 + 6.0 * libm::log2(nf) / nf) / 3.0;
    Ok(BoundReport {
        name: "basic",
        parameters: alloc::vec![("n", n.to_string())],
        value: explicit.min(simplified),
        auxiliaries: alloc::vec![("explicit", explicit), ("simplified", simplified)],
    })
}

/// Minimises `γ(δ) = max(h(δ)/3, h((1-2δ)/3))` over `δ ∈ (0, 1/2)`; the bound
/// is `2^γ · (1/3)^{2/3} · (1/6)^{1/3}`.
pub fn improved_upper_bound() -> BoundReport {
    let rising = |d: f64| entropy(d) / 3.0;
    let falling = |d: f64| entropy((1.0 - 2.0 * d) / 3.0);
    let (mut lo, mut hi) = (1e-12f64, 0.5 - 1e-12);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if rising(mid) < falling(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let delta = 0.5 * (lo + hi);
    let gamma = rising(delta).max(falling(delta));
    let value = libm::pow(2.0, gamma) * libm::pow(1.0 / 3.0, 2.0 / 3.0) * libm::cbrt(1.0 / 6.0);
    BoundReport {
        name: "improved",
        parameters: Vec::new(),
        value,
        auxiliaries: alloc::vec![
            ("delta", delta),
            ("gamma", gamma),
            ("h_delta_over_3", rising(delta)),
            ("h_of_1_minus_2delta_over_3", falling(delta)),
            ("inverse", 1.0 / value),
        ],
    }
}

fn log2_binomial(n: u64, k: u64) -> f64 {
    BigCount::binomial(n, k).log2()
}

/// `log₂` of `Σ_i C(m,i) · 2^{m·C(m-d,i)/C(m,i)}`.
fn log2_ideal_lower_bound(m: u64, d: u64) -> f64 {
    let terms: Vec<f64> = (0..=m)
        .map(|i| {
            // C(m-d,i)/C(m,i) = Π_{k<i} (m-d-k)/(m-k)
            let ratio = (0..i).fold(1.0f64, |acc, k| {
                if k + d >= m {
                    0.0
                } else {
                    acc * (m - d - k) as f64 / (m - k) as f64
                }
            });
            log2_binomial(m, i) + m as f64 * ratio
        })
        .collect();
    let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    top + libm::log2(terms.iter().map(|t| libm::exp2(t - top)).sum::<f64>())
}

/// Lower bound on ideals, upper bound on linear extensions and the implied
/// efficiency ceiling for a `d`-regular bipartite poset with sides of size `m`.
pub fn regular_bipartite_bounds(m: u64, d: u64) -> Result<BoundReport> {
    if d == 0 || d > m {
        return Err(Error::InvalidDegree {
            d: d as u32,
            m: m as u32,
        });
    }
    let log_alpha = log2_ideal_lower_bound(m, d);
    let log_central = log2_binomial(2 * d, d);
    let log_fact = BigCount::factorial(2 * m).log2();
    let log_lambda = log_fact - m as f64 / d as f64 * log_central;
    let log_eta = -log_central / (2 * d) as f64 - log_alpha / m as f64;
    let eta = libm::exp2(log_eta);
    Ok(BoundReport {
        name: "regbip",
        parameters: alloc::vec![("m", m.to_string()), ("d", d.to_string())],
        value: eta,
        auxiliaries: alloc::vec![
            ("log2_ideal_lower_bound", log_alpha),
            ("ideal_lower_bound", libm::exp2(log_alpha)),
            ("log2_extension_upper_bound", log_lambda),
            ("inverse", 1.0 / eta),
        ],
    })
}

/// `2^{h(q) + q^d} · C(2d,d)^{1/(2d)}`.
pub fn limit_at(d: u64, q: f64) -> f64 {
    let central = libm::exp2(log2_binomial(2 * d, d) / (2 * d) as f64);
    libm::exp2(entropy(q) + libm::pow(q, d as f64)) * central
}

/// `max_q 2^{h(q)+q^d} · C(2d,d)^{1/(2d)}`, a lower bound on `1/η` for large
/// `d`-regular bipartite posets.
pub fn regular_bipartite_efficiency_limit(d: u64) -> Result<BoundReport> {
    if d == 0 {
        return Err(Error::InvalidDegree { d: 0, m: 0 });
    }
    let objective = |q: f64| entropy(q) + libm::pow(q, d as f64);
    let (lo, hi) = (1e-9f64, 1.0 - 1e-9);
    const GRID: usize = 10_000;
    let step = (hi - lo) / GRID as f64;
    let best = (0..=GRID)
        .map(|i| (i, objective(lo + i as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b })
        .0;
    let mut a = lo + best.saturating_sub(1) as f64 * step;
    let mut b = (lo + (best + 1) as f64 * step).min(hi);
    let ratio = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut e = a + ratio * (b - a);
    while b - a > 1e-10 {
        if objective(c) > objective(e) {
            b = e;
        } else {
            a = c;
        }
        c = b - ratio * (b - a);
        e = a + ratio * (b - a);
    }
    let q = 0.5 * (a + b);
    Ok(BoundReport {
        name: "reglimit",
        parameters: alloc::vec![("d", d.to_string())],
        value: limit_at(d, q),
        auxiliaries: alloc::vec![("q", q), ("objective_log2", objective(q))],
    })
}
