use permtrade_core::bounds::{improved_upper_bound, regular_bipartite_bounds};
use permtrade_core::poset::{count_ideals, count_linear_extensions, make_circulant, ExtensionMethod, IdealMethod};
use permtrade_core::setsystem::EfficiencyReport;
use permtrade_core::Budget;

#[test]
fn improved_branches_balanced() {
    let r = improved_upper_bound();
    assert!(r.auxiliary("h_delta_over_3").unwrap() <= 0.3261);
    assert!(r.auxiliary("h_of_1_minus_2delta_over_3").unwrap() <= 0.3261);
}

/// Exact efficiency of every circulant with `m <= 12` (offset sets containing
/// 0) stays below the regular bipartite bound and below `1/3.6`.
#[test]
fn circulant_sandwich() {
    let mut worst = 0.0f64;
    for m in 1..=12u32 {
        for bits in 0u32..1 << (m - 1) {
            let d: Vec<u32> = std::iter::once(0).chain((1..m).filter(|i| bits >> (i - 1) & 1 == 1)).collect();
            let p = make_circulant(m, &d).unwrap();
            let alpha = count_ideals(&p, IdealMethod::BipartiteSum, Budget::default()).unwrap();
            let lambda = count_linear_extensions(&p, ExtensionMethod::Orbit, Budget::default()).unwrap();
            let eta = EfficiencyReport::new(2 * m as usize, alpha, lambda, String::new()).eta_f64();
            let bound = regular_bipartite_bounds(m as u64, d.len() as u64).unwrap().value;
            assert!(eta <= bound * (1.0 + 1e-12), "m={m} D={d:?}: {eta} > {bound}");
            assert!(eta < 1.0 / 3.6 + 1e-9, "m={m} D={d:?}: {eta}");
            worst = worst.max(eta);
        }
    }
    assert!(worst > 0.2);
}
