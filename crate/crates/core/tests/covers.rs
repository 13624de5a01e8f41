use permtrade_core::cover::{greedy_cover, greedy_size_bound, randomized_cover, verify_cover};
use permtrade_core::perm::{compose, rank, PermutationSampler};
use permtrade_core::poset::{bucket_order, make_matching_complement};
use permtrade_core::setsystem::SetSystem;
use permtrade_core::Budget;
use proptest::prelude::*;

fn system(max_n: usize) -> impl Strategy<Value = SetSystem> {
    (2..=max_n).prop_flat_map(|n| {
        let full = (1u64 << n) - 1;
        proptest::collection::vec(any::<bool>(), (1usize << n) - 2).prop_map(move |keep| {
            let mut members: Vec<u64> = (1..full).zip(keep).filter(|p| p.1).map(|p| p.0).collect();
            members.push(0);
            members.push(full);
            SetSystem::new(n, members).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn greedy_within_bound(a in system(6)) {
        let chains = a.count_maximal_chains().to_u64().unwrap();
        prop_assume!(chains > 0);
        let c = greedy_cover(&a).unwrap();
        prop_assert!(c.certified);
        prop_assert!(verify_cover(&a, &c).unwrap());
        prop_assert!(c.len() as f64 <= greedy_size_bound(a.universe(), chains));
    }

    #[test]
    fn random_covers_reproducible(a in system(5), seed in any::<u64>()) {
        prop_assume!(!a.count_maximal_chains().is_zero());
        let c1 = randomized_cover(&a, seed, 2.0).unwrap();
        let c2 = randomized_cover(&a, seed, 2.0).unwrap();
        prop_assert_eq!(&c1.perms, &c2.perms);
        if c1.certified {
            prop_assert!(verify_cover(&a, &c1).unwrap());
        }
    }
}

#[test]
fn bucket_ideal_cover() {
    let a = SetSystem::from_poset_ideals(&bucket_order(3, 2).unwrap(), Budget::default()).unwrap();
    let c = greedy_cover(&a).unwrap();
    assert!(c.certified && verify_cover(&a, &c).unwrap());
    assert!(c.len() as f64 <= greedy_size_bound(6, 36));
    assert!(greedy_size_bound(6, 36) < 2312.0);
}

#[test]
fn matching_complement_cover() {
    let a = SetSystem::from_poset_ideals(&make_matching_complement(3).unwrap(), Budget::default()).unwrap();
    let c = greedy_cover(&a).unwrap();
    assert!(verify_cover(&a, &c).unwrap());
}

#[test]
fn no_chains_rejected() {
    let a = SetSystem::new(3, vec![0, 0b111]).unwrap();
    assert!(greedy_cover(&a).is_err());
    assert!(randomized_cover(&a, 1, 1.0).is_err());
}

/// `π'·π` for uniform `π'` is uniform over `S_4`: every cell within 5σ.
#[test]
fn left_translation_uniform() {
    let pi = [2, 0, 3, 1];
    let mut s = PermutationSampler::new(2024);
    let samples = 100_000u32;
    let mut hist = [0u32; 24];
    for _ in 0..samples {
        hist[rank(&compose(&s.permutation(4), &pi))] += 1;
    }
    let p = 1.0 / 24.0;
    let mean = samples as f64 * p;
    let sigma = (samples as f64 * p * (1.0 - p)).sqrt();
    for (r, &h) in hist.iter().enumerate() {
        assert!((h as f64 - mean).abs() <= 5.0 * sigma, "cell {r}: {h}");
    }
}
