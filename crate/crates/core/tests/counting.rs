mod common;

use permtrade_core::poset::{
    antichain, bucket_order, chain, count_ideals, count_linear_extensions, make_circulant,
    poset_efficiency, ExtensionMethod, IdealMethod, Poset,
};
use permtrade_core::{BigCount, Budget};
use proptest::prelude::*;

const IDEAL_METHODS: [IdealMethod; 3] =
    [IdealMethod::Lattice, IdealMethod::BipartiteSum, IdealMethod::CirculantTransfer];
const EXTENSION_METHODS: [ExtensionMethod; 4] = [
    ExtensionMethod::Brute,
    ExtensionMethod::IdealDp,
    ExtensionMethod::BipartiteFst,
    ExtensionMethod::Orbit,
];

fn applicable_ideals(p: &Poset) -> Vec<BigCount> {
    IDEAL_METHODS
        .iter()
        .filter_map(|&m| count_ideals(p, m, Budget::default()).ok())
        .collect()
}

fn applicable_extensions(p: &Poset) -> Vec<BigCount> {
    EXTENSION_METHODS
        .iter()
        .filter_map(|&m| count_linear_extensions(p, m, Budget::default()).ok())
        .collect()
}

fn dag() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=8).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let k = pairs.len();
        (Just(n), Just(pairs), proptest::collection::vec(any::<bool>(), k))
            .prop_map(|(n, pairs, keep)| {
                let rel = pairs.into_iter().zip(keep).filter(|p| p.1).map(|p| p.0).collect();
                (n, rel)
            })
    })
}

#[test]
fn chain_and_antichain() {
    for n in 1..=10 {
        let c = chain(n).unwrap();
        assert_eq!(count_ideals(&c, IdealMethod::Lattice, Budget::default()).unwrap(), BigCount::from(n as u64 + 1));
        assert_eq!(count_linear_extensions(&c, ExtensionMethod::IdealDp, Budget::default()).unwrap(), BigCount::one());
        let a = antichain(n).unwrap();
        assert_eq!(count_ideals(&a, IdealMethod::Lattice, Budget::default()).unwrap(), BigCount::pow2(n as u32));
        assert_eq!(
            count_linear_extensions(&a, ExtensionMethod::IdealDp, Budget::default()).unwrap(),
            BigCount::factorial(n as u64)
        );
    }
}

#[test]
fn bucket_orders_closed_form() {
    for t in 1..=4 {
        for k in 1..=3 {
            let p = bucket_order(t, k).unwrap();
            let alpha = count_ideals(&p, IdealMethod::Lattice, Budget::default()).unwrap();
            assert_eq!(alpha, BigCount::from((k * ((1 << t) - 1) + 1) as u64));
            let lambda = count_linear_extensions(&p, ExtensionMethod::IdealDp, Budget::default()).unwrap();
            assert_eq!(lambda, BigCount::factorial(t as u64).pow(k as u32));
        }
    }
}

#[test]
fn every_small_circulant_agrees() {
    for m in 1..=8u32 {
        // offsets containing 0 cover every circulant up to relabelling
        for bits in 0u32..1 << (m - 1) {
            let offsets: Vec<u32> = std::iter::once(0)
                .chain((1..m).filter(|i| bits >> (i - 1) & 1 == 1))
                .collect();
            let p = make_circulant(m, &offsets).unwrap();
            let rel: Vec<(usize, usize)> = p.covers().to_vec();
            let n = p.len();
            let want_alpha = BigCount::from(common::ideals(n, &rel));
            for a in applicable_ideals(&p) {
                assert_eq!(a, want_alpha, "m={m} D={offsets:?}");
            }
            let ext = applicable_extensions(&p);
            assert!(ext.len() >= 2);
            if n <= 10 {
                assert_eq!(ext[0], BigCount::from(common::extensions(n, &rel)));
            }
            assert!(ext.iter().all(|e| *e == ext[0]), "m={m} D={offsets:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn random_dags_match_brute((n, rel) in dag()) {
        let p = Poset::from_relations(n, &rel).unwrap();
        let alpha = BigCount::from(common::ideals(n, &rel));
        let lambda = BigCount::from(common::extensions(n, &rel));
        for a in applicable_ideals(&p) {
            prop_assert_eq!(&a, &alpha);
        }
        let ext = applicable_extensions(&p);
        prop_assert!(ext.len() >= 2);
        for e in ext {
            prop_assert_eq!(&e, &lambda);
        }
    }

    #[test]
    fn efficiency_residual((n, rel) in dag()) {
        let p = Poset::from_relations(n, &rel).unwrap();
        let r = poset_efficiency(&p, Budget::default()).unwrap();
        prop_assert!(r.relative_residual() < 1e-6);
    }
}
