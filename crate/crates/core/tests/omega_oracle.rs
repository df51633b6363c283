//! The cut algorithm against the brute-force oracle on random semigroups.

use omega_core::omega::{omega_element, omega_global, OmegaConfig, SeedCuts};
use omega_core::oracle::{cover_minimals, omega_oracle};
use omega_core::Semigroup;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn semigroup() -> impl Strategy<Value = Semigroup> {
    prop::collection::vec(3i64..=30, 2..=4)
        .prop_filter_map("not a semigroup", |g| Semigroup::from_generators(&g).ok())
}

#[test]
fn membership_agrees_with_factorizations() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut built = 0;
    while built < 20 {
        let p = rng.gen_range(2..=4);
        let gens: Vec<i64> = (0..p).map(|_| rng.gen_range(3..=20)).collect();
        let Ok(s) = Semigroup::from_generators(&gens) else { continue };
        built += 1;
        let reach = s.frobenius() + 2 * s.multiplicity();
        for v in 0..=reach {
            let facts = s.factorizations(v);
            assert_eq!(s.contains(v), !facts.is_empty(), "{gens:?} at {v}");
            for f in &facts {
                let total: i64 = f.coords.iter().zip(s.generators()).map(|(x, n)| x * n).sum();
                assert_eq!(total, v);
            }
        }
        assert!(!s.contains(s.frobenius()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 120, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn solver_matches_oracle(s in semigroup()) {
        let result = omega_global(&s, &OmegaConfig::default(), 1).unwrap();
        let oracle: Vec<i64> = s.generators().iter().map(|&n| omega_oracle(&s, n).unwrap()).collect();
        prop_assert_eq!(&result.values, &oracle);
        prop_assert_eq!(result.omega, *oracle.iter().max().unwrap());
        for (j, trace) in result.traces.iter().enumerate() {
            let minimals = cover_minimals(&s, s.generators()[j]).unwrap();
            for x in trace.efficient_points() {
                prop_assert!(minimals.iter().any(|m| m == x), "{:?} is not minimal", x);
            }
            let lbs = trace.lb_history();
            let ubs = trace.ub_history();
            prop_assert!(lbs.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(ubs.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(lbs.iter().all(|&lb| lb <= trace.omega));
            for (it, &lb) in trace.iterations.iter().zip(&lbs) {
                prop_assert!(trace.omega <= lb.max(it.ub));
            }
        }
    }

    #[test]
    fn modes_and_seed_cuts_agree(s in semigroup()) {
        let improved = omega_global(&s, &OmegaConfig::default(), 1).unwrap().values;
        let baseline = omega_global(&s, &OmegaConfig::baseline(), 1).unwrap().values;
        let all = OmegaConfig { seed_cuts: SeedCuts::All, ..OmegaConfig::default() };
        prop_assert_eq!(&improved, &baseline);
        prop_assert_eq!(&improved, &omega_global(&s, &all, 1).unwrap().values);
    }

    #[test]
    fn generator_order_is_irrelevant(gens in prop::collection::vec(3i64..=30, 2..=4), seed in any::<u64>()) {
        let Ok(s) = Semigroup::from_generators(&gens) else { return Ok(()) };
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let t = Semigroup::from_generators(&shuffled).unwrap();
        prop_assert_eq!(&s, &t);
        let cfg = OmegaConfig::default();
        for j in 0..s.embedding_dimension() {
            prop_assert_eq!(omega_element(&s, j, &cfg).unwrap().omega, omega_element(&t, j, &cfg).unwrap().omega);
        }
    }
}
