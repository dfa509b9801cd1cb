mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pmatroid::matroid::MatroidInstance;
use pmatroid::oracle::weighted_sum_argmins;
use pmatroid::rational::{int, Rational};
use pmatroid::wsd::decompose_weight_set;
use pmatroid::Error;

use common::{random_costs, random_graphic, random_linear, random_uniform};

fn instance(rng: &mut ChaCha8Rng, kind: u8) -> MatroidInstance {
    match kind % 3 {
        0 => random_graphic(rng, 5, 7),
        1 => random_uniform(rng, 6),
        _ => random_linear(rng, 6),
    }
}

/// A random strictly positive weight vector summing to one.
fn random_lambda(rng: &mut ChaCha8Rng, p: usize) -> Vec<Rational> {
    let raw: Vec<u32> = (0..p).map(|_| rng.gen_range(1..=1000)).collect();
    let total: u32 = raw.iter().sum();
    raw.iter()
        .map(|&r| Rational::from_unsigneds(r, total))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn components_are_weighted_sum_optima(s in any::<u64>(), kind in 0u8..3, p in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let m = instance(&mut rng, kind);
        let costs = random_costs(&mut rng, m.ground_size(), p);
        let dec = match decompose_weight_set(&m, &costs) {
            Ok(d) => d,
            Err(Error::Degenerate(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        // distinct images
        let images: BTreeSet<_> = dec.extreme_points.iter().map(|x| x.y.clone()).collect();
        prop_assert_eq!(images.len(), dec.components.len());
        for _ in 0..30 {
            let lambda = random_lambda(&mut rng, p);
            let argmins = weighted_sum_argmins(&m, &costs, &lambda).unwrap();
            let comps = dec.components_at(&lambda);
            prop_assert!(!comps.is_empty());
            for c in comps {
                prop_assert!(argmins.iter().any(|a| a.y == dec.components[c].image.y));
            }
        }
        // every component's representative weight has its image as the unique optimum
        for c in &dec.components {
            let argmins = weighted_sum_argmins(&m, &costs, &c.representative_weight).unwrap();
            prop_assert_eq!(argmins.len(), 1);
            prop_assert_eq!(&argmins[0].y, &c.image.y);
        }
    }
}

#[test]
fn identical_costs_give_one_component() {
    let m = MatroidInstance::uniform(2, 4).unwrap();
    let costs: Vec<Vec<Rational>> = [(1, 1), (2, 2), (3, 3), (4, 4)]
        .iter()
        .map(|&(a, b)| vec![int(a), int(b)])
        .collect();
    let dec = decompose_weight_set(&m, &costs).unwrap();
    assert_eq!(dec.components.len(), 1);
    assert_eq!(dec.extreme_points[0].y, vec![int(3), int(3)]);
}
