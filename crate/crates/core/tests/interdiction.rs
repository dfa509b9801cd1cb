mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pmatroid::interdiction::{evaluate_interdiction, solve_interdiction, RankDropPolicy};
use pmatroid::matroid::{MatroidInstance, ParametricWeight};
use pmatroid::oracle::{brute_interdiction_value, brute_min_basis};
use pmatroid::rational::{int, ExtRational, ParameterBox};
use pmatroid::Error;

use common::{case, random_point};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn matches_brute_force(index in 0usize..400, s in any::<u64>()) {
        let c = case(91, index);
        let sol = solve_interdiction(&c.matroid, &c.weights, &ParameterBox::unbounded(c.p), RankDropPolicy::Permissive)
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        for _ in 0..10 {
            let x = random_point(&mut rng, c.p, 40);
            let (e, v) = evaluate_interdiction(&sol, &x).unwrap();
            let (_, expected) = brute_interdiction_value(&c.matroid, &c.weights, &x).unwrap();
            prop_assert_eq!(&v, &expected);
            // the reported element attains the value
            let minor = c.matroid.delete_element(e).unwrap();
            let attained = if minor.rank() < c.matroid.rank() {
                ExtRational::PosInfinity
            } else {
                ExtRational::Finite(brute_min_basis(&minor, &c.weights, &x).unwrap().1)
            };
            prop_assert_eq!(attained, v.clone());
            // deleting an element never lowers the optimum
            let base = brute_min_basis(&c.matroid, &c.weights, &x).unwrap().1;
            prop_assert!(v >= ExtRational::Finite(base));
        }
    }

    #[test]
    fn piece_representatives_evaluate_to_their_piece(index in 0usize..400) {
        let c = case(92, index);
        let sol = solve_interdiction(&c.matroid, &c.weights, &ParameterBox::unbounded(c.p), RankDropPolicy::Permissive)
            .unwrap();
        for piece in &sol.pieces {
            let (_, v) = evaluate_interdiction(&sol, &piece.representative).unwrap();
            prop_assert_eq!(v, ExtRational::Finite(piece.value.eval(&piece.representative)));
            for part in &piece.parts {
                for h in &part.constraints {
                    prop_assert!(h.strictly_contains(&part.representative));
                }
            }
        }
    }
}

fn one_parameter() -> (MatroidInstance, Vec<ParametricWeight>) {
    // a 4-cycle, so no single deletion disconnects it
    let m = MatroidInstance::graphic(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let w = [(0, 1), (3, -1), (1, 2), (2, 0)]
        .iter()
        .map(|&(a, b)| ParametricWeight::new(int(a), vec![int(b)]))
        .collect();
    (m, w)
}

#[test]
fn one_parameter_interval() {
    let (m, w) = one_parameter();
    let bbox = ParameterBox::finite(vec![int(-3)], vec![int(3)]).unwrap();
    let sol = solve_interdiction(&m, &w, &bbox, RankDropPolicy::Strict).unwrap();
    assert!(sol.infinite_everywhere.is_none());
    for i in -24..=24 {
        let x = [pmatroid::rational::ratio(i, 8)];
        let got = evaluate_interdiction(&sol, &x).unwrap();
        assert_eq!(got.1, brute_interdiction_value(&m, &w, &x).unwrap().1);
    }
    assert!(matches!(
        evaluate_interdiction(&sol, &[int(4)]),
        Err(Error::OutsideBox)
    ));
}

#[test]
fn strict_policy_rejects_rank_drop() {
    let m = MatroidInstance::graphic(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap();
    let w: Vec<ParametricWeight> = [(0, 1), (1, -1), (3, 2)]
        .iter()
        .map(|&(a, b)| ParametricWeight::new(int(a), vec![int(b)]))
        .collect();
    let bbox = ParameterBox::unbounded(1);
    assert!(matches!(
        solve_interdiction(&m, &w, &bbox, RankDropPolicy::Strict),
        Err(Error::RankDrop(_))
    ));
    let sol = solve_interdiction(&m, &w, &bbox, RankDropPolicy::Permissive).unwrap();
    assert_eq!(sol.infinite_everywhere, Some(2));
    assert_eq!(
        evaluate_interdiction(&sol, &[int(7)]).unwrap(),
        (2, ExtRational::PosInfinity)
    );
}
