mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::*;
use shufsc::conjecture::{check, Conjecture};
use shufsc::enumeration::{graded_count, r_total};
use shufsc::upair::{generate_graded, p_of_path, unfold_path, Side};
use shufsc::{Guard, MonsterLetter, SetVector, Transformation, UPair};

fn transformation(size: usize) -> impl Strategy<Value = Transformation> {
    prop::collection::vec(0..size, size).prop_map(|v| Transformation::new(v).unwrap())
}

fn path(m: usize, n: usize, max_len: usize) -> impl Strategy<Value = Vec<MonsterLetter>> {
    prop::collection::vec(
        (transformation(m), transformation(n)).prop_map(|(f, g)| MonsterLetter::new(f, g)),
        0..=max_len,
    )
}

fn graded(n: usize, k: u32, side: Side) -> Vec<SetVector> {
    generate_graded(n, k, side, &Guard::default())
        .unwrap()
        .into_iter()
        .collect()
}

fn sized_path() -> impl Strategy<Value = (usize, usize, Vec<MonsterLetter>)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| (Just(m), Just(n), path(m, n, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn successors_stay_valid(n in 1usize..=4, k in 0u32..=2, pick in any::<prop::sample::Index>(), seed in prop::collection::vec(0usize..4, 4)) {
        let g = Transformation::new(seed.iter().take(n).map(|x| x % n).collect()).unwrap();
        let rights = graded(n, k, Side::Right);
        let lefts = graded(n, k, Side::Left);
        let r = rights[pick.index(rights.len())].succ_right(&g).unwrap();
        let l = lefts[pick.index(lefts.len())].succ_left(&g).unwrap();
        prop_assert!(r.is_rvalid(k + 1), "{r}");
        prop_assert!(l.is_lvalid(k + 1), "{l}");
    }

    #[test]
    fn path_images_factor((m, n, letters) in sized_path()) {
        let pair = p_of_path(m, n, &letters).unwrap();
        let k = letters.len() as u32;
        prop_assert!(graded(m, k, Side::Left).contains(pair.left()));
        prop_assert!(graded(n, k, Side::Right).contains(pair.right()));
    }

    #[test]
    fn every_product_pair_is_realised(m in 1usize..=3, n in 1usize..=3, k in 0u32..=2, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let lefts = graded(m, k, Side::Left);
        let rights = graded(n, k, Side::Right);
        let pair = UPair::new(lefts[a.index(lefts.len())].clone(), rights[b.index(rights.len())].clone()).unwrap();
        let letters = unfold_path(&pair).unwrap();
        prop_assert_eq!(letters.len() as u32, k);
        prop_assert_eq!(p_of_path(m, n, &letters).unwrap(), pair.clone());
        prop_assert_eq!(replay(m, n, &letters), cells_of(&pair.s_projection().unwrap()));
    }

    #[test]
    fn report_is_deterministic(m in 1usize..=3, n in 1usize..=3, dense in any::<bool>(), depth in prop::option::of(0u32..4)) {
        let which = if dense { Conjecture::DenseReachable } else { Conjecture::ValidReachable };
        let guard = Guard::default();
        let a = serde_json::to_string(&check(which, m, n, depth, &guard).unwrap()).unwrap();
        let b = serde_json::to_string(&check(which, m, n, depth, &guard).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn graded_counts_match_listings() {
    for n in 1..=4 {
        for k in 0..=3u32 {
            let listed = graded(n, k, Side::Right);
            assert_eq!(
                BigUint::from(listed.len()),
                r_total(n, k as usize),
                "n = {n}, k = {k}"
            );
            for l in 1..=n {
                let with_l = listed.iter().filter(|v| v.support() == l).count();
                assert_eq!(
                    BigUint::from(with_l),
                    graded_count(n, k as usize, l).unwrap()
                );
            }
            let mirrored: BTreeSet<SetVector> = graded(n, k, Side::Left)
                .iter()
                .map(|v| v.mirror(k).unwrap())
                .collect();
            assert_eq!(mirrored, listed.iter().cloned().collect());
        }
    }
}
