use hochschild::algebra::{Bimodule, GroupAlgebra};
use hochschild::group::{Group, GroupElement};
use hochschild::hochschild::chain::{chain_differential, connes_b, normalize, normalized_differential, BarWord, Chain};
use hochschild::hochschild::sanity::check_differentials;
use hochschild::hochschild::{truncated_cohomology, truncated_homology};
use hochschild::resolution::{hochschild_via_resolution, PeriodicResolution, SmallModule};
use hochschild::Ring;
use proptest::prelude::*;

fn chain(alg: &GroupAlgebra, words: &[(usize, Vec<usize>, i64)], len: usize) -> Chain {
    let ring = alg.ring();
    let mut c = Chain::zero(ring, Bimodule::Algebra, len);
    for (m, letters, coeff) in words {
        let w = BarWord::new(GroupElement::index(*m), letters.iter().map(|&i| GroupElement::index(i)).collect());
        c.add_term(w, ring.from_i64(*coeff));
    }
    c
}

fn words(order: usize, len: usize) -> impl Strategy<Value = Vec<(usize, Vec<usize>, i64)>> {
    prop::collection::vec((0..order, prop::collection::vec(0..order, len), -3i64..=3), 1..6)
}

proptest! {
    #[test]
    fn differentials_square_to_zero_on_random_chains(len in 1usize..5, seed in words(6, 4)) {
        let alg = GroupAlgebra::new(Group::symmetric3(), Ring::Integers);
        let ws: Vec<_> = seed.into_iter().map(|(m, l, c)| (m, l[..len].to_vec(), c)).collect();
        let c = chain(&alg, &ws, len);
        prop_assert!(chain_differential(&alg, &chain_differential(&alg, &c)).is_zero());
        let n = normalize(&alg, &c);
        prop_assert!(normalized_differential(&alg, &normalized_differential(&alg, &n)).is_zero());
        let bb = connes_b(&alg, &connes_b(&alg, &n).unwrap()).unwrap();
        prop_assert!(bb.is_zero());
        let lhs = normalized_differential(&alg, &connes_b(&alg, &n).unwrap());
        let rhs = if len == 0 { Chain::zero(alg.ring(), Bimodule::Algebra, len) } else { connes_b(&alg, &normalized_differential(&alg, &n)).unwrap() };
        prop_assert!(lhs.add(&rhs).unwrap().is_zero());
    }
}

#[test]
fn bar_and_periodic_agree_over_the_integers() {
    for n in [2usize, 3, 4] {
        let alg = GroupAlgebra::new(Group::cyclic(n), Ring::Integers);
        let bar = truncated_homology(&alg, Bimodule::Algebra, 0..=3).unwrap();
        let res = PeriodicResolution::new(n, Ring::Integers, 3).unwrap();
        let small = hochschild_via_resolution(&res, SmallModule::Algebra, 3).unwrap();
        for k in 0..=3 {
            let p = small.homology(k).unwrap();
            assert_eq!((p.free_rank, &p.torsion), (bar[k].free_rank, &bar[k].torsion), "Z/{n} degree {k}");
        }
    }
}

#[test]
fn trivial_group_is_concentrated_in_degree_zero() {
    let alg = GroupAlgebra::new(Group::trivial(), Ring::Rationals);
    let h: Vec<usize> = truncated_homology(&alg, Bimodule::Algebra, 0..=3).unwrap().iter().map(|p| p.free_rank).collect();
    let c: Vec<usize> = truncated_cohomology(&alg, Bimodule::Algebra, 0..=3).unwrap().iter().map(|p| p.free_rank).collect();
    assert_eq!(h, vec![1, 0, 0, 0]);
    assert_eq!(c, vec![1, 0, 0, 0]);
}

#[test]
fn s3_differentials_over_f2() {
    let rs = check_differentials(&GroupAlgebra::new(Group::symmetric3(), Ring::PrimeField(2)), 3).unwrap();
    assert!(rs.iter().all(|r| r.passed), "{rs:?}");
}
