use std::sync::Arc;

use hochschild::algebra::{Bimodule, GroupAlgebra};
use hochschild::group::{Group, GroupElement};
use hochschild::hochschild::{normalize, normalized_differential, truncated_homology, words, BarWord, Chain};
use hochschild::resolution::{
    check_section, check_square_zero, hochschild_via_resolution, Comparison, KoszulResolution, PeriodicResolution,
    SmallModule, Variant,
};
use hochschild::Ring;

#[test]
fn resolutions_are_complexes() {
    for d in 1..=3 {
        for variant in [Variant::Left, Variant::Right] {
            assert!(check_square_zero(&KoszulResolution::new(d, Ring::Integers, variant).unwrap()));
        }
    }
    for n in [2, 3, 5] {
        assert!(check_square_zero(&PeriodicResolution::new(n, Ring::Integers, 6).unwrap()));
    }
}

#[test]
fn koszul_small_model_has_binomial_ranks() {
    for d in 1..=3usize {
        let res = KoszulResolution::new(d, Ring::Rationals, Variant::Left).unwrap();
        let small = hochschild_via_resolution(&res, SmallModule::Algebra, d).unwrap();
        assert!(small.differentials_vanish());
        let ranks: Vec<usize> = (0..=d).map(|k| small.rank(k)).collect();
        let binom: Vec<usize> = (0..=d).map(|k| (0..k).fold(1, |a, i| a * (d - i) / (i + 1))).collect();
        assert_eq!(ranks, binom);
    }
}

#[test]
fn periodic_matches_bar_for_z5() {
    let alg = GroupAlgebra::new(Group::cyclic(5), Ring::PrimeField(5));
    let bar = truncated_homology(&alg, Bimodule::Algebra, 0..=3).unwrap();
    let small = hochschild_via_resolution(&PeriodicResolution::new(5, Ring::PrimeField(5), 3).unwrap(), SmallModule::Algebra, 3).unwrap();
    for k in 0..=3 {
        assert_eq!(small.homology(k).unwrap().free_rank, bar[k].free_rank);
    }
}

#[test]
fn comparison_is_a_chain_map() {
    let res = KoszulResolution::new(2, Ring::Rationals, Variant::Left).unwrap();
    let cmp = Arc::new(Comparison::new(res));
    let alg = cmp.algebra().clone();
    let alphabet: Vec<GroupElement> = [[1, 0], [0, 1], [-1, 2], [0, 0]].iter().map(|e| GroupElement::exponents(e)).collect();
    for w in words(&alphabet, 2) {
        let word = BarWord::new(GroupElement::exponents(&[2, -1]), w);
        let c = Chain::word(alg.ring(), Bimodule::Algebra, word);
        let image = cmp.chain_to_small(&c).unwrap();
        let lhs = cmp.small_chain_differential(&image);
        let rhs = cmp.chain_to_small(&normalized_differential(&alg, &normalize(&alg, &c))).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn contracting_sections_exist() {
    let res = PeriodicResolution::new(4, Ring::Integers, 4).unwrap();
    let g = Group::cyclic(4);
    assert!(check_section(&res, &g.elements().unwrap()));
}
