use hochschild::algebra::{GroupAlgebra, GroupAlgebraElement};
use hochschild::group::{Group, GroupElement};
use hochschild::Ring;
use proptest::prelude::*;

fn element(alg: &GroupAlgebra, coeffs: &[i64]) -> GroupAlgebraElement {
    let terms: Vec<(GroupElement, i64)> = coeffs.iter().enumerate().map(|(i, &c)| (GroupElement::index(i), c)).collect();
    alg.from_i64(&terms)
}

fn s3() -> GroupAlgebra {
    GroupAlgebra::new(Group::symmetric3(), Ring::PrimeField(5))
}

proptest! {
    #[test]
    fn group_ring_axioms(
        a in prop::collection::vec(-3i64..=3, 6),
        b in prop::collection::vec(-3i64..=3, 6),
        c in prop::collection::vec(-3i64..=3, 6),
    ) {
        let alg = s3();
        let (x, y, z) = (element(&alg, &a), element(&alg, &b), element(&alg, &c));
        let xy = alg.multiply(&x, &y).unwrap();
        prop_assert_eq!(alg.multiply(&xy, &z).unwrap(), alg.multiply(&x, &alg.multiply(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(alg.multiply(&alg.one(), &x).unwrap(), x.clone());
        prop_assert_eq!(alg.antipode(&xy), alg.multiply(&alg.antipode(&y), &alg.antipode(&x)).unwrap());
        prop_assert_eq!(xy.augment(), &x.augment() * &y.augment());
        let left = alg.multiply(&x, &y.add(&z).unwrap()).unwrap();
        prop_assert_eq!(left, xy.add(&alg.multiply(&x, &z).unwrap()).unwrap());
    }

    #[test]
    fn free_abelian_laurent_products(e in prop::collection::vec(-5i64..=5, 4)) {
        let g = Group::free_abelian(2);
        let x = GroupElement::exponents(&e[..2]);
        let y = GroupElement::exponents(&e[2..]);
        let xy = g.mul(&x, &y);
        prop_assert_eq!(xy.as_slice(), &[e[0] + e[2], e[1] + e[3]][..]);
        prop_assert!(g.is_identity(&g.mul(&x, &g.inverse(&x))));
    }
}

#[test]
fn group_json_round_trip() {
    for g in [Group::cyclic(4), Group::symmetric3(), Group::trivial(), Group::free_abelian(3)] {
        let back = Group::from_json(&g.to_json()).unwrap();
        assert_eq!(back.to_json(), g.to_json());
        assert_eq!(back.order(), g.order());
    }
}

#[test]
fn non_associative_table_is_rejected() {
    let bad = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]];
    assert!(Group::from_table("bad", bad).is_err());
}
