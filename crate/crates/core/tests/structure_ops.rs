use hochschild::algebra::GroupAlgebra;
use hochschild::group::Group;
use hochschild::ops::{cap, check_calculus, cup, gerstenhaber_bracket, is_cocycle, is_cycle, ClassData};
use hochschild::Ring;

fn data(n: usize, ring: Ring, max: usize) -> ClassData {
    ClassData::new(&GroupAlgebra::new(Group::cyclic(n), ring), max).unwrap()
}

#[test]
fn calculus_relations_hold() {
    for (n, ring) in [(2, Ring::PrimeField(2)), (3, Ring::Rationals), (3, Ring::PrimeField(3))] {
        let rs = check_calculus(&data(n, ring, 2), false).unwrap();
        assert!(rs.iter().all(|r| r.passed), "Z/{n} {}: {rs:?}", ring.tag());
    }
}

#[test]
fn cup_is_graded_commutative_in_cohomology() {
    let d = data(3, Ring::PrimeField(3), 2);
    let alg = d.alg.clone();
    for p in 0..=1 {
        for q in 0..=1 {
            for f in d.cocycles(p) {
                for g in d.cocycles(q) {
                    let fg = cup(&alg, &f, &g).unwrap();
                    assert!(is_cocycle(&alg, &fg).unwrap());
                    let gf = cup(&alg, &g, &f).unwrap().scale(&alg.ring().sign(p * q));
                    assert!(d.same_cohomology_class(&fg, &gf).unwrap(), "p={p} q={q}");
                }
            }
        }
    }
}

#[test]
fn bracket_of_cocycles_is_a_cocycle() {
    let d = data(2, Ring::PrimeField(2), 2);
    for f in d.cocycles(1) {
        for g in d.cocycles(1) {
            assert!(is_cocycle(&d.alg, &gerstenhaber_bracket(&d.alg, &f, &g).unwrap()).unwrap());
        }
    }
}

#[test]
fn cap_of_cycle_and_cocycle_is_a_cycle() {
    let d = data(3, Ring::Rationals, 2);
    for c in d.cycles(2) {
        for f in d.cocycles(1) {
            assert!(is_cycle(&d.alg, &cap(&d.alg, &c, &f).unwrap()));
        }
    }
}

#[test]
fn flipped_connes_sign_breaks_the_calculus() {
    let rs = check_calculus(&data(3, Ring::PrimeField(3), 2), true).unwrap();
    assert!(rs.iter().any(|r| !r.passed));
}
