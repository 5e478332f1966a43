use crate::algebra::{Bimodule, GroupAlgebra, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::hochschild::chain::{connes_b_signed, normalized_differential, BarWord, Chain};
use crate::hochschild::cochain::{cochain_differential, Cochain};
use crate::hochschild::complex::words;
use crate::scalar::Ring;

fn check_ring(alg: &GroupAlgebra, ring: Ring) -> Result<()> {
    if alg.ring() != ring {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

fn check_cochain(alg: &GroupAlgebra, f: &Cochain) -> Result<()> {
    check_ring(alg, f.ring())?;
    if f.algebra().group() != alg.group() {
        return Err(Error::BimoduleMismatch("cochain over another algebra".into()));
    }
    Ok(())
}

/// Builds a cochain, keeping the transported flag if any input carried it.
fn build(
    alg: &GroupAlgebra,
    module: Bimodule,
    arity: usize,
    transported: bool,
    f: impl Fn(&[GroupElement]) -> GroupAlgebraElement + Send + Sync + 'static,
) -> Cochain {
    if transported {
        Cochain::transported(alg, module, arity, f)
    } else {
        Cochain::from_fn(alg, module, arity, f)
    }
}

/// `q(x ⊗ y)` in `P ⊗_A Q`.
pub fn element_product(
    alg: &GroupAlgebra,
    p: Bimodule,
    q: Bimodule,
    x: &GroupAlgebraElement,
    y: &GroupAlgebraElement,
) -> GroupAlgebraElement {
    let mut out = alg.zero();
    for (m, a) in x.terms() {
        for (n, b) in y.terms() {
            out.add_term(p.product(q, alg.group(), m, n), a * b);
        }
    }
    out
}

/// `(m[a₁|…|aₙ]) ∩ f = Σ_p (-1)^{pn} (m·f(a₁,…,a_p))[a_{p+1}|…|aₙ]`, with values in `P ⊗_A Q`.
pub fn cap(alg: &GroupAlgebra, c: &Chain, f: &Cochain) -> Result<Chain> {
    check_ring(alg, c.ring())?;
    check_cochain(alg, f)?;
    let p = f.arity();
    let n = c.degree();
    let target = c.module().tensor(f.module());
    let ring = alg.ring();
    if p > n {
        return Ok(Chain::zero(ring, target, 0));
    }
    let sign = ring.sign(p * n);
    let mut out = Chain::zero(ring, target, n - p);
    for (w, x) in c.terms() {
        let value = f.eval(&w.letters[..p]);
        let g = alg.group();
        for (v, y) in value.terms() {
            let m = c.module().product(f.module(), g, &w.m, v);
            out.add_term(BarWord::new(m, w.letters[p..].to_vec()), &(&sign * x) * y);
        }
    }
    Ok(out)
}

/// `i_f(c) = (-1)^{|c||f|} c ∩ f`.
pub fn left_action(alg: &GroupAlgebra, f: &Cochain, c: &Chain) -> Result<Chain> {
    let s = alg.ring().sign(c.degree() * f.arity());
    Ok(cap(alg, c, f)?.scale(&s))
}

/// `(f∪g)(a₁,…,a_{p+q}) = (-1)^{pq} f(a₁,…,a_p)·g(a_{p+1},…,a_{p+q})`.
pub fn cup(alg: &GroupAlgebra, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    check_cochain(alg, f)?;
    check_cochain(alg, g)?;
    let (p, q) = (f.arity(), g.arity());
    let (mf, mg) = (f.module(), g.module());
    let sign = alg.ring().sign(p * q);
    let transported = f.is_transported() || g.is_transported();
    let (f, g, a) = (f.clone(), g.clone(), alg.clone());
    Ok(build(alg, mf.tensor(mg), p + q, transported, move |w| {
        let x = f.eval(&w[..p]);
        if x.is_zero() {
            return a.zero();
        }
        element_product(&a, mf, mg, &x, &g.eval(&w[p..])).scale(&sign)
    }))
}

/// The pre-Lie product `f∘g = Σ_{i<p} (-1)^{(q-1)i} f(a₁,…,a_i, g(a_{i+1},…,a_{i+q}), …)`.
///
/// For `p = q = 0` the result has arity `-1`; the zero 0-cochain is returned.
pub fn circle(alg: &GroupAlgebra, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    check_cochain(alg, f)?;
    check_cochain(alg, g)?;
    if f.module() != Bimodule::Algebra || g.module() != Bimodule::Algebra {
        return Err(Error::CoefficientsNotInA);
    }
    let (p, q) = (f.arity(), g.arity());
    let transported = f.is_transported() || g.is_transported();
    if p + q == 0 {
        return Ok(build(alg, Bimodule::Algebra, 0, transported, {
            let a = alg.clone();
            move |_| a.zero()
        }));
    }
    let ring = alg.ring();
    let (f, g, a) = (f.clone(), g.clone(), alg.clone());
    Ok(build(alg, Bimodule::Algebra, p + q - 1, transported, move |w| {
        let mut out = a.zero();
        for i in 0..p {
            let inner = g.eval(&w[i..i + q]);
            if inner.is_zero() {
                continue;
            }
            let mut args: Vec<GroupAlgebraElement> = Vec::with_capacity(p);
            args.extend(w[..i].iter().map(|x| a.basis(x.clone())));
            args.push(inner);
            args.extend(w[i + q..].iter().map(|x| a.basis(x.clone())));
            let v = f.eval_elements(&args).scale(&ring.sign((q + 1) * i));
            out = out.add(&v).expect("same ring");
        }
        out
    }))
}

/// `{f,g} = f∘g - (-1)^{(p-1)(q-1)} g∘f`.
pub fn gerstenhaber_bracket(alg: &GroupAlgebra, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let (p, q) = (f.arity() as i64, g.arity() as i64);
    let fg = circle(alg, f, g)?;
    let gf = circle(alg, g, f)?;
    let s = alg.ring().sign(((p - 1) * (q - 1)).rem_euclid(2) as usize);
    fg.sub(&gf.scale(&s))
}

/// True when `d c = 0` in the normalized complex.
pub fn is_cycle(alg: &GroupAlgebra, c: &Chain) -> bool {
    normalized_differential(alg, c).is_zero()
}

/// True when `D f` vanishes on every normalized word; only decidable for finite groups.
pub fn is_cocycle(alg: &GroupAlgebra, f: &Cochain) -> Result<bool> {
    let df = cochain_differential(f)?;
    let alphabet = alg.group().nontrivial_elements()?;
    Ok(words(&alphabet, f.arity() + 1).iter().all(|w| df.eval(w).is_zero()))
}

/// `L_a(c) = B(i_a c) - (-1)^{|a|} i_a(B c)` on cycle representatives.
///
/// The cocycle condition on `a` is checked when the group is finite.
pub fn lie_derivative(alg: &GroupAlgebra, a: &Cochain, c: &Chain) -> Result<Chain> {
    if a.module() != Bimodule::Algebra || c.module() != Bimodule::Algebra {
        return Err(Error::CoefficientsNotInA);
    }
    if !is_cycle(alg, c) {
        return Err(Error::NotACycle);
    }
    if alg.group().is_finite() && !a.is_transported() && !is_cocycle(alg, a)? {
        return Err(Error::NotACocycle);
    }
    lie_derivative_unchecked(alg, a, c, false)
}

/// The same operator without the cycle checks, with optionally flipped `B`.
pub fn lie_derivative_unchecked(alg: &GroupAlgebra, a: &Cochain, c: &Chain, flip: bool) -> Result<Chain> {
    let bop = |x: &Chain| connes_b_signed(alg, x, flip);
    let first = bop(&left_action(alg, a, c)?)?;
    let second = left_action(alg, a, &bop(c)?)?;
    let s = alg.ring().sign(a.arity());
    let first = first.with_degree(second.degree());
    let second = second.with_degree(first.degree());
    first.sub(&second.scale(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::hochschild::complex::FiniteComplexes;
    use std::collections::BTreeMap;

    fn z1(ring: Ring) -> GroupAlgebra {
        GroupAlgebra::new(Group::free_abelian(1), ring)
    }

    fn t(a: &GroupAlgebra, n: i64) -> GroupElement {
        a.group().generator_power(0, n).unwrap()
    }

    #[test]
    fn cap_of_fundamental_cycle_with_euler_derivation() {
        let a = z1(Ring::Integers);
        let c = Chain::word(a.ring(), Bimodule::Algebra, BarWord::new(t(&a, -1), vec![t(&a, 1)]));
        let f = Cochain::derivation(&a, vec![a.basis(t(&a, 1))]).unwrap();
        let capped = cap(&a, &c, &f).unwrap();
        let unit = Chain::word(a.ring(), Bimodule::Algebra, BarWord::new(a.group().identity(), vec![]));
        assert_eq!(capped, unit.scale(&-a.ring().one()));
        assert_eq!(left_action(&a, &f, &c).unwrap(), unit);
    }

    #[test]
    fn unit_cochain_acts_trivially() {
        let a = GroupAlgebra::new(Group::symmetric3(), Ring::Integers);
        let u = Cochain::unit(&a, Bimodule::Algebra);
        let w = BarWord::new(GroupElement::index(2), vec![GroupElement::index(1), GroupElement::index(4)]);
        let c = Chain::word(a.ring(), Bimodule::Algebra, w);
        assert_eq!(cap(&a, &c, &u).unwrap(), c);
        let x = Cochain::from_fn(&a, Bimodule::Algebra, 2, |w| {
            GroupAlgebraElement::monomial(Ring::Integers, w[0].clone(), Ring::Integers.from_i64(3))
        });
        let ux = cup(&a, &u, &x).unwrap();
        let xu = cup(&a, &x, &u).unwrap();
        for w in words(&a.group().nontrivial_elements().unwrap(), 2) {
            assert_eq!(ux.eval(&w), x.eval(&w));
            assert_eq!(xu.eval(&w), x.eval(&w));
        }
    }

    #[test]
    fn cup_of_derivations() {
        let a = z1(Ring::Integers);
        let d = Cochain::derivation(&a, vec![a.basis(t(&a, 1))]).unwrap();
        let dd = cup(&a, &d, &d).unwrap();
        // (-1)^{1·1} t·t
        assert_eq!(dd.eval(&[t(&a, 1), t(&a, 1)]), a.basis(t(&a, 2)).scale(&-a.ring().one()));
        assert_eq!(
            dd.eval(&[t(&a, 2), t(&a, 3)]),
            a.basis(t(&a, 5)).scale(&a.ring().from_i64(-6))
        );
    }

    #[test]
    fn bracket_of_derivations_is_commutator() {
        let a = z1(Ring::Integers);
        let f = Cochain::derivation(&a, vec![a.basis(t(&a, 1))]).unwrap();
        let g = Cochain::derivation(&a, vec![a.basis(t(&a, 2))]).unwrap();
        let b = gerstenhaber_bracket(&a, &f, &g).unwrap();
        for k in [-3, -1, 1, 2, 5] {
            let expected = a.basis(t(&a, k + 1)).scale(&a.ring().from_i64(k));
            assert_eq!(b.eval(&[t(&a, k)]), expected);
        }
    }

    #[test]
    fn bracket_with_zero_cochain_evaluates() {
        let a = z1(Ring::Rationals);
        let f = Cochain::derivation(&a, vec![a.basis(t(&a, 1))]).unwrap();
        let x = a.from_i64(&[(t(&a, 3), 2), (t(&a, -1), 1)]);
        let cx = Cochain::constant(&a, Bimodule::Algebra, x.clone());
        let b = gerstenhaber_bracket(&a, &f, &cx).unwrap();
        assert_eq!(b.arity(), 0);
        assert_eq!(b.eval(&[]), f.eval_elements(&[x]));
        let zz = gerstenhaber_bracket(&a, &cx, &cx).unwrap();
        assert!(zz.eval(&[]).is_zero());
    }

    #[test]
    fn bracket_needs_algebra_coefficients() {
        let a = GroupAlgebra::new(Group::cyclic(2), Ring::PrimeField(2));
        let f = Cochain::unit(&a, Bimodule::Trivial);
        let g = Cochain::unit(&a, Bimodule::Algebra);
        assert_eq!(gerstenhaber_bracket(&a, &f, &g).err(), Some(Error::CoefficientsNotInA));
    }

    #[test]
    fn cap_oracle_f2_z2() {
        let a = GroupAlgebra::new(Group::cyclic(2), Ring::PrimeField(2));
        let cx = FiniteComplexes::new(&a, Bimodule::Algebra, false).unwrap();
        let g = a.group().clone();
        for w in cx.chain_basis(2) {
            for fw in cx.cochain_basis(1) {
                let mut table = BTreeMap::new();
                table.insert(fw.letters.clone(), a.basis(fw.m.clone()));
                let f = Cochain::from_table(&a, Bimodule::Algebra, 1, table);
                let c = Chain::word(a.ring(), Bimodule::Algebra, w.clone());
                let got = cap(&a, &c, &f).unwrap();
                let mut expected = Chain::zero(a.ring(), Bimodule::Algebra, 1);
                if w.letters[0] == fw.letters[0] && !g.is_identity(&w.letters[0]) {
                    expected.add_term(
                        BarWord::new(g.mul(&w.m, &fw.m), vec![w.letters[1].clone()]),
                        a.ring().one(),
                    );
                }
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn lie_derivative_of_unit_vanishes() {
        let a = GroupAlgebra::new(Group::cyclic(3), Ring::PrimeField(3));
        let u = Cochain::unit(&a, Bimodule::Algebra);
        let c = Chain::word(a.ring(), Bimodule::Algebra, BarWord::new(GroupElement::index(1), vec![]));
        assert!(lie_derivative(&a, &u, &c).unwrap().is_zero());
        let s3 = GroupAlgebra::new(Group::symmetric3(), Ring::PrimeField(3));
        let w = BarWord::new(GroupElement::index(1), vec![GroupElement::index(3)]);
        let bad = Chain::word(s3.ring(), Bimodule::Algebra, w);
        let u3 = Cochain::unit(&s3, Bimodule::Algebra);
        assert_eq!(lie_derivative(&s3, &u3, &bad).err(), Some(Error::NotACycle));
    }
}
