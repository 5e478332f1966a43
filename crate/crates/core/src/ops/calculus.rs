//! Homology-level checks of the cap/cup/bracket calculus on finite groups.

use serde_json::json;

use crate::algebra::{Bimodule, GroupAlgebra};
use crate::error::{Error, Result};
use crate::hochschild::chain::{connes_b_signed, normalized_differential, Chain};
use crate::hochschild::cochain::{cochain_differential, Cochain};
use crate::hochschild::complex::FiniteComplexes;
use crate::linalg::HomologySpace;
use crate::ops::products::{cap, cup, gerstenhaber_bracket, left_action, lie_derivative_unchecked};
use crate::report::CheckRecord;

/// Representatives of `HH_n` and `HH^p` for `n, p ≤ max_degree`, plus the spaces to compare classes.
pub struct ClassData {
    pub alg: GroupAlgebra,
    pub complexes: FiniteComplexes,
    pub max_degree: usize,
    homology: Vec<HomologySpace>,
    cohomology: Vec<HomologySpace>,
}

impl ClassData {
    pub fn new(alg: &GroupAlgebra, max_degree: usize) -> Result<Self> {
        if !alg.group().is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let cx = FiniteComplexes::new(alg, Bimodule::Algebra, true)?;
        let homology = (0..=max_degree + 1)
            .map(|n| cx.homology_space(n))
            .collect::<Result<Vec<_>>>()?;
        let cohomology = (0..=max_degree)
            .map(|p| cx.cohomology_space(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassData {
            alg: alg.clone(),
            complexes: cx,
            max_degree,
            homology,
            cohomology,
        })
    }

    pub fn cycles(&self, n: usize) -> Vec<Chain> {
        self.homology[n]
            .presentation
            .representatives
            .iter()
            .map(|v| self.complexes.vector_chain(n, v))
            .collect()
    }

    pub fn cocycles(&self, p: usize) -> Vec<Cochain> {
        self.cohomology[p]
            .presentation
            .representatives
            .iter()
            .map(|v| self.complexes.vector_cochain(p, v))
            .collect()
    }

    pub fn homology(&self, n: usize) -> Option<&HomologySpace> {
        self.homology.get(n)
    }

    pub fn cohomology(&self, p: usize) -> Option<&HomologySpace> {
        self.cohomology.get(p)
    }

    /// Whether two cycles of the same degree are homologous.
    pub fn same_homology_class(&self, a: &Chain, b: &Chain) -> Result<bool> {
        let n = a.degree().max(b.degree());
        let space = self.homology.get(n).ok_or(Error::BeyondTruncation(n))?;
        let va = self.complexes.chain_vector(a)?;
        let vb = self.complexes.chain_vector(b)?;
        space.same_class(&va, &vb)
    }

    pub fn same_cohomology_class(&self, f: &Cochain, g: &Cochain) -> Result<bool> {
        let p = f.arity();
        let space = self.cohomology.get(p).ok_or(Error::BeyondTruncation(p))?;
        let vf = self.complexes.cochain_vector(f)?;
        let vg = self.complexes.cochain_vector(g)?;
        space.same_class(&vf, &vg)
    }
}

fn outcome(r: Result<bool>) -> (bool, Option<String>) {
    match r {
        Ok(b) => (b, None),
        Err(e) => (false, Some(e.to_string())),
    }
}

/// Graded commutator `[f, g] = fg - (-1)^{|f||g|} gf` applied to `c`.
fn commutator(
    c: &Chain,
    f: &dyn Fn(&Chain) -> Result<Chain>,
    g: &dyn Fn(&Chain) -> Result<Chain>,
    parity_fg: usize,
) -> Result<Chain> {
    let fg = f(&g(c)?)?;
    let gf = g(&f(c)?)?;
    let s = c.ring().sign(parity_fg);
    let fg = fg.with_degree(gf.degree());
    let gf = gf.with_degree(fg.degree());
    fg.sub(&gf.scale(&s))
}

/// Runs every calculus relation on classes in degrees `≤ max_degree`.
///
/// `flip_b` replaces `B` by `-B` in the relations that involve it.
pub fn check_calculus(data: &ClassData, flip_b: bool) -> Result<Vec<CheckRecord>> {
    let alg = &data.alg;
    let n_max = data.max_degree;
    let mut out = Vec::new();
    let cocycles: Vec<Vec<Cochain>> = (0..=n_max).map(|p| data.cocycles(p)).collect();
    let cycles: Vec<Vec<Chain>> = (0..=n_max).map(|n| data.cycles(n)).collect();

    let mut rec = |name: &str, ok: (bool, Option<String>), detail: serde_json::Value| {
        let mut detail = detail;
        if let Some(e) = ok.1 {
            detail["error"] = json!(e);
        }
        out.push(CheckRecord::new(name, ok.0, detail));
    };

    for n in 0..=n_max {
        for (ci, c) in cycles[n].iter().enumerate() {
            for p in 0..=n {
                for (ai, a) in cocycles[p].iter().enumerate() {
                    let r = cap(alg, c, a).map(|x| normalized_differential(alg, &x).is_zero());
                    rec("cap_of_cycles_is_cycle", outcome(r), json!({"n": n, "p": p, "chain": ci, "cochain": ai}));
                }
            }
            for p in 0..=n_max {
                for q in 0..=n_max {
                    if p + q > n_max {
                        continue;
                    }
                    for (ai, a) in cocycles[p].iter().enumerate() {
                        for (bi, b) in cocycles[q].iter().enumerate() {
                            let detail = json!({"n": n, "p": p, "q": q, "chain": ci, "a": ai, "b": bi});
                            if p + q <= n {
                                let r = (|| {
                                    let lhs = left_action(alg, a, &left_action(alg, b, c)?)?;
                                    let rhs = left_action(alg, &cup(alg, a, b)?, c)?;
                                    data.same_homology_class(&lhs, &rhs)
                                })();
                                rec("left_action_associative", outcome(r), detail.clone());
                            }
                            if p + q == 0 || n + 1 < p + q {
                                continue;
                            }
                            let r = (|| {
                                let br = gerstenhaber_bracket(alg, a, b)?;
                                let lhs = left_action(alg, &br, c)?;
                                let la = |x: &Chain| lie_derivative_unchecked(alg, a, x, flip_b);
                                let ib = |x: &Chain| left_action(alg, b, x);
                                let comm = commutator(c, &la, &ib, ((p + 1) * q) % 2)?;
                                let rhs = comm.scale(&alg.ring().sign(p + 1));
                                data.same_homology_class(&lhs, &rhs)
                            })();
                            rec("bracket_action_via_lie_derivative", outcome(r), detail.clone());
                            let r = (|| {
                                let br = gerstenhaber_bracket(alg, a, b)?;
                                let lhs = left_action(alg, &br, c)?;
                                let ia = |x: &Chain| left_action(alg, a, x);
                                let bop = |x: &Chain| connes_b_signed(alg, x, flip_b);
                                let inner = |x: &Chain| commutator(x, &ia, &bop, p % 2);
                                let rhs = commutator(c, &inner, &|x: &Chain| left_action(alg, b, x), ((p + 1) * q) % 2)?;
                                data.same_homology_class(&lhs, &rhs)
                            })();
                            rec("bracket_action_derived", outcome(r), detail);
                        }
                    }
                }
            }
        }
    }

    for p in 0..=n_max {
        for q in 0..=n_max - p {
            for (ai, a) in cocycles[p].iter().enumerate() {
                for (bi, b) in cocycles[q].iter().enumerate() {
                    let detail = json!({"p": p, "q": q, "a": ai, "b": bi});
                    let r = (|| {
                        let ab = cup(alg, a, b)?;
                        let ba = cup(alg, b, a)?.scale(&alg.ring().sign(p * q));
                        data.same_cohomology_class(&ab, &ba)
                    })();
                    rec("cup_graded_commutative", outcome(r), detail.clone());
                    if p + q >= 1 && p + q - 1 <= n_max {
                        let r = (|| {
                            let br = gerstenhaber_bracket(alg, a, b)?;
                            let d = cochain_differential(&br)?;
                            let v = data.complexes.cochain_vector(&d)?;
                            Ok(v.is_empty())
                        })();
                        rec("bracket_of_cocycles_is_cocycle", outcome(r), detail);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::report::{all_passed, first_failure};
    use crate::scalar::Ring;

    #[test]
    fn calculus_on_f2_z2() {
        let a = GroupAlgebra::new(Group::cyclic(2), Ring::PrimeField(2));
        let data = ClassData::new(&a, 2).unwrap();
        let rec = check_calculus(&data, false).unwrap();
        assert!(all_passed(&rec), "{:?}", first_failure(&rec));
    }

    #[test]
    fn calculus_on_f3_z3_and_flipped_control() {
        let a = GroupAlgebra::new(Group::cyclic(3), Ring::PrimeField(3));
        let data = ClassData::new(&a, 2).unwrap();
        let rec = check_calculus(&data, false).unwrap();
        assert!(all_passed(&rec), "{:?}", first_failure(&rec));
        let flipped = check_calculus(&data, true).unwrap();
        assert!(!all_passed(&flipped));
    }

    #[test]
    fn calculus_on_s3_mod_3() {
        let a = GroupAlgebra::new(Group::symmetric3(), Ring::PrimeField(3));
        let data = ClassData::new(&a, 2).unwrap();
        let rec = check_calculus(&data, false).unwrap();
        assert!(all_passed(&rec), "{:?}", first_failure(&rec));
    }

    #[test]
    fn calculus_on_z3_over_integers() {
        let a = GroupAlgebra::new(Group::cyclic(3), Ring::Integers);
        let data = ClassData::new(&a, 2).unwrap();
        let rec = check_calculus(&data, false).unwrap();
        assert!(all_passed(&rec), "{:?}", first_failure(&rec));
    }

    #[test]
    fn cap_leibniz_on_basis() {
        use crate::hochschild::chain::normalize;
        let a = GroupAlgebra::new(Group::cyclic(3), Ring::PrimeField(5));
        let cx = FiniteComplexes::new(&a, Bimodule::Algebra, true).unwrap();
        for n in 0..=3 {
            for w in cx.chain_basis(n) {
                let c = Chain::word(a.ring(), Bimodule::Algebra, w);
                for p in 0..=n {
                    for v in cx.cochain_basis(p).iter() {
                        let f = cx.vector_cochain(p, &vec![(cx.chain_index(v).unwrap(), a.ring().one())]);
                        let lhs = normalized_differential(&a, &cap(&a, &c, &f).unwrap());
                        let dc = normalized_differential(&a, &c);
                        let df = cochain_differential(&f).unwrap();
                        let rhs = cap(&a, &dc, &f)
                            .unwrap()
                            .add(&cap(&a, &c, &df).unwrap().scale(&a.ring().sign(n)))
                            .unwrap();
                        assert_eq!(lhs, normalize(&a, &rhs), "n={n} p={p}");
                    }
                }
            }
        }
    }
}
