use std::collections::HashMap;

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::resolution::{ResElem, ResTerm, Resolution};
use crate::scalar::Ring;

/// Which side the contracting homotopy collects monomials on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `s(a) = a⊗1`.
    Left,
    /// `s(a) = 1⊗a`.
    Right,
}

/// The Koszul resolution of `k[ℤᵈ]` over `k[ℤᵈ]^e`: generators `e_S` for subsets `S ⊆ {1,…,d}`,
/// `d(e_S) = Σ_j (-1)^j (t_{s_j}·e_{S∖s_j} - e_{S∖s_j}·t_{s_j})`.
#[derive(Clone, Debug)]
pub struct KoszulResolution {
    alg: GroupAlgebra,
    rank: usize,
    variant: Variant,
    subsets: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
}

fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

impl KoszulResolution {
    pub fn new(d: usize, ring: Ring, variant: Variant) -> Result<Self> {
        if d == 0 {
            return Err(Error::UnsupportedRank(0));
        }
        let subsets: Vec<Vec<Vec<usize>>> = (0..=d).map(|k| combinations(d, k)).collect();
        let index = subsets
            .iter()
            .flat_map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)))
            .collect();
        Ok(KoszulResolution {
            alg: GroupAlgebra::new(Group::free_abelian(d), ring),
            rank: d,
            variant,
            subsets,
            index,
        })
    }

    pub fn for_algebra(alg: &GroupAlgebra, variant: Variant) -> Result<Self> {
        let d = alg.group().rank().ok_or(Error::NotFreeAbelian)?;
        Self::new(d, alg.ring(), variant)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn subset(&self, k: usize, i: usize) -> &[usize] {
        &self.subsets[k][i]
    }

    pub fn subset_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `t_S = Π_{j∈S} t_j`; `e_S·t_S⁻¹` is the generator induced from the one-sided resolution of `k`.
    pub fn generator_weight(&self, k: usize, i: usize) -> GroupElement {
        let mut e = vec![0; self.rank];
        for &j in &self.subsets[k][i] {
            e[j] = 1;
        }
        GroupElement::exponents(&e)
    }

    fn t(&self, i: usize, n: i64) -> GroupElement {
        self.alg.group().generator_power(i, n).expect("generator")
    }

    /// One-variable homotopy on `t^a ⊗ t^b` in factor `i`, as `(x_i, y_i)` exponent pairs.
    fn h0(&self, a: i64, b: i64) -> Vec<(i64, i64, i64)> {
        let mut out = Vec::new();
        match self.variant {
            Variant::Left => {
                if b > 0 {
                    for l in 0..b {
                        out.push((a + l, b - 1 - l, -1));
                    }
                } else {
                    for l in 0..-b {
                        out.push((a + b + l, -l - 1, 1));
                    }
                }
            }
            Variant::Right => {
                if a > 0 {
                    for l in 0..a {
                        out.push((a - 1 - l, b + l, 1));
                    }
                } else {
                    for l in 0..-a {
                        out.push((a + l, b - l - 1, -1));
                    }
                }
            }
        }
        out
    }

    /// `π(t^a ⊗ t^b)`: all weight moved to one side.
    fn collapse(&self, a: i64, b: i64) -> (i64, i64) {
        match self.variant {
            Variant::Left => (a + b, 0),
            Variant::Right => (0, a + b),
        }
    }
}

impl Resolution for KoszulResolution {
    fn algebra(&self) -> &GroupAlgebra {
        &self.alg
    }

    fn top_degree(&self) -> usize {
        self.rank
    }

    fn rank(&self, k: usize) -> usize {
        self.subsets.get(k).map_or(0, Vec::len)
    }

    fn generator_label(&self, k: usize, i: usize) -> String {
        let s: Vec<String> = self.subsets[k][i].iter().map(|j| (j + 1).to_string()).collect();
        format!("e{{{}}}", s.join(","))
    }

    fn differential_generator(&self, k: usize, i: usize) -> ResElem {
        let ring = self.alg.ring();
        let s = &self.subsets[k][i];
        let e = self.alg.group().identity();
        let mut out = ResElem::zero(ring, k - 1);
        for (j, &v) in s.iter().enumerate() {
            let mut rest = s.clone();
            rest.remove(j);
            let r = self.index[&rest];
            let sign = ring.sign(j);
            out.add_term((r, self.t(v, 1), e.clone()), sign.clone());
            out.add_term((r, e.clone(), self.t(v, 1)), -sign);
        }
        out
    }

    fn section(&self, a: &GroupElement) -> ResElem {
        let ring = self.alg.ring();
        let e = self.alg.group().identity();
        let t = match self.variant {
            Variant::Left => (0, a.clone(), e),
            Variant::Right => (0, e, a.clone()),
        };
        ResElem::term(ring, 0, t, ring.one())
    }

    fn homotopy_term(&self, k: usize, t: &ResTerm) -> Result<ResElem> {
        let ring = self.alg.ring();
        let (gen, x, y) = t;
        let s = &self.subsets[k][*gen];
        let mut out = ResElem::zero(ring, k + 1);
        if k >= self.rank {
            return Ok(out);
        }
        let min = s.first().copied().unwrap_or(self.rank);
        let (xs, ys) = (x.as_slice(), y.as_slice());
        for i in 0..min {
            let mut nx: Vec<i64> = xs.to_vec();
            let mut ny: Vec<i64> = ys.to_vec();
            for j in 0..i {
                let (a, b) = self.collapse(xs[j], ys[j]);
                nx[j] = a;
                ny[j] = b;
            }
            let mut target = vec![i];
            target.extend_from_slice(s);
            let g = self.index[&target];
            for (a, b, c) in self.h0(xs[i], ys[i]) {
                nx[i] = a;
                ny[i] = b;
                out.add_term(
                    (g, GroupElement::exponents(&nx), GroupElement::exponents(&ny)),
                    ring.from_i64(c),
                );
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{check_homotopy_on, check_section, check_square_zero};

    fn monomial_terms(r: &KoszulResolution, k: usize, bound: i64) -> Vec<ResTerm> {
        let d = r.top_degree();
        let mut exps = vec![vec![]];
        for _ in 0..2 * d {
            exps = exps
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (-bound..=bound).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for g in 0..r.rank(k) {
            for e in &exps {
                out.push((g, GroupElement::exponents(&e[..d]), GroupElement::exponents(&e[d..])));
            }
        }
        out
    }

    #[test]
    fn rank_one_differential() {
        let r = KoszulResolution::new(1, Ring::Integers, Variant::Left).unwrap();
        let d = r.differential_generator(1, 0);
        let t = GroupElement::exponents(&[1]);
        let e = GroupElement::exponents(&[0]);
        let mut expected = ResElem::zero(Ring::Integers, 0);
        expected.add_term((0, t.clone(), e.clone()), Ring::Integers.one());
        expected.add_term((0, e, t), -Ring::Integers.one());
        assert_eq!(d, expected);
        assert!(r.augmentation(&d).is_zero());
    }

    #[test]
    fn square_zero_and_ranks() {
        for d in 1..=3 {
            let r = KoszulResolution::new(d, Ring::Integers, Variant::Left).unwrap();
            assert!(check_square_zero(&r));
            let ranks: Vec<usize> = (0..=d).map(|k| r.rank(k)).collect();
            let expected: Vec<usize> = match d {
                1 => vec![1, 1],
                2 => vec![1, 2, 1],
                _ => vec![1, 3, 3, 1],
            };
            assert_eq!(ranks, expected);
        }
    }

    #[test]
    fn homotopy_identity_rank_one() {
        for v in [Variant::Left, Variant::Right] {
            let r = KoszulResolution::new(1, Ring::Integers, v).unwrap();
            for k in 0..=1 {
                assert!(check_homotopy_on(&r, k, &monomial_terms(&r, k, 5)).unwrap(), "{v:?} k={k}");
            }
            let elems: Vec<GroupElement> = (-3..=3).map(|n| GroupElement::exponents(&[n])).collect();
            assert!(check_section(&r, &elems));
        }
    }

    #[test]
    fn homotopy_identity_rank_two() {
        for v in [Variant::Left, Variant::Right] {
            let r = KoszulResolution::new(2, Ring::Rationals, v).unwrap();
            for k in 0..=2 {
                assert!(check_homotopy_on(&r, k, &monomial_terms(&r, k, 2)).unwrap(), "{v:?} k={k}");
            }
        }
    }
}
