use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{Bimodule, GroupAlgebra, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::scalar::{Ring, Scalar};

/// `m[a₁|…|aₙ]` with `m` a basis element of the coefficient module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarWord {
    pub m: GroupElement,
    pub letters: Vec<GroupElement>,
}

impl BarWord {
    pub fn new(m: GroupElement, letters: Vec<GroupElement>) -> Self {
        BarWord { m, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn has_unit_letter(&self, group: &Group) -> bool {
        self.letters.iter().any(|g| group.is_identity(g))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m.as_slice(),
            "letters": self.letters.iter().map(|g| g.as_slice().to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// Homogeneous combination of bar words with coefficients in a bimodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    ring: Ring,
    module: Bimodule,
    degree: usize,
    terms: BTreeMap<BarWord, Scalar>,
}

impl Chain {
    pub fn zero(ring: Ring, module: Bimodule, degree: usize) -> Self {
        Chain {
            ring,
            module,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(ring: Ring, module: Bimodule, w: BarWord) -> Self {
        let mut c = Chain::zero(ring, module, w.len());
        c.add_term(w, ring.one());
        c
    }

    /// `x[letters]` for a coefficient element `x`.
    pub fn from_element(module: Bimodule, x: &GroupAlgebraElement, letters: &[GroupElement]) -> Self {
        let mut c = Chain::zero(x.ring(), module, letters.len());
        for (g, a) in x.terms() {
            c.add_term(BarWord::new(g.clone(), letters.to_vec()), a.clone());
        }
        c
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn module(&self) -> Bimodule {
        self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BarWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &BarWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add_term(&mut self, w: BarWord, c: Scalar) {
        debug_assert_eq!(w.len(), self.degree, "inhomogeneous chain");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn compatible(&self, other: &Chain) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.module != other.module {
            return Err(Error::BimoduleMismatch(format!(
                "{} vs {}",
                self.module.tag(),
                other.module.tag()
            )));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DimensionMismatch(format!(
                "chains of degree {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        self.compatible(other)?;
        let mut out = if self.is_zero() { Chain::zero(self.ring, self.module, other.degree) } else { self.clone() };
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain> {
        self.add(&other.scale(&-self.ring.one()))
    }

    pub fn scale(&self, c: &Scalar) -> Chain {
        let mut out = Chain::zero(self.ring, self.module, self.degree);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), c * x);
        }
        out
    }

    /// Same terms, relabelled as a chain with another coefficient module.
    pub fn with_module(mut self, module: Bimodule) -> Chain {
        self.module = module;
        self
    }

    pub fn with_degree(mut self, degree: usize) -> Chain {
        if self.terms.is_empty() {
            self.degree = degree;
        }
        self
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let mut v = w.to_json();
                v["coeff"] = serde_json::to_value(c).expect("scalar");
                v
            })
            .collect();
        json!({"module": self.module.tag(), "degree": self.degree, "terms": terms})
    }
}

/// The Hochschild boundary
/// `d(m[a₁|…|a_k]) = m a₁[a₂|…] + Σ (-1)^i m[…|a_i a_{i+1}|…] + (-1)^k a_k m[a₁|…|a_{k-1}]`.
pub fn chain_differential(alg: &GroupAlgebra, c: &Chain) -> Chain {
    let g = alg.group();
    let module = c.module();
    let k = c.degree();
    if k == 0 {
        return Chain::zero(c.ring(), module, 0);
    }
    let ring = c.ring();
    let mut out = Chain::zero(ring, module, k - 1);
    for (w, coeff) in c.terms() {
        let a = &w.letters;
        out.add_term(
            BarWord::new(module.right(g, &w.m, &a[0]), a[1..].to_vec()),
            coeff.clone(),
        );
        for i in 1..k {
            let mut letters = Vec::with_capacity(k - 1);
            letters.extend_from_slice(&a[..i - 1]);
            letters.push(g.mul(&a[i - 1], &a[i]));
            letters.extend_from_slice(&a[i + 1..]);
            out.add_term(BarWord::new(w.m.clone(), letters), &ring.sign(i) * coeff);
        }
        out.add_term(
            BarWord::new(module.left(g, &a[k - 1], &w.m), a[..k - 1].to_vec()),
            &ring.sign(k) * coeff,
        );
    }
    out
}

/// Drops every word with a letter equal to the identity.
pub fn normalize(alg: &GroupAlgebra, c: &Chain) -> Chain {
    let g = alg.group();
    let mut out = Chain::zero(c.ring(), c.module(), c.degree());
    for (w, x) in c.terms() {
        if !w.has_unit_letter(g) {
            out.add_term(w.clone(), x.clone());
        }
    }
    out
}

/// Boundary of the normalized complex.
pub fn normalized_differential(alg: &GroupAlgebra, c: &Chain) -> Chain {
    normalize(alg, &chain_differential(alg, c))
}

/// Connes' operator on the normalized complex with coefficients in `A`:
/// `B(a₀[a₁|…|aₙ]) = Σ_i (-1)^{ni} 1[a_i|…|aₙ|a₀|…|a_{i-1}]`.
pub fn connes_b(alg: &GroupAlgebra, c: &Chain) -> Result<Chain> {
    connes_b_signed(alg, c, false)
}

/// `B` with its global sign optionally flipped (used as a fault-injection control).
pub fn connes_b_signed(alg: &GroupAlgebra, c: &Chain, flip: bool) -> Result<Chain> {
    if c.module() != Bimodule::Algebra {
        return Err(Error::CoefficientsNotInA);
    }
    let g = alg.group();
    let ring = c.ring();
    let n = c.degree();
    let mut out = Chain::zero(ring, Bimodule::Algebra, n + 1);
    let global = if flip { -ring.one() } else { ring.one() };
    for (w, coeff) in c.terms() {
        if w.has_unit_letter(g) || g.is_identity(&w.m) {
            continue;
        }
        let mut cyc = Vec::with_capacity(n + 1);
        cyc.push(w.m.clone());
        cyc.extend(w.letters.iter().cloned());
        for i in 0..=n {
            let letters: Vec<GroupElement> = cyc[i..].iter().chain(cyc[..i].iter()).cloned().collect();
            let sign = &ring.sign(n * i) * &global;
            out.add_term(BarWord::new(g.identity(), letters), &sign * coeff);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_alg() -> GroupAlgebra {
        GroupAlgebra::new(Group::free_abelian(1), Ring::Integers)
    }

    #[test]
    fn degree_one_boundary() {
        let a = GroupAlgebra::new(Group::symmetric3(), Ring::Integers);
        let (m, g) = (GroupElement::index(1), GroupElement::index(3));
        let c = Chain::word(a.ring(), Bimodule::Algebra, BarWord::new(m.clone(), vec![g.clone()]));
        let d = chain_differential(&a, &c);
        let grp = a.group();
        let mut expected = Chain::zero(a.ring(), Bimodule::Algebra, 0);
        expected.add_term(BarWord::new(grp.mul(&m, &g), vec![]), a.ring().one());
        expected.add_term(BarWord::new(grp.mul(&g, &m), vec![]), -a.ring().one());
        assert_eq!(d, expected);
    }

    #[test]
    fn b_of_length_zero() {
        let a = z_alg();
        let t = a.group().generator_power(0, 1).unwrap();
        let c = Chain::word(a.ring(), Bimodule::Algebra, BarWord::new(t.clone(), vec![]));
        let b = connes_b(&a, &c).unwrap();
        assert_eq!(b, Chain::word(a.ring(), Bimodule::Algebra, BarWord::new(a.group().identity(), vec![t])));
        let e = Chain::word(a.ring(), Bimodule::Algebra, BarWord::new(a.group().identity(), vec![]));
        assert!(connes_b(&a, &e).unwrap().is_zero());
    }

    #[test]
    fn b_anticommutes_on_fundamental_cycle() {
        let a = z_alg();
        let grp = a.group();
        let c = Chain::word(
            a.ring(),
            Bimodule::Algebra,
            BarWord::new(grp.generator_power(0, -1).unwrap(), vec![grp.generator_power(0, 1).unwrap()]),
        );
        let lhs = normalized_differential(&a, &connes_b(&a, &c).unwrap());
        let rhs = connes_b(&a, &normalized_differential(&a, &c)).unwrap();
        assert!(lhs.add(&rhs).unwrap().is_zero());
    }

    #[test]
    fn b_requires_algebra_coefficients() {
        let a = z_alg();
        let c = Chain::zero(a.ring(), Bimodule::Trivial, 1);
        assert_eq!(connes_b(&a, &c), Err(Error::CoefficientsNotInA));
    }
}
