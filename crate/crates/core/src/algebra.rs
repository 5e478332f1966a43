//! The group algebra `k[G]`, its enveloping algebra and the coefficient bimodules.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::scalar::{Ring, Scalar};

/// Finitely supported combination of group elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElement {
    ring: Ring,
    terms: BTreeMap<GroupElement, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(ring: Ring) -> Self {
        GroupAlgebraElement {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(ring: Ring, g: GroupElement, c: Scalar) -> Self {
        let mut x = Self::zero(ring);
        x.add_term(g, c);
        x
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (GroupElement, Scalar)>) -> Self {
        let mut x = Self::zero(ring);
        for (g, c) in terms {
            x.add_term(g, c);
        }
        x
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &GroupElement) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add_term(&mut self, g: GroupElement, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&g);
                }
            }
            None => {
                self.terms.insert(g, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-self.ring.one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(
            self.ring,
            self.terms.iter().map(|(g, x)| (g.clone(), c * x)),
        )
    }

    /// Sum of coefficients.
    pub fn augment(&self) -> Scalar {
        self.terms
            .values()
            .fold(self.ring.zero(), |acc, c| &acc + c)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(g, c)| json!([g.as_slice(), serde_json::to_value(c).expect("scalar")]))
                .collect(),
        )
    }
}

/// `k[G]` over a ground ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebra {
    group: Arc<Group>,
    ring: Ring,
}

impl GroupAlgebra {
    pub fn new(group: Group, ring: Ring) -> Self {
        GroupAlgebra {
            group: Arc::new(group),
            ring,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn with_ring(&self, ring: Ring) -> Self {
        GroupAlgebra {
            group: self.group.clone(),
            ring,
        }
    }

    pub fn zero(&self) -> GroupAlgebraElement {
        GroupAlgebraElement::zero(self.ring)
    }

    pub fn one(&self) -> GroupAlgebraElement {
        self.basis(self.group.identity())
    }

    pub fn basis(&self, g: GroupElement) -> GroupAlgebraElement {
        GroupAlgebraElement::monomial(self.ring, g, self.ring.one())
    }

    pub fn from_i64(&self, terms: &[(GroupElement, i64)]) -> GroupAlgebraElement {
        GroupAlgebraElement::from_terms(
            self.ring,
            terms.iter().map(|(g, c)| (g.clone(), self.ring.from_i64(*c))),
        )
    }

    fn check(&self, x: &GroupAlgebraElement) -> Result<()> {
        if x.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        for g in x.terms.keys() {
            self.group.check(g)?;
        }
        Ok(())
    }

    pub fn multiply(&self, x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = self.zero();
        for (g, a) in &x.terms {
            for (h, b) in &y.terms {
                out.add_term(self.group.mul(g, h), a * b);
            }
        }
        Ok(out)
    }

    /// Antipode `g ↦ g⁻¹`, extended linearly.
    pub fn antipode(&self, x: &GroupAlgebraElement) -> GroupAlgebraElement {
        GroupAlgebraElement::from_terms(
            self.ring,
            x.terms.iter().map(|(g, c)| (self.group.inverse(g), c.clone())),
        )
    }

    /// `E(x) = Σ c_g (g, g⁻¹)`.
    pub fn embed_e(&self, x: &GroupAlgebraElement) -> EnvelopingElement {
        EnvelopingElement::from_terms(
            self.ring,
            x.terms
                .iter()
                .map(|(g, c)| ((g.clone(), self.group.inverse(g)), c.clone())),
        )
    }
}

/// Element of `A^e = A ⊗ A^op`; the pair `(g, h)` acts on a bimodule by `m ↦ g·m·h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopingElement {
    ring: Ring,
    terms: BTreeMap<(GroupElement, GroupElement), Scalar>,
}

impl EnvelopingElement {
    pub fn zero(ring: Ring) -> Self {
        EnvelopingElement {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        ring: Ring,
        terms: impl IntoIterator<Item = ((GroupElement, GroupElement), Scalar)>,
    ) -> Self {
        let mut out = Self::zero(ring);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, k: (GroupElement, GroupElement), c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(GroupElement, GroupElement), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(g, h)·(g', h') = (g g', h' h)`.
    pub fn multiply(&self, group: &Group, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = Self::zero(self.ring);
        for ((g, h), a) in &self.terms {
            for ((g2, h2), b) in &other.terms {
                out.add_term((group.mul(g, g2), group.mul(h2, h)), a * b);
            }
        }
        Ok(out)
    }
}

/// Coefficient bimodules over `k[G]`: the algebra itself, or `k` through ε on both sides.
///
/// Both have a basis permuted by the actions of `G`; the basis of `k` is
/// represented by the identity element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bimodule {
    Algebra,
    Trivial,
}

impl Bimodule {
    pub fn tag(self) -> &'static str {
        match self {
            Bimodule::Algebra => "A",
            Bimodule::Trivial => "k",
        }
    }

    pub fn parse(s: &str) -> Option<Bimodule> {
        match s {
            "A" | "a" => Some(Bimodule::Algebra),
            "k" => Some(Bimodule::Trivial),
            _ => None,
        }
    }

    /// Basis in canonical order.
    pub fn basis(self, group: &Group) -> Result<Vec<GroupElement>> {
        match self {
            Bimodule::Algebra => group.elements(),
            Bimodule::Trivial => Ok(vec![group.identity()]),
        }
    }

    pub fn contains(self, group: &Group, m: &GroupElement) -> bool {
        match self {
            Bimodule::Algebra => group.contains(m),
            Bimodule::Trivial => group.is_identity(m),
        }
    }

    /// `g·m`.
    pub fn left(self, group: &Group, g: &GroupElement, m: &GroupElement) -> GroupElement {
        match self {
            Bimodule::Algebra => group.mul(g, m),
            Bimodule::Trivial => m.clone(),
        }
    }

    /// `m·g`.
    pub fn right(self, group: &Group, m: &GroupElement, g: &GroupElement) -> GroupElement {
        match self {
            Bimodule::Algebra => group.mul(m, g),
            Bimodule::Trivial => m.clone(),
        }
    }

    /// The A-balanced tensor product `P ⊗_A Q`.
    pub fn tensor(self, other: Bimodule) -> Bimodule {
        match (self, other) {
            (Bimodule::Algebra, Bimodule::Algebra) => Bimodule::Algebra,
            _ => Bimodule::Trivial,
        }
    }

    /// `q(m ⊗ n)` in `P ⊗_A Q` for basis elements.
    pub fn product(self, other: Bimodule, group: &Group, m: &GroupElement, n: &GroupElement) -> GroupElement {
        match (self, other) {
            (Bimodule::Algebra, Bimodule::Algebra) => group.mul(m, n),
            _ => group.identity(),
        }
    }

    /// The conjugation module: right action `m·g = g⁻¹ m g`.
    pub fn conj_right(self, group: &Group, m: &GroupElement, g: &GroupElement) -> GroupElement {
        let inv = group.inverse(g);
        self.right(group, &self.left(group, &inv, m), g)
    }

    /// Left action on the conjugation module, `g·m = g m g⁻¹`; equals `m·g⁻¹`.
    pub fn conj_left(self, group: &Group, g: &GroupElement, m: &GroupElement) -> GroupElement {
        self.conj_right(group, m, &group.inverse(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_examples() {
        let z = GroupAlgebra::new(Group::free_abelian(1), Ring::Integers);
        let g = z.group().clone();
        let t = |n| g.generator_power(0, n).unwrap();
        let prod = z.multiply(&z.basis(t(2)), &z.basis(t(-3))).unwrap();
        assert_eq!(prod, z.basis(t(-1)));

        let f2 = GroupAlgebra::new(Group::cyclic(2), Ring::PrimeField(2));
        let x = f2.from_i64(&[(GroupElement::index(0), 1), (GroupElement::index(1), 1)]);
        assert!(f2.multiply(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn augmentation() {
        let a = GroupAlgebra::new(Group::cyclic(3), Ring::Integers);
        let x = a.from_i64(&[(GroupElement::index(1), 3), (GroupElement::index(2), 2)]);
        assert_eq!(x.augment(), Ring::Integers.from_i64(5));
        assert!(a.one().augment().is_one());
    }

    #[test]
    fn mismatches() {
        let a = GroupAlgebra::new(Group::cyclic(2), Ring::Integers);
        let foreign = GroupAlgebraElement::monomial(Ring::Integers, GroupElement::index(5), Ring::Integers.one());
        assert_eq!(a.multiply(&a.one(), &foreign), Err(Error::GroupMismatch));
        let other_ring = GroupAlgebraElement::zero(Ring::Rationals);
        assert_eq!(a.multiply(&a.one(), &other_ring), Err(Error::RingMismatch));
    }

    #[test]
    fn embedding_multiplicative_on_s3() {
        let a = GroupAlgebra::new(Group::symmetric3(), Ring::Integers);
        let g = a.group().clone();
        for x in g.elements().unwrap() {
            for y in g.elements().unwrap() {
                let lhs = a.embed_e(&a.basis(g.mul(&x, &y)));
                let rhs = a
                    .embed_e(&a.basis(x.clone()))
                    .multiply(&g, &a.embed_e(&a.basis(y.clone())))
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let e = a.embed_e(&a.one());
        let id = g.identity();
        assert_eq!(e, EnvelopingElement::from_terms(Ring::Integers, [((id.clone(), id), Ring::Integers.one())]));
    }
}
