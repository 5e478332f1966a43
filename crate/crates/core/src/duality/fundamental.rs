//! Fundamental classes of `ℤᵈ` and the duality maps `a ↦ a·c` on the Koszul small model.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{Bimodule, GroupAlgebra, GroupAlgebraElement};
use crate::comparison::maps::{group_chain_differential, sigma};
use crate::duality::laurent::{self, Square};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::hochschild::chain::{normalized_differential, BarWord, Chain};
use crate::hochschild::cochain::Cochain;
use crate::ops::products::left_action;
use crate::resolution::small::SmallVector;
use crate::resolution::{Comparison, KoszulResolution, Resolution, Variant};
use crate::scalar::Ring;

/// `ℤᵈ` with its fundamental class `[M]`, the Hochschild class `c = σ([M])`, and the comparison
/// maps of the Koszul resolution.
pub struct PdGroupData {
    pub d: usize,
    pub alg: GroupAlgebra,
    pub cmp: Arc<Comparison<KoszulResolution>>,
    pub group_class: Chain,
    pub c: Chain,
    pub c_small: SmallVector,
}

/// `Σ_π sign(π) [t_{π(1)}|…|t_{π(d)}]` with trivial coefficients.
pub fn group_fundamental_class(alg: &GroupAlgebra) -> Result<Chain> {
    let g = alg.group();
    let d = g.rank().ok_or(Error::NotFreeAbelian)?;
    let ring = alg.ring();
    let mut out = Chain::zero(ring, Bimodule::Trivial, d);
    for (perm, odd) in laurent::permutations(d) {
        let letters = perm.iter().map(|&i| g.generator_power(i, 1)).collect::<Result<Vec<_>>>()?;
        let c = if odd { -ring.one() } else { ring.one() };
        out.add_term(BarWord::new(g.identity(), letters), c);
    }
    Ok(out)
}

/// Builds `[M]` and `c` for `ℤᵈ`; ranks above 2 need `allow_slow`.
pub fn fundamental_class(d: usize, ring: Ring, variant: Variant, allow_slow: bool) -> Result<PdGroupData> {
    if d == 0 || (d > 2 && !allow_slow) {
        return Err(Error::UnsupportedRank(d));
    }
    let alg = GroupAlgebra::new(Group::free_abelian(d), ring);
    let group_class = group_fundamental_class(&alg)?;
    let c = sigma(&alg, &group_class)?;
    let cmp = Arc::new(Comparison::new(KoszulResolution::new(d, ring, variant)?));
    let c_small = cmp.chain_to_small(&c)?;
    Ok(PdGroupData { d, alg, cmp, group_class, c, c_small })
}

impl PdGroupData {
    pub fn rank(&self, p: usize) -> usize {
        self.cmp.resolution().rank(p)
    }

    pub fn variant(&self) -> Variant {
        self.cmp.resolution().variant()
    }

    pub fn group_class_is_cycle(&self) -> bool {
        group_chain_differential(&self.alg, &self.group_class).is_zero()
    }

    pub fn c_is_cycle(&self) -> bool {
        normalized_differential(&self.alg, &self.c).is_zero()
    }

    /// `c` projects to a unit monomial times the top Koszul generator.
    pub fn normalization(&self) -> Option<GroupAlgebraElement> {
        let top = self.c_small.entries.first()?;
        laurent::monomial_inverse(&self.alg, top).map(|_| top.clone())
    }

    /// Cochain on the bar complex transported from small coordinates.
    pub fn lift(&self, p: usize, entries: Vec<GroupAlgebraElement>) -> Cochain {
        let v = SmallVector { module: Bimodule::Algebra, degree: p, entries };
        self.cmp.cochain_from_small(&v)
    }

    pub fn unit_entries(&self, p: usize, gen: usize, x: GroupAlgebraElement) -> Vec<GroupAlgebraElement> {
        let mut e = vec![self.alg.zero(); self.rank(p)];
        e[gen] = x;
        e
    }

    /// `a·c` as a bar chain.
    pub fn act(&self, f: &Cochain) -> Result<Chain> {
        left_action(&self.alg, f, &self.c)
    }

    /// Matrix over `A` of `HH^p → HH_{d-p}`, `a ↦ a·c`, computed generator by generator through the
    /// bar complex.
    pub fn duality_matrix(&self, p: usize) -> Result<Square> {
        let n = self.rank(p);
        let rows = self.rank(self.d - p);
        let mut m = vec![vec![self.alg.zero(); n]; rows];
        for gen in 0..n {
            let f = self.lift(p, self.unit_entries(p, gen, self.alg.one()));
            let image = self.cmp.chain_to_small(&self.act(&f)?)?;
            for (r, x) in image.entries.into_iter().enumerate() {
                m[r][gen] = x;
            }
        }
        Ok(m)
    }
}

/// `D⁻¹` in one degree with its inverse.
#[derive(Clone, Debug)]
pub struct DualityMap {
    pub p: usize,
    pub matrix: Square,
    pub inverse: Square,
    pub determinant: GroupAlgebraElement,
}

impl DualityMap {
    pub fn new(pd: &PdGroupData, p: usize) -> Result<Self> {
        if p > pd.d {
            return Err(Error::BeyondTruncation(p));
        }
        let matrix = pd.duality_matrix(p)?;
        let determinant = laurent::determinant(&pd.alg, &matrix)?;
        let inverse = laurent::inverse(&pd.alg, &matrix, p)?;
        Ok(DualityMap { p, matrix, inverse, determinant })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "matrix": laurent::to_json(&self.matrix),
            "determinant": self.determinant.to_json(),
            "inverse": laurent::to_json(&self.inverse),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;

    fn mono(pd: &PdGroupData, e: &[i64], c: i64) -> GroupAlgebraElement {
        pd.alg.from_i64(&[(GroupElement::exponents(e), c)])
    }

    #[test]
    fn rank_one_class() {
        let pd = fundamental_class(1, Ring::Integers, Variant::Left, false).unwrap();
        assert!(pd.group_class_is_cycle() && pd.c_is_cycle());
        // c = t⁻¹[t]
        let t = GroupElement::exponents(&[1]);
        let tinv = GroupElement::exponents(&[-1]);
        assert_eq!(pd.c.coefficient(&BarWord::new(tinv, vec![t])), Ring::Integers.one());
        assert_eq!(pd.normalization(), Some(mono(&pd, &[-1], 1)));
    }

    #[test]
    fn rank_two_class() {
        let pd = fundamental_class(2, Ring::Rationals, Variant::Left, false).unwrap();
        assert_eq!(pd.group_class.len(), 2);
        assert!(pd.group_class_is_cycle() && pd.c_is_cycle());
        assert!(pd.normalization().is_some());
    }

    #[test]
    fn rank_three_is_guarded() {
        assert_eq!(
            fundamental_class(3, Ring::Rationals, Variant::Left, false).err(),
            Some(Error::UnsupportedRank(3))
        );
        let pd = fundamental_class(3, Ring::Rationals, Variant::Left, true).unwrap();
        assert!(pd.group_class_is_cycle() && pd.c_is_cycle());
        assert!(pd.normalization().is_some());
    }

    #[test]
    fn rank_one_duality_matrices() {
        let pd = fundamental_class(1, Ring::Integers, Variant::Left, false).unwrap();
        // 1 ↦ c = t⁻¹[t]
        let m0 = DualityMap::new(&pd, 0).unwrap();
        assert_eq!(m0.matrix, vec![vec![mono(&pd, &[-1], 1)]]);
        // the two signs of cap and of i_f cancel on the derivation class
        let m1 = DualityMap::new(&pd, 1).unwrap();
        assert_eq!(m1.matrix, vec![vec![mono(&pd, &[-1], 1)]]);
    }

    #[test]
    fn rank_two_duality_matrices_are_invertible() {
        let pd = fundamental_class(2, Ring::Integers, Variant::Left, false).unwrap();
        for p in 0..=2 {
            let m = DualityMap::new(&pd, p).unwrap();
            assert_eq!(m.determinant.len(), 1);
        }
    }
}
