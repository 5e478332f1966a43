use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{Bimodule, GroupAlgebra, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::linalg::{HomologyPresentation, HomologySpace, Matrix, SparseVec};
use crate::resolution::Resolution;

/// Coefficient bimodule of a small model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallModule {
    Algebra,
    Trivial,
    /// `A⊗A` with the outer structure `a(x⊗y)b = ax⊗yb`; free abelian groups only.
    Outer,
}

impl SmallModule {
    pub fn parse(s: &str) -> Option<SmallModule> {
        match s {
            "A" | "algebra" => Some(SmallModule::Algebra),
            "k" | "trivial" => Some(SmallModule::Trivial),
            "outer" | "AA" => Some(SmallModule::Outer),
            _ => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            SmallModule::Algebra => "A",
            SmallModule::Trivial => "k",
            SmallModule::Outer => "outer",
        }
    }

    /// The commutative algebra `C` with `M ≅ C` as a `C`-module, for a commutative group algebra.
    fn coefficients(self, alg: &GroupAlgebra) -> Result<GroupAlgebra> {
        match self {
            SmallModule::Algebra => Ok(alg.clone()),
            SmallModule::Trivial => Ok(GroupAlgebra::new(Group::trivial(), alg.ring())),
            SmallModule::Outer => {
                let d = alg
                    .group()
                    .rank()
                    .ok_or_else(|| Error::UnsupportedModule("outer coefficients need a free abelian group".into()))?;
                Ok(GroupAlgebra::new(Group::free_abelian(2 * d), alg.ring()))
            }
        }
    }

    /// The monomial of `C` by which `x·e·y` acts: on chains `m⊗xey = (ymx)e`, on cochains `f(xey) = x f(e) y`.
    fn weight(self, alg: &GroupAlgebra, coeff: &GroupAlgebra, x: &GroupElement, y: &GroupElement, chains: bool) -> GroupElement {
        match self {
            SmallModule::Algebra => alg.group().mul(x, y),
            SmallModule::Trivial => coeff.group().identity(),
            SmallModule::Outer => {
                let (a, b) = if chains { (y, x) } else { (x, y) };
                let mut e = a.as_slice().to_vec();
                e.extend_from_slice(b.as_slice());
                GroupElement::exponents(&e)
            }
        }
    }
}

/// Coordinates of an element of `M⊗_{A^e}P_k` or `Hom_{A^e}(P_k, M)`: one value in `M` per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallVector {
    pub module: Bimodule,
    pub degree: usize,
    pub entries: Vec<GroupAlgebraElement>,
}

impl SmallVector {
    pub fn zero(alg: &GroupAlgebra, module: Bimodule, degree: usize, rank: usize) -> Self {
        SmallVector {
            module,
            degree,
            entries: vec![alg.zero(); rank],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupAlgebraElement::is_zero)
    }

    pub fn sub(&self, other: &SmallVector) -> Result<SmallVector> {
        if self.entries.len() != other.entries.len() {
            return Err(Error::DimensionMismatch("small vectors of different rank".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(SmallVector {
            module: self.module,
            degree: self.degree,
            entries,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "module": self.module.tag(),
            "coordinates": self.entries.iter().map(GroupAlgebraElement::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Matrix with entries in a commutative group algebra (Laurent polynomials for `ℤᵈ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    coefficients: GroupAlgebra,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), GroupAlgebraElement>,
}

impl LaurentMatrix {
    pub fn zeros(coefficients: &GroupAlgebra, rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            coefficients: coefficients.clone(),
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> GroupAlgebraElement {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| self.coefficients.zero())
    }

    pub fn add_entry(&mut self, r: usize, c: usize, x: &GroupAlgebraElement) -> Result<()> {
        let v = self.get(r, c).add(x)?;
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `k`-matrix on the basis (generator, group element), for a finite coefficient group.
    pub fn expand(&self) -> Result<Matrix> {
        let g = self.coefficients.group();
        let elems = g.elements()?;
        let n = elems.len();
        let index: BTreeMap<&GroupElement, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut triplets = Vec::new();
        for ((r, c), x) in &self.entries {
            for (j, h) in elems.iter().enumerate() {
                for (a, s) in x.terms() {
                    triplets.push((r * n + index[&g.mul(a, h)], c * n + j, s.clone()));
                }
            }
        }
        Ok(Matrix::from_triplets(self.coefficients.ring(), self.rows * n, self.cols * n, triplets))
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|((r, c), x)| json!({"row": r, "col": c, "value": x.to_json()}))
            .collect();
        json!({"rows": self.rows, "cols": self.cols, "entries": entries})
    }
}

/// `M⊗_{A^e}P` and `Hom_{A^e}(P, M)` written over the coefficient algebra of `M`.
#[derive(Clone, Debug)]
pub struct SmallComplex {
    pub module: SmallModule,
    pub coefficients: GroupAlgebra,
    pub ranks: Vec<usize>,
    /// `chain_diffs[k]`: `C^{r_k} → C^{r_{k-1}}`; index 0 is the zero map.
    pub chain_diffs: Vec<LaurentMatrix>,
    /// `cochain_diffs[p]`: `C^{r_p} → C^{r_{p+1}}`, sign `-(-1)^p` included.
    pub cochain_diffs: Vec<LaurentMatrix>,
}

/// Small model of Hochschild (co)homology through degree `max_degree`.
pub fn hochschild_via_resolution<R: Resolution + ?Sized>(
    p: &R,
    module: SmallModule,
    max_degree: usize,
) -> Result<SmallComplex> {
    let alg = p.algebra();
    if !alg.group().is_commutative() {
        return Err(Error::UnsupportedModule("small models need a commutative group".into()));
    }
    let coeff = module.coefficients(alg)?;
    let top = max_degree + 1;
    let ranks: Vec<usize> = (0..=top).map(|k| p.rank(k)).collect();
    let mut chain_diffs = vec![LaurentMatrix::zeros(&coeff, 0, ranks[0])];
    let mut cochain_diffs = Vec::new();
    for k in 1..=top {
        let mut dc = LaurentMatrix::zeros(&coeff, ranks[k - 1], ranks[k]);
        let mut dh = LaurentMatrix::zeros(&coeff, ranks[k], ranks[k - 1]);
        let sign = -coeff.ring().sign(k - 1);
        for j in 0..ranks[k] {
            for ((i, x, y), c) in p.differential_generator(k, j).terms() {
                let wc = module.weight(alg, &coeff, x, y, true);
                dc.add_entry(*i, j, &GroupAlgebraElement::monomial(coeff.ring(), wc, c.clone()))?;
                let wh = module.weight(alg, &coeff, x, y, false);
                let s = &sign * c;
                dh.add_entry(j, *i, &GroupAlgebraElement::monomial(coeff.ring(), wh, s))?;
            }
        }
        chain_diffs.push(dc);
        cochain_diffs.push(dh);
    }
    Ok(SmallComplex {
        module,
        coefficients: coeff,
        ranks,
        chain_diffs,
        cochain_diffs,
    })
}

impl SmallComplex {
    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    pub fn differentials_vanish(&self) -> bool {
        self.chain_diffs.iter().all(LaurentMatrix::is_zero) && self.cochain_diffs.iter().all(LaurentMatrix::is_zero)
    }

    fn block(&self) -> Result<usize> {
        Ok(self.coefficients.group().elements()?.len())
    }

    fn expanded_chain(&self, k: usize) -> Result<Matrix> {
        let n = self.block()?;
        match self.chain_diffs.get(k) {
            Some(m) => m.expand(),
            None => Ok(Matrix::zeros(self.coefficients.ring(), self.rank(k - 1) * n, self.rank(k) * n)),
        }
    }

    /// `k`-homology in degree `n < top`, for finite coefficient groups.
    pub fn homology_space(&self, n: usize) -> Result<HomologySpace> {
        if n >= self.top_degree() {
            return Err(Error::BeyondTruncation(n + 1));
        }
        HomologySpace::new(n as i64, &self.expanded_chain(n + 1)?, &self.expanded_chain(n)?, self.coefficients.ring())
    }

    pub fn homology(&self, n: usize) -> Result<HomologyPresentation> {
        Ok(self.homology_space(n)?.presentation)
    }

    /// `k`-cohomology in degree `p < top`, for finite coefficient groups.
    pub fn cohomology_space(&self, p: usize) -> Result<HomologySpace> {
        if p >= self.top_degree() {
            return Err(Error::BeyondTruncation(p + 1));
        }
        let n = self.block()?;
        let ring = self.coefficients.ring();
        let d_in = if p == 0 {
            Matrix::zeros(ring, self.rank(0) * n, 0)
        } else {
            self.cochain_diffs[p - 1].expand()?
        };
        HomologySpace::new(-(p as i64), &d_in, &self.cochain_diffs[p].expand()?, ring)
    }

    pub fn cohomology(&self, p: usize) -> Result<HomologyPresentation> {
        Ok(self.cohomology_space(p)?.presentation)
    }

    /// Flattens coordinates with values in `M = A` or `k` into the expanded basis.
    pub fn flatten(&self, v: &SmallVector) -> Result<SparseVec> {
        let elems = self.coefficients.group().elements()?;
        let n = elems.len();
        let index: BTreeMap<&GroupElement, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut out = Vec::new();
        for (gen, m) in v.entries.iter().enumerate() {
            for (g, c) in m.terms() {
                let i = index
                    .get(g)
                    .ok_or_else(|| Error::BimoduleMismatch("coordinate outside the coefficient module".into()))?;
                out.push((gen * n + i, c.clone()));
            }
        }
        Ok(crate::linalg::sparse_from_entries(out))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "module": self.module.tag(),
            "coefficients": self.coefficients.group().name(),
            "ring": self.coefficients.ring().tag(),
            "ranks": self.ranks,
            "chain_differentials": self.chain_diffs.iter().skip(1).map(LaurentMatrix::to_json).collect::<Vec<_>>(),
            "cochain_differentials": self.cochain_diffs.iter().map(LaurentMatrix::to_json).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::complex::{truncated_cohomology, truncated_homology};
    use crate::resolution::{KoszulResolution, PeriodicResolution, Variant};
    use crate::scalar::Ring;

    #[test]
    fn koszul_models_have_zero_differentials() {
        for (d, ranks) in [(1, vec![1, 1]), (2, vec![1, 2, 1])] {
            let r = KoszulResolution::new(d, Ring::Integers, Variant::Left).unwrap();
            let cx = hochschild_via_resolution(&r, SmallModule::Algebra, 5).unwrap();
            assert_eq!(cx.ranks[..=d], ranks[..]);
            assert!(cx.ranks[d + 1..].iter().all(|&r| r == 0));
            assert!(cx.differentials_vanish());
        }
    }

    #[test]
    fn outer_and_trivial_models() {
        let r = KoszulResolution::new(1, Ring::Integers, Variant::Left).unwrap();
        let outer = hochschild_via_resolution(&r, SmallModule::Outer, 2).unwrap();
        assert!(!outer.chain_diffs[1].is_zero());
        let triv = hochschild_via_resolution(&r, SmallModule::Trivial, 2).unwrap();
        assert!(triv.differentials_vanish());
        let p = PeriodicResolution::new(2, Ring::PrimeField(2), 2).unwrap();
        assert_eq!(
            hochschild_via_resolution(&p, SmallModule::Outer, 2).err(),
            Some(Error::UnsupportedModule("outer coefficients need a free abelian group".into()))
        );
    }

    #[test]
    fn z2_over_f2_has_dimension_two() {
        let p = PeriodicResolution::new(2, Ring::PrimeField(2), 5).unwrap();
        let cx = hochschild_via_resolution(&p, SmallModule::Algebra, 5).unwrap();
        for n in 0..=5 {
            assert_eq!(cx.homology(n).unwrap().free_rank, 2, "n={n}");
        }
    }

    #[test]
    fn two_oracles_agree() {
        for (n, ring) in [(2, Ring::PrimeField(2)), (3, Ring::PrimeField(3)), (3, Ring::PrimeField(2)), (2, Ring::Integers)] {
            let p = PeriodicResolution::new(n, ring, 5).unwrap();
            let alg = p.algebra().clone();
            for (sm, bm) in [(SmallModule::Algebra, Bimodule::Algebra), (SmallModule::Trivial, Bimodule::Trivial)] {
                let cx = hochschild_via_resolution(&p, sm, 5).unwrap();
                let bar = truncated_homology(&alg, bm, 0..=5).unwrap();
                let cobar = truncated_cohomology(&alg, bm, 0..=5).unwrap();
                for k in 0..=5 {
                    let h = cx.homology(k).unwrap();
                    assert_eq!((h.free_rank, h.torsion.clone()), (bar[k].free_rank, bar[k].torsion.clone()), "{n} {ring:?} {sm:?} H{k}");
                    let c = cx.cohomology(k).unwrap();
                    assert_eq!((c.free_rank, c.torsion.clone()), (cobar[k].free_rank, cobar[k].torsion.clone()), "{n} {ring:?} {sm:?} H^{k}");
                }
            }
        }
    }
}
