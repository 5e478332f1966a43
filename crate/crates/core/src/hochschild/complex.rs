//! Explicit finite-dimensional Hochschild complexes for finite groups.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use crate::algebra::{Bimodule, GroupAlgebra, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::hochschild::chain::{BarWord, Chain};
use crate::hochschild::cochain::Cochain;
use crate::linalg::{HomologyPresentation, HomologySpace, Matrix, SparseVec};

/// All words of a given length over an alphabet, lexicographically.
pub fn words(alphabet: &[GroupElement], n: usize) -> Vec<Vec<GroupElement>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * alphabet.len());
        for w in &out {
            for a in alphabet {
                let mut v = w.clone();
                v.push(a.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Which bar differential the complex carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `C_*(A, M)` with the Hochschild boundary.
    Hochschild,
    /// `B(M̃; k[G]; k)`, group chains with conjugation coefficients.
    Group,
}

/// Bases, index maps and differential matrices of `C_*(k[G], M)` and `C^*(k[G], M)`.
#[derive(Clone, Debug)]
pub struct FiniteComplexes {
    alg: GroupAlgebra,
    module: Bimodule,
    normalized: bool,
    flavor: Flavor,
    module_basis: Vec<GroupElement>,
    alphabet: Vec<GroupElement>,
}

impl FiniteComplexes {
    pub fn new(alg: &GroupAlgebra, module: Bimodule, normalized: bool) -> Result<Self> {
        Self::with_flavor(alg, module, normalized, Flavor::Hochschild)
    }

    pub fn with_flavor(alg: &GroupAlgebra, module: Bimodule, normalized: bool, flavor: Flavor) -> Result<Self> {
        let g = alg.group();
        let alphabet = if normalized {
            g.nontrivial_elements()?
        } else {
            g.elements()?
        };
        Ok(FiniteComplexes {
            alg: alg.clone(),
            module,
            normalized,
            flavor,
            module_basis: module.basis(g)?,
            alphabet,
        })
    }

    pub fn algebra(&self) -> &GroupAlgebra {
        &self.alg
    }

    pub fn module(&self) -> Bimodule {
        self.module
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub fn module_basis(&self) -> &[GroupElement] {
        &self.module_basis
    }

    pub fn letter_words(&self, n: usize) -> Vec<Vec<GroupElement>> {
        words(&self.alphabet, n)
    }

    pub fn chain_dim(&self, n: usize) -> usize {
        self.module_basis.len() * self.alphabet.len().pow(n as u32)
    }

    /// Chain basis in degree `n`: words ordered by letters, then coefficient.
    pub fn chain_basis(&self, n: usize) -> Vec<BarWord> {
        let mut out = Vec::with_capacity(self.chain_dim(n));
        for w in self.letter_words(n) {
            for m in &self.module_basis {
                out.push(BarWord::new(m.clone(), w.clone()));
            }
        }
        out
    }

    fn letter_index(&self, g: &GroupElement) -> Option<usize> {
        self.alphabet.binary_search(g).ok()
    }

    fn module_index(&self, m: &GroupElement) -> usize {
        self.module_basis
            .binary_search(m)
            .expect("module basis element")
    }

    /// Position of a word in `chain_basis`, or `None` if it is killed by normalization.
    pub fn chain_index(&self, w: &BarWord) -> Option<usize> {
        let base = self.alphabet.len();
        let mut idx = 0usize;
        for a in &w.letters {
            idx = idx * base + self.letter_index(a)?;
        }
        Some(idx * self.module_basis.len() + self.module_index(&w.m))
    }

    pub fn chain_vector(&self, c: &Chain) -> Result<SparseVec> {
        if c.module() != self.module {
            return Err(Error::BimoduleMismatch("chain module".into()));
        }
        let entries = c
            .terms()
            .filter_map(|(w, x)| self.chain_index(w).map(|i| (i, x.clone())));
        Ok(crate::linalg::sparse_from_entries(entries))
    }

    pub fn vector_chain(&self, n: usize, v: &SparseVec) -> Chain {
        let basis = self.chain_basis(n);
        let mut c = Chain::zero(self.alg.ring(), self.module, n);
        for (i, x) in v {
            c.add_term(basis[*i].clone(), x.clone());
        }
        c
    }

    fn boundary_terms(&self, w: &BarWord) -> Vec<(BarWord, i64)> {
        let g = self.alg.group();
        let a = &w.letters;
        let k = a.len();
        let mut out = Vec::with_capacity(k + 1);
        if k == 0 {
            return out;
        }
        let first = match self.flavor {
            Flavor::Hochschild => self.module.right(g, &w.m, &a[0]),
            Flavor::Group => self.module.conj_right(g, &w.m, &a[0]),
        };
        out.push((BarWord::new(first, a[1..].to_vec()), 1));
        for i in 1..k {
            let mut letters = a[..i - 1].to_vec();
            letters.push(g.mul(&a[i - 1], &a[i]));
            letters.extend_from_slice(&a[i + 1..]);
            out.push((BarWord::new(w.m.clone(), letters), if i % 2 == 0 { 1 } else { -1 }));
        }
        let last = match self.flavor {
            Flavor::Hochschild => self.module.left(g, &a[k - 1], &w.m),
            Flavor::Group => w.m.clone(),
        };
        out.push((BarWord::new(last, a[..k - 1].to_vec()), if k % 2 == 0 { 1 } else { -1 }));
        out
    }

    /// `d_n : C_n → C_{n-1}`.
    pub fn chain_matrix(&self, n: usize) -> Matrix {
        let ring = self.alg.ring();
        let rows = if n == 0 { 0 } else { self.chain_dim(n - 1) };
        let mut triplets = Vec::new();
        if n > 0 {
            for (col, w) in self.chain_basis(n).iter().enumerate() {
                for (t, s) in self.boundary_terms(w) {
                    if let Some(r) = self.chain_index(&t) {
                        triplets.push((r, col, ring.from_i64(s)));
                    }
                }
            }
        }
        Matrix::from_triplets(ring, rows, self.chain_dim(n), triplets)
    }

    /// Cochain basis in arity `p`: the cochain sending one word to one module basis element.
    pub fn cochain_basis(&self, p: usize) -> Vec<BarWord> {
        self.chain_basis(p)
    }

    pub fn cochain_vector(&self, f: &Cochain) -> Result<SparseVec> {
        if f.module() != self.module {
            return Err(Error::BimoduleMismatch("cochain module".into()));
        }
        let mut entries = Vec::new();
        for w in self.letter_words(f.arity()) {
            let val = f.eval(&w);
            for (m, c) in val.terms() {
                let idx = self
                    .chain_index(&BarWord::new(m.clone(), w.clone()))
                    .expect("normalized word");
                entries.push((idx, c.clone()));
            }
        }
        Ok(crate::linalg::sparse_from_entries(entries))
    }

    pub fn vector_cochain(&self, p: usize, v: &SparseVec) -> Cochain {
        let basis = self.cochain_basis(p);
        let mut table: BTreeMap<Vec<GroupElement>, GroupAlgebraElement> = BTreeMap::new();
        for (i, x) in v {
            let w = &basis[*i];
            table
                .entry(w.letters.clone())
                .or_insert_with(|| self.alg.zero())
                .add_term(w.m.clone(), x.clone());
        }
        Cochain::from_table(&self.alg, self.module, p, table)
    }

    /// `D : C^p → C^{p+1}`, with `D = -(-1)^p δ`.
    pub fn cochain_matrix(&self, p: usize) -> Matrix {
        let ring = self.alg.ring();
        let g = self.alg.group();
        let overall: i64 = if p % 2 == 0 { -1 } else { 1 };
        let mut triplets = Vec::new();
        for (vi, v) in self.letter_words(p + 1).iter().enumerate() {
            let k = v.len();
            let row_of = |m: &GroupElement| vi * self.module_basis.len() + self.module_index(m);
            for (mi, m) in self.module_basis.iter().enumerate() {
                // a₁·f(a₂,…)
                let src = BarWord::new(m.clone(), v[1..].to_vec());
                if let Some(col) = self.chain_index(&src) {
                    let target = match self.flavor {
                        Flavor::Hochschild => self.module.left(g, &v[0], m),
                        Flavor::Group => self.module.conj_left(g, &v[0], m),
                    };
                    triplets.push((row_of(&target), col, ring.from_i64(overall)));
                }
                for i in 1..k {
                    let mut w = v[..i - 1].to_vec();
                    w.push(g.mul(&v[i - 1], &v[i]));
                    w.extend_from_slice(&v[i + 1..]);
                    if let Some(col) = self.chain_index(&BarWord::new(m.clone(), w)) {
                        let s = if i % 2 == 0 { 1 } else { -1 };
                        triplets.push((row_of(m), col, ring.from_i64(overall * s)));
                    }
                }
                let src = BarWord::new(m.clone(), v[..k - 1].to_vec());
                if let Some(col) = self.chain_index(&src) {
                    let target = match self.flavor {
                        Flavor::Hochschild => self.module.right(g, m, &v[k - 1]),
                        Flavor::Group => m.clone(),
                    };
                    let s = if k % 2 == 0 { 1 } else { -1 };
                    triplets.push((row_of(&target), col, ring.from_i64(overall * s)));
                }
                let _ = mi;
            }
        }
        Matrix::from_triplets(ring, self.chain_dim(p + 1), self.chain_dim(p), triplets)
    }

    pub fn homology_space(&self, n: usize) -> Result<HomologySpace> {
        let ring = self.alg.ring();
        HomologySpace::new(n as i64, &self.chain_matrix(n + 1), &self.chain_matrix(n), ring)
    }

    /// Cohomology in arity `p`, presented in lower degree `-p`.
    pub fn cohomology_space(&self, p: usize) -> Result<HomologySpace> {
        let ring = self.alg.ring();
        let d_in = if p == 0 {
            Matrix::zeros(ring, self.chain_dim(0), 0)
        } else {
            self.cochain_matrix(p - 1)
        };
        HomologySpace::new(-(p as i64), &d_in, &self.cochain_matrix(p), ring)
    }
}

/// Homology of the normalized complex in a range of degrees.
pub fn truncated_homology(
    alg: &GroupAlgebra,
    module: Bimodule,
    degrees: RangeInclusive<usize>,
) -> Result<Vec<HomologyPresentation>> {
    if !alg.group().is_finite() {
        return Err(Error::InfiniteGroup);
    }
    let cx = FiniteComplexes::new(alg, module, true)?;
    degrees
        .map(|n| cx.homology_space(n).map(|s| s.presentation))
        .collect()
}

/// Cohomology of the normalized cochain complex in a range of arities.
pub fn truncated_cohomology(
    alg: &GroupAlgebra,
    module: Bimodule,
    degrees: RangeInclusive<usize>,
) -> Result<Vec<HomologyPresentation>> {
    if !alg.group().is_finite() {
        return Err(Error::InfiniteGroup);
    }
    let cx = FiniteComplexes::new(alg, module, true)?;
    degrees
        .map(|p| cx.cohomology_space(p).map(|s| s.presentation))
        .collect()
}

/// Word lookup table for quick membership tests.
pub fn index_map(basis: &[BarWord]) -> HashMap<BarWord, usize> {
    basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::hochschild::chain::{chain_differential, normalize};
    use crate::scalar::Ring;

    #[test]
    fn hh0_of_f2_z2() {
        let a = GroupAlgebra::new(Group::cyclic(2), Ring::PrimeField(2));
        let h = truncated_homology(&a, Bimodule::Algebra, 0..=5).unwrap();
        assert!(h.iter().all(|p| p.free_rank == 2));
    }

    #[test]
    fn hh0_trivial_coefficients() {
        let a = GroupAlgebra::new(Group::symmetric3(), Ring::Rationals);
        let h = truncated_homology(&a, Bimodule::Trivial, 0..=0).unwrap();
        assert_eq!(h[0].free_rank, 1);
    }

    #[test]
    fn infinite_group_rejected() {
        let a = GroupAlgebra::new(Group::free_abelian(1), Ring::Rationals);
        assert_eq!(
            truncated_homology(&a, Bimodule::Algebra, 0..=1),
            Err(Error::InfiniteGroup)
        );
    }

    #[test]
    fn matrix_matches_formula() {
        let a = GroupAlgebra::new(Group::cyclic(3), Ring::Integers);
        let cx = FiniteComplexes::new(&a, Bimodule::Algebra, true).unwrap();
        let d2 = cx.chain_matrix(2);
        for (i, w) in cx.chain_basis(2).iter().enumerate() {
            let c = Chain::word(a.ring(), Bimodule::Algebra, w.clone());
            let expected = cx.chain_vector(&normalize(&a, &chain_differential(&a, &c))).unwrap();
            assert_eq!(d2.column(i), &expected);
        }
    }

    #[test]
    fn cochain_matrix_matches_evaluator() {
        use crate::hochschild::cochain::cochain_differential;
        let a = GroupAlgebra::new(Group::symmetric3(), Ring::Integers);
        let cx = FiniteComplexes::new(&a, Bimodule::Algebra, true).unwrap();
        let dm = cx.cochain_matrix(1);
        for i in [0usize, 7, 29] {
            let f = cx.vector_cochain(1, &vec![(i, a.ring().one())]);
            let df = cochain_differential(&f).unwrap();
            assert_eq!(dm.column(i), &cx.cochain_vector(&df).unwrap());
        }
    }
}
