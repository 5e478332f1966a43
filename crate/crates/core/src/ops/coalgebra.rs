use crate::algebra::{Bimodule, GroupAlgebra};
use crate::error::{Error, Result};
use crate::hochschild::chain::{BarWord, Chain};
use crate::hochschild::cochain::Cochain;
use crate::hochschild::complex::words;
use crate::linalg::{axpy, sparse_from_entries, SparseVec};
use crate::scalar::{Ring, Scalar};

/// A graded coalgebra with a finite basis, given by structure constants.
#[derive(Clone, Debug)]
pub struct FiniteCoalgebra {
    ring: Ring,
    degrees: Vec<i64>,
    /// `Δ(e_i) = Σ c (e_j ⊗ e_k)` stored as `(j, k, c)`.
    coproduct: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
}

impl FiniteCoalgebra {
    pub fn new(
        ring: Ring,
        degrees: Vec<i64>,
        coproduct: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
    ) -> Result<Self> {
        let n = degrees.len();
        if coproduct.len() != n || counit.len() != n {
            return Err(Error::DimensionMismatch("coalgebra tables".into()));
        }
        for (i, terms) in coproduct.iter().enumerate() {
            for (j, k, _) in terms {
                if *j >= n || *k >= n || degrees[*j] + degrees[*k] != degrees[i] {
                    return Err(Error::DimensionMismatch(format!("coproduct of basis element {i}")));
                }
            }
        }
        let c = FiniteCoalgebra {
            ring,
            degrees,
            coproduct,
            counit,
        };
        c.check_counit()?;
        Ok(c)
    }

    /// The normalized bar coalgebra `B(k[G])` in word lengths `≤ max_len`,
    /// with deconcatenation coproduct.
    pub fn bar(alg: &GroupAlgebra, max_len: usize) -> Result<Self> {
        if !alg.group().is_finite() {
            return Err(Error::NotFiniteDimensional);
        }
        let basis = bar_basis(alg, max_len)?;
        let index: std::collections::HashMap<_, _> =
            basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let ring = alg.ring();
        let degrees = basis.iter().map(|w| w.len() as i64).collect();
        let coproduct = basis
            .iter()
            .map(|w| {
                (0..=w.len())
                    .map(|p| (index[&w[..p].to_vec()], index[&w[p..].to_vec()], ring.one()))
                    .collect()
            })
            .collect();
        let counit = basis
            .iter()
            .map(|w| if w.is_empty() { ring.one() } else { ring.zero() })
            .collect();
        FiniteCoalgebra::new(ring, degrees, coproduct, counit)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    /// The counit as an element of `C^∨`, in dual-basis coordinates.
    pub fn counit(&self) -> SparseVec {
        sparse_from_entries(self.counit.iter().cloned().enumerate())
    }

    fn check_counit(&self) -> Result<()> {
        for (i, terms) in self.coproduct.iter().enumerate() {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (j, k, c) in terms {
                left.push((*k, &self.counit[*j] * c));
                right.push((*j, &self.counit[*k] * c));
            }
            let e = vec![(i, self.ring.one())];
            if sparse_from_entries(left) != e || sparse_from_entries(right) != e {
                return Err(Error::DimensionMismatch(format!("counit law fails on basis element {i}")));
            }
        }
        Ok(())
    }

    fn check(&self, v: &SparseVec) -> Result<()> {
        if v.iter().any(|(i, _)| *i >= self.dim()) {
            return Err(Error::DimensionMismatch("coalgebra vector".into()));
        }
        Ok(())
    }

    /// `c ∩ φ = Σ (-1)^{|φ||c|} φ(c') c''`, extended linearly over the dual basis.
    pub fn cap(&self, c: &SparseVec, phi: &SparseVec) -> Result<SparseVec> {
        self.check(c)?;
        self.check(phi)?;
        let mut out = SparseVec::new();
        for (i, x) in c {
            for (j, k, coeff) in &self.coproduct[*i] {
                let Some(y) = lookup(phi, *j) else { continue };
                let s = self.ring.sign(parity(self.degrees[*j] * self.degrees[*i]));
                out = axpy(&out, &(&(&s * x) * &(coeff * y)), &vec![(*k, self.ring.one())]);
            }
        }
        Ok(out)
    }

    /// Convolution product on `C^∨`: `(φψ)(c) = Σ (-1)^{|ψ||c'|} φ(c')ψ(c'')`.
    pub fn convolution(&self, phi: &SparseVec, psi: &SparseVec) -> Result<SparseVec> {
        self.check(phi)?;
        self.check(psi)?;
        let mut entries = Vec::new();
        for (i, terms) in self.coproduct.iter().enumerate() {
            for (j, k, coeff) in terms {
                let (Some(a), Some(b)) = (lookup(phi, *j), lookup(psi, *k)) else { continue };
                let s = self.ring.sign(parity(self.degrees[*k] * self.degrees[*j]));
                entries.push((i, &(&s * coeff) * &(a * b)));
            }
        }
        Ok(sparse_from_entries(entries))
    }
}

fn parity(x: i64) -> usize {
    x.rem_euclid(2) as usize
}

fn lookup(v: &SparseVec, i: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &v[k].1)
}

/// Normalized bar words of length `≤ max_len`, shortest first.
pub fn bar_basis(alg: &GroupAlgebra, max_len: usize) -> Result<Vec<Vec<crate::group::GroupElement>>> {
    let alphabet = alg.group().nontrivial_elements()?;
    Ok((0..=max_len).flat_map(|n| words(&alphabet, n)).collect())
}

/// Cap product on the bar coalgebra of `k[G]` by the prefix rule
/// `[a₁|…|aₙ] ∩ f = (-1)^{pn} f([a₁|…|a_p])[a_{p+1}|…|aₙ]`.
///
/// Works for any group; chains and cochains take values in the trivial module.
pub fn bar_cap(alg: &GroupAlgebra, c: &Chain, f: &Cochain) -> Result<Chain> {
    if c.module() != Bimodule::Trivial || f.module() != Bimodule::Trivial {
        return Err(Error::BimoduleMismatch("bar coalgebra cap uses trivial coefficients".into()));
    }
    let ring = alg.ring();
    let (n, p) = (c.degree(), f.arity());
    if p > n {
        return Ok(Chain::zero(ring, Bimodule::Trivial, 0));
    }
    let s = ring.sign(p * n);
    let e = alg.group().identity();
    let mut out = Chain::zero(ring, Bimodule::Trivial, n - p);
    for (w, x) in c.terms() {
        let v = f.eval(&w.letters[..p]).augment();
        out.add_term(BarWord::new(e.clone(), w.letters[p..].to_vec()), &(&s * x) * &v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Group, GroupElement};
    use crate::ops::products::cap;
    use std::collections::BTreeMap;

    fn dual(i: usize, ring: Ring) -> SparseVec {
        vec![(i, ring.one())]
    }

    #[test]
    fn prefix_rule() {
        let a = GroupAlgebra::new(Group::cyclic(3), Ring::Integers);
        let c = FiniteCoalgebra::bar(&a, 2).unwrap();
        let basis = bar_basis(&a, 2).unwrap();
        let pos = |w: &[GroupElement]| basis.iter().position(|x| x == w).unwrap();
        let (g1, g2) = (GroupElement::index(1), GroupElement::index(2));
        let word = pos(&[g1.clone(), g2.clone()]);
        let out = c.cap(&dual(word, a.ring()), &dual(pos(&[g1.clone()]), a.ring())).unwrap();
        // p = 1, n = 2
        assert_eq!(out, vec![(pos(&[g2.clone()]), a.ring().one())]);
        let odd = c.cap(&dual(pos(&[g1.clone()]), a.ring()), &dual(pos(&[g1.clone()]), a.ring())).unwrap();
        assert_eq!(odd, vec![(pos(&[]), -a.ring().one())]);
        assert_eq!(c.cap(&dual(word, a.ring()), &c.counit()).unwrap(), dual(word, a.ring()));
    }

    #[test]
    fn right_module_law() {
        let a = GroupAlgebra::new(Group::cyclic(2), Ring::Integers);
        let c = FiniteCoalgebra::bar(&a, 3).unwrap();
        let ring = a.ring();
        for i in 0..c.dim() {
            for j in 0..c.dim() {
                for k in 0..c.dim() {
                    let x = dual(i, ring);
                    let (phi, psi) = (dual(j, ring), dual(k, ring));
                    let lhs = c.cap(&c.cap(&x, &phi).unwrap(), &psi).unwrap();
                    let rhs = c.cap(&x, &c.convolution(&phi, &psi).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn infinite_group_rejected() {
        let a = GroupAlgebra::new(Group::free_abelian(1), Ring::Integers);
        assert_eq!(FiniteCoalgebra::bar(&a, 1).err(), Some(Error::NotFiniteDimensional));
    }

    #[test]
    fn agrees_with_hochschild_cap_for_trivial_coefficients() {
        let a = GroupAlgebra::new(Group::cyclic(2), Ring::Integers);
        let e = a.group().identity();
        for n in 0..=3 {
            for w in words(&a.group().nontrivial_elements().unwrap(), n) {
                let c = Chain::word(a.ring(), Bimodule::Trivial, BarWord::new(e.clone(), w.clone()));
                for p in 0..=n {
                    let mut table = BTreeMap::new();
                    table.insert(w[..p].to_vec(), a.one());
                    let f = Cochain::from_table(&a, Bimodule::Trivial, p, table);
                    assert_eq!(bar_cap(&a, &c, &f).unwrap(), cap(&a, &c, &f).unwrap());
                }
            }
        }
    }
}
