//! Bounded chain complexes and the comparison `B^∨ ⊗ N → Hom(B, N)`.

use crate::error::{Error, Result};
use crate::linalg::echelon::rank;
use crate::linalg::homology::{homology_at, HomologyPresentation};
use crate::linalg::matrix::Matrix;
use crate::scalar::Ring;

/// A complex of finitely generated free modules, `d_n : C_n → C_{n-1}`.
pub trait GradedFreeComplex {
    fn ring(&self) -> Ring;
    /// Lowest and highest nonzero degree, or `None` when unbounded.
    fn bounds(&self) -> Option<(i64, i64)>;
    fn rank(&self, n: i64) -> usize;
    fn differential(&self, n: i64) -> Matrix;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComplex {
    ring: Ring,
    min_degree: i64,
    ranks: Vec<usize>,
    /// `diffs[i]` is `d` leaving degree `min_degree + i`.
    diffs: Vec<Matrix>,
}

impl FiniteComplex {
    /// `diffs[i] : C_{min+i} → C_{min+i-1}`; the first one must have zero rows.
    pub fn new(ring: Ring, min_degree: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if diffs.len() != ranks.len() {
            return Err(Error::DimensionMismatch("one differential per degree".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            if d.cols() != ranks[i] || d.rows() != below || d.ring() != ring {
                return Err(Error::DimensionMismatch(format!(
                    "differential out of degree {}",
                    min_degree + i as i64
                )));
            }
            if i > 0 && !diffs[i - 1].mul(d)?.is_zero() {
                return Err(Error::CompositionNotZero);
            }
        }
        Ok(FiniteComplex {
            ring,
            min_degree,
            ranks,
            diffs,
        })
    }

    /// Single module in degree 0.
    pub fn concentrated(ring: Ring, rank: usize) -> Self {
        FiniteComplex {
            ring,
            min_degree: 0,
            ranks: vec![rank],
            diffs: vec![Matrix::zeros(ring, 0, rank)],
        }
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn change_ring(&self, target: Ring) -> Option<FiniteComplex> {
        let diffs = self
            .diffs
            .iter()
            .map(|d| d.change_ring(target))
            .collect::<Option<Vec<_>>>()?;
        Some(FiniteComplex {
            ring: target,
            min_degree: self.min_degree,
            ranks: self.ranks.clone(),
            diffs,
        })
    }

    pub fn homology(&self, n: i64) -> Result<HomologyPresentation> {
        let mut h = homology_at(&self.differential(n + 1), &self.differential(n), self.ring)?;
        h.degree = n;
        Ok(h)
    }
}

impl GradedFreeComplex for FiniteComplex {
    fn ring(&self) -> Ring {
        self.ring
    }

    fn bounds(&self) -> Option<(i64, i64)> {
        Some((self.min_degree, self.max_degree()))
    }

    fn rank(&self, n: i64) -> usize {
        if n < self.min_degree || n > self.max_degree() {
            0
        } else {
            self.ranks[(n - self.min_degree) as usize]
        }
    }

    fn differential(&self, n: i64) -> Matrix {
        if n < self.min_degree || n > self.max_degree() {
            Matrix::zeros(self.ring, self.rank(n - 1), self.rank(n))
        } else {
            self.diffs[(n - self.min_degree) as usize].clone()
        }
    }
}

/// Θ in every degree together with both complexes it connects.
#[derive(Clone, Debug)]
pub struct ThetaComparison {
    pub tensor: FiniteComplex,
    pub hom: FiniteComplex,
    /// `maps[i]` is Θ in degree `tensor.min_degree() + i`.
    pub maps: Vec<Matrix>,
    pub is_chain_map: bool,
    pub is_isomorphism: bool,
}

impl ThetaComparison {
    pub fn degree_map(&self, n: i64) -> Option<&Matrix> {
        let i = n - self.tensor.min_degree();
        (i >= 0).then(|| self.maps.get(i as usize)).flatten()
    }
}

// Basis of both sides in total degree n: triples (k, i, j) with i a basis
// vector of B_k and j a basis vector of N_{k+n}, in lexicographic order.
fn basis(b: &dyn GradedFreeComplex, n_cx: &FiniteComplex, bb: (i64, i64), n: i64) -> Vec<(i64, usize, usize)> {
    let mut out = Vec::new();
    for k in bb.0..=bb.1 {
        for i in 0..b.rank(k) {
            for j in 0..n_cx.rank(k + n) {
                out.push((k, i, j));
            }
        }
    }
    out
}

/// Builds `Θ(φ⊗n)(b) = (-1)^{|n||b|} φ(b)·n` for a bounded free `B`.
pub fn hom_tensor_comparison(b: &dyn GradedFreeComplex, n_cx: &FiniteComplex) -> Result<ThetaComparison> {
    let (bmin, bmax) = b.bounds().ok_or(Error::UnboundedComplex)?;
    let ring = b.ring();
    if n_cx.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let lo = n_cx.min_degree() - bmax;
    let hi = n_cx.max_degree() - bmin;
    let bases: Vec<Vec<(i64, usize, usize)>> =
        (lo..=hi).map(|n| basis(b, n_cx, (bmin, bmax), n)).collect();
    let index = |n: i64, key: (i64, usize, usize)| -> usize {
        bases[(n - lo) as usize]
            .binary_search(&key)
            .expect("basis element present")
    };
    let mut tensor_diffs = Vec::new();
    let mut hom_diffs = Vec::new();
    let mut maps = Vec::new();
    for n in lo..=hi {
        let src = &bases[(n - lo) as usize];
        let tgt_len = if n > lo { bases[(n - lo - 1) as usize].len() } else { 0 };
        let mut t_trip = Vec::new();
        let mut h_trip = Vec::new();
        let mut theta = Vec::new();
        for (col, &(k, i, j)) in src.iter().enumerate() {
            let m = k + n;
            theta.push((col, col, ring.sign(((m * k).rem_euclid(2)) as usize)));
            if n == lo {
                continue;
            }
            // φ = e_i^* has degree -k, so dφ = (-1)^{k+1} φ∘d_B lives on B_{k+1}.
            let db_next = b.differential(k + 1);
            for (r, c, v) in db_next.triplets() {
                if r == i {
                    let coeff = ring.sign(((k + 1).rem_euclid(2)) as usize) * v.clone();
                    t_trip.push((index(n - 1, (k + 1, c, j)), col, coeff));
                }
            }
            // (-1)^{|φ|} φ ⊗ d_N n
            let dn = n_cx.differential(m);
            for (r, v) in dn.column(j) {
                let coeff = ring.sign((k.rem_euclid(2)) as usize) * v.clone();
                t_trip.push((index(n - 1, (k, i, *r)), col, coeff));
            }
            // Hom side: D f = d_N∘f - (-1)^n f∘d_B, f = E_{ij} : B_k → N_m.
            for (r, v) in dn.column(j) {
                h_trip.push((index(n - 1, (k, i, *r)), col, v.clone()));
            }
            for (r, c, v) in db_next.triplets() {
                if r == i {
                    let coeff = -(ring.sign((n.rem_euclid(2)) as usize) * v.clone());
                    h_trip.push((index(n - 1, (k + 1, c, j)), col, coeff));
                }
            }
        }
        tensor_diffs.push(Matrix::from_triplets(ring, tgt_len, src.len(), t_trip));
        hom_diffs.push(Matrix::from_triplets(ring, tgt_len, src.len(), h_trip));
        maps.push(Matrix::from_triplets(ring, src.len(), src.len(), theta));
    }
    let ranks: Vec<usize> = bases.iter().map(Vec::len).collect();
    let tensor = FiniteComplex::new(ring, lo, ranks.clone(), tensor_diffs)?;
    let hom = FiniteComplex::new(ring, lo, ranks, hom_diffs)?;
    let mut is_chain_map = true;
    for n in lo + 1..=hi {
        let i = (n - lo) as usize;
        let left = maps[i - 1].mul(&tensor.differential(n))?;
        let right = hom.differential(n).mul(&maps[i])?;
        if left != right {
            is_chain_map = false;
        }
    }
    let mut is_isomorphism = true;
    for m in &maps {
        let full = if ring.is_field() {
            rank(m)? == m.cols()
        } else {
            // Θ is a signed permutation, so unimodular exactly when every column is ±e_i.
            m.columns().iter().all(|c| c.len() == 1 && c[0].1.is_unit())
        };
        is_isomorphism &= m.rows() == m.cols() && full;
    }
    Ok(ThetaComparison {
        tensor,
        hom,
        maps,
        is_chain_map,
        is_isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_b() {
        let q = Ring::Rationals;
        let b = FiniteComplex::concentrated(q, 1);
        let n = FiniteComplex::concentrated(q, 3);
        let t = hom_tensor_comparison(&b, &n).unwrap();
        assert!(t.is_chain_map && t.is_isomorphism);
        assert_eq!(t.maps[0], Matrix::identity(q, 3));
    }

    #[test]
    fn two_dimensional_b() {
        let f3 = Ring::PrimeField(3);
        let t = hom_tensor_comparison(
            &FiniteComplex::concentrated(f3, 2),
            &FiniteComplex::concentrated(f3, 1),
        )
        .unwrap();
        assert!(t.is_isomorphism);
        assert_eq!(t.maps[0].rows(), 2);
    }

    struct Unbounded;
    impl GradedFreeComplex for Unbounded {
        fn ring(&self) -> Ring {
            Ring::Integers
        }
        fn bounds(&self) -> Option<(i64, i64)> {
            None
        }
        fn rank(&self, _: i64) -> usize {
            1
        }
        fn differential(&self, _: i64) -> Matrix {
            Matrix::zeros(Ring::Integers, 1, 1)
        }
    }

    #[test]
    fn unbounded_rejected() {
        let n = FiniteComplex::concentrated(Ring::Integers, 1);
        assert!(matches!(
            hom_tensor_comparison(&Unbounded, &n),
            Err(Error::UnboundedComplex)
        ));
    }
}
