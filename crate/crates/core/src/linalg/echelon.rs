use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::matrix::{axpy, scale, Matrix, SparseVec};
use crate::scalar::Ring;

/// Incremental row echelon basis over a field.
///
/// Every stored vector `r` carries a tag `t` recording `r = Σ t_k g_k` in
/// terms of the inserted generators `g_k`.
#[derive(Clone, Debug)]
pub struct Echelon {
    ring: Ring,
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
}

impl Echelon {
    pub fn new(ring: Ring) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::UnsupportedRing(ring.tag()));
        }
        Ok(Echelon {
            ring,
            rows: BTreeMap::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Returns `(remainder, acc)` with `v = remainder + Σ acc_k g_k`, where the
    /// remainder has no entry at any pivot.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut acc: SparseVec = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = rem
                .iter()
                .find(|(i, _)| *i >= cursor && self.rows.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            let Some((p, c)) = next else { break };
            let (row, tag) = &self.rows[&p];
            rem = axpy(&rem, &-&c, row);
            acc = axpy(&acc, &c, tag);
            cursor = p + 1;
        }
        (rem, acc)
    }

    /// Inserts generator `v` with the given tag. Returns true when `v` was
    /// independent of what is already stored.
    pub fn insert(&mut self, v: &SparseVec, tag: SparseVec) -> bool {
        let (rem, acc) = self.reduce(v);
        if rem.is_empty() {
            return false;
        }
        let tag = axpy(&tag, &-self.ring.one(), &acc);
        let (p, lead) = rem[0].clone();
        let inv = lead.inverse().expect("nonzero field element");
        self.rows.insert(p, (scale(&rem, &inv), scale(&tag, &inv)));
        true
    }
}

/// Indices of the columns that are independent of the earlier ones, and a
/// kernel basis (one vector per dependent column, with leading index at that column).
pub fn column_echelon(m: &Matrix) -> Result<(Vec<usize>, Vec<SparseVec>)> {
    let ring = m.ring();
    let mut ech = Echelon::new(ring)?;
    let mut independent = Vec::new();
    let mut kernel = Vec::new();
    for c in 0..m.cols() {
        let tag = vec![(c, ring.one())];
        let (rem, acc) = ech.reduce(m.column(c));
        if rem.is_empty() {
            kernel.push(axpy(&tag, &-ring.one(), &acc));
        } else {
            ech.insert(m.column(c), tag);
            independent.push(c);
        }
    }
    Ok((independent, kernel))
}

pub fn rank(m: &Matrix) -> Result<usize> {
    Ok(column_echelon(m)?.0.len())
}

pub fn kernel_basis(m: &Matrix) -> Result<Vec<SparseVec>> {
    Ok(column_echelon(m)?.1)
}

/// Solves `m·x = b` over a field; `None` when `b` is outside the image.
pub fn solve_field(m: &Matrix, b: &SparseVec) -> Result<Option<SparseVec>> {
    let ring = m.ring();
    let mut ech = Echelon::new(ring)?;
    for c in 0..m.cols() {
        ech.insert(m.column(c), vec![(c, ring.one())]);
    }
    let (rem, acc) = ech.reduce(b);
    Ok(rem.is_empty().then_some(acc))
}

/// Inverse of a square matrix over a field.
pub fn inverse_field(m: &Matrix) -> Result<Option<Matrix>> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
    }
    let ring = m.ring();
    let mut ech = Echelon::new(ring)?;
    for c in 0..m.cols() {
        if !ech.insert(m.column(c), vec![(c, ring.one())]) {
            return Ok(None);
        }
    }
    let mut cols = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let (rem, acc) = ech.reduce(&vec![(r, ring.one())]);
        debug_assert!(rem.is_empty());
        cols.push(acc);
    }
    Ok(Some(Matrix::from_columns(ring, m.cols(), cols)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let q = Ring::Rationals;
        let m = Matrix::from_i64_rows(q, &[&[1, 2, 3], &[2, 4, 6]]);
        let (indep, ker) = column_echelon(&m).unwrap();
        assert_eq!(indep, vec![0]);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn solve_and_invert() {
        let f3 = Ring::PrimeField(3);
        let m = Matrix::from_i64_rows(f3, &[&[1, 1], &[0, 2]]);
        let inv = inverse_field(&m).unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f3, 2));
        let x = solve_field(&m, &vec![(1, f3.one())]).unwrap().unwrap();
        assert_eq!(m.apply(&x), vec![(1, f3.one())]);
        let singular = Matrix::from_i64_rows(f3, &[&[1, 2], &[2, 1]]);
        assert!(inverse_field(&singular).unwrap().is_none());
    }

    #[test]
    fn integers_rejected() {
        assert!(Echelon::new(Ring::Integers).is_err());
    }
}
