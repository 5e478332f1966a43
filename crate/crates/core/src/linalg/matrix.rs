use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `y + a·x`.
pub fn axpy(y: &SparseVec, a: &Scalar, x: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            let v = a * &x[j].1;
            if !v.is_zero() {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = &y[i].1 + &(a * &x[j].1);
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &SparseVec, a: &Scalar) -> SparseVec {
    v.iter()
        .filter_map(|(i, x)| {
            let y = a * x;
            (!y.is_zero()).then_some((*i, y))
        })
        .collect()
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn sparse_from_entries(entries: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, v) in entries {
        match acc.get_mut(&i) {
            Some(x) => *x += &v,
            None => {
                acc.insert(i, v);
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(ring: Ring, v: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![ring.zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Exact sparse matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, ring.one())]).collect();
        Matrix {
            ring,
            rows: n,
            cols: n,
            columns,
        }
    }

    pub fn from_triplets(
        ring: Ring,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut per_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            per_col[c].push((r, v));
        }
        let columns = per_col.into_iter().map(sparse_from_entries).collect();
        Matrix {
            ring,
            rows,
            cols,
            columns,
        }
    }

    pub fn from_columns(ring: Ring, rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.iter().all(|(i, v)| *i < rows && !v.is_zero())));
        Matrix {
            ring,
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn from_dense(ring: Ring, data: &[Vec<Scalar>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let triplets = data.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, v)| (r, c, v.clone()))
        });
        Matrix::from_triplets(ring, rows, cols, triplets)
    }

    pub fn from_i64_rows(ring: Ring, data: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> = data
            .iter()
            .map(|row| row.iter().map(|v| ring.from_i64(*v)).collect())
            .collect();
        if dense.is_empty() {
            return Matrix::zeros(ring, 0, 0);
        }
        Matrix::from_dense(ring, &dense)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.columns[c]
            .binary_search_by_key(&r, |(i, _)| *i)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_else(|_| self.ring.zero())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, x) in v {
            for (r, a) in &self.columns[*c] {
                let t = a * x;
                match acc.get_mut(r) {
                    Some(y) => *y += &t,
                    None => {
                        acc.insert(*r, t);
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, y)| !y.is_zero()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        Ok(Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let one = self.ring.one();
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| axpy(a, &one, b))
            .collect();
        Ok(Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            columns,
        })
    }

    pub fn scaled(&self, a: &Scalar) -> Matrix {
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|c| scale(c, a)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let triplets = self.triplets().map(|(r, c, v)| (c, r, v.clone()));
        Matrix::from_triplets(self.ring, self.cols, self.rows, triplets)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.ring.zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Rows as sparse vectors.
    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                rows[*r].push((c, v.clone()));
            }
        }
        rows
    }

    /// Image of every entry under a ring map (e.g. reduction mod p).
    pub fn change_ring(&self, target: Ring) -> Option<Matrix> {
        let mut triplets = Vec::with_capacity(self.nnz());
        for (r, c, v) in self.triplets() {
            triplets.push((r, c, target.convert(v)?));
        }
        Some(Matrix::from_triplets(target, self.rows, self.cols, triplets))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: cols.len(),
            columns: cols.iter().map(|c| self.columns[*c].clone()).collect(),
        }
    }

    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> Matrix {
        let start = rows.start;
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .filter(|(r, _)| rows.contains(r))
                    .map(|(r, v)| (r - start, v.clone()))
                    .collect()
            })
            .collect();
        Matrix {
            ring: self.ring,
            rows: rows.len(),
            cols: self.cols,
            columns,
        }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut columns = self.columns.clone();
        for col in &other.columns {
            columns.push(col.iter().map(|(r, v)| (r + self.rows, v.clone())).collect());
        }
        Matrix {
            ring: self.ring,
            rows: self.rows + other.rows,
            cols: self.cols + other.cols,
            columns,
        }
    }
}
