use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::matrix::{Matrix, SparseVec};
use crate::scalar::{Ring, Scalar};

/// `U·M·V = D` with `D` diagonal and `d₁ | d₂ | …`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: Matrix,
    pub u: Matrix,
    pub v: Matrix,
    pub u_inv: Matrix,
    pub v_inv: Matrix,
    /// Nonzero diagonal entries, in order.
    pub invariants: Vec<BigInt>,
}

type Dense = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

struct Work {
    a: Dense,
    u: Dense,
    u_inv: Dense,
    v: Dense,
    v_inv: Dense,
}

impl Work {
    // row_i += c·row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(src) {
                *x += c * y;
            }
        }
        for row in self.u_inv.iter_mut() {
            let t = c * &row[i];
            row[j] -= t;
        }
    }

    // col_i += c·col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let t = c * &row[j];
                row[i] += t;
            }
        }
        let src = self.v_inv[i].clone();
        for (x, y) in self.v_inv[j].iter_mut().zip(src) {
            *x -= c * y;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
        self.v_inv.swap(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }
}

fn to_matrix(m: &Dense, rows: usize, cols: usize) -> Matrix {
    let z = Ring::Integers;
    let triplets = m.iter().enumerate().flat_map(|(r, row)| {
        row.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(c, v)| (r, c, Scalar::Int(v.clone())))
    });
    Matrix::from_triplets(z, rows, cols, triplets)
}

/// Smith normal form over ℤ.
pub fn smith_normal_form(m: &Matrix) -> Result<SmithForm> {
    if m.ring() != Ring::Integers {
        return Err(Error::UnsupportedRing(m.ring().tag()));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = vec![vec![BigInt::zero(); cols]; rows];
    for (r, c, v) in m.triplets() {
        a[r][c] = v.as_bigint().expect("integer entry").clone();
    }
    let mut w = Work {
        a,
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
    };
    let mut invariants = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = smallest_entry(&w.a, t) else {
            break;
        };
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = -(&w.a[i][t] / &w.a[t][t]);
                w.add_row(i, t, &q);
                if !w.a[i][t].is_zero() {
                    w.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = -(&w.a[t][j] / &w.a[t][t]);
                w.add_col(j, t, &q);
                if !w.a[t][j].is_zero() {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide the remaining block.
            let p = w.a[t][t].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        invariants.push(w.a[t][t].clone());
        t += 1;
    }
    Ok(SmithForm {
        d: to_matrix(&w.a, rows, cols),
        u: to_matrix(&w.u, rows, rows),
        v: to_matrix(&w.v, cols, cols),
        u_inv: to_matrix(&w.u_inv, rows, rows),
        v_inv: to_matrix(&w.v_inv, cols, cols),
        invariants,
    })
}

fn smallest_entry(a: &Dense, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().map_or(true, |(_, _, b)| av < *b) {
                best = Some((i, j, av));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Solves `m·x = b` over ℤ; `None` when no integral solution exists.
pub fn solve_integer(m: &Matrix, b: &SparseVec) -> Result<Option<SparseVec>> {
    let snf = smith_normal_form(m)?;
    // U M V = D, so M x = b  <=>  D y = U b with x = V y.
    let ub = snf.u.apply(b);
    let mut y = Vec::new();
    for (i, c) in ub {
        let Some(d) = snf.invariants.get(i) else {
            return Ok(None);
        };
        let cv = c.as_bigint().expect("integer");
        if !cv.is_multiple_of(d) {
            return Ok(None);
        }
        y.push((i, Scalar::Int(cv / d)));
    }
    Ok(Some(snf.v.apply(&y)))
}

/// Solves `m·x = b` over any supported ring.
pub fn solve(m: &Matrix, b: &SparseVec) -> Result<Option<SparseVec>> {
    if m.ring().is_field() {
        crate::linalg::echelon::solve_field(m, b)
    } else {
        solve_integer(m, b)
    }
}
