//! Square matrices over a commutative group algebra whose determinant is a unit monomial.

use serde_json::{json, Value};

use crate::algebra::{GroupAlgebra, GroupAlgebraElement};
use crate::error::{Error, Result};

pub type Square = Vec<Vec<GroupAlgebraElement>>;

/// All permutations of `0..n` with their parity, sorted.
pub(crate) fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting at `pos` moves the new largest entry past `len - pos` others
            out.push((q, odd ^ ((p.len() - pos) % 2 == 1)));
        }
    }
    out.sort();
    out
}

pub fn determinant(alg: &GroupAlgebra, m: &Square) -> Result<GroupAlgebraElement> {
    let n = m.len();
    let mut det = alg.zero();
    for (perm, odd) in permutations(n) {
        let mut term = alg.one();
        for (i, &j) in perm.iter().enumerate() {
            term = alg.multiply(&term, &m[i][j])?;
            if term.is_zero() {
                break;
            }
        }
        det = if odd { det.sub(&term)? } else { det.add(&term)? };
    }
    Ok(det)
}

fn minor(m: &Square, row: usize, col: usize) -> Square {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Inverse of a unit monomial `c·g`.
pub fn monomial_inverse(alg: &GroupAlgebra, x: &GroupAlgebraElement) -> Option<GroupAlgebraElement> {
    if x.len() != 1 {
        return None;
    }
    let (g, c) = x.terms().next()?;
    let ci = c.inverse()?;
    Some(GroupAlgebraElement::monomial(alg.ring(), alg.group().inverse(g), ci))
}

/// `adj(M) / det(M)`; fails with `NotInvertible(p)` unless the determinant is a unit monomial.
pub fn inverse(alg: &GroupAlgebra, m: &Square, p: usize) -> Result<Square> {
    let n = m.len();
    let det = determinant(alg, m)?;
    let det_inv = monomial_inverse(alg, &det).ok_or(Error::NotInvertible(p))?;
    let mut out = vec![vec![alg.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let cof = determinant(alg, &minor(m, i, j))?;
            let cof = if (i + j) % 2 == 1 { cof.scale(&-alg.ring().one()) } else { cof };
            out[j][i] = alg.multiply(&cof, &det_inv)?;
        }
    }
    Ok(out)
}

pub fn apply(alg: &GroupAlgebra, m: &Square, v: &[GroupAlgebraElement]) -> Result<Vec<GroupAlgebraElement>> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).try_fold(alg.zero(), |acc, (a, x)| acc.add(&alg.multiply(a, x)?))
        })
        .collect()
}

pub fn to_json(m: &Square) -> Value {
    json!(m.iter().map(|r| r.iter().map(GroupAlgebraElement::to_json).collect::<Vec<_>>()).collect::<Vec<_>>())
}
