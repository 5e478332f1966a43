//! Exhaustive identities on the differentials: `d² = 0`, `D² = 0`, `B² = 0`, `bB + Bb = 0`.

use serde_json::json;

use crate::algebra::{Bimodule, GroupAlgebra};
use crate::error::Result;
use crate::hochschild::chain::connes_b_signed;
use crate::hochschild::complex::FiniteComplexes;
use crate::linalg::Matrix;
use crate::report::CheckRecord;

/// Matrix of Connes `B: C_n → C_{n+1}` on the normalized complex.
pub fn connes_matrix(cx: &FiniteComplexes, n: usize, flip: bool) -> Result<Matrix> {
    let alg = cx.algebra();
    let mut cols = Vec::with_capacity(cx.chain_dim(n));
    for w in cx.chain_basis(n) {
        let c = cx.vector_chain(n, &vec![(cx.chain_index(&w).expect("basis word"), alg.ring().one())]);
        cols.push(cx.chain_vector(&connes_b_signed(alg, &c, flip)?)?);
    }
    Ok(Matrix::from_columns(alg.ring(), cx.chain_dim(n + 1), cols))
}

fn record(name: &str, failures: Vec<usize>, checked: Vec<usize>) -> CheckRecord {
    if failures.is_empty() {
        CheckRecord::new(name, true, json!({"degrees": checked}))
    } else {
        CheckRecord::new(name, false, json!({"failing_degrees": failures}))
    }
}

/// Checks the four identities on every chain and cochain of length `≤ max_len`, normalized and
/// unnormalized for `d` and `D`, normalized for `B`.
pub fn check_differentials(alg: &GroupAlgebra, max_len: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for normalized in [true, false] {
        let cx = FiniteComplexes::new(alg, Bimodule::Algebra, normalized)?;
        let tag = if normalized { "normalized" } else { "unnormalized" };
        let (mut bad, mut seen) = (Vec::new(), Vec::new());
        for n in 2..=max_len {
            seen.push(n);
            if !cx.chain_matrix(n - 1).mul(&cx.chain_matrix(n))?.is_zero() {
                bad.push(n);
            }
        }
        out.push(record(&format!("d_squared.{tag}"), bad, seen));
        let (mut bad, mut seen) = (Vec::new(), Vec::new());
        for p in 0..max_len.saturating_sub(1) {
            seen.push(p);
            if !cx.cochain_matrix(p + 1).mul(&cx.cochain_matrix(p))?.is_zero() {
                bad.push(p);
            }
        }
        out.push(record(&format!("cochain_d_squared.{tag}"), bad, seen));
    }
    let cx = FiniteComplexes::new(alg, Bimodule::Algebra, true)?;
    let bs = (0..max_len).map(|n| connes_matrix(&cx, n, false)).collect::<Result<Vec<_>>>()?;
    let (mut bad, mut seen) = (Vec::new(), Vec::new());
    for n in 0..max_len.saturating_sub(1) {
        seen.push(n);
        if !bs[n + 1].mul(&bs[n])?.is_zero() {
            bad.push(n);
        }
    }
    out.push(record("connes_b_squared", bad, seen));
    let (mut bad, mut seen) = (Vec::new(), Vec::new());
    for n in 0..max_len {
        seen.push(n);
        let b_then_d = cx.chain_matrix(n + 1).mul(&bs[n])?;
        let sum = if n == 0 { b_then_d } else { b_then_d.add(&bs[n - 1].mul(&cx.chain_matrix(n))?)? };
        if !sum.is_zero() {
            bad.push(n);
        }
    }
    out.push(record("bB_plus_Bb", bad, seen));
    Ok(out)
}
