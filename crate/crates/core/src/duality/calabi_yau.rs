//! Calabi–Yau conditions for `A = k[ℤ]` from the Koszul model with coefficients `A⊗A`.
//!
//! `A⊗A = k[x^±, y^±]` with `x = t⊗1`, `y = 1⊗t`; the complex is `A⊗A --(x-y)--> A⊗A`.

use serde_json::{json, Value};

use crate::algebra::{GroupAlgebra, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::linalg::{rank, Matrix, SparseVec};
use crate::report::CheckRecord;
use crate::resolution::{hochschild_via_resolution, KoszulResolution, Resolution, SmallModule, Variant};
use crate::scalar::Ring;

#[derive(Clone, Debug)]
pub struct CyReport {
    pub d: usize,
    pub ring: Ring,
    pub span: i64,
    pub records: Vec<CheckRecord>,
}

impl CyReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                let status = if r.passed { "pass" } else { "fail" };
                let key = if r.passed { "detail" } else { "witness" };
                json!({"name": r.check, "status": status, key: r.detail})
            })
            .collect();
        json!({"group": format!("Z^{}", self.d), "d": self.d, "ring": self.ring.tag(), "span": self.span, "checks": checks})
    }
}

fn xy(i: i64, j: i64) -> GroupElement {
    GroupElement::exponents(&[i, j])
}

/// `x^i y^j ↦ t^{i+j}`, the map `(x⊗y) ↦ y·1·x` on monomials.
fn substitute(a: &GroupAlgebra, m: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    let mut out = a.zero();
    for (g, c) in m.terms() {
        let e = g.as_slice();
        out.add_term(GroupElement::exponents(&[e[0] + e[1]]), c.clone());
    }
    Ok(out)
}

/// Coordinates of `v` on the monomials of `box_`, or `None` if `v` leaves it.
fn coordinates(box_: &[GroupElement], v: &GroupAlgebraElement) -> Option<SparseVec> {
    let mut out: SparseVec = v.terms().map(|(g, c)| Some((box_.iter().position(|b| b == g)?, c.clone()))).collect::<Option<_>>()?;
    out.sort_by_key(|(i, _)| *i);
    Some(out)
}

fn square(lo: i64, hi: i64) -> Vec<GroupElement> {
    (lo..=hi).flat_map(|i| (lo..=hi).map(move |j| xy(i, j))).collect()
}

/// Checks `HH⁰(A, A⊗A) = 0` and `HH¹(A, A⊗A) ≅ A` for `d = 1` on monomials of span `span`.
pub fn calabi_yau_check(d: usize, ring: Ring, span: i64) -> Result<CyReport> {
    if d != 1 {
        return Err(Error::UnsupportedRank(d));
    }
    if span < 1 {
        return Err(Error::DimensionMismatch("span must be at least 1".into()));
    }
    let field = if ring.is_field() { ring } else { Ring::Rationals };
    let a = GroupAlgebra::new(Group::free_abelian(1), ring);
    let ae = GroupAlgebra::new(Group::free_abelian(2), ring);
    let res = KoszulResolution::new(1, ring, Variant::Left)?;
    let small = hochschild_via_resolution(&res, SmallModule::Outer, 1)?;
    let mut records = Vec::new();

    let x_minus_y = ae.from_i64(&[(xy(1, 0), 1), (xy(0, 1), -1)]);
    let entry = small.cochain_diffs[0].get(0, 0);
    let ok = entry == x_minus_y || entry == x_minus_y.scale(&-ring.one());
    let top_free = res.rank(2) == 0;
    records.push(CheckRecord::new(
        "outer_complex",
        ok && top_free,
        json!({"d0": entry.to_json(), "rank_2": res.rank(2)}),
    ));

    // (x - y)·m for monomials m in a box of width `span`, as columns on the box one wider.
    let s = span / 2;
    let source = square(-s, span - s - 1);
    let target = square(-s, span - s);
    let mut cols = Vec::new();
    let mut leading_ok = true;
    for g in &source {
        let m = ae.basis(g.clone());
        let image = ae.multiply(&x_minus_y, &m)?;
        // lex order with x first: the leading monomial of (x - y)m is x·lead(m)
        let lead = image.terms().map(|(g, _)| g.clone()).max();
        leading_ok &= lead == Some(ae.group().mul(&xy(1, 0), g));
        cols.push(coordinates(&target, &image).ok_or_else(|| Error::DimensionMismatch("window".into()))?);
    }
    let to_field = |cols: Vec<SparseVec>, rows: usize| -> Result<Matrix> {
        let cols = cols
            .into_iter()
            .map(|c| c.into_iter().map(|(i, v)| Ok((i, field.convert(&v).ok_or(Error::UnsupportedRing(field.tag()))?))).collect())
            .collect::<Result<Vec<SparseVec>>>()?;
        Ok(Matrix::from_columns(field, rows, cols))
    };
    let injective_rank = rank(&to_field(cols.clone(), target.len())?)?;
    records.push(CheckRecord::new(
        "hh0_vanishes",
        injective_rank == source.len() && leading_ok,
        json!({"monomials": source.len(), "rank": injective_rank, "leading_term_shift": leading_ok}),
    ));

    // ker σ on the target box equals the (x - y)-multiples from the source box.
    let mut killed = true;
    for g in &source {
        let image = ae.multiply(&x_minus_y, &ae.basis(g.clone()))?;
        killed &= substitute(&a, &image)?.is_zero();
    }
    let sums: std::collections::BTreeSet<i64> = target.iter().map(|g| g.as_slice()[0] + g.as_slice()[1]).collect();
    let kernel_dim = target.len() - sums.len();
    let surjective = (-span..=span).all(|k| {
        substitute(&a, &ae.basis(xy(k, 0))).map_or(false, |v| v == a.basis(GroupElement::exponents(&[k])))
    });
    records.push(CheckRecord::new(
        "hh1_identification",
        killed && injective_rank == kernel_dim && surjective,
        json!({"image_killed": killed, "kernel_dim": kernel_dim, "image_rank": injective_rank, "surjective": surjective}),
    ));

    // Inner bimodule structure on A⊗A: t·(u⊗v) = u⊗tv and (u⊗v)·t = ut⊗v.
    let mut actions = true;
    let mut witness = Value::Null;
    for g in &target {
        let m = ae.basis(g.clone());
        let sm = substitute(&a, &m)?;
        for e in [1, -1] {
            let t = a.basis(GroupElement::exponents(&[e]));
            let left = substitute(&a, &ae.multiply(&ae.basis(xy(0, e)), &m)?)? == a.multiply(&t, &sm)?;
            let right = substitute(&a, &ae.multiply(&ae.basis(xy(e, 0)), &m)?)? == a.multiply(&sm, &t)?;
            if !(left && right) && actions {
                actions = false;
                witness = json!({"monomial": g.as_slice(), "t_power": e, "left": left, "right": right});
            }
        }
    }
    records.push(CheckRecord::new("bimodule_actions", actions, if actions { json!({"monomials": target.len()}) } else { witness }));

    let unit = substitute(&a, &ae.one())? == a.one();
    records.push(CheckRecord::new("unit_class", unit, json!({"unit_maps_to_unit": unit})));
    Ok(CyReport { d, ring, span, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_is_calabi_yau() {
        for ring in [Ring::Rationals, Ring::Integers, Ring::PrimeField(3)] {
            let r = calabi_yau_check(1, ring, 5).unwrap();
            assert!(r.passed(), "{:#}", r.to_json());
        }
    }

    #[test]
    fn higher_rank_is_unsupported() {
        assert_eq!(calabi_yau_check(2, Ring::Rationals, 5).err(), Some(Error::UnsupportedRank(2)));
    }
}
