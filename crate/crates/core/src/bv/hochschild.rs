//! Gerstenhaber structures coming from Hochschild (co)homology of finite group algebras:
//! `HH*` as a graded spec, and `HH_*` with Connes `B` as a module for `End`.

use crate::algebra::Bimodule;
use crate::bv::axioms::Tally;
use crate::bv::derived::{endomorphism_element, EndomorphismGerstenhaber};
use crate::bv::spec::{GradedAlgebraSpec, Table};
use crate::error::{Error, Result};
use crate::hochschild::chain::{connes_b, Chain};
use crate::hochschild::cochain::Cochain;
use crate::linalg::matrix::dense_to_sparse;
use crate::linalg::{Matrix, SparseVec};
use crate::ops::calculus::ClassData;
use crate::ops::products::{cup, gerstenhaber_bracket, left_action};
use crate::report::CheckRecord;

fn require_field(data: &ClassData) -> Result<()> {
    let ring = data.alg.ring();
    if !ring.is_field() {
        return Err(Error::UnsupportedRing(format!("{} (class coordinates need a field)", ring.tag())));
    }
    Ok(())
}

/// Basis of `HH^p`, `p ≤ top`, as `(p, representative)` in degree order.
fn cohomology_basis(data: &ClassData, top: usize) -> Vec<(usize, Cochain)> {
    (0..=top).flat_map(|p| data.cocycles(p).into_iter().map(move |f| (p, f))).collect()
}

fn cochain_class(data: &ClassData, f: &Cochain, offset: usize) -> Result<SparseVec> {
    let space = data.cohomology(f.arity()).ok_or(Error::BeyondTruncation(f.arity()))?;
    let coords = space.class_of(&data.complexes.cochain_vector(f)?)?;
    Ok(dense_to_sparse(&coords).into_iter().map(|(i, c)| (i + offset, c)).collect())
}

/// `HH^{≤top}(k[G])` with cup product and Gerstenhaber bracket on class representatives; products
/// landing above `top` are unknown. `HH^p` sits in lower degree `-p`.
pub fn cohomology_spec(data: &ClassData, top: usize) -> Result<GradedAlgebraSpec> {
    require_field(data)?;
    if top > data.max_degree {
        return Err(Error::BeyondTruncation(top));
    }
    let alg = &data.alg;
    let ring = alg.ring();
    let basis = cohomology_basis(data, top);
    let mut offsets = vec![0usize; top + 2];
    for p in 0..=top {
        offsets[p + 1] = offsets[p] + data.cohomology(p).map_or(0, |s| s.rank());
    }
    let n = basis.len();
    let mut product: Table = vec![vec![None; n]; n];
    let mut bracket: Table = vec![vec![None; n]; n];
    for (i, (p, f)) in basis.iter().enumerate() {
        for (j, (q, g)) in basis.iter().enumerate() {
            if p + q <= top {
                product[i][j] = Some(cochain_class(data, &cup(alg, f, g)?, offsets[p + q])?);
            }
            if p + q == 0 {
                bracket[i][j] = Some(Vec::new());
            } else if p + q - 1 <= top {
                bracket[i][j] = Some(cochain_class(data, &gerstenhaber_bracket(alg, f, g)?, offsets[p + q - 1])?);
            }
        }
    }
    let unit = cochain_class(data, &Cochain::unit(alg, Bimodule::Algebra), 0)?;
    Ok(GradedAlgebraSpec {
        name: format!("HH*({}) ≤ {top}", alg.group().name()),
        ring,
        labels: basis
            .iter()
            .map(|(p, _)| *p)
            .enumerate()
            .map(|(i, p)| format!("h{p}_{}", i - offsets[p]))
            .collect(),
        degrees: basis.iter().map(|(p, _)| -(*p as i64)).collect(),
        unit,
        product,
        delta: None,
        bracket: Some(bracket),
    })
}

/// `E = HH_0 ⊕ … ⊕ HH_top` with `B` (zero out of `HH_top`) and the action `a ↦ i_a` of `HH*`.
pub struct HomologyModule {
    pub degrees: Vec<i64>,
    pub offsets: Vec<usize>,
    pub b: Matrix,
    cycles: Vec<(usize, Chain)>,
}

impl HomologyModule {
    pub fn new(data: &ClassData, top: usize) -> Result<Self> {
        require_field(data)?;
        if top > data.max_degree {
            return Err(Error::BeyondTruncation(top));
        }
        let cycles: Vec<(usize, Chain)> =
            (0..=top).flat_map(|n| data.cycles(n).into_iter().map(move |c| (n, c))).collect();
        let mut offsets = vec![0usize; top + 2];
        for n in 0..=top {
            offsets[n + 1] = offsets[n] + data.homology(n).map_or(0, |s| s.rank());
        }
        let dim = cycles.len();
        let mut cols = Vec::with_capacity(dim);
        for (n, c) in &cycles {
            cols.push(if *n == top {
                Vec::new()
            } else {
                chain_class(data, &connes_b(&data.alg, c)?, offsets[n + 1])?
            });
        }
        Ok(HomologyModule {
            degrees: cycles.iter().map(|(n, _)| *n as i64).collect(),
            offsets,
            b: Matrix::from_columns(data.alg.ring(), dim, cols),
            cycles,
        })
    }

    pub fn top(&self) -> usize {
        self.offsets.len() - 2
    }

    /// `i_f` as a matrix on `E`.
    pub fn action(&self, data: &ClassData, f: &Cochain) -> Result<Matrix> {
        let p = f.arity();
        let mut cols = Vec::with_capacity(self.cycles.len());
        for (n, c) in &self.cycles {
            cols.push(if *n < p {
                Vec::new()
            } else {
                chain_class(data, &left_action(&data.alg, f, c)?, self.offsets[n - p])?
            });
        }
        Ok(Matrix::from_columns(data.alg.ring(), self.cycles.len(), cols))
    }
}

fn chain_class(data: &ClassData, c: &Chain, offset: usize) -> Result<SparseVec> {
    let n = c.degree();
    let space = data.homology(n).ok_or(Error::BeyondTruncation(n))?;
    let coords = space.class_of(&data.complexes.chain_vector(c)?)?;
    Ok(dense_to_sparse(&coords).into_iter().map(|(i, c)| (i + offset, c)).collect())
}

/// Keeps only the columns of `End(E)` elements whose source has degree `< top`.
fn restrict(v: &SparseVec, module: &HomologyModule) -> SparseVec {
    let n = module.degrees.len();
    let top = module.top() as i64;
    v.iter().filter(|(k, _)| module.degrees[k % n] < top).cloned().collect()
}

/// `i_(−): HH* → End(HH_*)` respects products and sends the Gerstenhaber bracket to
/// `[[i_a, B], i_b]`, and `End(E)` with that bracket passes the Loday–Gerstenhaber axioms.
/// Comparisons use sources of degree `< top`, where truncating `B` has no effect.
pub fn check_hochschild_morphism(data: &ClassData, top: usize) -> Result<Vec<CheckRecord>> {
    let module = HomologyModule::new(data, top)?;
    let end = EndomorphismGerstenhaber::new(&module.degrees, &module.b)?;
    let spec = cohomology_spec(data, top)?;
    let basis = cohomology_basis(data, top);
    let actions: Vec<SparseVec> = basis
        .iter()
        .map(|(_, f)| module.action(data, f).map(|m| endomorphism_element(&m)))
        .collect::<Result<_>>()?;
    let image = |v: &SparseVec| -> SparseVec {
        let mut out = Vec::new();
        for (i, c) in v {
            out = crate::linalg::axpy(&out, c, &actions[*i]);
        }
        out
    };
    let mut mult = Tally::new("action_multiplicative", &spec);
    let mut brk = Tally::new("action_bracket", &spec);
    for (i, (p, _)) in basis.iter().enumerate() {
        for (j, (q, _)) in basis.iter().enumerate() {
            let lhs = spec.product[i][j].as_ref().map(|v| restrict(&image(v), &module));
            let rhs = end.spec.mul(&actions[i], &actions[j]).map(|v| restrict(&v, &module));
            mult.compare(&[i, j], lhs, rhs);
            let lhs = spec.bracket.as_ref().expect("bracket")[i][j].as_ref().map(|v| restrict(&image(v), &module));
            let rhs = end.double_commutator(&actions[i], -(*p as i64), &actions[j], -(*q as i64));
            brk.compare(&[i, j], lhs, Some(restrict(&rhs, &module)));
        }
    }
    let mut out = end.check();
    out.push(mult.finish());
    out.push(brk.finish());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupAlgebra;
    use crate::bv::axioms::check_gerstenhaber;
    use crate::group::Group;
    use crate::scalar::Ring;

    fn data(g: Group, ring: Ring, max: usize) -> ClassData {
        ClassData::new(&GroupAlgebra::new(g, ring), max).unwrap()
    }

    #[test]
    fn hh_of_f2_z2_is_gerstenhaber() {
        let d = data(Group::cyclic(2), Ring::PrimeField(2), 2);
        let spec = cohomology_spec(&d, 2).unwrap();
        assert_eq!(spec.dim(), 6);
        let rs = check_gerstenhaber(&spec).unwrap();
        assert!(rs.iter().all(|r| r.passed), "{rs:?}");
    }

    #[test]
    fn hh_of_f3_z3_is_gerstenhaber() {
        let d = data(Group::cyclic(3), Ring::PrimeField(3), 2);
        let spec = cohomology_spec(&d, 2).unwrap();
        let rs = check_gerstenhaber(&spec).unwrap();
        assert!(rs.iter().all(|r| r.passed), "{rs:?}");
    }

    #[test]
    fn integers_are_rejected() {
        let d = data(Group::cyclic(2), Ring::Integers, 1);
        assert!(matches!(cohomology_spec(&d, 1), Err(Error::UnsupportedRing(_))));
    }

    #[test]
    fn action_is_a_gerstenhaber_morphism() {
        let d = data(Group::cyclic(2), Ring::PrimeField(2), 3);
        let rs = check_hochschild_morphism(&d, 3).unwrap();
        assert!(rs.iter().all(|r| r.passed), "{rs:?}");
    }

    #[test]
    fn action_is_a_gerstenhaber_morphism_f3() {
        let d = data(Group::cyclic(3), Ring::PrimeField(3), 3);
        let rs = check_hochschild_morphism(&d, 3).unwrap();
        assert!(rs.iter().all(|r| r.passed), "{rs:?}");
    }
}
