//! Homology-level verification of the comparison diagrams and the section properties.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Bimodule, GroupAlgebra};
use crate::comparison::maps::{
    augment_coefficients, cyclic_b_bar, group_cap, group_cup, phi, sigma, unit_coefficients, xi, xi_cochain, CapTarget,
    EckmannShapiro, Direction,
};
use crate::error::{Error, Result};
use crate::hochschild::chain::{connes_b, normalize, Chain};
use crate::hochschild::cochain::Cochain;
use crate::hochschild::complex::{truncated_homology, FiniteComplexes, Flavor};
use crate::linalg::{rank, sparse_json, HomologySpace, Matrix, SparseVec};
use crate::ops::cap;

/// One row of a diagram report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagramRow {
    pub diagram: String,
    pub group: String,
    pub module: String,
    pub degree: String,
    pub status: String,
    pub witness: Option<Value>,
}

impl DiagramRow {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

fn row(diagram: &str, alg: &GroupAlgebra, module: String, degree: String, result: Result<Option<Value>>) -> DiagramRow {
    let (status, witness) = match result {
        Ok(None) => ("pass", None),
        Ok(Some(w)) => ("fail", Some(w)),
        Err(e) => ("error", Some(json!({"error": e.to_string()}))),
    };
    DiagramRow {
        diagram: diagram.into(),
        group: alg.group().name(),
        module,
        degree,
        status: status.into(),
        witness,
    }
}

fn reps_chains(cx: &FiniteComplexes, space: &HomologySpace, n: usize) -> Vec<Chain> {
    space
        .presentation
        .representatives
        .iter()
        .map(|v| cx.vector_chain(n, v))
        .collect()
}

fn reps_cochains(cx: &FiniteComplexes, space: &HomologySpace, p: usize) -> Vec<Cochain> {
    space
        .presentation
        .representatives
        .iter()
        .map(|v| cx.vector_cochain(p, v))
        .collect()
}

fn compare(space: &HomologySpace, a: &SparseVec, b: &SparseVec) -> Result<Option<Value>> {
    if space.same_class(a, b)? {
        Ok(None)
    } else {
        Ok(Some(json!({"lhs": sparse_json(a), "rhs": sparse_json(b)})))
    }
}

const MODULES: [Bimodule; 2] = [Bimodule::Algebra, Bimodule::Trivial];

/// Diagram ii): `Tor(M⊗_A N, η)(q(z ∩ Ext(u))) = Tor(M, η)(z) ∩ u` in `HH_{n-p}(k[G], M ⊗_A N)`,
/// plus the chain-level square through `Φ`.
pub fn check_cap_diagram(alg: &GroupAlgebra, max_degree: usize) -> Result<Vec<DiagramRow>> {
    let mut rows = Vec::new();
    for m in MODULES {
        for nmod in MODULES {
            let t = m.tensor(nmod);
            let gm = FiniteComplexes::with_flavor(alg, m, true, Flavor::Group)?;
            let hm = FiniteComplexes::new(alg, m, true)?;
            let hn = FiniteComplexes::new(alg, nmod, true)?;
            let ht = FiniteComplexes::new(alg, t, true)?;
            let label = format!("M={},N={}", m.tag(), nmod.tag());
            for n in 0..=max_degree {
                let gspace = gm.homology_space(n)?;
                let zs = reps_chains(&gm, &gspace, n);
                for p in 0..=n {
                    let uspace = hn.cohomology_space(p)?;
                    let us = reps_cochains(&hn, &uspace, p);
                    let tspace = ht.homology_space(n - p)?;
                    let result = (|| {
                        for (zi, z) in zs.iter().enumerate() {
                            for (ui, u) in us.iter().enumerate() {
                                let lower = group_cap(alg, z, &xi_cochain(u), CapTarget::Balanced)?;
                                let lhs = ht.chain_vector(&xi(alg, &lower))?;
                                let rhs = ht.chain_vector(&cap(alg, &xi(alg, z), u)?)?;
                                if let Some(mut w) = compare(&tspace, &lhs, &rhs)? {
                                    w["z"] = json!(zi);
                                    w["u"] = json!(ui);
                                    return Ok(Some(w));
                                }
                            }
                        }
                        // chain level on a sample of basis words
                        for (k, w) in hm.chain_basis(n).into_iter().enumerate().step_by(3) {
                            let c = Chain::word(alg.ring(), m, w);
                            for (ui, u) in us.iter().enumerate() {
                                let lhs = phi(alg, &cap(alg, &c, u)?);
                                let rhs = group_cap(alg, &phi(alg, &c), &xi_cochain(u), CapTarget::Balanced)?;
                                if normalize(alg, &lhs) != normalize(alg, &rhs) {
                                    return Ok(Some(json!({"chain_level": true, "word": k, "u": ui})));
                                }
                            }
                        }
                        Ok(None)
                    })();
                    rows.push(row("cap", alg, label.clone(), format!("n={n},p={p}"), result));
                }
            }
        }
    }
    Ok(rows)
}

/// Diagram i): `Ext(η, M⊗_A N)(u ∪ v) = H(G, q)(Ext(u) ∪ Ext(v))` in `H^{p+q}(G, (M⊗_A N)~)`.
pub fn check_cup_diagram(alg: &GroupAlgebra, max_degree: usize) -> Result<Vec<DiagramRow>> {
    let mut rows = Vec::new();
    for m in MODULES {
        for nmod in MODULES {
            let t = m.tensor(nmod);
            let hm = FiniteComplexes::new(alg, m, true)?;
            let hn = FiniteComplexes::new(alg, nmod, true)?;
            let gt = FiniteComplexes::with_flavor(alg, t, true, Flavor::Group)?;
            let label = format!("M={},N={}", m.tag(), nmod.tag());
            for p in 0..=max_degree {
                let us = reps_cochains(&hm, &hm.cohomology_space(p)?, p);
                for q in 0..=max_degree - p {
                    let vs = reps_cochains(&hn, &hn.cohomology_space(q)?, q);
                    let space = gt.cohomology_space(p + q)?;
                    let result = (|| {
                        for (ui, u) in us.iter().enumerate() {
                            for (vi, v) in vs.iter().enumerate() {
                                let lhs = gt.cochain_vector(&xi_cochain(&crate::ops::cup(alg, u, v)?))?;
                                let rhs = gt.cochain_vector(&group_cup(alg, &xi_cochain(u), &xi_cochain(v)))?;
                                if let Some(mut w) = compare(&space, &lhs, &rhs)? {
                                    w["u"] = json!(ui);
                                    w["v"] = json!(vi);
                                    return Ok(Some(w));
                                }
                            }
                        }
                        // chain level on sampled basis cochains
                        let one = alg.ring().one();
                        for i in (0..hm.chain_dim(p)).step_by(5) {
                            let u = hm.vector_cochain(p, &vec![(i, one.clone())]);
                            for j in (0..hn.chain_dim(q)).step_by(7) {
                                let v = hn.vector_cochain(q, &vec![(j, one.clone())]);
                                let lhs = gt.cochain_vector(&xi_cochain(&crate::ops::cup(alg, &u, &v)?))?;
                                let rhs = gt.cochain_vector(&group_cup(alg, &xi_cochain(&u), &xi_cochain(&v)))?;
                                if lhs != rhs {
                                    return Ok(Some(json!({"chain_level": true, "u": i, "v": j})));
                                }
                            }
                        }
                        Ok(None)
                    })();
                    rows.push(row("cup", alg, label.clone(), format!("p={p},q={q}"), result));
                }
            }
        }
    }
    Ok(rows)
}

/// For `z ∈ H_d(G, k)` and `u ∈ HH^p(k[G], N)`: `Tor(N, η)(z ∩ Ext(u)) = σ(z) ∩ u`.
pub fn check_section_cap(alg: &GroupAlgebra, max_degree: usize) -> Result<Vec<DiagramRow>> {
    let mut rows = Vec::new();
    let bar = FiniteComplexes::with_flavor(alg, Bimodule::Trivial, true, Flavor::Group)?;
    for nmod in MODULES {
        let hn = FiniteComplexes::new(alg, nmod, true)?;
        for d in 0..=max_degree {
            let zs = reps_chains(&bar, &bar.homology_space(d)?, d);
            for p in 0..=d {
                let us = reps_cochains(&hn, &hn.cohomology_space(p)?, p);
                let space = hn.homology_space(d - p)?;
                let result = (|| {
                    for (zi, z) in zs.iter().enumerate() {
                        for (ui, u) in us.iter().enumerate() {
                            let lower = group_cap(alg, z, &xi_cochain(u), CapTarget::Coefficient)?;
                            let lhs = hn.chain_vector(&xi(alg, &lower))?;
                            let rhs = hn.chain_vector(&cap(alg, &sigma(alg, z)?, u)?)?;
                            if let Some(mut w) = compare(&space, &lhs, &rhs)? {
                                w["z"] = json!(zi);
                                w["u"] = json!(ui);
                                return Ok(Some(w));
                            }
                        }
                    }
                    Ok(None)
                })();
                rows.push(row("section_cap", alg, format!("N={}", nmod.tag()), format!("d={d},p={p}"), result));
            }
        }
    }
    Ok(rows)
}

/// The four section properties of `σ`, on words and classes of length `≤ max_degree`.
pub fn check_section_properties(alg: &GroupAlgebra, max_degree: usize) -> Result<Vec<DiagramRow>> {
    let mut rows = Vec::new();
    let bar = FiniteComplexes::new(alg, Bimodule::Trivial, true)?;
    let group_bar = FiniteComplexes::with_flavor(alg, Bimodule::Trivial, true, Flavor::Group)?;
    let ha = FiniteComplexes::new(alg, Bimodule::Algebra, true)?;
    for n in 0..=max_degree {
        let words: Vec<Chain> = bar
            .chain_basis(n)
            .into_iter()
            .map(|w| Chain::word(alg.ring(), Bimodule::Trivial, w))
            .collect();
        let cyclic = (|| {
            for c in &words {
                let lhs = normalize(alg, &connes_b(alg, &sigma(alg, c)?)?);
                let rhs = sigma(alg, &cyclic_b_bar(alg, c)?)?;
                if lhs != rhs {
                    return Ok(Some(json!({"word": c.to_json()})));
                }
            }
            Ok(None)
        })();
        rows.push(row("section_i_cyclic", alg, "A".into(), format!("n={n}"), cyclic));

        let composite = (|| {
            for c in &words {
                if sigma(alg, c)? != xi(alg, &unit_coefficients(alg, c)) {
                    return Ok(Some(json!({"word": c.to_json()})));
                }
            }
            Ok(None)
        })();
        rows.push(row("section_ii_composite", alg, "A".into(), format!("n={n}"), composite));

        let classes = (|| {
            if bar.chain_matrix(n) != group_bar.chain_matrix(n) {
                return Ok(Some(json!({"reason": "C_*(A,k) differs from the reduced bar complex"})));
            }
            let hk = bar.homology_space(n)?;
            let expected = truncated_homology(alg, Bimodule::Trivial, n..=n)?;
            if hk.presentation != expected[0] {
                return Ok(Some(json!({"reason": "group homology presentation mismatch"})));
            }
            // σ is injective on classes, and its image lies in cycles
            let hspace = ha.homology_space(n)?;
            let mut coords = Vec::new();
            for z in reps_chains(&bar, &hk, n) {
                let image = ha.chain_vector(&sigma(alg, &z)?)?;
                coords.push(crate::linalg::sparse_from_entries(hspace.class_of(&image)?.into_iter().enumerate()));
            }
            if alg.ring().is_field() {
                let m = Matrix::from_columns(alg.ring(), hspace.rank(), coords);
                if rank(&m)? != hk.rank() {
                    return Ok(Some(json!({"reason": "σ is not injective on homology"})));
                }
            }
            Ok(None)
        })();
        rows.push(row("section_iii_classes", alg, "A".into(), format!("n={n}"), classes));

        let retraction = (|| {
            for c in &words {
                if augment_coefficients(alg, &sigma(alg, c)?) != *c {
                    return Ok(Some(json!({"word": c.to_json()})));
                }
            }
            Ok(None)
        })();
        rows.push(row("section_iv_retraction", alg, "A".into(), format!("n={n}"), retraction));
    }
    Ok(rows)
}

/// `ξ` induces `H_n(G, M̃) ≅ HH_n(k[G], M)`: dimensions agree and the image of a basis is a basis.
pub fn check_eckmann_shapiro(alg: &GroupAlgebra, module: Bimodule, max_degree: usize) -> Result<Vec<DiagramRow>> {
    let es = EckmannShapiro::new(alg, module)?;
    let independent = truncated_homology(alg, module, 0..=max_degree)?;
    let mut rows = Vec::new();
    for n in 0..=max_degree {
        let result = (|| {
            let g = es.group.homology_space(n)?;
            let h = es.hochschild.homology_space(n)?;
            let ind = &independent[n];
            if (g.presentation.free_rank, &g.presentation.torsion) != (ind.free_rank, &ind.torsion) {
                return Ok(Some(json!({
                    "group": g.presentation.to_json(),
                    "hochschild": ind.to_json(),
                })));
            }
            let t = es.chain_transport(n, Direction::GroupToHochschild)?;
            let mut coords = Vec::new();
            for rep in &g.presentation.representatives {
                let image = t.apply(rep);
                coords.push(crate::linalg::sparse_from_entries(h.class_of(&image)?.into_iter().enumerate()));
            }
            if alg.ring().is_field() {
                let m = Matrix::from_columns(alg.ring(), h.rank(), coords);
                if rank(&m)? != h.rank() {
                    return Ok(Some(json!({"reason": "transport is not onto homology"})));
                }
            }
            Ok(None)
        })();
        rows.push(row("eckmann_shapiro", alg, module.tag().into(), format!("n={n}"), result));
    }
    Ok(rows)
}

/// Every comparison check for one group algebra.
pub fn comparison_report(alg: &GroupAlgebra, max_degree: usize) -> Result<Vec<DiagramRow>> {
    if !alg.group().is_finite() {
        return Err(Error::InfiniteGroup);
    }
    let mut rows = check_cup_diagram(alg, max_degree)?;
    rows.extend(check_cap_diagram(alg, max_degree)?);
    rows.extend(check_section_cap(alg, max_degree)?);
    rows.extend(check_section_properties(alg, max_degree)?);
    for m in MODULES {
        rows.extend(check_eckmann_shapiro(alg, m, max_degree)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::scalar::Ring;

    fn assert_rows(rows: &[DiagramRow]) {
        for r in rows {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn z2_over_f2() {
        let a = GroupAlgebra::new(Group::cyclic(2), Ring::PrimeField(2));
        assert_rows(&comparison_report(&a, 2).unwrap());
    }

    #[test]
    fn z3_over_f3() {
        let a = GroupAlgebra::new(Group::cyclic(3), Ring::PrimeField(3));
        assert_rows(&comparison_report(&a, 2).unwrap());
    }

    #[test]
    fn s3_over_f3() {
        let a = GroupAlgebra::new(Group::symmetric3(), Ring::PrimeField(3));
        assert_rows(&comparison_report(&a, 2).unwrap());
    }
}
