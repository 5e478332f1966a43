//! Derived brackets from square-zero derivations, the endomorphism algebra `End(E)`, and the
//! embedding `a ↦ l_a` of a BV algebra.

use serde_json::json;

use crate::bv::axioms::{add, bv_bracket_from_delta, check_algebra, check_antisymmetry, check_jacobi, check_poisson, sub, times, Tally};
use crate::bv::spec::{bilinear, linear, table_from_fn, GradedAlgebraSpec, Operator, Table};
use crate::error::{Error, Result};
use crate::linalg::{sparse_from_entries, Matrix, SparseVec};
use crate::report::CheckRecord;
use crate::scalar::Ring;

/// `d(ab) = (da)b + (-1)^{|a|} a(db)` on basis pairs.
pub fn check_derivation(spec: &GradedAlgebraSpec, d: &Operator) -> CheckRecord {
    let mut t = Tally::new("derivation", spec);
    let e = |i| spec.basis(i);
    for a in 0..spec.dim() {
        for b in 0..spec.dim() {
            let lhs = spec.mul(&e(a), &e(b)).and_then(|ab| linear(d, &ab));
            let rhs = (|| {
                let x = spec.mul(d[a].as_ref()?, &e(b))?;
                let y = spec.mul(&e(a), d[b].as_ref()?)?;
                Some(add(&x, &times(&spec.sign(spec.degree(a)), &y)))
            })();
            t.compare(&[a, b], lhs, rhs);
        }
    }
    t.finish()
}

fn validate(spec: &GradedAlgebraSpec, d: &Operator) -> Result<()> {
    for (i, v) in d.iter().enumerate() {
        let Some(v) = v else { continue };
        if v.iter().any(|(k, _)| spec.degree(*k) != spec.degree(i) + 1) {
            return Err(Error::NotADerivation);
        }
        if linear(d, v).is_some_and(|w| !w.is_empty()) {
            return Err(Error::NotSquareZero);
        }
    }
    if !check_derivation(spec, d).passed {
        return Err(Error::NotADerivation);
    }
    Ok(())
}

/// Graded commutator `xy - (-1)^{|x||y|} yx` of homogeneous elements.
pub fn commutator(spec: &GradedAlgebraSpec, x: &SparseVec, dx: i64, y: &SparseVec, dy: i64) -> Option<SparseVec> {
    let xy = spec.mul(x, y)?;
    let yx = spec.mul(y, x)?;
    Some(sub(&xy, &times(&spec.sign(dx * dy), &yx)))
}

/// `[a,b]_d = (-1)^{|a|+1} [da, b]`.
pub fn derived_bracket(spec: &GradedAlgebraSpec, d: &Operator) -> Result<Table> {
    validate(spec, d)?;
    Ok(table_from_fn(spec.dim(), |a, b| {
        let da = d[a].as_ref()?;
        let c = commutator(spec, da, spec.degree(a) + 1, &spec.basis(b), spec.degree(b))?;
        Some(times(&spec.sign(spec.degree(a) + 1), &c))
    }))
}

/// `[a,b]_d = a·d(b) - (-1)^{(|a|+1)(|b|+1)} b·d(a)`.
pub fn variant_lie_bracket(spec: &GradedAlgebraSpec, d: &Operator) -> Result<Table> {
    validate(spec, d)?;
    Ok(table_from_fn(spec.dim(), |a, b| {
        let x = spec.mul(&spec.basis(a), d[b].as_ref()?)?;
        let y = spec.mul(&spec.basis(b), d[a].as_ref()?)?;
        let s = spec.sign((spec.degree(a) + 1) * (spec.degree(b) + 1));
        Some(sub(&x, &times(&s, &y)))
    }))
}

/// `d = [τ, -]` for `τ` of degree 1.
pub fn interior_derivation(spec: &GradedAlgebraSpec, tau: &SparseVec) -> Operator {
    (0..spec.dim())
        .map(|a| commutator(spec, tau, 1, &spec.basis(a), spec.degree(a)))
        .collect()
}

/// Associativity, unit, Leibniz–Jacobi and Poisson for a possibly noncommutative algebra.
pub fn check_loday_gerstenhaber(spec: &GradedAlgebraSpec, br: &Table) -> Vec<CheckRecord> {
    let mut out = check_algebra(spec, false);
    out.push(check_jacobi(spec, br));
    out.push(check_poisson(spec, br));
    out
}

/// Lie axioms only: antisymmetry and Jacobi.
pub fn check_lie(spec: &GradedAlgebraSpec, br: &Table) -> Vec<CheckRecord> {
    vec![check_antisymmetry(spec, br), check_jacobi(spec, br)]
}

/// `d[a,b] = [da,b] + (-1)^{|a|+1} [a,db]`.
pub fn check_bracket_derivation(spec: &GradedAlgebraSpec, d: &Operator, br: &Table) -> CheckRecord {
    let mut t = Tally::new("d_derivation_of_bracket", spec);
    let e = |i| spec.basis(i);
    for a in 0..spec.dim() {
        for b in 0..spec.dim() {
            let lhs = br[a][b].as_ref().and_then(|v| linear(d, v));
            let rhs = (|| {
                let x = bilinear(br, d[a].as_ref()?, &e(b))?;
                let y = bilinear(br, &e(a), d[b].as_ref()?)?;
                Some(add(&x, &times(&spec.sign(spec.degree(a) + 1), &y)))
            })();
            t.compare(&[a, b], lhs, rhs);
        }
    }
    t.finish()
}

/// `End(E)` for a graded free module with the given degrees: basis `E_{ij}: e_j ↦ e_i` of degree
/// `|e_i| - |e_j|`, composition as product.
pub fn endomorphism_algebra(degrees: &[i64], ring: Ring) -> GradedAlgebraSpec {
    let n = degrees.len();
    let idx = |i: usize, j: usize| i * n + j;
    let mut labels = Vec::with_capacity(n * n);
    let mut degs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            labels.push(format!("E{i}_{j}"));
            degs.push(degrees[i] - degrees[j]);
        }
    }
    let product = table_from_fn(n * n, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        Some(if j == k { vec![(idx(i, l), ring.one())] } else { Vec::new() })
    });
    GradedAlgebraSpec {
        name: "End(E)".into(),
        ring,
        labels,
        degrees: degs,
        unit: (0..n).map(|i| (idx(i, i), ring.one())).collect(),
        product,
        delta: None,
        bracket: None,
    }
}

/// A matrix acting on `E` as an element of `End(E)`.
pub fn endomorphism_element(m: &Matrix) -> SparseVec {
    let n = m.cols();
    sparse_from_entries(m.triplets().map(|(r, c, v)| (r * n + c, v.clone())))
}

/// `End(E)` with the derived bracket `[a,b]_B = [[a,B],b]`.
pub struct EndomorphismGerstenhaber {
    pub spec: GradedAlgebraSpec,
    pub b: SparseVec,
    pub d: Operator,
    pub bracket: Table,
}

impl EndomorphismGerstenhaber {
    pub fn new(degrees: &[i64], b: &Matrix) -> Result<Self> {
        if !b.mul(b)?.is_zero() {
            return Err(Error::BNotSquareZero);
        }
        let spec = endomorphism_algebra(degrees, b.ring());
        let bv = endomorphism_element(b);
        if bv.iter().any(|(k, _)| spec.degree(*k) != 1) {
            return Err(Error::DimensionMismatch("B must have degree +1".into()));
        }
        let d = interior_derivation(&spec, &bv);
        let bracket = derived_bracket(&spec, &d)?;
        Ok(EndomorphismGerstenhaber { spec, b: bv, d, bracket })
    }

    pub fn bracket_of(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        bilinear(&self.bracket, x, y).expect("End(E) tables are closed")
    }

    /// `[[x,B],y]` computed from graded commutators, with `x` of degree `dx`.
    pub fn double_commutator(&self, x: &SparseVec, dx: i64, y: &SparseVec, dy: i64) -> SparseVec {
        let xb = commutator(&self.spec, x, dx, &self.b, 1).expect("closed");
        commutator(&self.spec, &xb, dx + 1, y, dy).expect("closed")
    }

    pub fn check(&self) -> Vec<CheckRecord> {
        let mut out = check_loday_gerstenhaber(&self.spec, &self.bracket);
        out.push(check_bracket_derivation(&self.spec, &self.d, &self.bracket));
        out
    }
}

/// Left multiplication `l_a` as an element of `End(A)`.
pub fn left_multiplication(spec: &GradedAlgebraSpec, a: &SparseVec) -> Option<SparseVec> {
    let n = spec.dim();
    let mut out = Vec::new();
    for j in 0..n {
        for (i, c) in spec.mul(a, &spec.basis(j))? {
            out.push((i * n + j, c));
        }
    }
    Some(sparse_from_entries(out))
}

/// `a ↦ l_a` into `End(A)` with `B = -Δ`: injective, multiplicative, and bracket-preserving.
pub fn check_left_multiplication_embedding(spec: &GradedAlgebraSpec) -> Result<Vec<CheckRecord>> {
    if !spec.is_closed() {
        return Err(Error::UnsupportedBackend("embedding needs a closed spec".into()));
    }
    let delta = spec.delta.as_ref().ok_or(Error::MissingDelta)?;
    let n = spec.dim();
    let br = bv_bracket_from_delta(spec)?;
    let minus_delta = Matrix::from_columns(
        spec.ring,
        n,
        delta.iter().map(|v| times(&-spec.ring.one(), v.as_ref().expect("closed"))).collect(),
    );
    let end = EndomorphismGerstenhaber::new(&spec.degrees, &minus_delta)?;
    let l = |x: &SparseVec| left_multiplication(spec, x).expect("closed");
    let e = |i| spec.basis(i);

    let mut inj = Tally::new("embedding_injective", spec);
    for a in 0..n {
        // l_a(1) recovers a
        let la = l(&e(a));
        let back: SparseVec = sparse_from_entries(
            la.iter()
                .flat_map(|(k, c)| {
                    let (i, j) = (k / n, k % n);
                    spec.unit.iter().filter(move |(u, _)| *u == j).map(move |(_, s)| (i, c * s))
                })
                .collect::<Vec<_>>(),
        );
        inj.compare(&[a], Some(back), Some(e(a)));
    }
    let mut mult = Tally::new("embedding_multiplicative", spec);
    let mut brk = Tally::new("embedding_bracket", spec);
    for a in 0..n {
        for b in 0..n {
            let lab = spec.mul(&e(a), &e(b)).map(|ab| l(&ab));
            mult.compare(&[a, b], lab, end.spec.mul(&l(&e(a)), &l(&e(b))));
            let lhs = br[a][b].as_ref().map(l);
            let rhs = end.bracket_of(&l(&e(a)), &l(&e(b)));
            brk.compare(&[a, b], lhs, Some(rhs));
        }
    }
    Ok(vec![inj.finish(), mult.finish(), brk.finish()])
}

/// A graded algebra with a square-zero derivation on which the variant bracket is a Lie bracket
/// but fails the Poisson relation.
#[derive(Clone, Debug)]
pub struct PoissonCounterexample {
    pub spec: GradedAlgebraSpec,
    pub d: Operator,
    pub records: Vec<CheckRecord>,
}

impl PoissonCounterexample {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.spec.to_json();
        let d: Vec<serde_json::Value> = self
            .d
            .iter()
            .enumerate()
            .flat_map(|(i, x)| x.iter().flatten().map(move |(k, c)| json!([i, k, c])).collect::<Vec<_>>())
            .collect();
        v["derivation"] = json!(d);
        v
    }
}

fn subsets(items: &[usize]) -> Vec<SparseVec> {
    (0..1u32 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &i)| (i, Ring::PrimeField(2).one()))
                .collect()
        })
        .collect()
}

/// Exhaustive search over unital graded algebras of dimension ≤ 3 over F_2 (degrees in
/// {-1, 0, 1}) with a square-zero degree-one derivation, in a fixed order; returns the first
/// algebra where the variant bracket violates Poisson.
pub fn find_poisson_counterexample() -> Option<PoissonCounterexample> {
    let ring = Ring::PrimeField(2);
    for dim in 1..=3usize {
        let others = dim - 1;
        let mut degree_choices: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..others {
            degree_choices = degree_choices
                .into_iter()
                .flat_map(|v| {
                    [-1i64, 0, 1].into_iter().map(move |d| {
                        let mut w = v.clone();
                        w.push(d);
                        w
                    })
                })
                .collect();
        }
        for tail in degree_choices {
            let mut degrees = vec![0i64];
            degrees.extend(tail);
            let of_degree = |d: i64| -> Vec<usize> { (0..dim).filter(|&k| degrees[k] == d).collect() };
            // products among non-unit basis elements
            let slots: Vec<(usize, usize)> = (1..dim).flat_map(|i| (1..dim).map(move |j| (i, j))).collect();
            let slot_options: Vec<Vec<SparseVec>> = slots
                .iter()
                .map(|&(i, j)| subsets(&of_degree(degrees[i] + degrees[j])))
                .collect();
            let d_options: Vec<Vec<SparseVec>> = (1..dim).map(|i| subsets(&of_degree(degrees[i] + 1))).collect();
            for prod_choice in product_of(&slot_options) {
                let mut product = table_from_fn(dim, |i, j| {
                    if i == 0 {
                        Some(vec![(j, ring.one())])
                    } else if j == 0 {
                        Some(vec![(i, ring.one())])
                    } else {
                        None
                    }
                });
                for (s, &(i, j)) in slots.iter().enumerate() {
                    product[i][j] = Some(prod_choice[s].clone());
                }
                let spec = GradedAlgebraSpec {
                    name: format!("f2_search_dim{dim}"),
                    ring,
                    labels: (0..dim).map(|i| if i == 0 { "1".into() } else { format!("e{i}") }).collect(),
                    degrees: degrees.clone(),
                    unit: vec![(0, ring.one())],
                    product,
                    delta: None,
                    bracket: None,
                };
                if !check_algebra(&spec, false).iter().all(|r| r.passed) {
                    continue;
                }
                for d_choice in product_of(&d_options) {
                    let mut d: Operator = vec![Some(Vec::new())];
                    d.extend(d_choice.into_iter().map(Some));
                    let Ok(br) = variant_lie_bracket(&spec, &d) else { continue };
                    let poisson = check_poisson(&spec, &br);
                    if !poisson.passed {
                        let mut records = check_lie(&spec, &br);
                        records.push(check_bracket_derivation(&spec, &d, &br));
                        records.push(poisson);
                        return Some(PoissonCounterexample { spec, d, records });
                    }
                }
            }
        }
    }
    None
}

fn product_of(options: &[Vec<SparseVec>]) -> Vec<Vec<SparseVec>> {
    let mut out: Vec<Vec<SparseVec>> = vec![vec![]];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|v| {
                opts.iter().map(move |o| {
                    let mut w = v.clone();
                    w.push(o.clone());
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bv::corpus;

    #[test]
    fn zero_derivation_gives_zero_brackets() {
        let spec = corpus::exterior_times_truncated(Ring::Rationals, 3, &[]);
        let d: Operator = vec![Some(Vec::new()); spec.dim()];
        for br in [derived_bracket(&spec, &d).unwrap(), variant_lie_bracket(&spec, &d).unwrap()] {
            assert!(br.iter().flatten().all(|v| v.as_ref().unwrap().is_empty()));
        }
    }

    #[test]
    fn typed_errors_for_bad_derivations() {
        let spec = corpus::exterior_times_truncated(Ring::Rationals, 3, &[]);
        // θy ↦ 1 is not a derivation: d(θ·y) should be d(θ)y = 0
        let mut d: Operator = vec![Some(Vec::new()); spec.dim()];
        let theta_y = spec.labels.iter().position(|l| l == "θy").unwrap();
        d[theta_y] = Some(spec.basis(0));
        assert_eq!(derived_bracket(&spec, &d).err(), Some(Error::NotADerivation));
        let b = Matrix::from_i64_rows(Ring::Rationals, &[&[0, 0], &[1, 0]]);
        assert!(EndomorphismGerstenhaber::new(&[0, 1], &b).is_ok());
        let b2 = Matrix::from_i64_rows(Ring::Rationals, &[&[1, 0], &[0, 0]]);
        let sq = Matrix::from_i64_rows(Ring::Rationals, &[&[0, 1], &[1, 0]]);
        assert!(b2.mul(&b2).unwrap() != Matrix::zeros(Ring::Rationals, 2, 2));
        assert_eq!(EndomorphismGerstenhaber::new(&[0, 1], &sq).err(), Some(Error::BNotSquareZero));
    }

    #[test]
    fn interior_bracket_is_double_commutator() {
        let degrees = [0, 1, 1, 2];
        let b = Matrix::from_i64_rows(Ring::Rationals, &[&[0, 0, 0, 0], &[1, 0, 0, 0], &[2, 0, 0, 0], &[0, 2, -1, 0]]);
        let end = EndomorphismGerstenhaber::new(&degrees, &b).unwrap();
        let n = end.spec.dim();
        for x in 0..n {
            for y in 0..n {
                let ex = end.spec.basis(x);
                let ey = end.spec.basis(y);
                let lhs = end.bracket_of(&ex, &ey);
                let rhs = end.double_commutator(&ex, end.spec.degree(x), &ey, end.spec.degree(y));
                assert_eq!(lhs, rhs);
            }
        }
        assert!(end.check().iter().all(|r| r.passed), "{:?}", end.check());
    }

    #[test]
    fn zero_b_gives_zero_bracket() {
        let end = EndomorphismGerstenhaber::new(&[0, 1], &Matrix::zeros(Ring::PrimeField(3), 2, 2)).unwrap();
        assert!(end.bracket.iter().flatten().all(|v| v.as_ref().unwrap().is_empty()));
    }

    #[test]
    fn derived_bracket_axioms_on_corpus() {
        let spec = corpus::exterior_times_truncated(Ring::Rationals, 3, &[(0, 0, 1)]);
        let d = spec.delta.clone().unwrap();
        // Δ = ∂_θ is a derivation here
        let br = derived_bracket(&spec, &d).unwrap();
        assert!(check_loday_gerstenhaber(&spec, &br).iter().all(|r| r.passed));
        assert!(check_bracket_derivation(&spec, &d, &br).passed);
        let var = variant_lie_bracket(&spec, &d).unwrap();
        assert!(check_lie(&spec, &var).iter().all(|r| r.passed));
        assert!(check_bracket_derivation(&spec, &d, &var).passed);
    }

    #[test]
    fn counterexample_search_is_deterministic() {
        let a = find_poisson_counterexample().unwrap();
        let b = find_poisson_counterexample().unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let lie: Vec<&CheckRecord> = a.records.iter().filter(|r| r.check != "poisson").collect();
        assert!(lie.iter().all(|r| r.passed));
        assert!(!a.records.last().unwrap().passed);
    }

    #[test]
    fn embedding_respects_brackets() {
        for e in corpus::corpus().into_iter().filter(|e| e.expect_bv) {
            let rs = check_left_multiplication_embedding(&e.spec).unwrap();
            assert!(rs.iter().all(|r| r.passed), "{}: {rs:?}", e.spec.name);
        }
    }

    #[test]
    fn frozen_poisson_counterexample() {
        let found = find_poisson_counterexample().unwrap().to_json();
        let golden = json!({
            "basis": [{"degree": 0, "label": "1"}, {"degree": -1, "label": "e1"}],
            "derivation": [[1, 0, 1]],
            "name": "f2_search_dim2",
            "product": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]],
            "ring": "f2",
            "unit": [[0, 1]],
        });
        assert_eq!(found, golden);
    }
}
