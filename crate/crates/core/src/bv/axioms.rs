use serde_json::{json, Value};

use crate::bv::spec::{bilinear, linear, table_from_fn, GradedAlgebraSpec, Table};
use crate::error::{Error, Result};
use crate::linalg::{axpy, scale, sparse_from_entries, sparse_json, SparseVec};
use crate::report::CheckRecord;
use crate::scalar::Scalar;

const MAX_WITNESSES: usize = 5;

pub(crate) fn add(x: &SparseVec, y: &SparseVec) -> SparseVec {
    let one = x.first().or(y.first()).map(|(_, c)| c.ring().one());
    match one {
        Some(one) => axpy(x, &one, y),
        None => Vec::new(),
    }
}

pub(crate) fn sub(x: &SparseVec, y: &SparseVec) -> SparseVec {
    let one = x.first().or(y.first()).map(|(_, c)| c.ring().one());
    match one {
        Some(one) => axpy(x, &-one, y),
        None => Vec::new(),
    }
}

pub(crate) fn times(c: &Scalar, x: &SparseVec) -> SparseVec {
    scale(x, c)
}

/// Counts instances of one identity and keeps the first few violations.
pub(crate) struct Tally {
    name: String,
    labels: Vec<String>,
    instances: usize,
    skipped: usize,
    failures: usize,
    witnesses: Vec<Value>,
}

impl Tally {
    pub(crate) fn new(name: &str, spec: &GradedAlgebraSpec) -> Self {
        Tally {
            name: name.to_string(),
            labels: spec.labels.clone(),
            instances: 0,
            skipped: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    /// Compares two sides; an unknown side (outside a truncation window) skips the instance.
    pub(crate) fn compare(&mut self, idx: &[usize], lhs: Option<SparseVec>, rhs: Option<SparseVec>) {
        let (Some(l), Some(r)) = (lhs, rhs) else {
            self.skipped += 1;
            return;
        };
        self.instances += 1;
        let l = sparse_from_entries(l);
        let r = sparse_from_entries(r);
        if l != r {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                let names: Vec<&str> = idx.iter().map(|i| self.labels[*i].as_str()).collect();
                self.witnesses.push(json!({
                    "basis": idx,
                    "labels": names,
                    "lhs": sparse_json(&l),
                    "rhs": sparse_json(&r),
                }));
            }
        }
    }

    pub(crate) fn finish(self) -> CheckRecord {
        CheckRecord::new(
            self.name,
            self.failures == 0,
            json!({
                "instances": self.instances,
                "skipped": self.skipped,
                "violations": self.failures,
                "witnesses": self.witnesses,
            }),
        )
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
}

/// Unit law, associativity and (optionally) graded commutativity of the product.
pub fn check_algebra(spec: &GradedAlgebraSpec, commutative: bool) -> Vec<CheckRecord> {
    let n = spec.dim();
    let e = |i| spec.basis(i);
    let mut unit = Tally::new("unit", spec);
    for a in 0..n {
        unit.compare(&[a], spec.mul(&spec.unit, &e(a)), Some(e(a)));
        unit.compare(&[a], spec.mul(&e(a), &spec.unit), Some(e(a)));
    }
    let mut assoc = Tally::new("associativity", spec);
    for (a, b, c) in triples(n) {
        let lhs = spec.mul(&e(a), &e(b)).and_then(|ab| spec.mul(&ab, &e(c)));
        let rhs = spec.mul(&e(b), &e(c)).and_then(|bc| spec.mul(&e(a), &bc));
        assoc.compare(&[a, b, c], lhs, rhs);
    }
    let mut out = vec![unit.finish(), assoc.finish()];
    if commutative {
        let mut comm = Tally::new("graded_commutativity", spec);
        for (a, b) in pairs(n) {
            let s = spec.sign(spec.degree(a) * spec.degree(b));
            let rhs = spec.mul(&e(b), &e(a)).map(|v| times(&s, &v));
            comm.compare(&[a, b], spec.mul(&e(a), &e(b)), rhs);
        }
        out.push(comm.finish());
    }
    out
}

/// `{a,b} = -(-1)^{(|a|+1)(|b|+1)} {b,a}`.
pub fn check_antisymmetry(spec: &GradedAlgebraSpec, br: &Table) -> CheckRecord {
    let mut t = Tally::new("antisymmetry", spec);
    for (a, b) in pairs(spec.dim()) {
        let s = -spec.sign((spec.degree(a) + 1) * (spec.degree(b) + 1));
        let rhs = br[b][a].as_ref().map(|v| times(&s, v));
        t.compare(&[a, b], br[a][b].clone(), rhs);
    }
    t.finish()
}

/// Leibniz form of Jacobi: `{a,{b,c}} = {{a,b},c} + (-1)^{(|a|+1)(|b|+1)} {b,{a,c}}`.
pub fn check_jacobi(spec: &GradedAlgebraSpec, br: &Table) -> CheckRecord {
    let mut t = Tally::new("jacobi", spec);
    let e = |i| spec.basis(i);
    for (a, b, c) in triples(spec.dim()) {
        let lhs = br[b][c].as_ref().and_then(|bc| bilinear(br, &e(a), bc));
        let rhs = (|| {
            let first = bilinear(br, br[a][b].as_ref()?, &e(c))?;
            let second = bilinear(br, &e(b), br[a][c].as_ref()?)?;
            let s = spec.sign((spec.degree(a) + 1) * (spec.degree(b) + 1));
            Some(add(&first, &times(&s, &second)))
        })();
        t.compare(&[a, b, c], lhs, rhs);
    }
    t.finish()
}

/// `{a,bc} = {a,b}c + (-1)^{(|a|+1)|b|} b{a,c}`.
pub fn check_poisson(spec: &GradedAlgebraSpec, br: &Table) -> CheckRecord {
    let mut t = Tally::new("poisson", spec);
    let e = |i| spec.basis(i);
    for (a, b, c) in triples(spec.dim()) {
        let lhs = spec.mul(&e(b), &e(c)).and_then(|bc| bilinear(br, &e(a), &bc));
        let rhs = (|| {
            let first = spec.mul(br[a][b].as_ref()?, &e(c))?;
            let second = spec.mul(&e(b), br[a][c].as_ref()?)?;
            let s = spec.sign((spec.degree(a) + 1) * spec.degree(b));
            Some(add(&first, &times(&s, &second)))
        })();
        t.compare(&[a, b, c], lhs, rhs);
    }
    t.finish()
}

/// Gerstenhaber axioms for the spec's own bracket table.
pub fn check_gerstenhaber(spec: &GradedAlgebraSpec) -> Result<Vec<CheckRecord>> {
    let br = spec.bracket.as_ref().ok_or(Error::MissingBracket)?;
    let mut out = check_algebra(spec, true);
    out.push(check_antisymmetry(spec, br));
    out.push(check_jacobi(spec, br));
    out.push(check_poisson(spec, br));
    Ok(out)
}

/// `Δ∘Δ = 0` on every basis element where both steps are known.
pub fn delta_squares_to_zero(spec: &GradedAlgebraSpec) -> Result<bool> {
    let d = spec.delta.as_ref().ok_or(Error::MissingDelta)?;
    Ok(d.iter().all(|v| match v {
        Some(v) => linear(d, v).map_or(true, |w| w.is_empty()),
        None => true,
    }))
}

fn require_bv_operator(spec: &GradedAlgebraSpec) -> Result<()> {
    if !delta_squares_to_zero(spec)? {
        return Err(Error::DeltaNotSquareZero);
    }
    Ok(())
}

/// `{a,b} = (-1)^{|a|}(Δ(ab) - (Δa)b - (-1)^{|a|} a(Δb))` on basis pairs.
pub fn bv_bracket_from_delta(spec: &GradedAlgebraSpec) -> Result<Table> {
    require_bv_operator(spec)?;
    let e = |i| spec.basis(i);
    Ok(table_from_fn(spec.dim(), |a, b| {
        let da = spec.degree(a);
        let ab = spec.mul(&e(a), &e(b))?;
        let t1 = spec.apply_delta(&ab)?;
        let t2 = spec.mul(&spec.apply_delta(&e(a))?, &e(b))?;
        let t3 = spec.mul(&e(a), &spec.apply_delta(&e(b))?)?;
        let inner = sub(&sub(&t1, &t2), &times(&spec.sign(da), &t3));
        Some(times(&spec.sign(da), &inner))
    }))
}

/// The seven-term identity saying `Δ` is a differential operator of order at most two.
pub fn check_second_order(spec: &GradedAlgebraSpec) -> Result<CheckRecord> {
    require_bv_operator(spec)?;
    let mut t = Tally::new("second_order", spec);
    let e = |i| spec.basis(i);
    let m = |x: &SparseVec, y: &SparseVec| spec.mul(x, y);
    let d = |x: &SparseVec| spec.apply_delta(x);
    for (a, b, c) in triples(spec.dim()) {
        let (da, db) = (spec.degree(a), spec.degree(b));
        let lhs = m(&e(a), &e(b)).and_then(|ab| m(&ab, &e(c))).and_then(|abc| d(&abc));
        let rhs = (|| {
            let ab = m(&e(a), &e(b))?;
            let bc = m(&e(b), &e(c))?;
            let ac = m(&e(a), &e(c))?;
            let terms = [
                (spec.sign(0), m(&d(&ab)?, &e(c))?),
                (spec.sign(da), m(&e(a), &d(&bc)?)?),
                (spec.sign((da - 1) * db), m(&e(b), &d(&ac)?)?),
                (-spec.sign(0), m(&m(&d(&e(a))?, &e(b))?, &e(c))?),
                (-spec.sign(da), m(&m(&e(a), &d(&e(b))?)?, &e(c))?),
                (-spec.sign(da + db), m(&ab, &d(&e(c))?)?),
            ];
            Some(terms.iter().fold(Vec::new(), |acc, (s, v)| add(&acc, &times(s, v))))
        })();
        t.compare(&[a, b, c], lhs, rhs);
    }
    Ok(t.finish())
}

/// `[[l_a, Δ], l_b](c)` by composing the operators.
pub fn derived_operator(spec: &GradedAlgebraSpec, a: usize, b: usize, c: &SparseVec) -> Option<SparseVec> {
    let ea = spec.basis(a);
    let eb = spec.basis(b);
    let da = spec.degree(a);
    let db = spec.degree(b);
    let inner = |v: &SparseVec| -> Option<SparseVec> {
        let x = spec.mul(&ea, &spec.apply_delta(v)?)?;
        let y = spec.apply_delta(&spec.mul(&ea, v)?)?;
        Some(sub(&x, &times(&spec.sign(da), &y)))
    };
    let first = inner(&spec.mul(&eb, c)?)?;
    let second = spec.mul(&eb, &inner(c)?)?;
    Some(sub(&first, &times(&spec.sign((da + 1) * db), &second)))
}

/// The four-term expansion of `-(-1)^{|a|}[[l_a,Δ],l_b](c)`.
pub fn derived_operator_expansion(spec: &GradedAlgebraSpec, a: usize, b: usize, c: usize) -> Option<SparseVec> {
    let e = |i| spec.basis(i);
    let (da, db) = (spec.degree(a), spec.degree(b));
    let m = |x: &SparseVec, y: &SparseVec| spec.mul(x, y);
    let d = |x: &SparseVec| spec.apply_delta(x);
    let bc = m(&e(b), &e(c))?;
    let ac = m(&e(a), &e(c))?;
    let abc = m(&m(&e(a), &e(b))?, &e(c))?;
    let terms = [
        (-spec.sign(da), m(&e(a), &d(&bc)?)?),
        (spec.sign(0), d(&abc)?),
        (spec.sign(da + db), m(&m(&e(a), &e(b))?, &d(&e(c))?)?),
        (-spec.sign(db * (da + 1)), m(&e(b), &d(&ac)?)?),
    ];
    Some(terms.iter().fold(Vec::new(), |acc, (s, v)| add(&acc, &times(s, v))))
}

/// `Δ(1) = 0` and `l_{{a,b}} = -[[l_a,Δ],l_b]`, with the spec's bracket or else the one induced by `Δ`.
pub fn check_derived_bracket_characterization(spec: &GradedAlgebraSpec) -> Result<Vec<CheckRecord>> {
    require_bv_operator(spec)?;
    let br = match &spec.bracket {
        Some(b) => b.clone(),
        None => bv_bracket_from_delta(spec)?,
    };
    let mut unit = Tally::new("delta_of_unit", spec);
    let u: Vec<usize> = spec.unit.iter().map(|(i, _)| *i).collect();
    unit.compare(&u, spec.apply_delta(&spec.unit), Some(Vec::new()));
    let mut t = Tally::new("derived_bracket", spec);
    let minus = -spec.ring.one();
    for (a, b, c) in triples(spec.dim()) {
        let lhs = br[a][b].as_ref().and_then(|ab| spec.mul(ab, &spec.basis(c)));
        let rhs = derived_operator(spec, a, b, &spec.basis(c)).map(|v| times(&minus, &v));
        t.compare(&[a, b, c], lhs, rhs);
    }
    Ok(vec![unit.finish(), t.finish()])
}

/// Outcome of the three equivalent characterizations on one spec.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub second_order: bool,
    pub gerstenhaber: bool,
    pub derived: bool,
    pub records: Vec<CheckRecord>,
}

impl Equivalence {
    pub fn agree(&self) -> bool {
        self.second_order == self.gerstenhaber && self.gerstenhaber == self.derived
    }

    pub fn to_json(&self) -> Value {
        json!({
            "second_order": self.second_order,
            "gerstenhaber": self.gerstenhaber,
            "derived_bracket": self.derived,
            "agree": self.agree(),
            "checks": self.records,
        })
    }
}

fn error_record(name: &str, e: &Error) -> CheckRecord {
    CheckRecord::new(name, false, json!({"error": e.to_string()}))
}

/// Runs the second-order test, the Gerstenhaber axioms for the induced bracket, and the
/// derived-bracket characterization; errors count as failures.
pub fn check_bv_equivalences(spec: &GradedAlgebraSpec) -> Equivalence {
    let mut records = Vec::new();
    let second_order = match check_second_order(spec) {
        Ok(r) => {
            let ok = r.passed;
            records.push(r);
            ok
        }
        Err(e) => {
            records.push(error_record("second_order", &e));
            false
        }
    };
    let gerstenhaber = match bv_bracket_from_delta(spec).and_then(|br| check_gerstenhaber(&spec.with_bracket(br))) {
        Ok(rs) => {
            let ok = rs.iter().all(|r| r.passed);
            records.extend(rs.into_iter().map(|mut r| {
                r.check = format!("induced_bracket.{}", r.check);
                r
            }));
            ok
        }
        Err(e) => {
            records.push(error_record("induced_bracket", &e));
            false
        }
    };
    let induced = GradedAlgebraSpec {
        bracket: None,
        ..spec.clone()
    };
    let derived = match check_derived_bracket_characterization(&induced) {
        Ok(rs) => {
            let ok = rs.iter().all(|r| r.passed);
            records.extend(rs);
            ok
        }
        Err(e) => {
            records.push(error_record("derived_bracket", &e));
            false
        }
    };
    Equivalence {
        second_order,
        gerstenhaber,
        derived,
        records,
    }
}
