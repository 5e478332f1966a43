use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::ParseError;
use crate::linalg::{axpy, sparse_from_entries, SparseVec};
use crate::scalar::{scalar_from_json, Ring, Scalar};

/// Bilinear table on basis pairs; `None` marks a value outside a truncation window.
pub type Table = Vec<Vec<Option<SparseVec>>>;

/// Linear operator on basis vectors; `None` marks an unknown image.
pub type Operator = Vec<Option<SparseVec>>;

/// A finite-dimensional graded algebra with lower degrees, an optional degree `+1` operator `Δ`
/// and an optional degree `+1` bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebraSpec {
    pub name: String,
    pub ring: Ring,
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
    pub unit: SparseVec,
    pub product: Table,
    pub delta: Option<Operator>,
    pub bracket: Option<Table>,
}

fn bad(msg: impl Into<String>) -> ParseError {
    ParseError::InvalidSpec(msg.into())
}

impl GradedAlgebraSpec {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    /// `(-1)^e` for a possibly negative exponent.
    pub fn sign(&self, e: i64) -> Scalar {
        self.ring.sign(e.rem_euclid(2) as usize)
    }

    pub fn basis(&self, i: usize) -> SparseVec {
        vec![(i, self.ring.one())]
    }

    /// Whether every table entry is known (no truncation).
    pub fn is_closed(&self) -> bool {
        let full = |t: &Table| t.iter().all(|r| r.iter().all(Option::is_some));
        full(&self.product)
            && self.delta.as_ref().map_or(true, |d| d.iter().all(Option::is_some))
            && self.bracket.as_ref().map_or(true, full)
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> Option<SparseVec> {
        bilinear(&self.product, x, y)
    }

    pub fn apply_delta(&self, x: &SparseVec) -> Option<SparseVec> {
        linear(self.delta.as_ref()?, x)
    }

    pub fn with_bracket(&self, bracket: Table) -> Self {
        let mut s = self.clone();
        s.bracket = Some(bracket);
        s
    }

    pub fn with_delta(&self, delta: Operator) -> Self {
        let mut s = self.clone();
        s.delta = Some(delta);
        s
    }

    pub fn from_json(value: &Value) -> Result<Self, ParseError> {
        let obj = value.as_object().ok_or_else(|| bad("spec must be an object"))?;
        let name = obj.get("name").and_then(Value::as_str).unwrap_or("unnamed").to_string();
        let ring: Ring = obj
            .get("ring")
            .and_then(Value::as_str)
            .unwrap_or("q")
            .parse()?;
        let basis = obj
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing basis"))?;
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        for b in basis {
            let label = b.get("label").and_then(Value::as_str).ok_or_else(|| bad("basis label"))?;
            let deg = b.get("degree").and_then(Value::as_i64).ok_or_else(|| bad("basis degree"))?;
            labels.push(label.to_string());
            degrees.push(deg);
        }
        let n = degrees.len();
        if n == 0 {
            return Err(bad("empty basis"));
        }
        let index = |v: &Value| -> Result<usize, ParseError> {
            let i = v.as_u64().ok_or_else(|| bad(format!("bad index {v}")))? as usize;
            if i >= n {
                return Err(bad(format!("index {i} out of range")));
            }
            Ok(i)
        };
        let entries = |key: &str, arity: usize| -> Result<Vec<(Vec<usize>, Scalar)>, ParseError> {
            let mut out = Vec::new();
            if let Some(list) = obj.get(key) {
                for e in list.as_array().ok_or_else(|| bad(format!("{key} must be a list")))? {
                    let e = e.as_array().ok_or_else(|| bad(format!("{key} entry")))?;
                    if e.len() != arity + 1 {
                        return Err(bad(format!("{key} entry has {} fields", e.len())));
                    }
                    let idx = e[..arity].iter().map(index).collect::<Result<Vec<_>, _>>()?;
                    out.push((idx, scalar_from_json(ring, &e[arity])?));
                }
            }
            Ok(out)
        };
        let pairs = |key: &str| -> Result<BTreeSet<(usize, usize)>, ParseError> {
            let mut out = BTreeSet::new();
            if let Some(list) = obj.get(key) {
                for e in list.as_array().ok_or_else(|| bad(format!("{key} must be a list")))? {
                    let e = e.as_array().filter(|e| e.len() == 2).ok_or_else(|| bad(format!("{key} entry")))?;
                    out.insert((index(&e[0])?, index(&e[1])?));
                }
            }
            Ok(out)
        };

        let unit_value = obj.get("unit").ok_or_else(|| bad("missing unit"))?;
        let (unit, unit_index) = match unit_value {
            Value::Number(_) => {
                let u = index(unit_value)?;
                (vec![(u, ring.one())], Some(u))
            }
            Value::Array(items) => {
                let mut v = Vec::new();
                for it in items {
                    let it = it.as_array().filter(|x| x.len() == 2).ok_or_else(|| bad("unit entry"))?;
                    v.push((index(&it[0])?, scalar_from_json(ring, &it[1])?));
                }
                (sparse_from_entries(v), None)
            }
            _ => return Err(bad("unit must be an index or a sparse vector")),
        };
        if unit.iter().any(|(i, _)| degrees[*i] != 0) {
            return Err(bad("unit must have degree 0"));
        }

        let mut product = fill_table(n, &entries("product", 3)?, &pairs("unknown_product")?);
        if let Some(u) = unit_index {
            let given: BTreeSet<(usize, usize)> = entries("product", 3)?.iter().map(|(i, _)| (i[0], i[1])).collect();
            for j in 0..n {
                if !given.contains(&(u, j)) {
                    product[u][j] = Some(vec![(j, ring.one())]);
                }
                if !given.contains(&(j, u)) {
                    product[j][u] = Some(vec![(j, ring.one())]);
                }
            }
        }
        check_table_degrees(&degrees, &product, 0, "product")?;

        let delta = if obj.contains_key("delta") {
            let unknown: BTreeSet<usize> = match obj.get("unknown_delta") {
                Some(list) => list
                    .as_array()
                    .ok_or_else(|| bad("unknown_delta must be a list"))?
                    .iter()
                    .map(index)
                    .collect::<Result<_, _>>()?,
                None => BTreeSet::new(),
            };
            let mut op: Operator = vec![Some(Vec::new()); n];
            let mut raw: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            for (idx, c) in entries("delta", 2)? {
                raw[idx[0]].push((idx[1], c));
            }
            for i in 0..n {
                op[i] = if unknown.contains(&i) {
                    None
                } else {
                    Some(sparse_from_entries(raw[i].drain(..)))
                };
                if let Some(v) = &op[i] {
                    if v.iter().any(|(k, _)| degrees[*k] != degrees[i] + 1) {
                        return Err(bad(format!("delta of basis element {i} is not of degree +1")));
                    }
                }
            }
            Some(op)
        } else {
            None
        };

        let bracket = if obj.contains_key("bracket") {
            let t = fill_table(n, &entries("bracket", 3)?, &pairs("unknown_bracket")?);
            check_table_degrees(&degrees, &t, 1, "bracket")?;
            Some(t)
        } else {
            None
        };

        Ok(GradedAlgebraSpec {
            name,
            ring,
            labels,
            degrees,
            unit,
            product,
            delta,
            bracket,
        })
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .labels
            .iter()
            .zip(&self.degrees)
            .map(|(l, d)| json!({"label": l, "degree": d}))
            .collect();
        let unit: Vec<Value> = self.unit.iter().map(|(i, c)| json!([i, c])).collect();
        let mut out = json!({
            "name": self.name,
            "ring": self.ring.tag(),
            "basis": basis,
            "unit": unit,
        });
        let (p, pu) = table_json(&self.product);
        out["product"] = p;
        if !pu.is_empty() {
            out["unknown_product"] = json!(pu);
        }
        if let Some(d) = &self.delta {
            let mut entries = Vec::new();
            let mut unknown = Vec::new();
            for (i, v) in d.iter().enumerate() {
                match v {
                    Some(v) => entries.extend(v.iter().map(|(k, c)| json!([i, k, c]))),
                    None => unknown.push(i),
                }
            }
            out["delta"] = json!(entries);
            if !unknown.is_empty() {
                out["unknown_delta"] = json!(unknown);
            }
        }
        if let Some(b) = &self.bracket {
            let (t, tu) = table_json(b);
            out["bracket"] = t;
            if !tu.is_empty() {
                out["unknown_bracket"] = json!(tu);
            }
        }
        out
    }
}

fn fill_table(n: usize, entries: &[(Vec<usize>, Scalar)], unknown: &BTreeSet<(usize, usize)>) -> Table {
    let mut raw: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); n]; n];
    for (idx, c) in entries {
        raw[idx[0]][idx[1]].push((idx[2], c.clone()));
    }
    raw.into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, v)| (!unknown.contains(&(i, j))).then(|| sparse_from_entries(v)))
                .collect()
        })
        .collect()
}

fn check_table_degrees(degrees: &[i64], t: &Table, shift: i64, what: &str) -> Result<(), ParseError> {
    for (i, row) in t.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if let Some(v) = v {
                if v.iter().any(|(k, _)| degrees[*k] != degrees[i] + degrees[j] + shift) {
                    return Err(bad(format!("{what} of basis elements {i}, {j} has the wrong degree")));
                }
            }
        }
    }
    Ok(())
}

fn table_json(t: &Table) -> (Value, Vec<[usize; 2]>) {
    let mut entries = Vec::new();
    let mut unknown = Vec::new();
    for (i, row) in t.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            match v {
                Some(v) => entries.extend(v.iter().map(|(k, c)| json!([i, j, k, c]))),
                None => unknown.push([i, j]),
            }
        }
    }
    (json!(entries), unknown)
}

/// Bilinear extension of a table; `None` if an unknown entry is needed.
pub fn bilinear(t: &Table, x: &SparseVec, y: &SparseVec) -> Option<SparseVec> {
    let mut out = Vec::new();
    for (i, a) in x {
        for (j, b) in y {
            let v = t[*i][*j].as_ref()?;
            out = axpy(&out, &(a * b), v);
        }
    }
    Some(out)
}

pub fn linear(op: &Operator, x: &SparseVec) -> Option<SparseVec> {
    let mut out = Vec::new();
    for (i, a) in x {
        out = axpy(&out, a, op[*i].as_ref()?);
    }
    Some(out)
}

/// Table built from a bilinear function on basis indices.
pub fn table_from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Option<SparseVec>) -> Table {
    (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exterior() -> Value {
        json!({
            "name": "exterior1",
            "ring": "q",
            "basis": [{"label": "1", "degree": 0}, {"label": "x", "degree": -1}],
            "unit": 0,
            "delta": [[1, 0, 1]],
        })
    }

    #[test]
    fn parses_and_fills_unit() {
        let s = GradedAlgebraSpec::from_json(&exterior()).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.mul(&s.basis(1), &s.basis(0)), Some(s.basis(1)));
        assert_eq!(s.mul(&s.basis(1), &s.basis(1)), Some(vec![]));
        assert_eq!(s.apply_delta(&s.basis(1)), Some(s.basis(0)));
        assert!(s.is_closed());
        let back = GradedAlgebraSpec::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_bad_degrees() {
        let mut v = exterior();
        v["delta"] = json!([[0, 1, 1]]);
        assert!(GradedAlgebraSpec::from_json(&v).is_err());
        let mut v = exterior();
        v["product"] = json!([[1, 1, 0, 1]]);
        assert!(GradedAlgebraSpec::from_json(&v).is_err());
        let mut v = exterior();
        v["unit"] = json!(1);
        assert!(GradedAlgebraSpec::from_json(&v).is_err());
    }

    #[test]
    fn unknown_entries_propagate() {
        let mut v = exterior();
        v["unknown_product"] = json!([[1, 1]]);
        v["product"] = json!([]);
        let s = GradedAlgebraSpec::from_json(&v).unwrap();
        assert!(!s.is_closed());
        assert_eq!(s.mul(&s.basis(1), &s.basis(1)), None);
    }
}
