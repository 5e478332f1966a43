//! Finite groups given by multiplication tables, and free abelian groups ℤᵈ.

use std::fmt;

use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{Error, ParseError, Result};

/// An element: a table index for finite groups, an exponent vector for ℤᵈ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub SmallVec<[i64; 2]>);

impl GroupElement {
    pub fn index(i: usize) -> Self {
        GroupElement(SmallVec::from_slice(&[i as i64]))
    }

    pub fn exponents(e: &[i64]) -> Self {
        GroupElement(SmallVec::from_slice(e))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "(")?;
            for (i, x) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    Finite(FiniteGroup),
    FreeAbelian { rank: usize },
}

impl Group {
    /// Validates the group axioms on a multiplication table.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> std::result::Result<Group, ParseError> {
        let bad = |msg: String| ParseError::InvalidGroup(msg);
        let n = table.len();
        if n == 0 {
            return Err(bad("empty table".into()));
        }
        for row in &table {
            if row.len() != n {
                return Err(bad("table is not square".into()));
            }
            if row.iter().any(|&x| x >= n) {
                return Err(bad("table entry out of range".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| bad("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| bad(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad(format!("associativity fails on ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(Group::Finite(FiniteGroup {
            name: name.to_string(),
            table,
            inverse,
            identity,
        }))
    }

    pub fn cyclic(n: usize) -> Group {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Group::from_table(&format!("Z/{n}"), table).expect("cyclic table is a group")
    }

    pub fn trivial() -> Group {
        Group::cyclic(1)
    }

    /// S₃ with elements listed as permutations of {0,1,2} in lexicographic order.
    pub fn symmetric3() -> Group {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        Group::from_table("S3", table).expect("S3 table is a group")
    }

    pub fn free_abelian(rank: usize) -> Group {
        Group::FreeAbelian { rank }
    }

    pub fn from_json(value: &Value) -> std::result::Result<Group, ParseError> {
        let bad = |msg: &str| ParseError::InvalidGroup(msg.to_string());
        let kind = value
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing \"kind\""))?;
        match kind {
            "finite" => {
                let name = value.get("name").and_then(Value::as_str).unwrap_or("G");
                let rows = value
                    .get("table")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("missing \"table\""))?;
                let mut table = Vec::with_capacity(rows.len());
                for row in rows {
                    let row = row.as_array().ok_or_else(|| bad("table rows must be arrays"))?;
                    let mut out = Vec::with_capacity(row.len());
                    for x in row {
                        let v = x.as_u64().ok_or_else(|| bad("table entries must be indices"))?;
                        out.push(v as usize);
                    }
                    table.push(out);
                }
                let g = Group::from_table(name, table)?;
                if let Some(order) = value.get("order") {
                    if order.as_u64() != Some(g.order().expect("finite") as u64) {
                        return Err(bad("\"order\" disagrees with the table"));
                    }
                }
                if let (Some(id), Group::Finite(f)) = (value.get("identity"), &g) {
                    if id.as_u64() != Some(f.identity as u64) {
                        return Err(bad("\"identity\" is not the neutral element"));
                    }
                }
                if let (Some(inv), Group::Finite(f)) = (value.get("inverse"), &g) {
                    let given: Option<Vec<usize>> = inv
                        .as_array()
                        .map(|a| a.iter().filter_map(|x| x.as_u64().map(|v| v as usize)).collect());
                    if given.as_ref() != Some(&f.inverse) {
                        return Err(bad("\"inverse\" table is wrong"));
                    }
                }
                Ok(g)
            }
            "free_abelian" => {
                let rank = value
                    .get("rank")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("missing \"rank\""))?;
                if rank == 0 {
                    return Err(bad("rank must be at least 1"));
                }
                Ok(Group::FreeAbelian {
                    rank: rank as usize,
                })
            }
            other => Err(bad(&format!("unknown kind `{other}`"))),
        }
    }

    /// Canonical serialization.
    pub fn to_json(&self) -> Value {
        match self {
            Group::Finite(f) => json!({
                "kind": "finite",
                "name": f.name,
                "order": f.table.len(),
                "identity": f.identity,
                "table": f.table,
            }),
            Group::FreeAbelian { rank } => json!({"kind": "free_abelian", "rank": rank}),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Group::Finite(f) => f.name.clone(),
            Group::FreeAbelian { rank } => format!("Z^{rank}"),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Group::Finite(_))
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Group::Finite(f) => Some(f.table.len()),
            Group::FreeAbelian { .. } => None,
        }
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            Group::FreeAbelian { rank } => Some(*rank),
            Group::Finite(_) => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Group::Finite(f) => GroupElement::index(f.identity),
            Group::FreeAbelian { rank } => GroupElement(SmallVec::from_elem(0, *rank)),
        }
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        match self {
            Group::Finite(f) => g.0[0] as usize == f.identity,
            Group::FreeAbelian { .. } => g.0.iter().all(|&x| x == 0),
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match self {
            Group::Finite(f) => g.0.len() == 1 && g.0[0] >= 0 && (g.0[0] as usize) < f.table.len(),
            Group::FreeAbelian { rank } => g.0.len() == *rank,
        }
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        match self {
            Group::Finite(f) => GroupElement::index(f.table[g.0[0] as usize][h.0[0] as usize]),
            Group::FreeAbelian { .. } => {
                GroupElement(g.0.iter().zip(h.0.iter()).map(|(a, b)| a + b).collect())
            }
        }
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        match self {
            Group::Finite(f) => GroupElement::index(f.inverse[g.0[0] as usize]),
            Group::FreeAbelian { .. } => GroupElement(g.0.iter().map(|a| -a).collect()),
        }
    }

    /// Product of a sequence, left to right.
    pub fn product<'a>(&self, gs: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        gs.into_iter()
            .fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    /// `g·m·g⁻¹`.
    pub fn conjugate(&self, g: &GroupElement, m: &GroupElement) -> GroupElement {
        self.mul(&self.mul(g, m), &self.inverse(g))
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        match self {
            Group::Finite(f) => Ok((0..f.table.len()).map(GroupElement::index).collect()),
            Group::FreeAbelian { .. } => Err(Error::InfiniteGroup),
        }
    }

    /// Non-identity elements in canonical order.
    pub fn nontrivial_elements(&self) -> Result<Vec<GroupElement>> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|g| !self.is_identity(g))
            .collect())
    }

    /// The monomial `t_i^n` of ℤᵈ.
    pub fn generator_power(&self, i: usize, n: i64) -> Result<GroupElement> {
        match self {
            Group::FreeAbelian { rank } if i < *rank => {
                let mut e = SmallVec::from_elem(0, *rank);
                e[i] = n;
                Ok(GroupElement(e))
            }
            Group::FreeAbelian { rank } => Err(Error::UnsupportedRank(*rank)),
            Group::Finite(_) => Err(Error::NotFreeAbelian),
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            Group::Finite(f) => {
                let n = f.table.len();
                (0..n).all(|a| (0..n).all(|b| f.table[a][b] == f.table[b][a]))
            }
            Group::FreeAbelian { .. } => true,
        }
    }
}
