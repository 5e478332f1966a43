//! Small free bimodule resolutions of `k[G]` and comparison maps with the bar resolution.

pub mod compare;
pub mod koszul;
pub mod periodic;
pub mod small;

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{GroupAlgebra, GroupAlgebraElement};
use crate::error::Result;
use crate::group::GroupElement;
use crate::scalar::{Ring, Scalar};

pub use compare::Comparison;
pub use koszul::{KoszulResolution, Variant};
pub use periodic::PeriodicResolution;
pub use small::{hochschild_via_resolution, LaurentMatrix, SmallComplex, SmallModule};

/// A term `x·e·y` of a free `A^e`-module: generator index and the two outer group elements.
pub type ResTerm = (usize, GroupElement, GroupElement);

/// Element of the free bimodule `P_k`, as a combination of `x·gen·y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResElem {
    ring: Ring,
    degree: usize,
    terms: BTreeMap<ResTerm, Scalar>,
}

impl ResElem {
    pub fn zero(ring: Ring, degree: usize) -> Self {
        ResElem {
            ring,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(ring: Ring, degree: usize, t: ResTerm, c: Scalar) -> Self {
        let mut e = ResElem::zero(ring, degree);
        e.add_term(t, c);
        e
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ResTerm, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, t: ResTerm, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ResElem, c: &Scalar) {
        for (t, x) in &other.terms {
            self.add_term(t.clone(), c * x);
        }
    }

    pub fn add(&self, other: &ResElem) -> ResElem {
        let mut out = self.clone();
        out.add_scaled(other, &self.ring.one());
        out
    }

    pub fn sub(&self, other: &ResElem) -> ResElem {
        let mut out = self.clone();
        out.add_scaled(other, &-self.ring.one());
        out
    }

    pub fn scale(&self, c: &Scalar) -> ResElem {
        let mut out = ResElem::zero(self.ring, self.degree);
        out.add_scaled(self, c);
        out
    }

    /// `x·self·y` for group elements.
    pub fn act(&self, alg: &GroupAlgebra, x: &GroupElement, y: &GroupElement) -> ResElem {
        let g = alg.group();
        let mut out = ResElem::zero(self.ring, self.degree);
        for ((i, a, b), c) in &self.terms {
            out.add_term((*i, g.mul(x, a), g.mul(b, y)), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((i, x, y), c)| json!({"gen": i, "left": x.as_slice(), "right": y.as_slice(), "coeff": c}))
            .collect();
        json!({"degree": self.degree, "terms": terms})
    }
}

/// A free resolution `… → P_1 → P_0 → A` of `A = k[G]` by bimodules, with a `k`-linear
/// contracting homotopy.
pub trait Resolution: Send + Sync {
    fn algebra(&self) -> &GroupAlgebra;

    /// Highest degree that is available (the length, or the truncation).
    fn top_degree(&self) -> usize;

    fn rank(&self, k: usize) -> usize;

    fn generator_label(&self, k: usize, i: usize) -> String;

    /// `d(gen_i)` in `P_{k-1}`, for `k ≥ 1`.
    fn differential_generator(&self, k: usize, i: usize) -> ResElem;

    /// `s(a) ∈ P_0`, a `k`-linear section of the augmentation.
    fn section(&self, a: &GroupElement) -> ResElem;

    /// Contracting homotopy on one term of `P_k`, landing in `P_{k+1}`.
    fn homotopy_term(&self, k: usize, t: &ResTerm) -> Result<ResElem>;

    fn ring(&self) -> Ring {
        self.algebra().ring()
    }

    /// `A^e`-linear extension of the differential.
    fn differential(&self, e: &ResElem) -> ResElem {
        let k = e.degree();
        let alg = self.algebra();
        let mut out = ResElem::zero(e.ring(), k.saturating_sub(1));
        if k == 0 {
            return out;
        }
        for ((i, x, y), c) in e.terms() {
            out.add_scaled(&self.differential_generator(k, *i).act(alg, x, y), c);
        }
        out
    }

    /// `ε(x·e₀·y) = xy`.
    fn augmentation(&self, e: &ResElem) -> GroupAlgebraElement {
        let alg = self.algebra();
        let mut out = alg.zero();
        if e.degree() == 0 {
            for ((_, x, y), c) in e.terms() {
                out.add_term(alg.group().mul(x, y), c.clone());
            }
        }
        out
    }

    fn homotopy(&self, e: &ResElem) -> Result<ResElem> {
        let mut out = ResElem::zero(e.ring(), e.degree() + 1);
        for (t, c) in e.terms() {
            out.add_scaled(&self.homotopy_term(e.degree(), t)?, c);
        }
        Ok(out)
    }

    /// Ranks and differentials in canonical form.
    fn to_json(&self) -> Value {
        let ranks: Vec<usize> = (0..=self.top_degree()).map(|k| self.rank(k)).collect();
        let mut diffs = Vec::new();
        for k in 1..=self.top_degree() {
            let cols: Vec<Value> = (0..self.rank(k))
                .map(|i| {
                    json!({
                        "generator": self.generator_label(k, i),
                        "boundary": self.differential_generator(k, i).to_json(),
                    })
                })
                .collect();
            diffs.push(json!({"degree": k, "columns": cols}));
        }
        json!({
            "group": self.algebra().group().name(),
            "ring": self.ring().tag(),
            "ranks": ranks,
            "differentials": diffs,
        })
    }
}

/// `d∘d = 0` on all generators.
pub fn check_square_zero<R: Resolution + ?Sized>(r: &R) -> bool {
    (2..=r.top_degree()).all(|k| {
        (0..r.rank(k)).all(|i| r.differential(&r.differential_generator(k, i)).is_zero())
    }) && (0..r.rank(1)).all(|i| r.augmentation(&r.differential_generator(1, i)).is_zero())
}

/// `d h + h d = id` (with `s ε` in degree 0) on the given terms of `P_k`, `k < top`.
pub fn check_homotopy_on<R: Resolution + ?Sized>(r: &R, k: usize, terms: &[ResTerm]) -> Result<bool> {
    let ring = r.ring();
    for t in terms {
        let e = ResElem::term(ring, k, t.clone(), ring.one());
        let dh = r.differential(&r.homotopy(&e)?);
        let other = if k == 0 {
            let mut s = ResElem::zero(ring, 0);
            for (g, c) in r.augmentation(&e).terms() {
                s.add_scaled(&r.section(g), c);
            }
            s
        } else {
            r.homotopy(&r.differential(&e))?
        };
        if dh.add(&other) != e {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Section then homotopy on a group element: `d h_{-1}`-style check `ε s = id`.
pub fn check_section<R: Resolution + ?Sized>(r: &R, elements: &[GroupElement]) -> bool {
    let alg = r.algebra();
    elements
        .iter()
        .all(|g| r.augmentation(&r.section(g)) == alg.basis(g.clone()))
}
