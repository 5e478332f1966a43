use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::linalg::{axpy, solve, Matrix, SparseVec};
use crate::resolution::{ResElem, ResTerm, Resolution};
use crate::scalar::Ring;

/// The period-two resolution of `k[ℤ/n]` over `k[ℤ/n]^e`, truncated at a fixed length.
///
/// One generator per degree; odd differentials are `s⊗1 - 1⊗s`, even ones `Σ_i s^i⊗s^{n-1-i}`.
/// The contracting homotopy is computed degree by degree from linear solves.
#[derive(Clone, Debug)]
pub struct PeriodicResolution {
    alg: GroupAlgebra,
    order: usize,
    length: usize,
    homotopies: Vec<Matrix>,
}

impl PeriodicResolution {
    /// Resolution good through `max_degree`; the truncation length is `max_degree + 2`.
    pub fn new(order: usize, ring: Ring, max_degree: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::UnsupportedRank(order));
        }
        let mut r = PeriodicResolution {
            alg: GroupAlgebra::new(Group::cyclic(order), ring),
            order,
            length: max_degree + 2,
            homotopies: Vec::new(),
        };
        r.build_homotopies()?;
        Ok(r)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn s(&self, i: usize) -> GroupElement {
        GroupElement::index(i % self.order)
    }

    fn basis_index(&self, x: &GroupElement, y: &GroupElement) -> usize {
        x.as_slice()[0] as usize * self.order + y.as_slice()[0] as usize
    }

    fn basis_term(&self, i: usize) -> ResTerm {
        (0, self.s(i / self.order), self.s(i % self.order))
    }

    fn to_vec(&self, e: &ResElem) -> SparseVec {
        crate::linalg::sparse_from_entries(
            e.terms().map(|((_, x, y), c)| (self.basis_index(x, y), c.clone())),
        )
    }

    fn from_vec(&self, k: usize, v: &SparseVec) -> ResElem {
        let mut e = ResElem::zero(self.alg.ring(), k);
        for (i, c) in v {
            e.add_term(self.basis_term(*i), c.clone());
        }
        e
    }

    /// `d_k` as a `k`-matrix on the basis `x·e·y`.
    pub fn differential_matrix(&self, k: usize) -> Matrix {
        let n2 = self.order * self.order;
        let cols = (0..n2)
            .map(|i| {
                let (g, x, y) = self.basis_term(i);
                self.to_vec(&self.differential_generator(k, g).act(&self.alg, &x, &y))
            })
            .collect();
        Matrix::from_columns(self.alg.ring(), n2, cols)
    }

    fn build_homotopies(&mut self) -> Result<()> {
        let ring = self.alg.ring();
        let n2 = self.order * self.order;
        for k in 0..self.length {
            let d_next = self.differential_matrix(k + 1);
            let mut cols = Vec::with_capacity(n2);
            for i in 0..n2 {
                let v: SparseVec = vec![(i, ring.one())];
                let correction = if k == 0 {
                    let e = self.from_vec(0, &v);
                    let mut s = ResElem::zero(ring, 0);
                    for (g, c) in self.augmentation(&e).terms() {
                        s.add_scaled(&self.section(g), c);
                    }
                    self.to_vec(&s)
                } else {
                    let dv = self.differential_matrix(k).apply(&v);
                    self.homotopies[k - 1].apply(&dv)
                };
                let target = axpy(&v, &-ring.one(), &correction);
                let h = solve(&d_next, &target)?
                    .ok_or_else(|| Error::LinearSolveFailed(format!("homotopy in degree {k}")))?;
                cols.push(h);
            }
            self.homotopies.push(Matrix::from_columns(ring, n2, cols));
        }
        Ok(())
    }
}

impl Resolution for PeriodicResolution {
    fn algebra(&self) -> &GroupAlgebra {
        &self.alg
    }

    fn top_degree(&self) -> usize {
        self.length
    }

    fn rank(&self, k: usize) -> usize {
        usize::from(k <= self.length)
    }

    fn generator_label(&self, k: usize, _i: usize) -> String {
        format!("e{k}")
    }

    fn differential_generator(&self, k: usize, _i: usize) -> ResElem {
        let ring = self.alg.ring();
        let mut out = ResElem::zero(ring, k - 1);
        if k % 2 == 1 {
            out.add_term((0, self.s(1), self.s(0)), ring.one());
            out.add_term((0, self.s(0), self.s(1)), -ring.one());
        } else {
            for i in 0..self.order {
                out.add_term((0, self.s(i), self.s(self.order - 1 - i)), ring.one());
            }
        }
        out
    }

    fn section(&self, a: &GroupElement) -> ResElem {
        let ring = self.alg.ring();
        ResElem::term(ring, 0, (0, a.clone(), self.s(0)), ring.one())
    }

    fn homotopy_term(&self, k: usize, t: &ResTerm) -> Result<ResElem> {
        let h = self.homotopies.get(k).ok_or(Error::BeyondTruncation(k + 1))?;
        let v = h.column(self.basis_index(&t.1, &t.2)).clone();
        Ok(self.from_vec(k + 1, &v))
    }
}
