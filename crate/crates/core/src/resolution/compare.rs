use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::algebra::{Bimodule, GroupAlgebra, GroupAlgebraElement};
use crate::error::Result;
use crate::group::GroupElement;
use crate::hochschild::chain::{BarWord, Chain};
use crate::hochschild::cochain::Cochain;
use crate::resolution::small::SmallVector;
use crate::resolution::{ResElem, Resolution};
use crate::scalar::{Ring, Scalar};

/// A bar word `g₀[w]g'` of the normalized bar resolution `B(A; A; A)`.
pub type BarTerm = (GroupElement, Vec<GroupElement>, GroupElement);

/// Element of the normalized bar resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarElem {
    pub ring: Ring,
    pub degree: usize,
    pub terms: BTreeMap<BarTerm, Scalar>,
}

impl BarElem {
    pub fn zero(ring: Ring, degree: usize) -> Self {
        BarElem {
            ring,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, t: BarTerm, c: Scalar) {
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

    pub fn add_scaled(&mut self, other: &BarElem, c: &Scalar) {
        for (t, x) in &other.terms {
            self.add_term(t.clone(), c * x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn act(&self, alg: &GroupAlgebra, x: &GroupElement, y: &GroupElement) -> BarElem {
        let g = alg.group();
        let mut out = BarElem::zero(self.ring, self.degree);
        for ((a, w, b), c) in &self.terms {
            out.add_term((g.mul(x, a), w.clone(), g.mul(b, y)), c.clone());
        }
        out
    }
}

/// Boundary of the normalized bar resolution.
pub fn bar_differential(alg: &GroupAlgebra, e: &BarElem) -> BarElem {
    let g = alg.group();
    let ring = e.ring;
    let n = e.degree;
    let mut out = BarElem::zero(ring, n.saturating_sub(1));
    if n == 0 {
        return out;
    }
    let mut push = |t: BarTerm, c: Scalar| {
        if !t.1.iter().any(|x| g.is_identity(x)) {
            out.add_term(t, c);
        }
    };
    for ((a0, w, b), c) in &e.terms {
        push((g.mul(a0, &w[0]), w[1..].to_vec(), b.clone()), c.clone());
        for i in 1..n {
            let mut v = w[..i - 1].to_vec();
            v.push(g.mul(&w[i - 1], &w[i]));
            v.extend_from_slice(&w[i + 1..]);
            push((a0.clone(), v, b.clone()), &ring.sign(i) * c);
        }
        push((a0.clone(), w[..n - 1].to_vec(), g.mul(&w[n - 1], b)), &ring.sign(n) * c);
    }
    out
}

/// Comparison maps `φ : P → Bar` and `ψ : Bar → P` for a resolution `P`, with memo tables.
pub struct Comparison<R: Resolution> {
    res: Arc<R>,
    psi_memo: Mutex<HashMap<Vec<GroupElement>, ResElem>>,
    phi_memo: Mutex<HashMap<(usize, usize), BarElem>>,
}

impl<R: Resolution> Comparison<R> {
    pub fn new(res: R) -> Self {
        Comparison {
            res: Arc::new(res),
            psi_memo: Mutex::new(HashMap::new()),
            phi_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn resolution(&self) -> &R {
        &self.res
    }

    pub fn algebra(&self) -> &GroupAlgebra {
        self.res.algebra()
    }

    fn ring(&self) -> Ring {
        self.res.ring()
    }

    /// `ψ(1[w]1)`, recursively `h(ψ(d(1[w]1)))`.
    pub fn psi_word(&self, w: &[GroupElement]) -> Result<ResElem> {
        if let Some(v) = self.psi_memo.lock().expect("memo").get(w) {
            return Ok(v.clone());
        }
        let alg = self.algebra();
        let g = alg.group();
        let ring = self.ring();
        let n = w.len();
        let e = g.identity();
        let value = if w.iter().any(|x| g.is_identity(x)) {
            ResElem::zero(ring, n)
        } else if n == 0 {
            ResElem::term(ring, 0, (0, e.clone(), e.clone()), ring.one())
        } else {
            let mut bar = BarElem::zero(ring, n);
            bar.add_term((e.clone(), w.to_vec(), e.clone()), ring.one());
            let lower = self.psi(&bar_differential(alg, &bar))?;
            self.res.homotopy(&lower)?
        };
        self.psi_memo
            .lock()
            .expect("memo")
            .insert(w.to_vec(), value.clone());
        Ok(value)
    }

    /// `A^e`-linear extension of `ψ`.
    pub fn psi(&self, b: &BarElem) -> Result<ResElem> {
        let alg = self.algebra();
        let mut out = ResElem::zero(self.ring(), b.degree);
        for ((x, w, y), c) in &b.terms {
            out.add_scaled(&self.psi_word(w)?.act(alg, x, y), c);
        }
        Ok(out)
    }

    /// `φ(gen)`, recursively `h_Bar(φ(d gen))` with `h_Bar(g₀[w]g') = 1[g₀|w]g'`.
    pub fn phi_generator(&self, k: usize, i: usize) -> BarElem {
        if let Some(v) = self.phi_memo.lock().expect("memo").get(&(k, i)) {
            return v.clone();
        }
        let alg = self.algebra();
        let g = alg.group();
        let ring = self.ring();
        let e = g.identity();
        let value = if k == 0 {
            let mut b = BarElem::zero(ring, 0);
            b.add_term((e.clone(), vec![], e.clone()), ring.one());
            b
        } else {
            let lower = self.phi(&self.res.differential_generator(k, i));
            let mut b = BarElem::zero(ring, k);
            for ((g0, w, g1), c) in &lower.terms {
                if g.is_identity(g0) {
                    continue;
                }
                let mut word = vec![g0.clone()];
                word.extend_from_slice(w);
                b.add_term((e.clone(), word, g1.clone()), c.clone());
            }
            b
        };
        self.phi_memo.lock().expect("memo").insert((k, i), value.clone());
        value
    }

    pub fn phi(&self, e: &ResElem) -> BarElem {
        let alg = self.algebra();
        let mut out = BarElem::zero(self.ring(), e.degree());
        for ((i, x, y), c) in e.terms() {
            out.add_scaled(&self.phi_generator(e.degree(), *i).act(alg, x, y), c);
        }
        out
    }

    /// `m[w] ↦ m ⊗ ψ(1[w]1)`, read in `M ⊗_{A^e} P` via `m ⊗ x·e·y = (y m x)·e`.
    pub fn chain_to_small(&self, c: &Chain) -> Result<SmallVector> {
        let alg = self.algebra();
        let g = alg.group();
        let module = c.module();
        let n = c.degree();
        let mut out = SmallVector::zero(alg, module, n, self.res.rank(n));
        for (w, x) in c.terms() {
            for ((gen, a, b), y) in self.psi_word(&w.letters)?.terms() {
                let m = module.left(g, b, &module.right(g, &w.m, a));
                out.entries[*gen].add_term(m, x * y);
            }
        }
        Ok(out)
    }

    /// `m·e ↦ m ⊗ φ(e)`, read in `C_*(A, M)` via `m ⊗ g₀[w]g' = (g' m g₀)[w]`.
    pub fn small_to_chain(&self, v: &SmallVector) -> Chain {
        let alg = self.algebra();
        let g = alg.group();
        let module = v.module;
        let mut out = Chain::zero(self.ring(), module, v.degree);
        for (gen, m) in v.entries.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let image = self.phi_generator(v.degree, gen);
            for (mm, x) in m.terms() {
                for ((g0, w, g1), y) in &image.terms {
                    let coeff = module.left(g, g1, &module.right(g, mm, g0));
                    out.add_term(BarWord::new(coeff, w.clone()), x * y);
                }
            }
        }
        out
    }

    /// `f_bar(w) = f(ψ(1[w]1))`; the result is marked as transported.
    pub fn cochain_from_small(self: &Arc<Self>, v: &SmallVector) -> Cochain
    where
        R: 'static,
    {
        let alg = self.algebra().clone();
        let this = Arc::clone(self);
        let vals = v.clone();
        let module = v.module;
        let a = alg.clone();
        Cochain::transported(&alg, module, v.degree, move |w| {
            let g = a.group();
            let mut out = a.zero();
            let image = this.psi_word(w).expect("ψ within truncation");
            for ((gen, x, y), c) in image.terms() {
                for (m, z) in vals.entries[*gen].terms() {
                    out.add_term(module.left(g, x, &module.right(g, m, y)), c * z);
                }
            }
            out
        })
    }

    /// `f_P(e) = f(φ(e))`.
    pub fn cochain_to_small(&self, f: &Cochain) -> SmallVector {
        let alg = self.algebra();
        let g = alg.group();
        let module = f.module();
        let p = f.arity();
        let mut out = SmallVector::zero(alg, module, p, self.res.rank(p));
        for gen in 0..self.res.rank(p) {
            for ((g0, w, g1), c) in &self.phi_generator(p, gen).terms {
                for (m, z) in f.eval(w).terms() {
                    out.entries[gen].add_term(module.left(g, g0, &module.right(g, m, g1)), c * z);
                }
            }
        }
        out
    }

    /// Boundary of `M ⊗_{A^e} P`.
    pub fn small_chain_differential(&self, v: &SmallVector) -> SmallVector {
        let alg = self.algebra();
        let g = alg.group();
        let module = v.module;
        let n = v.degree;
        let mut out = SmallVector::zero(alg, module, n.saturating_sub(1), self.res.rank(n.saturating_sub(1)));
        if n == 0 {
            return out;
        }
        for (gen, m) in v.entries.iter().enumerate() {
            for ((tgt, x, y), c) in self.res.differential_generator(n, gen).terms() {
                for (mm, z) in m.terms() {
                    out.entries[*tgt].add_term(module.left(g, y, &module.right(g, mm, x)), c * z);
                }
            }
        }
        out
    }

    /// `D f = -(-1)^p f∘d` on `Hom_{A^e}(P, M)`.
    pub fn small_cochain_differential(&self, f: &SmallVector) -> SmallVector {
        let alg = self.algebra();
        let g = alg.group();
        let module = f.module;
        let p = f.degree;
        let ring = self.ring();
        let sign = -ring.sign(p);
        let mut out = SmallVector::zero(alg, module, p + 1, self.res.rank(p + 1));
        for gen in 0..self.res.rank(p + 1) {
            for ((src, x, y), c) in self.res.differential_generator(p + 1, gen).terms() {
                for (m, z) in f.entries[*src].terms() {
                    out.entries[gen].add_term(module.left(g, x, &module.right(g, m, y)), &(&sign * c) * z);
                }
            }
        }
        out
    }
}

/// `1 ⊗ x·e·y` helper for building small vectors from one generator.
pub fn unit_vector(alg: &GroupAlgebra, module: Bimodule, degree: usize, rank: usize, gen: usize) -> SmallVector {
    let mut v = SmallVector::zero(alg, module, degree, rank);
    v.entries[gen] = GroupAlgebraElement::monomial(alg.ring(), alg.group().identity(), alg.ring().one());
    v
}
