use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Bimodule, GroupAlgebra, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::scalar::{Ring, Scalar};

pub type Evaluator = dyn Fn(&[GroupElement]) -> GroupAlgebraElement + Send + Sync;

#[derive(Clone)]
pub enum Backend {
    /// Explicit values; missing words evaluate to zero.
    Table(Arc<BTreeMap<Vec<GroupElement>, GroupAlgebraElement>>),
    /// Arity-1 derivation of `k[ℤᵈ]` into itself, given by the images of the generators.
    Derivation(Arc<Vec<GroupAlgebraElement>>),
    /// Closure built from other cochains (differentials, products, brackets).
    Composite(Arc<Evaluator>),
    /// Pulled back from a small resolution model; not differentiated directly.
    Transported(Arc<Evaluator>),
}

impl fmt::Debug for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Table(t) => write!(f, "Table({} entries)", t.len()),
            Backend::Derivation(d) => write!(f, "Derivation({d:?})"),
            Backend::Composite(_) => write!(f, "Composite"),
            Backend::Transported(_) => write!(f, "Transported"),
        }
    }
}

/// A normalized Hochschild cochain: a linear map `(sĀ)^{⊗p} → M`.
#[derive(Clone, Debug)]
pub struct Cochain {
    alg: GroupAlgebra,
    module: Bimodule,
    arity: usize,
    backend: Backend,
}

impl Cochain {
    pub fn from_table(
        alg: &GroupAlgebra,
        module: Bimodule,
        arity: usize,
        table: BTreeMap<Vec<GroupElement>, GroupAlgebraElement>,
    ) -> Self {
        Cochain {
            alg: alg.clone(),
            module,
            arity,
            backend: Backend::Table(Arc::new(table)),
        }
    }

    /// Derivation with `D(t_i) = images[i]`.
    pub fn derivation(alg: &GroupAlgebra, images: Vec<GroupAlgebraElement>) -> Result<Self> {
        let rank = alg.group().rank().ok_or(Error::NotFreeAbelian)?;
        if images.len() != rank {
            return Err(Error::DimensionMismatch("one image per generator".into()));
        }
        Ok(Cochain {
            alg: alg.clone(),
            module: Bimodule::Algebra,
            arity: 1,
            backend: Backend::Derivation(Arc::new(images)),
        })
    }

    pub fn from_fn(
        alg: &GroupAlgebra,
        module: Bimodule,
        arity: usize,
        f: impl Fn(&[GroupElement]) -> GroupAlgebraElement + Send + Sync + 'static,
    ) -> Self {
        Cochain {
            alg: alg.clone(),
            module,
            arity,
            backend: Backend::Composite(Arc::new(f)),
        }
    }

    pub fn transported(
        alg: &GroupAlgebra,
        module: Bimodule,
        arity: usize,
        f: impl Fn(&[GroupElement]) -> GroupAlgebraElement + Send + Sync + 'static,
    ) -> Self {
        Cochain {
            alg: alg.clone(),
            module,
            arity,
            backend: Backend::Transported(Arc::new(f)),
        }
    }

    /// The 0-cochain with value `x`.
    pub fn constant(alg: &GroupAlgebra, module: Bimodule, x: GroupAlgebraElement) -> Self {
        let mut t = BTreeMap::new();
        t.insert(Vec::new(), x);
        Cochain::from_table(alg, module, 0, t)
    }

    /// The unit 0-cochain `[] ↦ 1`.
    pub fn unit(alg: &GroupAlgebra, module: Bimodule) -> Self {
        Cochain::constant(alg, module, alg.one())
    }

    pub fn algebra(&self) -> &GroupAlgebra {
        &self.alg
    }

    pub fn ring(&self) -> Ring {
        self.alg.ring()
    }

    pub fn module(&self) -> Bimodule {
        self.module
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn is_transported(&self) -> bool {
        matches!(self.backend, Backend::Transported(_))
    }

    /// Value on a word of group elements; zero on words containing the identity.
    pub fn eval(&self, letters: &[GroupElement]) -> GroupAlgebraElement {
        assert_eq!(letters.len(), self.arity, "cochain evaluated on a word of the wrong length");
        let g = self.alg.group();
        if letters.iter().any(|x| g.is_identity(x)) {
            return self.alg.zero();
        }
        match &self.backend {
            Backend::Table(t) => t.get(letters).cloned().unwrap_or_else(|| self.alg.zero()),
            Backend::Derivation(images) => {
                let exps = letters[0].as_slice();
                let mut out = self.alg.zero();
                for (i, &n) in exps.iter().enumerate() {
                    if n == 0 {
                        continue;
                    }
                    let gen_inv = g.generator_power(i, -1).expect("generator");
                    let lower = g.mul(&letters[0], &gen_inv);
                    let term = self
                        .alg
                        .multiply(&self.alg.basis(lower), &images[i])
                        .expect("same algebra")
                        .scale(&self.ring().from_i64(n));
                    out = out.add(&term).expect("same ring");
                }
                out
            }
            Backend::Composite(f) | Backend::Transported(f) => f(letters),
        }
    }

    /// Value on an arbitrary tensor of algebra elements, by multilinearity.
    pub fn eval_elements(&self, args: &[GroupAlgebraElement]) -> GroupAlgebraElement {
        let mut out = self.alg.zero();
        let mut word = Vec::with_capacity(args.len());
        self.eval_rec(args, &mut word, self.ring().one(), &mut out);
        out
    }

    fn eval_rec(
        &self,
        args: &[GroupAlgebraElement],
        word: &mut Vec<GroupElement>,
        coeff: Scalar,
        out: &mut GroupAlgebraElement,
    ) {
        if word.len() == args.len() {
            let v = self.eval(word).scale(&coeff);
            *out = out.add(&v).expect("same ring");
            return;
        }
        for (g, c) in args[word.len()].terms() {
            word.push(g.clone());
            self.eval_rec(args, word, &coeff * c, out);
            word.pop();
        }
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.combine(other, self.ring().one())
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.combine(other, -self.ring().one())
    }

    fn combine(&self, other: &Cochain, c: Scalar) -> Result<Cochain> {
        if self.module != other.module {
            return Err(Error::BimoduleMismatch("sum of cochains".into()));
        }
        if self.arity != other.arity {
            return Err(Error::DimensionMismatch("sum of cochains of different arity".into()));
        }
        let (f, g) = (self.clone(), other.clone());
        let transported = self.is_transported() || other.is_transported();
        let eval = move |w: &[GroupElement]| f.eval(w).add(&g.eval(w).scale(&c)).expect("same ring");
        Ok(if transported {
            Cochain::transported(&self.alg, self.module, self.arity, eval)
        } else {
            Cochain::from_fn(&self.alg, self.module, self.arity, eval)
        })
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        let f = self.clone();
        let c = c.clone();
        let eval = move |w: &[GroupElement]| f.eval(w).scale(&c);
        if self.is_transported() {
            Cochain::transported(&self.alg, self.module, self.arity, eval)
        } else {
            Cochain::from_fn(&self.alg, self.module, self.arity, eval)
        }
    }
}

/// `D f = -(-1)^p δf`, where `δ` is the unsigned coboundary
/// `δf(a₁,…,a_k) = a₁f(a₂,…) + Σ (-1)^i f(…,a_i a_{i+1},…) + (-1)^k f(a₁,…,a_{k-1})a_k`.
pub fn cochain_differential(f: &Cochain) -> Result<Cochain> {
    if f.is_transported() {
        return Err(Error::UnsupportedBackend(
            "differentiate transported cochains on the small model".into(),
        ));
    }
    let p = f.arity();
    let alg = f.algebra().clone();
    let module = f.module();
    let ring = f.ring();
    let src = f.clone();
    let overall = -ring.sign(p);
    Ok(Cochain::from_fn(&alg.clone(), module, p + 1, move |a| {
        let g = alg.group();
        let k = a.len();
        let mut out = alg.zero();
        for (m, c) in src.eval(&a[1..]).terms() {
            out.add_term(module.left(g, &a[0], m), c.clone());
        }
        for i in 1..k {
            let mut w = Vec::with_capacity(k - 1);
            w.extend_from_slice(&a[..i - 1]);
            w.push(g.mul(&a[i - 1], &a[i]));
            w.extend_from_slice(&a[i + 1..]);
            let s = ring.sign(i);
            for (m, c) in src.eval(&w).terms() {
                out.add_term(m.clone(), &s * c);
            }
        }
        let s = ring.sign(k);
        for (m, c) in src.eval(&a[..k - 1]).terms() {
            out.add_term(module.right(g, m, &a[k - 1]), &s * c);
        }
        out.scale(&overall)
    }))
}
