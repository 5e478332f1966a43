//! The BV operator `Δ = -D∘B∘D⁻¹` on `HH*(k[ℤᵈ])`, computed on small-model classes through the
//! bar complex, with the chain-level cup product and Gerstenhaber bracket alongside.

use std::cell::RefCell;
use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::GroupAlgebraElement;
use crate::duality::fundamental::{DualityMap, PdGroupData};
use crate::duality::laurent;
use crate::error::Result;
use crate::group::GroupElement;
use crate::hochschild::chain::{connes_b_signed, Chain};
use crate::hochschild::cochain::Cochain;
use crate::ops::products::{cup, gerstenhaber_bracket, left_action};
use crate::resolution::Resolution;
use crate::scalar::{Ring, Scalar};

/// Basis element `t^exp · e_gen^*` of `HH^p`; the Koszul small model has zero differential, so
/// these span the classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub p: usize,
    pub gen: usize,
    pub exp: GroupElement,
}

impl Mono {
    /// Lower degree `-p`.
    pub fn degree(&self) -> i64 {
        -(self.p as i64)
    }
}

/// Finite combination of basis elements.
pub type HhElement = BTreeMap<Mono, Scalar>;

pub fn add_scaled(acc: &mut HhElement, c: &Scalar, x: &HhElement) {
    for (m, v) in x {
        let e = acc.entry(m.clone()).or_insert_with(|| v.ring().zero());
        *e += &(c * v);
        if e.is_zero() {
            acc.remove(m);
        }
    }
}

/// `HH*(k[ℤᵈ])` with memoized `Δ`, cup product and chain-level bracket on basis elements.
pub struct HhModel {
    pub pd: PdGroupData,
    pub duality: Vec<DualityMap>,
    flip_b: bool,
    delta_memo: RefCell<BTreeMap<Mono, HhElement>>,
    cup_memo: RefCell<BTreeMap<(Mono, Mono), HhElement>>,
    bracket_memo: RefCell<BTreeMap<(Mono, Mono), HhElement>>,
}

impl HhModel {
    /// Computes every duality matrix; fails with `NotInvertible` if one is singular.
    pub fn new(pd: PdGroupData) -> Result<Self> {
        Self::with_connes_sign(pd, false)
    }

    /// Same, with a global sign flip in Connes `B` (a fault-injection control).
    pub fn with_connes_sign(pd: PdGroupData, flip_b: bool) -> Result<Self> {
        let duality = (0..=pd.d).map(|p| DualityMap::new(&pd, p)).collect::<Result<Vec<_>>>()?;
        Ok(HhModel {
            pd,
            duality,
            flip_b,
            delta_memo: RefCell::default(),
            cup_memo: RefCell::default(),
            bracket_memo: RefCell::default(),
        })
    }

    pub fn ring(&self) -> Ring {
        self.pd.alg.ring()
    }

    pub fn d(&self) -> usize {
        self.pd.d
    }

    pub fn mono(&self, p: usize, gen: usize, exp: &[i64]) -> Mono {
        Mono { p, gen, exp: GroupElement::exponents(exp) }
    }

    pub fn basis(&self, m: &Mono) -> HhElement {
        BTreeMap::from([(m.clone(), self.ring().one())])
    }

    pub fn unit(&self) -> HhElement {
        self.basis(&self.mono(0, 0, &vec![0; self.d()]))
    }

    pub fn label(&self, m: &Mono) -> String {
        let exps: Vec<String> = m.exp.0.iter().map(i64::to_string).collect();
        let gen = self.pd.cmp.resolution().generator_label(m.p, m.gen);
        format!("t^({})·{}*", exps.join(","), gen)
    }

    /// All basis elements with exponents in `[-k, k]ᵈ`, sorted by degree, generator, exponent.
    pub fn window(&self, k: i64) -> Vec<Mono> {
        let mut exps: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..self.d() {
            exps = exps
                .into_iter()
                .flat_map(|e| (-k..=k).map(move |x| [e.clone(), vec![x]].concat()))
                .collect();
        }
        let mut out = Vec::new();
        for p in 0..=self.d() {
            for gen in 0..self.pd.rank(p) {
                out.extend(exps.iter().map(|e| self.mono(p, gen, e)));
            }
        }
        out.sort();
        out
    }

    fn entries(&self, p: usize, x: &HhElement) -> Vec<GroupAlgebraElement> {
        let mut e = vec![self.pd.alg.zero(); self.pd.rank(p)];
        for (m, c) in x.iter().filter(|(m, _)| m.p == p) {
            e[m.gen].add_term(m.exp.clone(), c.clone());
        }
        e
    }

    fn element(&self, p: usize, entries: &[GroupAlgebraElement]) -> HhElement {
        let mut out = HhElement::new();
        for (gen, x) in entries.iter().enumerate() {
            for (g, c) in x.terms() {
                out.insert(Mono { p, gen, exp: g.clone() }, c.clone());
            }
        }
        out
    }

    pub fn lift(&self, m: &Mono) -> Cochain {
        self.pd.lift(m.p, self.entries(m.p, &self.basis(m)))
    }

    fn project(&self, f: &Cochain) -> HhElement {
        let v = self.pd.cmp.cochain_to_small(f);
        self.element(f.arity(), &v.entries)
    }

    /// Small-model class of the bar chain `x·c`-type cycle `ch` in `HH_n`.
    fn homology_class(&self, ch: &Chain) -> Result<Vec<GroupAlgebraElement>> {
        Ok(self.pd.cmp.chain_to_small(ch)?.entries)
    }

    /// `Δa = -D_{p-1}⁻¹(B(a·c))`; zero on `HH⁰`.
    pub fn delta_mono(&self, m: &Mono) -> Result<HhElement> {
        if let Some(v) = self.delta_memo.borrow().get(m) {
            return Ok(v.clone());
        }
        let out = if m.p == 0 {
            HhElement::new()
        } else {
            let alg = &self.pd.alg;
            let ac = self.pd.act(&self.lift(m))?;
            let bac = connes_b_signed(alg, &ac, self.flip_b)?;
            let minus = -self.ring().one();
            let rhs: Vec<_> = self.homology_class(&bac)?.iter().map(|x| x.scale(&minus)).collect();
            let coords = laurent::apply(alg, &self.duality[m.p - 1].inverse, &rhs)?;
            self.element(m.p - 1, &coords)
        };
        self.delta_memo.borrow_mut().insert(m.clone(), out.clone());
        Ok(out)
    }

    pub fn cup_mono(&self, a: &Mono, b: &Mono) -> Result<HhElement> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.cup_memo.borrow().get(&key) {
            return Ok(v.clone());
        }
        let out = if a.p + b.p > self.d() {
            HhElement::new()
        } else {
            self.project(&cup(&self.pd.alg, &self.lift(a), &self.lift(b))?)
        };
        self.cup_memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// Gerstenhaber bracket of the bar-level representatives, projected to the small model.
    pub fn bracket_mono(&self, a: &Mono, b: &Mono) -> Result<HhElement> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.bracket_memo.borrow().get(&key) {
            return Ok(v.clone());
        }
        let out = if a.p + b.p == 0 || a.p + b.p - 1 > self.d() {
            HhElement::new()
        } else {
            self.project(&gerstenhaber_bracket(&self.pd.alg, &self.lift(a), &self.lift(b))?)
        };
        self.bracket_memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    pub fn delta(&self, x: &HhElement) -> Result<HhElement> {
        let mut out = HhElement::new();
        for (m, c) in x {
            add_scaled(&mut out, c, &self.delta_mono(m)?);
        }
        Ok(out)
    }

    pub fn cup(&self, x: &HhElement, y: &HhElement) -> Result<HhElement> {
        let mut out = HhElement::new();
        for (a, c) in x {
            for (b, e) in y {
                add_scaled(&mut out, &(c * e), &self.cup_mono(a, b)?);
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, x: &HhElement, y: &HhElement) -> Result<HhElement> {
        let mut out = HhElement::new();
        for (a, c) in x {
            for (b, e) in y {
                add_scaled(&mut out, &(c * e), &self.bracket_mono(a, b)?);
            }
        }
        Ok(out)
    }

    /// `{a,b} = (-1)^{|a|}(Δ(ab) - (Δa)b - (-1)^{|a|} aΔb)`.
    pub fn bv_bracket(&self, a: &Mono, b: &Mono) -> Result<HhElement> {
        let ring = self.ring();
        let (ea, eb) = (self.basis(a), self.basis(b));
        let s = ring.sign(a.p);
        let mut inner = self.delta(&self.cup(&ea, &eb)?)?;
        add_scaled(&mut inner, &-ring.one(), &self.cup(&self.delta(&ea)?, &eb)?);
        add_scaled(&mut inner, &-s.clone(), &self.cup(&ea, &self.delta(&eb)?)?);
        let mut out = HhElement::new();
        add_scaled(&mut out, &s, &inner);
        Ok(out)
    }

    /// `x·c` as small-model coordinates in `HH_{d-p}` for a homogeneous `x`.
    pub fn act_class(&self, p: usize, x: &HhElement) -> Result<Vec<GroupAlgebraElement>> {
        let f = self.pd.lift(p, self.entries(p, x));
        self.homology_class(&self.pd.act(&f)?)
    }

    /// `a·(b·c)` as small-model coordinates, computed on bar chains.
    pub fn act_twice(&self, a: &Mono, b: &Mono) -> Result<Vec<GroupAlgebraElement>> {
        let bc = self.pd.act(&self.lift(b))?;
        self.homology_class(&left_action(&self.pd.alg, &self.lift(a), &bc)?)
    }

    pub fn element_json(&self, x: &HhElement) -> Value {
        json!(x.iter().map(|(m, c)| json!([self.label(m), c])).collect::<Vec<_>>())
    }
}

/// Expresses `x` in `window`; `None` if a term falls outside.
pub fn in_window(index: &BTreeMap<Mono, usize>, x: &HhElement) -> Option<Vec<(usize, Scalar)>> {
    let mut v: Vec<(usize, Scalar)> = x.iter().map(|(m, c)| Some((*index.get(m)?, c.clone()))).collect::<Option<_>>()?;
    v.sort_by_key(|(i, _)| *i);
    Some(v)
}
