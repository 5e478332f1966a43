//! Built-in test corpus: `Λ(θ_1..θ_m) ⊗ k[y]/(y^N)` with differential-operator `Δ`, plus negative
//! controls.

use crate::bv::spec::{table_from_fn, GradedAlgebraSpec, Operator};
use crate::linalg::{sparse_from_entries, SparseVec};
use crate::scalar::Ring;

/// `coeff · θ^mult · y^y_power · ∂_{θ_{d_theta[0]}} ⋯ ∂_y^{y_derivs}`; θ-derivatives are left
/// derivatives, applied right to left.
#[derive(Clone, Debug)]
pub struct DeltaTerm {
    pub coeff: i64,
    pub mult: Vec<usize>,
    pub y_power: usize,
    pub d_theta: Vec<usize>,
    pub y_derivs: usize,
}

impl DeltaTerm {
    pub fn new(coeff: i64, d_theta: &[usize], y_derivs: usize) -> Self {
        DeltaTerm { coeff, mult: Vec::new(), y_power: 0, d_theta: d_theta.to_vec(), y_derivs }
    }

    pub fn times_y(mut self, k: usize) -> Self {
        self.y_power = k;
        self
    }

    pub fn times_theta(mut self, t: &[usize]) -> Self {
        self.mult = t.to_vec();
        self
    }
}

struct Layout {
    odd: usize,
    n: usize,
}

impl Layout {
    fn index(&self, mask: u32, y: usize) -> usize {
        mask as usize * self.n + y
    }

    fn split(&self, i: usize) -> (u32, usize) {
        ((i / self.n) as u32, i % self.n)
    }

    fn dim(&self) -> usize {
        (1 << self.odd) * self.n
    }
}

/// Sign of moving the generators of `b` past those of `a` into increasing order.
fn merge_sign(a: u32, b: u32) -> i64 {
    let mut inversions = 0;
    for j in 0..32 {
        if b >> j & 1 == 1 {
            inversions += (a >> (j + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 { 1 } else { -1 }
}

fn label(odd: usize, mask: u32, y: usize) -> String {
    let mut s = String::new();
    for j in 0..odd {
        if mask >> j & 1 == 1 {
            s.push('θ');
            if odd > 1 {
                s.push_str(&(j + 1).to_string());
            }
        }
    }
    match y {
        0 if s.is_empty() => s.push('1'),
        0 => {}
        1 => s.push('y'),
        k => s.push_str(&format!("y{k}")),
    }
    s
}

fn falling(i: usize, k: usize) -> i64 {
    (0..k).map(|j| (i - j) as i64).product()
}

/// `Λ(θ_1..θ_odd) ⊗ k[y]/(y^n)` with `|θ_j| = -1`, `|y| = 0`, and `Δ` the sum of the given terms.
pub fn exterior_times_truncated_general(ring: Ring, odd: usize, n: usize, terms: &[DeltaTerm]) -> GradedAlgebraSpec {
    let lay = Layout { odd, n };
    let dim = lay.dim();
    let c = |v: i64| ring.from_i64(v);
    let product = table_from_fn(dim, |a, b| {
        let (ma, ya) = lay.split(a);
        let (mb, yb) = lay.split(b);
        Some(if ma & mb != 0 || ya + yb >= n {
            Vec::new()
        } else {
            vec![(lay.index(ma | mb, ya + yb), c(merge_sign(ma, mb)))]
        })
    });
    let apply = |t: &DeltaTerm, mask: u32, y: usize| -> Option<(usize, i64)> {
        if y < t.y_derivs {
            return None;
        }
        let mut coeff = t.coeff * falling(y, t.y_derivs);
        let mut y = y - t.y_derivs;
        let mut mask = mask;
        for &j in t.d_theta.iter().rev() {
            if mask >> j & 1 == 0 {
                return None;
            }
            if (mask & ((1 << j) - 1)).count_ones() % 2 == 1 {
                coeff = -coeff;
            }
            mask &= !(1 << j);
        }
        let mut mult = 0u32;
        for &j in t.mult.iter().rev() {
            if mult >> j & 1 == 1 {
                return None;
            }
            coeff *= merge_sign(1 << j, mult);
            mult |= 1 << j;
        }
        if mult & mask != 0 {
            return None;
        }
        coeff *= merge_sign(mult, mask);
        y += t.y_power;
        (y < n && coeff != 0).then(|| (lay.index(mult | mask, y), coeff))
    };
    let delta: Operator = (0..dim)
        .map(|i| {
            let (mask, y) = lay.split(i);
            Some(sparse_from_entries(terms.iter().filter_map(|t| apply(t, mask, y)).map(|(k, v)| (k, c(v)))))
        })
        .collect();
    GradedAlgebraSpec {
        name: String::new(),
        ring,
        labels: (0..dim).map(|i| {
            let (m, y) = lay.split(i);
            label(odd, m, y)
        }).collect(),
        degrees: (0..dim).map(|i| -(lay.split(i).0.count_ones() as i64)).collect(),
        unit: vec![(0, ring.one())],
        product,
        delta: Some(delta),
        bracket: None,
    }
}

/// One odd generator; `terms` are `(y_power, y_derivs, coeff)` for `coeff · y^p ∂_θ ∂_y^k`.
pub fn exterior_times_truncated(ring: Ring, n: usize, terms: &[(usize, usize, i64)]) -> GradedAlgebraSpec {
    let ts: Vec<DeltaTerm> = terms.iter().map(|&(p, k, c)| DeltaTerm::new(c, &[0], k).times_y(p)).collect();
    exterior_times_truncated_general(ring, 1, n, &ts)
}

fn named(mut s: GradedAlgebraSpec, name: &str) -> GradedAlgebraSpec {
    s.name = name.to_string();
    s
}

/// A corpus entry with the expected outcome of the three BV characterizations.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub spec: GradedAlgebraSpec,
    pub expect_bv: bool,
}

fn mutate(mut s: GradedAlgebraSpec, name: &str, i: usize, v: SparseVec) -> GradedAlgebraSpec {
    s.delta.as_mut().expect("delta")[i] = Some(v);
    named(s, name)
}

fn index_of(s: &GradedAlgebraSpec, label: &str) -> usize {
    s.labels.iter().position(|l| l == label).expect("label")
}

/// `k[z]/(z²)` with `|z| = 1` and `Δ(1) = z`: square-zero but not a BV operator.
pub fn shifted_unit_control(ring: Ring) -> GradedAlgebraSpec {
    let one = ring.one();
    GradedAlgebraSpec {
        name: "shifted_delta_unit".into(),
        ring,
        labels: vec!["1".into(), "z".into()],
        degrees: vec![0, 1],
        unit: vec![(0, one.clone())],
        product: vec![
            vec![Some(vec![(0, one.clone())]), Some(vec![(1, one.clone())])],
            vec![Some(vec![(1, one.clone())]), Some(Vec::new())],
        ],
        delta: Some(vec![Some(vec![(1, one)]), Some(Vec::new())]),
        bracket: None,
    }
}

pub fn lambda_x(ring: Ring) -> GradedAlgebraSpec {
    named(exterior_times_truncated(ring, 1, &[(0, 0, 1)]), "lambda_x")
}

/// `Λ(x_1, x_2)` with `|x_1| = -1`, `x_2` even of degree 0 with `x_2² = 0`, and `Δ = ∂_1 ∂_2`.
/// `∂_2` only respects `x_2² = 0` in characteristic 2.
pub fn lambda_x1_x2(ring: Ring) -> GradedAlgebraSpec {
    let mut s = exterior_times_truncated(ring, 2, &[(0, 1, 1)]);
    s.labels = vec!["1".into(), "x2".into(), "x1".into(), "x1x2".into()];
    named(s, "lambda_x1_x2")
}

/// The full built-in corpus with expected outcomes.
pub fn corpus() -> Vec<CorpusEntry> {
    let q = Ring::Rationals;
    let f2 = Ring::PrimeField(2);
    let f3 = Ring::PrimeField(3);
    let f5 = Ring::PrimeField(5);
    let ok = |spec| CorpusEntry { spec, expect_bv: true };
    let bad = |spec| CorpusEntry { spec, expect_bv: false };
    let t = exterior_times_truncated;
    let g = exterior_times_truncated_general;
    let d = DeltaTerm::new;

    let mut out = vec![
        ok(named(t(q, 1, &[]), "lambda_x_zero")),
        ok(lambda_x(q)),
        ok(named(lambda_x(f2), "lambda_x_f2")),
        ok(lambda_x1_x2(f2)),
        ok(named(t(q, 4, &[]), "trunc4_zero")),
        ok(named(t(q, 4, &[(0, 0, 1)]), "trunc4_dtheta")),
        ok(named(t(q, 4, &[(2, 0, 3)]), "trunc4_y2_dtheta")),
        ok(named(t(f2, 4, &[(0, 1, 1)]), "trunc4_dtheta_dy_f2")),
        ok(named(t(f2, 4, &[(0, 1, 1), (0, 0, 1)]), "trunc4_dtheta_dy_plus_dtheta_f2")),
        ok(named(t(f2, 4, &[(1, 1, 1)]), "trunc4_y_dtheta_dy_f2")),
        ok(named(t(f3, 3, &[(0, 1, 1)]), "trunc3_dtheta_dy_f3")),
        ok(named(t(f5, 5, &[(0, 1, 2), (1, 1, 1)]), "trunc5_mixed_f5")),
        ok(named(g(q, 2, 1, &[]), "lambda2_zero")),
        ok(named(g(q, 2, 1, &[d(1, &[0], 0)]), "lambda2_d1")),
        ok(named(g(q, 2, 1, &[d(1, &[0, 1], 0).times_theta(&[0])]), "lambda2_theta1_d1d2")),
        ok(named(g(q, 3, 1, &[d(1, &[1, 2], 0).times_theta(&[0])]), "lambda3_theta1_d2d3")),
        ok(named(g(q, 3, 1, &[d(1, &[1, 2], 0).times_theta(&[0]), d(2, &[1], 0)]), "lambda3_theta1_d2d3_plus_d2")),
        ok(named(g(f2, 2, 2, &[d(1, &[0], 1), d(1, &[1], 1)]), "lambda2_trunc2_f2")),
        ok(named(g(f3, 2, 3, &[d(1, &[0], 1), d(2, &[1], 0)]), "lambda2_trunc3_f3")),
        bad(named(t(q, 3, &[(0, 1, 1)]), "trunc3_dtheta_dy")),
        bad(named(t(q, 3, &[(0, 2, 1)]), "trunc3_dtheta_dy2")),
        bad(named(g(q, 3, 1, &[d(1, &[0, 1, 2], 0).times_theta(&[0, 1])]), "lambda3_third_order")),
        bad(shifted_unit_control(q)),
    ];
    let base = t(f3, 3, &[(0, 1, 1)]);
    let ty2 = index_of(&base, "θy2");
    out.push(bad(mutate(base, "trunc3_f3_mutated", ty2, vec![(1, f3.one())])));
    let base = g(q, 3, 1, &[d(1, &[1, 2], 0).times_theta(&[0])]);
    let top = index_of(&base, "θ1θ2θ3");
    let t12 = index_of(&base, "θ1θ2");
    out.push(bad(mutate(base, "lambda3_mutated", top, vec![(t12, q.one())])));
    out
}
