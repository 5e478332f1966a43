use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::echelon::{column_echelon, Echelon};
use crate::linalg::matrix::{Matrix, SparseVec};
use crate::linalg::snf::smith_normal_form;
use crate::scalar::{Ring, Scalar};

/// `ker(d_out) / im(d_in)` in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyPresentation {
    pub degree: i64,
    pub free_rank: usize,
    /// Invariant factors ≥ 2, each dividing the next.
    pub torsion: Vec<BigInt>,
    /// Free generators first, then one cycle per torsion factor.
    pub representatives: Vec<SparseVec>,
}

impl HomologyPresentation {
    pub fn to_json(&self) -> Value {
        let torsion: Vec<Value> = self.torsion.iter().map(bigint_json).collect();
        let reps: Vec<Value> = self.representatives.iter().map(sparse_json).collect();
        json!({
            "degree": self.degree,
            "free_rank": self.free_rank,
            "torsion": torsion,
            "representatives": reps,
        })
    }
}

pub fn bigint_json(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

pub fn sparse_json(v: &SparseVec) -> Value {
    Value::Array(
        v.iter()
            .map(|(i, x)| json!([i, serde_json::to_value(x).expect("scalar serializes")]))
            .collect(),
    )
}

fn check_composable(d_in: &Matrix, d_out: &Matrix) -> Result<()> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "incoming {}x{} vs outgoing {}x{}",
            d_in.rows(),
            d_in.cols(),
            d_out.rows(),
            d_out.cols()
        )));
    }
    if d_in.ring() != d_out.ring() {
        return Err(Error::RingMismatch);
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::CompositionNotZero);
    }
    Ok(())
}

/// Homology at the middle term of `· --d_in--> C --d_out--> ·`.
pub fn homology_at(d_in: &Matrix, d_out: &Matrix, ring: Ring) -> Result<HomologyPresentation> {
    Ok(HomologySpace::new(0, d_in, d_out, ring)?.presentation)
}

#[derive(Clone, Debug)]
enum Coordinates {
    Field {
        echelon: Echelon,
    },
    Integer {
        v1_inv: Matrix,
        r1: usize,
        u2: Matrix,
        /// Per kernel coordinate after `U2`: `None` is trivial, `Some(0)` free, else torsion order.
        orders: Vec<Option<BigInt>>,
    },
}

/// A homology group together with the data needed to name classes.
#[derive(Clone, Debug)]
pub struct HomologySpace {
    ring: Ring,
    d_out: Matrix,
    coords: Coordinates,
    pub presentation: HomologyPresentation,
}

impl HomologySpace {
    pub fn new(degree: i64, d_in: &Matrix, d_out: &Matrix, ring: Ring) -> Result<Self> {
        if d_in.ring() != ring {
            return Err(Error::RingMismatch);
        }
        check_composable(d_in, d_out)?;
        if ring.is_field() {
            Self::over_field(degree, d_in, d_out, ring)
        } else {
            Self::over_integers(degree, d_in, d_out)
        }
    }

    fn over_field(degree: i64, d_in: &Matrix, d_out: &Matrix, ring: Ring) -> Result<Self> {
        let (_, kernel) = column_echelon(d_out)?;
        let mut echelon = Echelon::new(ring)?;
        for c in d_in.columns() {
            echelon.insert(c, Vec::new());
        }
        let mut reps = Vec::new();
        for k in kernel {
            if echelon.insert(&k, vec![(reps.len(), ring.one())]) {
                reps.push(k);
            }
        }
        Ok(HomologySpace {
            ring,
            d_out: d_out.clone(),
            coords: Coordinates::Field { echelon },
            presentation: HomologyPresentation {
                degree,
                free_rank: reps.len(),
                torsion: Vec::new(),
                representatives: reps,
            },
        })
    }

    fn over_integers(degree: i64, d_in: &Matrix, d_out: &Matrix) -> Result<Self> {
        let z = Ring::Integers;
        let n = d_out.cols();
        let s1 = smith_normal_form(d_out)?;
        let r1 = s1.invariants.len();
        let x_full = s1.v_inv.mul(d_in)?;
        let x = x_full.select_rows(r1..n);
        let s2 = smith_normal_form(&x)?;
        let kdim = n - r1;
        let mut orders = Vec::with_capacity(kdim);
        for i in 0..kdim {
            orders.push(match s2.invariants.get(i) {
                Some(d) if d.is_one() => None,
                Some(d) => Some(d.clone()),
                None => Some(BigInt::from(0)),
            });
        }
        let lift = |col: &SparseVec| -> SparseVec {
            let shifted: SparseVec = col.iter().map(|(i, v)| (i + r1, v.clone())).collect();
            s1.v.apply(&shifted)
        };
        let mut free = Vec::new();
        let mut tors = Vec::new();
        let mut torsion = Vec::new();
        for (i, o) in orders.iter().enumerate() {
            match o {
                Some(d) if *d == BigInt::from(0) => free.push(lift(s2.u_inv.column(i))),
                Some(d) => {
                    tors.push(lift(s2.u_inv.column(i)));
                    torsion.push(d.clone());
                }
                None => {}
            }
        }
        let free_rank = free.len();
        free.extend(tors);
        Ok(HomologySpace {
            ring: z,
            d_out: d_out.clone(),
            coords: Coordinates::Integer {
                v1_inv: s1.v_inv,
                r1,
                u2: s2.u,
                orders,
            },
            presentation: HomologyPresentation {
                degree,
                free_rank,
                torsion,
                representatives: free,
            },
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Number of generators (free plus torsion).
    pub fn rank(&self) -> usize {
        self.presentation.representatives.len()
    }

    /// Coordinates of the class of cycle `v` on the representatives. Torsion
    /// coordinates are reduced into `[0, d)`.
    pub fn class_of(&self, v: &SparseVec) -> Result<Vec<Scalar>> {
        if !self.d_out.apply(v).is_empty() {
            return Err(Error::NotACycle);
        }
        match &self.coords {
            Coordinates::Field { echelon } => {
                let (rem, acc) = echelon.reduce(v);
                if !rem.is_empty() {
                    return Err(Error::LinearSolveFailed(
                        "cycle outside kernel span".into(),
                    ));
                }
                let mut out = vec![self.ring.zero(); self.rank()];
                for (i, c) in acc {
                    out[i] = c;
                }
                Ok(out)
            }
            Coordinates::Integer {
                v1_inv,
                r1,
                u2,
                orders,
            } => {
                let y: SparseVec = v1_inv
                    .apply(v)
                    .into_iter()
                    .filter(|(i, _)| *i >= *r1)
                    .map(|(i, c)| (i - r1, c))
                    .collect();
                let z = u2.apply(&y);
                let mut free = Vec::new();
                let mut tors = Vec::new();
                for (i, o) in orders.iter().enumerate() {
                    let zi = z
                        .iter()
                        .find(|(j, _)| *j == i)
                        .map(|(_, c)| c.as_bigint().expect("integer").clone())
                        .unwrap_or_default();
                    match o {
                        Some(d) if *d == BigInt::from(0) => free.push(Scalar::Int(zi)),
                        Some(d) => tors.push(Scalar::Int(zi.mod_floor(d))),
                        None => {}
                    }
                }
                free.extend(tors);
                Ok(free)
            }
        }
    }

    pub fn is_boundary(&self, v: &SparseVec) -> Result<bool> {
        Ok(self.class_of(v)?.iter().all(Scalar::is_zero))
    }

    /// Two cycles define the same class.
    pub fn same_class(&self, a: &SparseVec, b: &SparseVec) -> Result<bool> {
        let diff = crate::linalg::matrix::axpy(a, &-self.ring.one(), b);
        self.is_boundary(&diff)
    }
}
