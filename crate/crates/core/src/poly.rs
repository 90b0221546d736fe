//! Polynomial maps from additive monoids to abelian groups.

use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("iterated differences did not vanish within {cap} steps")]
    DegreeUnbounded { cap: usize },
}

/// Default number of difference steps tried before giving up.
pub const DEFAULT_DEGREE_CAP: usize = 16;

/// Binomial coefficients stay inside `i64` up to this many steps.
const MAX_CAP: usize = 60;

pub trait Monoid: Clone {
    fn plus(&self, other: &Self) -> Self;
    fn is_neutral(&self) -> bool;
}

pub trait AbelianGroup: Monoid {
    fn zero_like(&self) -> Self;
    fn negate(&self) -> Self;
    fn times(&self, k: i64) -> Self;
}

impl Monoid for u64 {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn is_neutral(&self) -> bool {
        *self == 0
    }
}

impl Monoid for i64 {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn is_neutral(&self) -> bool {
        *self == 0
    }
}

impl AbelianGroup for i64 {
    fn zero_like(&self) -> Self {
        0
    }

    fn negate(&self) -> Self {
        -self
    }

    fn times(&self, k: i64) -> Self {
        self * k
    }
}

/// A map `φ: A → M` together with a claimed degree bound.
#[derive(Clone)]
pub struct PolyMap<A, M> {
    pub domain: String,
    pub codomain: String,
    pub degree: usize,
    eval: Arc<dyn Fn(&A) -> M + Send + Sync>,
}

impl<A: Monoid, M: AbelianGroup> PolyMap<A, M> {
    pub fn new(
        domain: impl Into<String>,
        codomain: impl Into<String>,
        degree: usize,
        eval: impl Fn(&A) -> M + Send + Sync + 'static,
    ) -> Self {
        PolyMap {
            domain: domain.into(),
            codomain: codomain.into(),
            degree,
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, a: &A) -> M {
        (self.eval)(a)
    }

    /// `D_{(a₁,…,aₙ)}φ(x)`, the alternating sum over all subsets of the tuple.
    pub fn difference(&self, tuple: &[A], x: &A) -> M {
        let n = tuple.len();
        assert!(n < 32, "difference tuples are limited to 31 entries");
        let mut total: Option<M> = None;
        for mask in 0u32..(1 << n) {
            let mut point = x.clone();
            for (i, a) in tuple.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    point = point.plus(a);
                }
            }
            let mut value = self.eval(&point);
            if (n - mask.count_ones() as usize) % 2 == 1 {
                value = value.negate();
            }
            total = Some(match total {
                None => value,
                Some(t) => t.plus(&value),
            });
        }
        total.expect("at least one subset")
    }

    /// `Δ_b^k φ(x) = Σ_j (-1)^{k-j} C(k, j) φ(x + jb)`.
    pub fn delta_power(&self, b: &A, k: usize, x: &A) -> M {
        let values = self.along(x, b, k);
        alternating(&values)
    }

    fn along(&self, x: &A, b: &A, k: usize) -> Vec<M> {
        let mut point = x.clone();
        let mut values = Vec::with_capacity(k + 1);
        for j in 0..=k {
            if j > 0 {
                point = point.plus(b);
            }
            values.push(self.eval(&point));
        }
        values
    }

    /// The value of the polynomial extension at `a - b`:
    /// `Σ_k (-1)^k Δ_b^k φ(a)`, summed until a term past the degree bound vanishes.
    pub fn extend(&self, a: &A, b: &A, cap: usize) -> Result<M, PolyError> {
        if b.is_neutral() {
            return Ok(self.eval(a));
        }
        let cap = cap.min(MAX_CAP);
        let mut values: Vec<M> = Vec::new();
        let mut point = a.clone();
        let mut total: Option<M> = None;
        for k in 0..=cap {
            if k > 0 {
                point = point.plus(b);
            }
            values.push(self.eval(&point));
            let term = alternating(&values);
            if k > self.degree && term.is_neutral() {
                return Ok(total.expect("k > 0"));
            }
            let signed = if k % 2 == 1 { term.negate() } else { term };
            total = Some(match total {
                None => signed,
                Some(t) => t.plus(&signed),
            });
        }
        Err(PolyError::DegreeUnbounded { cap })
    }

    /// Whether `D_{tuple}φ(x)` vanishes.
    pub fn vanishes(&self, tuple: &[A], x: &A) -> bool {
        self.difference(tuple, x).is_neutral()
    }
}

/// `Σ_j (-1)^{k-j} C(k, j) values[j]` with `k = values.len() - 1`.
fn alternating<M: AbelianGroup>(values: &[M]) -> M {
    let k = values.len() - 1;
    let mut binom: i64 = 1;
    let mut total = values[0].zero_like();
    for (j, v) in values.iter().enumerate() {
        if j > 0 {
            binom = binom * (k - j + 1) as i64 / j as i64;
        }
        let sign = if (k - j) % 2 == 1 { -binom } else { binom };
        total = total.plus(&v.times(sign));
    }
    total
}
