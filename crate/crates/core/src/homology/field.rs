//! Exact field arithmetic and sparse column echelon forms.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn to_rational(&self, a: &Self::Elem) -> BigRational;
}

/// 𝔽ₚ with elements in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be prime; checked by the caller.
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }
}

impl Field for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
}

/// ℚ with arbitrary-precision fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// Sparse vector sorted by index with no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `x + a·y`
pub fn axpy<F: Field>(
    f: &F,
    x: &SparseVec<F::Elem>,
    a: &F::Elem,
    y: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            let v = f.mul(a, &y[j].1);
            if !f.is_zero(&v) {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(&x[i].1, &f.mul(a, &y[j].1));
            if !f.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn from_integer_column<F: Field>(f: &F, col: &[(usize, i64)]) -> SparseVec<F::Elem> {
    col.iter()
        .filter_map(|&(i, v)| {
            let e = f.from_i64(v);
            (!f.is_zero(&e)).then_some((i, e))
        })
        .collect()
}

/// Result of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq)]
pub enum Insert<E> {
    Independent,
    /// Coefficients over inserted tags of a vanishing combination (the new
    /// tag has coefficient one). Empty unless combinations are tracked.
    Dependent(SparseVec<E>),
}

/// Column echelon form keyed by lowest (largest-index) nonzero entry.
///
/// With tracking enabled every stored vector remembers how it was formed
/// from the caller's tagged inputs.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    vecs: Vec<SparseVec<F::Elem>>,
    combos: Option<Vec<SparseVec<F::Elem>>>,
    pivot: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, track: bool) -> Self {
        Echelon {
            field,
            vecs: Vec::new(),
            combos: track.then(Vec::new),
            pivot: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    fn reduce(
        &self,
        mut v: SparseVec<F::Elem>,
        mut combo: SparseVec<F::Elem>,
    ) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        while let Some((low, c)) = v.last() {
            let Some(&slot) = self.pivot.get(low) else { break };
            let s = &self.vecs[slot];
            let lead = &s.last().expect("stored vectors are nonzero").1;
            let a = f.neg(&f.mul(c, &f.inv(lead)));
            v = axpy(f, &v, &a, s);
            if let Some(cs) = &self.combos {
                combo = axpy(f, &combo, &a, &cs[slot]);
            }
        }
        (v, combo)
    }

    pub fn insert(&mut self, v: SparseVec<F::Elem>, tag: usize) -> Insert<F::Elem> {
        let start = if self.combos.is_some() {
            vec![(tag, self.field.one())]
        } else {
            Vec::new()
        };
        let (r, combo) = self.reduce(v, start);
        match r.last() {
            None => Insert::Dependent(combo),
            Some((low, _)) => {
                self.pivot.insert(*low, self.vecs.len());
                self.vecs.push(r);
                if let Some(cs) = &mut self.combos {
                    cs.push(combo);
                }
                Insert::Independent
            }
        }
    }

    /// Tag coefficients expressing `v` in the span, or `None` if outside it.
    pub fn express(&self, v: SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let (r, combo) = self.reduce(v, Vec::new());
        if !r.is_empty() {
            return None;
        }
        let f = &self.field;
        Some(combo.into_iter().map(|(t, c)| (t, f.neg(&c))).collect())
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce(v, Vec::new()).0.is_empty()
    }
}

/// Rank of an integer matrix reduced into `field`.
pub fn rank_over<F: Field>(field: &F, cols: &[Vec<(usize, i64)>]) -> usize {
    let mut e = Echelon::new(field.clone(), false);
    for (t, c) in cols.iter().enumerate() {
        e.insert(from_integer_column(field, c), t);
    }
    e.rank()
}

/// Rank of a dense matrix given as columns of field elements.
pub fn rank_of_columns<F: Field>(field: &F, cols: &[Vec<F::Elem>]) -> usize {
    let mut e = Echelon::new(field.clone(), false);
    for (t, c) in cols.iter().enumerate() {
        let v: SparseVec<F::Elem> = c
            .iter()
            .enumerate()
            .filter(|(_, x)| !field.is_zero(x))
            .map(|(i, x)| (i, x.clone()))
            .collect();
        e.insert(v, t);
    }
    e.rank()
}
