use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::chain::{chain_complex, ChainComplexData};
use super::field::{
    from_integer_column, rank_of_columns, Echelon, Field, Insert, PrimeField, Rationals, SparseVec,
};
use super::Coefficients;
use crate::combinat::SimplicialMap;
use crate::error::{Error, Result};
use crate::exec::Execution;

/// The induced map in one degree, in the canonical homology bases of domain
/// and codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedDegree {
    pub degree: usize,
    /// `codomain_betti` rows by `domain_betti` columns. Over 𝔽ₚ entries are
    /// residues in `0..p`.
    pub matrix: Vec<Vec<BigRational>>,
    pub rank: usize,
    pub domain_betti: usize,
    pub codomain_betti: usize,
    pub iso: bool,
    pub epi: bool,
    pub mono: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMapResult {
    pub coefficients: Coefficients,
    pub degrees: Vec<InducedDegree>,
}

impl InducedMapResult {
    pub fn degree(&self, k: usize) -> Option<&InducedDegree> {
        self.degrees.get(k)
    }

    /// Iso in every degree `0..=n`; vacuous for negative `n`.
    pub fn iso_through(&self, n: i64) -> bool {
        (0..=n).all(|k| self.degree(k as usize).is_some_and(|d| d.iso))
    }

    /// Epi in degree `k`; vacuous for negative `k`.
    pub fn epi_at(&self, k: i64) -> bool {
        k < 0 || self.degree(k as usize).is_some_and(|d| d.epi)
    }

    /// Iso through `n − 1` and epi at `n`, the homological form of an
    /// `n`-connected map.
    pub fn is_n_connected(&self, n: i64) -> bool {
        self.iso_through(n - 1) && self.epi_at(n)
    }

    /// Degree-wise matrix product `then ∘ self`.
    pub fn then(&self, then: &InducedMapResult) -> Vec<Vec<Vec<BigRational>>> {
        self.degrees
            .iter()
            .zip(&then.degrees)
            .map(|(a, b)| {
                let rows = b.codomain_betti;
                let cols = a.domain_betti;
                let mut out = vec![vec![BigRational::zero(); cols]; rows];
                for (i, row) in out.iter_mut().enumerate() {
                    for (j, x) in row.iter_mut().enumerate() {
                        for k in 0..a.codomain_betti {
                            *x += &b.matrix[i][k] * &a.matrix[k][j];
                        }
                        if let Coefficients::Prime(p) = self.coefficients {
                            let p = BigInt::from(p);
                            let v = x.to_integer();
                            *x = BigRational::from_integer(((v % &p) + &p) % &p);
                        }
                    }
                }
                out
            })
            .collect()
    }
}

/// Homology of one degree over a field, with cycle representatives and a
/// way to read off coordinates of any cycle.
struct DegreeBasis<F: Field> {
    reps: Vec<SparseVec<F::Elem>>,
    rep_index: HashMap<usize, usize>,
    span: Echelon<F>,
}

impl<F: Field> DegreeBasis<F> {
    fn new(field: &F, c: &ChainComplexData, k: usize) -> Self {
        let n = c.rank(k);
        let kernel: Vec<SparseVec<F::Elem>> = if k == 0 || k > c.top() {
            (0..n).map(|j| vec![(j, field.one())]).collect()
        } else {
            let mut e = Echelon::new(field.clone(), true);
            let mut ker = Vec::new();
            for (j, col) in c.boundaries[k].columns.iter().enumerate() {
                if let Insert::Dependent(rel) = e.insert(from_integer_column(field, col), j) {
                    ker.push(rel);
                }
            }
            ker
        };
        let mut span = Echelon::new(field.clone(), true);
        let nb = if k < c.top() { c.rank(k + 1) } else { 0 };
        for j in 0..nb {
            span.insert(from_integer_column(field, &c.boundaries[k + 1].columns[j]), j);
        }
        let mut rep_index = HashMap::new();
        let mut reps = Vec::new();
        for (i, z) in kernel.into_iter().enumerate() {
            if span.insert(z.clone(), nb + i) == Insert::Independent {
                rep_index.insert(nb + i, reps.len());
                reps.push(z);
            }
        }
        DegreeBasis {
            reps,
            rep_index,
            span,
        }
    }

    /// Homology coordinates of a cycle.
    fn coordinates(&self, field: &F, z: SparseVec<F::Elem>) -> Vec<F::Elem> {
        let combo = self.span.express(z).expect("argument is a cycle");
        let mut out = vec![field.zero(); self.reps.len()];
        for (t, c) in combo {
            if let Some(&i) = self.rep_index.get(&t) {
                out[i] = c;
            }
        }
        out
    }
}

/// Sign of sorting a sequence of distinct items.
fn sort_sign<T: Ord>(v: &[T]) -> i64 {
    let mut inv = 0usize;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn chain_map_column(f: &SimplicialMap, k: usize, j: usize) -> Vec<(usize, i64)> {
    let s = &f.domain().simplices_of_dim(k)[j];
    let img: Vec<_> = s
        .vertices()
        .iter()
        .map(|v| f.vertex_image(v).expect("domain vertex").clone())
        .collect();
    let t = f.image(s);
    if t.len() != s.len() {
        return Vec::new();
    }
    let pos = f.codomain().position(&t).expect("validated simplicial map");
    vec![(pos, sort_sign(&img))]
}

fn induced_over<F: Field>(
    field: F,
    coeffs: Coefficients,
    f: &SimplicialMap,
    d: usize,
    exec: Execution,
) -> InducedMapResult {
    let cx = chain_complex(f.domain(), d);
    let cy = chain_complex(f.codomain(), d);
    let degrees = exec.map_range(d + 1, |k| {
        let bx = DegreeBasis::new(&field, &cx, k);
        let by = DegreeBasis::new(&field, &cy, k);
        let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity(bx.reps.len());
        for z in &bx.reps {
            let mut image: SparseVec<F::Elem> = Vec::new();
            for (j, c) in z {
                for (pos, sign) in chain_map_column(f, k, *j) {
                    let term = vec![(pos, field.from_i64(sign))];
                    image = super::field::axpy(&field, &image, c, &term);
                }
            }
            cols.push(by.coordinates(&field, image));
        }
        let rank = rank_of_columns(&field, &cols);
        let matrix: Vec<Vec<BigRational>> = (0..by.reps.len())
            .map(|i| cols.iter().map(|c| field.to_rational(&c[i])).collect())
            .collect();
        let mono = rank == bx.reps.len();
        let epi = rank == by.reps.len();
        InducedDegree {
            degree: k,
            matrix,
            rank,
            domain_betti: bx.reps.len(),
            codomain_betti: by.reps.len(),
            iso: mono && epi,
            epi,
            mono,
        }
    });
    InducedMapResult {
        coefficients: coeffs,
        degrees,
    }
}

/// The map on homology induced by `f` in degrees `0..=d` over a field.
pub fn induced_map(f: &SimplicialMap, coeffs: Coefficients, d: usize) -> Result<InducedMapResult> {
    induced_map_with(f, coeffs, d, Execution::Sequential)
}

pub fn induced_map_with(
    f: &SimplicialMap,
    coeffs: Coefficients,
    d: usize,
    exec: Execution,
) -> Result<InducedMapResult> {
    match coeffs {
        Coefficients::Integer => Err(Error::NotAField),
        Coefficients::Rational => Ok(induced_over(Rationals, coeffs, f, d, exec)),
        Coefficients::Prime(p) => Ok(induced_over(PrimeField::new(p), coeffs, f, d, exec)),
    }
}
