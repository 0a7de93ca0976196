//! Smith normal form over ℤ.
//!
//! A sparse phase eliminates unit pivots (the common case for boundary
//! matrices); whatever is left is reduced densely with minimum-absolute-value
//! pivoting. Arithmetic runs in checked `i64` and restarts in `BigInt` on
//! overflow.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::chain::SparseMatrix;

/// Rank and the invariant factors greater than one, ascending, each
/// dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn less_abs(&self, other: &Self) -> bool;
    /// `a - q * b`
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self>;
    fn mul(a: &Self, b: &Self) -> Option<Self>;
    fn quot(a: &Self, b: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Ring for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn less_abs(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(q.checked_mul(*b)?)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        a.checked_mul(*b)
    }
    fn quot(a: &Self, b: &Self) -> Self {
        a / b
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn less_abs(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        Some(a - q * b)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        Some(a * b)
    }
    fn quot(a: &Self, b: &Self) -> Self {
        a / b
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Smith normal form of `m`. With `torsion = false` only the rank is
/// computed and the diagonal is not normalized.
pub fn smith_form(m: &SparseMatrix, torsion: bool) -> SmithForm {
    match eliminate::<i64>(m) {
        Some(diag) => finish(diag.iter().map(Ring::to_big).collect(), torsion),
        None => {
            let diag = eliminate::<BigInt>(m).expect("big integers do not overflow");
            finish(diag, torsion)
        }
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    smith_form(m, false).rank
}

fn finish(diag: Vec<BigInt>, torsion: bool) -> SmithForm {
    let rank = diag.len();
    if !torsion {
        return SmithForm {
            rank,
            torsion: Vec::new(),
        };
    }
    let mut d: Vec<BigInt> = diag
        .into_iter()
        .map(|x| x.abs())
        .filter(|x| !x.is_one())
        .collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|x| !x.is_one());
    d.sort();
    SmithForm { rank, torsion: d }
}

/// Nonzero diagonal of a diagonalization (not yet normalized), or `None`
/// on overflow.
fn eliminate<R: Ring>(m: &SparseMatrix) -> Option<Vec<R>> {
    let mut rows: Vec<BTreeMap<usize, R>> = vec![BTreeMap::new(); m.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            if v != 0 {
                rows[i].insert(j, R::from_i64(v));
                col_rows[j].insert(i);
            }
        }
    }
    let mut diag: Vec<R> = Vec::new();
    let mut col_alive = vec![true; m.cols()];

    loop {
        let mut order: Vec<usize> = (0..m.cols())
            .filter(|&j| col_alive[j] && !col_rows[j].is_empty())
            .collect();
        order.sort_by_key(|&j| (col_rows[j].len(), j));
        let mut progressed = false;
        for c in order {
            if !col_alive[c] || col_rows[c].is_empty() {
                continue;
            }
            let pivot_row = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| rows[r][&c].is_unit())
                .min_by_key(|&r| (rows[r].len(), r));
            let Some(r) = pivot_row else { continue };
            let u = rows[r][&c].clone();
            let prow: Vec<(usize, R)> = std::mem::take(&mut rows[r]).into_iter().collect();
            for (j, _) in &prow {
                col_rows[*j].remove(&r);
            }
            let others: Vec<usize> = col_rows[c].iter().copied().collect();
            for i in others {
                let a = rows[i][&c].clone();
                let factor = R::mul(&a, &u)?;
                for (j, b) in &prow {
                    let cur = rows[i].get(j).cloned().unwrap_or_else(|| R::from_i64(0));
                    let new = R::sub_mul(&cur, &factor, b)?;
                    if new.is_zero() {
                        rows[i].remove(j);
                        col_rows[*j].remove(&i);
                    } else {
                        rows[i].insert(*j, new);
                        col_rows[*j].insert(i);
                    }
                }
            }
            debug_assert!(col_rows[c].is_empty());
            col_alive[c] = false;
            diag.push(u);
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    let live_rows: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols())
        .filter(|&j| col_alive[j] && !col_rows[j].is_empty())
        .collect();
    if live_rows.is_empty() {
        return Some(diag);
    }
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(p, &j)| (j, p)).collect();
    let mut dense: Vec<Vec<R>> = live_rows
        .iter()
        .map(|&i| {
            let mut row = vec![R::from_i64(0); live_cols.len()];
            for (j, v) in &rows[i] {
                row[col_pos[j]] = v.clone();
            }
            row
        })
        .collect();
    dense_diagonal(&mut dense, &mut diag)?;
    Some(diag)
}

fn dense_diagonal<R: Ring>(a: &mut [Vec<R>], diag: &mut Vec<R>) -> Option<()> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.less_abs(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        move_to(a, t, bi, bj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = R::quot(&a[i][t], &a[t][t]);
                    let (top, rest) = a.split_at_mut(i);
                    let prow = &top[t];
                    for (x, p) in rest[0].iter_mut().zip(prow.iter()).skip(t) {
                        *x = R::sub_mul(x, &q, p)?;
                    }
                    clean &= rest[0][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = R::quot(&a[t][j], &a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let p = row[t].clone();
                        row[j] = R::sub_mul(&row[j], &q, &p)?;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if clean {
                break;
            }
            let mut pick: Option<(usize, usize)> = None;
            let cand = |i: usize, j: usize, a: &[Vec<R>], pick: &mut Option<(usize, usize)>| {
                if !a[i][j].is_zero() && pick.is_none_or(|(pi, pj)| a[i][j].less_abs(&a[pi][pj])) {
                    *pick = Some((i, j));
                }
            };
            for i in t..m {
                cand(i, t, a, &mut pick);
            }
            for j in t..n {
                cand(t, j, a, &mut pick);
            }
            let (pi, pj) = pick.expect("pivot entry is nonzero");
            move_to(a, t, pi, pj);
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    Some(())
}

fn move_to<R>(a: &mut [Vec<R>], t: usize, i: usize, j: usize) {
    a.swap(t, i);
    if j != t {
        for row in a.iter_mut() {
            row.swap(t, j);
        }
    }
}

/// Invariant factors of a small dense matrix; used by tests and presentations.
pub fn smith_form_dense(rows: &[Vec<i64>]) -> SmithForm {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = SparseMatrix::zero(rows.len(), ncols);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                m.columns[j].push((i, v));
            }
        }
    }
    smith_form(&m, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(smith_form_dense(&[vec![2, 0], vec![0, 3]]).torsion, big(&[6]));
        assert_eq!(smith_form_dense(&[vec![2, 4], vec![6, 8]]).torsion, big(&[2, 4]));
        let z = smith_form_dense(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(z.rank, 0);
        let f = smith_form_dense(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(f.rank, 2);
        assert_eq!(f.torsion, big(&[3]));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let huge = i64::MAX / 2;
        let f = smith_form_dense(&[vec![huge, huge - 1], vec![huge - 1, huge]]);
        // det = huge² − (huge−1)² = 2·huge − 1, gcd of entries is 1.
        let det = BigInt::from(huge) * 2 - 1;
        assert_eq!(f.rank, 2);
        assert_eq!(f.torsion, vec![det]);
    }

    /// Determinantal divisors: the product of the first k invariant factors
    /// is the gcd of all k×k minors.
    fn minors_gcd(a: &[Vec<i64>], k: usize) -> BigInt {
        use itertools::Itertools;
        let m = a.len();
        let n = a[0].len();
        let mut g = BigInt::zero();
        for rs in (0..m).combinations(k) {
            for cs in (0..n).combinations(k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| BigInt::from(a[r][c])).collect())
                    .collect();
                g = g.gcd(&det(sub));
            }
        }
        g
    }

    fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
        // Bareiss fraction-free elimination.
        let n = a.len();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if Zero::is_zero(&a[k][k]) {
                match (k + 1..n).find(|&i| !Zero::is_zero(&a[i][k])) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    proptest! {
        #[test]
        fn matches_determinantal_divisors(
            a in prop::collection::vec(prop::collection::vec(-4i64..5, 4), 3)
        ) {
            let f = smith_form_dense(&a);
            let mut factors: Vec<BigInt> = vec![BigInt::one(); f.rank - f.torsion.len()];
            factors.extend(f.torsion.iter().cloned());
            for k in 1..=3 {
                let expected = minors_gcd(&a, k);
                let got: BigInt = if k <= f.rank {
                    factors[..k].iter().product()
                } else {
                    BigInt::zero()
                };
                prop_assert_eq!(got, expected);
            }
        }
    }
}
