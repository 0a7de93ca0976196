use crate::combinat::{Face, SimplicialComplex, SimplicialSetTrunc};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Sparse integer matrix stored by columns; each column is sorted by row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Dense row-major copy; only for small matrices.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                d[i][j] = v;
            }
        }
        d
    }

    /// `self * rhs`, or `None` on i64 overflow.
    pub fn checked_mul(&self, rhs: &SparseMatrix) -> Option<SparseMatrix> {
        let mut out = Vec::with_capacity(rhs.cols());
        let mut acc = vec![0i64; self.rows];
        let mut touched = Vec::new();
        for col in &rhs.columns {
            for &(k, b) in col {
                for &(i, a) in &self.columns[k] {
                    if acc[i] == 0 {
                        touched.push(i);
                    }
                    acc[i] = acc[i].checked_add(a.checked_mul(b)?)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut c = Vec::new();
            for &i in &touched {
                if acc[i] != 0 {
                    c.push((i, acc[i]));
                }
                acc[i] = 0;
            }
            touched.clear();
            out.push(c);
        }
        Some(SparseMatrix {
            rows: self.rows,
            columns: out,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

/// A finite chain complex of free abelian groups with labeled bases.
///
/// Cells exist in degrees `0..=top`; homology is meaningful through
/// `ceiling`, which may exceed `top` only when the complex vanishes above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexData {
    pub labels: Vec<Vec<String>>,
    /// `boundaries[k]` is `∂_k: C_k → C_{k−1}`; `boundaries[0]` has no rows.
    pub boundaries: Vec<SparseMatrix>,
    pub ceiling: usize,
}

impl ChainComplexData {
    pub fn top(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn rank(&self, k: usize) -> usize {
        self.labels.get(k).map_or(0, Vec::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn boundary(&self, k: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(k)
    }

    /// Checks `∂_{k−1} ∘ ∂_k = 0` exactly in every degree; reports the first
    /// failing degree.
    pub fn verify_boundary_squared(&self) -> Result<(), usize> {
        for k in 2..self.boundaries.len() {
            match self.boundaries[k - 1].checked_mul(&self.boundaries[k]) {
                Some(m) if m.is_zero() => {}
                _ => return Err(k),
            }
        }
        Ok(())
    }

    /// Alternating sum of cell counts through `top`.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Simplicial chains of `k` with homology through degree `d`.
pub fn chain_complex(k: &SimplicialComplex, d: usize) -> ChainComplexData {
    chain_complex_with(k, d, Execution::Sequential)
}

pub fn chain_complex_with(k: &SimplicialComplex, d: usize, exec: Execution) -> ChainComplexData {
    let top = k.dim().map_or(0, |dim| dim.min(d + 1));
    let mut labels = Vec::with_capacity(top + 1);
    let mut boundaries = Vec::with_capacity(top + 1);
    for deg in 0..=top {
        let cells = k.simplices_of_dim(deg);
        labels.push(cells.iter().map(|s| s.token()).collect());
        if deg == 0 {
            boundaries.push(SparseMatrix::zero(0, cells.len()));
            continue;
        }
        let columns = exec.map(cells, |s| {
            let mut col: Vec<(usize, i64)> = (0..s.len())
                .map(|i| {
                    let f = s.delete(i).expect("positive dimension");
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    (k.position(&f).expect("closed under faces"), sign)
                })
                .collect();
            col.sort_unstable();
            col
        });
        boundaries.push(SparseMatrix {
            rows: k.num_simplices(deg - 1),
            columns,
        });
    }
    let out = ChainComplexData {
        labels,
        boundaries,
        ceiling: d,
    };
    debug_assert!(out.verify_boundary_squared().is_ok());
    out
}

/// Normalized chains of a truncated simplicial set, homology through `d`.
/// Degenerate faces contribute zero.
pub fn normalized_chain_complex(s: &SimplicialSetTrunc, d: usize) -> Result<ChainComplexData> {
    normalized_chain_complex_with(s, d, Execution::Sequential)
}

pub fn normalized_chain_complex_with(
    s: &SimplicialSetTrunc,
    d: usize,
    exec: Execution,
) -> Result<ChainComplexData> {
    if s.max_dim() < d + 1 {
        return Err(Error::TruncationTooLow {
            requested: d,
            available: s.max_dim(),
        });
    }
    let top = d + 1;
    let mut labels = Vec::with_capacity(top + 1);
    let mut boundaries = Vec::with_capacity(top + 1);
    for deg in 0..=top {
        labels.push(s.labels(deg).to_vec());
        if deg == 0 {
            boundaries.push(SparseMatrix::zero(0, s.num_simplices(0)));
            continue;
        }
        let columns = exec.map_range(s.num_simplices(deg), |x| {
            let mut col: Vec<(usize, i64)> = Vec::with_capacity(deg + 1);
            for (i, f) in s.faces(deg, x).iter().enumerate() {
                if let Face::Simplex(t) = f {
                    col.push((*t, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            col.sort_unstable();
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(col.len());
            for (r, v) in col {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            merged
        });
        boundaries.push(SparseMatrix {
            rows: s.num_simplices(deg - 1),
            columns,
        });
    }
    let out = ChainComplexData {
        labels,
        boundaries,
        ceiling: d,
    };
    debug_assert!(out.verify_boundary_squared().is_ok());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::cx;

    #[test]
    fn edge_orientation() {
        let c = chain_complex(&cx(&[&["a", "b"]]), 1);
        assert_eq!(c.ranks(), vec![2, 1]);
        assert_eq!(c.boundaries[1].columns[0], vec![(0, -1), (1, 1)]);
    }

    #[test]
    fn point_has_no_boundaries() {
        let c = chain_complex(&cx(&[&["a"]]), 3);
        assert_eq!(c.ranks(), vec![1]);
        assert_eq!(c.ceiling, 3);
    }

    #[test]
    fn boundary_squared_vanishes_on_a_tetrahedron() {
        let c = chain_complex(&cx(&[&["a", "b", "c", "d"]]), 3);
        assert_eq!(c.verify_boundary_squared(), Ok(()));
        let mut broken = c.clone();
        broken.boundaries[2].columns[0][0].1 = 5;
        assert!(broken.verify_boundary_squared().is_err());
    }

    #[test]
    fn truncation_is_enforced() {
        let s = SimplicialSetTrunc::from_complex(&cx(&[&["a", "b"]]), 1);
        assert!(normalized_chain_complex(&s, 0).is_ok());
        assert!(matches!(
            normalized_chain_complex(&s, 1),
            Err(Error::TruncationTooLow { .. })
        ));
    }
}
