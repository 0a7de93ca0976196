//! Test-side oracles that share no code with the library's homology engine.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use nervekit::SimplicialComplex;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Faces = BTreeSet<Vec<String>>;

/// Every nonempty face of every facet, vertices sorted as strings.
pub fn all_faces(k: &SimplicialComplex) -> Faces {
    let mut out = BTreeSet::new();
    for f in k.facets() {
        let vs: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
        for mask in 1u32..(1 << vs.len()) {
            let mut s: Vec<String> = (0..vs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| vs[i].clone())
                .collect();
            s.sort();
            out.insert(s);
        }
    }
    out
}

fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / m[r][c].clone();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone() * inv.clone();
                for j in c..cols {
                    let d = m[r][j].clone() * factor.clone();
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rational Betti numbers `b_0..=b_maxdim` by dense elimination.
pub fn betti_q(faces: &Faces, maxdim: usize) -> Vec<usize> {
    let mut by_dim: BTreeMap<usize, Vec<&Vec<String>>> = BTreeMap::new();
    for f in faces {
        by_dim.entry(f.len() - 1).or_default().push(f);
    }
    let count = |d: usize| by_dim.get(&d).map_or(0, Vec::len);
    // rank of ∂_d : C_d → C_{d-1}
    let boundary_rank = |d: usize| -> usize {
        if d == 0 || count(d) == 0 || count(d - 1) == 0 {
            return 0;
        }
        let lower: BTreeMap<&Vec<String>, usize> = by_dim[&(d - 1)]
            .iter()
            .enumerate()
            .map(|(i, f)| (*f, i))
            .collect();
        let mut m = vec![vec![BigRational::zero(); count(d)]; count(d - 1)];
        for (j, f) in by_dim[&d].iter().enumerate() {
            for i in 0..f.len() {
                let mut g = (*f).clone();
                g.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m[lower[&g]][j] = BigRational::from_integer(sign.into());
            }
        }
        rank(m)
    };
    (0..=maxdim)
        .map(|d| count(d) - boundary_rank(d) - boundary_rank(d + 1))
        .collect()
}

pub fn betti_oracle(k: &SimplicialComplex, maxdim: usize) -> Vec<usize> {
    betti_q(&all_faces(k), maxdim)
}

/// Connected components of a face set, as vertex sets.
pub fn components(faces: &Faces) -> Vec<BTreeSet<String>> {
    let mut comps: Vec<BTreeSet<String>> = Vec::new();
    for f in faces {
        let touching: Vec<usize> = (0..comps.len())
            .filter(|&i| f.iter().any(|v| comps[i].contains(v)))
            .collect();
        let mut merged: BTreeSet<String> = f.iter().cloned().collect();
        for &i in touching.iter().rev() {
            merged.extend(comps.remove(i));
        }
        comps.push(merged);
    }
    comps.sort();
    comps
}
