//! Exact homology over ℚ, 𝔽ₚ and ℤ, induced maps, and acyclicity certificates.

mod certificate;
mod chain;
pub mod field;
mod induced;
pub mod snf;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

pub use certificate::{acyclicity_certificate, range_compare, AcyclicityFailure};
pub use chain::{
    chain_complex, chain_complex_with, normalized_chain_complex, normalized_chain_complex_with,
    ChainComplexData, SparseMatrix,
};
pub use induced::{induced_map, induced_map_with, InducedDegree, InducedMapResult};

use crate::combinat::{SimplicialComplex, SimplicialSetTrunc};
use crate::error::{Error, Result};
use crate::exec::Execution;
use field::{rank_over, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Rational,
    Prime(u64),
    Integer,
}

impl Coefficients {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Coefficients::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Coefficients::Integer)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(Coefficients::Rational),
            "z" => Ok(Coefficients::Integer),
            "f2" => Ok(Coefficients::Prime(2)),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| {
                        Error::Invalid(format!("unknown coefficients {s:?}; use q, z, f2 or fp:<p>"))
                    })?;
                Coefficients::prime(p)
            }
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Rational => f.write_str("q"),
            Coefficients::Integer => f.write_str("z"),
            Coefficients::Prime(2) => f.write_str("f2"),
            Coefficients::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// Betti numbers and torsion through `computed_through`. Degrees above are
/// not computed, which is different from zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub coefficients: Coefficients,
    pub betti: Vec<usize>,
    /// Invariant factors greater than one; only populated over ℤ.
    pub torsion: Vec<Vec<BigUint>>,
    pub computed_through: usize,
}

impl HomologyResult {
    pub fn betti_at(&self, k: usize) -> Option<usize> {
        self.betti.get(k).copied()
    }

    pub fn torsion_at(&self, k: usize) -> Option<&[BigUint]> {
        self.torsion.get(k).map(Vec::as_slice)
    }

    /// True when the group in degree `k` is zero; `None` when not computed.
    pub fn vanishes_at(&self, k: usize) -> Option<bool> {
        Some(self.betti_at(k)? == 0 && self.torsion_at(k)?.is_empty())
    }

    /// Betti numbers truncated to degrees `0..=k`.
    pub fn betti_through(&self, k: usize) -> &[usize] {
        &self.betti[..self.betti.len().min(k + 1)]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

pub fn homology(c: &ChainComplexData, coeffs: Coefficients) -> HomologyResult {
    homology_with(c, coeffs, Execution::Sequential)
}

/// Boundary ranks (and torsion over ℤ) are computed per degree, concurrently
/// under `Execution::Parallel`.
pub fn homology_with(c: &ChainComplexData, coeffs: Coefficients, exec: Execution) -> HomologyResult {
    let through = c.ceiling;
    let last = c.top().min(through + 1);
    let degrees: Vec<usize> = (1..=last).collect();
    let ranks: Vec<(usize, Vec<BigUint>)> = exec.map(&degrees, |&k| {
        let m = &c.boundaries[k];
        match coeffs {
            Coefficients::Integer => {
                let s = snf::smith_form(m, true);
                let t = s
                    .torsion
                    .into_iter()
                    .map(|x| x.to_biguint().expect("invariant factors are positive"))
                    .collect();
                (s.rank, t)
            }
            Coefficients::Rational => (snf::rank(m), Vec::new()),
            Coefficients::Prime(p) => (rank_over(&PrimeField::new(p), &m.columns), Vec::new()),
        }
    });
    let rank = |k: usize| -> usize {
        if k == 0 || k > last {
            0
        } else {
            ranks[k - 1].0
        }
    };
    let mut betti = Vec::with_capacity(through + 1);
    let mut torsion = Vec::with_capacity(through + 1);
    for k in 0..=through {
        betti.push(c.rank(k) - rank(k) - rank(k + 1));
        torsion.push(if k < last { ranks[k].1.clone() } else { Vec::new() });
    }
    HomologyResult {
        coefficients: coeffs,
        betti,
        torsion,
        computed_through: through,
    }
}

/// Homology of a simplicial complex through degree `maxdim`.
pub fn simplicial_homology(k: &SimplicialComplex, maxdim: usize, coeffs: Coefficients) -> HomologyResult {
    homology(&chain_complex(k, maxdim), coeffs)
}

pub fn simplicial_homology_with(
    k: &SimplicialComplex,
    maxdim: usize,
    coeffs: Coefficients,
    exec: Execution,
) -> HomologyResult {
    homology_with(&chain_complex_with(k, maxdim, exec), coeffs, exec)
}

/// Normalized homology of a truncated simplicial set through `maxdim`.
pub fn sset_homology(s: &SimplicialSetTrunc, maxdim: usize, coeffs: Coefficients) -> Result<HomologyResult> {
    Ok(homology(&normalized_chain_complex(s, maxdim)?, coeffs))
}
