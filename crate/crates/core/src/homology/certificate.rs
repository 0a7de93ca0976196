use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::{simplicial_homology, Coefficients, HomologyResult};
use crate::combinat::SimplicialComplex;
use crate::error::{Error, Result};
use crate::verdict::Check;

/// Why a complex is not `n`-acyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AcyclicityFailure {
    Empty,
    Disconnected { components: usize },
    Homology { degree: usize },
}

impl AcyclicityFailure {
    /// Least violating degree: −1 for emptiness, 0 for disconnection.
    pub fn degree(&self) -> i64 {
        match self {
            AcyclicityFailure::Empty => -1,
            AcyclicityFailure::Disconnected { .. } => 0,
            AcyclicityFailure::Homology { degree } => *degree as i64,
        }
    }
}

impl fmt::Display for AcyclicityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AcyclicityFailure::Empty => f.write_str("empty"),
            AcyclicityFailure::Disconnected { components } => {
                write!(f, "{components} components")
            }
            AcyclicityFailure::Homology { degree } => write!(f, "nonzero homology in degree {degree}"),
        }
    }
}

/// Checks `n`-acyclicity: nonempty for `n >= −1`, connected and with
/// vanishing homology in degrees `1..=n` for `n >= 0`. Every complex is
/// `n`-acyclic for `n <= −2`.
pub fn acyclicity_certificate(
    k: &SimplicialComplex,
    n: i64,
    coeffs: Coefficients,
) -> Result<(), AcyclicityFailure> {
    if n <= -2 {
        return Ok(());
    }
    if k.is_empty() {
        return Err(AcyclicityFailure::Empty);
    }
    if n == -1 {
        return Ok(());
    }
    let components = k.components().len();
    if components > 1 {
        return Err(AcyclicityFailure::Disconnected { components });
    }
    let top = (n as usize).min(k.dim().unwrap_or(0));
    if top == 0 {
        return Ok(());
    }
    let h = simplicial_homology(k, top, coeffs);
    match (1..=top).find(|&d| h.vanishes_at(d) != Some(true)) {
        Some(degree) => Err(AcyclicityFailure::Homology { degree }),
        None => Ok(()),
    }
}

fn primes_dividing(x: &BigUint) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = x.clone();
    let mut d = 2u64;
    while !rest.is_one() && !rest.is_zero() {
        let bd = BigUint::from(d);
        if &bd * &bd > rest {
            out.push(rest.to_u64().expect("torsion coefficients fit in u64"));
            break;
        }
        if (&rest % &bd).is_zero() {
            out.push(d);
            while (&rest % &bd).is_zero() {
                rest /= &bd;
            }
        }
        d += 1;
    }
    out
}

/// `dim_𝔽ₚ(G / pG)` for the degree-`k` group.
fn mod_p_dimension(h: &HomologyResult, k: usize, p: u64) -> usize {
    let bp = BigUint::from(p);
    h.betti[k] + h.torsion[k].iter().filter(|t| (*t % &bp).is_zero()).count()
}

/// Compares two homology profiles the way an `(n+1)`-acyclic map `X → N`
/// would force: isomorphic groups through `n` and a surjection in degree
/// `n + 1`. Without a map only necessary conditions are testable at `n + 1`,
/// so that check is named `surjectability`.
pub fn range_compare(hx: &HomologyResult, hn: &HomologyResult, n: i64) -> Result<Vec<Check>> {
    if hx.coefficients != hn.coefficients {
        return Err(Error::Invalid(
            "homology computed with different coefficients".into(),
        ));
    }
    let need = n + 1;
    if need >= 0 {
        let avail = hx.computed_through.min(hn.computed_through);
        if (avail as i64) < need {
            return Err(Error::TruncationTooLow {
                requested: need as usize,
                available: avail,
            });
        }
    }
    let integer = hx.coefficients == Coefficients::Integer;
    let mut checks = Vec::new();
    for k in 0..(n + 1).max(0) as usize {
        let (bx, bn) = (hx.betti[k], hn.betti[k]);
        let ok = bx == bn && (!integer || hx.torsion[k] == hn.torsion[k]);
        checks.push(
            Check::from_bool(format!("h{k}-iso"), ok, || {
                format!("degree {k}: {} vs {}", describe(hx, k), describe(hn, k))
            })
            .with_numbers("betti", vec![bx as i64, bn as i64]),
        );
    }
    if need >= 0 {
        let k = need as usize;
        let (bx, bn) = (hx.betti[k], hn.betti[k]);
        let mut ok = bx >= bn;
        let mut witness = format!("degree {k}: rank {bx} < {bn}");
        if integer && ok {
            let mut primes: Vec<u64> = hx.torsion[k]
                .iter()
                .chain(&hn.torsion[k])
                .flat_map(primes_dividing)
                .collect();
            primes.sort_unstable();
            primes.dedup();
            for p in primes {
                let (dx, dn) = (mod_p_dimension(hx, k, p), mod_p_dimension(hn, k, p));
                if dx < dn {
                    ok = false;
                    witness = format!("degree {k}: mod-{p} dimension {dx} < {dn}");
                    break;
                }
            }
        }
        checks.push(
            Check::from_bool(format!("h{k}-surjectability"), ok, || witness)
                .with_numbers("betti", vec![bx as i64, bn as i64]),
        );
    }
    Ok(checks)
}

fn describe(h: &HomologyResult, k: usize) -> String {
    if h.torsion[k].is_empty() {
        format!("rank {}", h.betti[k])
    } else {
        let t: Vec<String> = h.torsion[k].iter().map(|x| x.to_string()).collect();
        format!("rank {} torsion {{{}}}", h.betti[k], t.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::cx;

    fn profile(betti: Vec<usize>) -> HomologyResult {
        let n = betti.len();
        HomologyResult {
            coefficients: Coefficients::Rational,
            betti,
            torsion: vec![Vec::new(); n],
            computed_through: n - 1,
        }
    }

    #[test]
    fn conventions_for_small_n() {
        let empty = SimplicialComplex::empty();
        assert_eq!(acyclicity_certificate(&empty, -2, Coefficients::Rational), Ok(()));
        assert_eq!(
            acyclicity_certificate(&empty, -1, Coefficients::Rational),
            Err(AcyclicityFailure::Empty)
        );
        let two = cx(&[&["a"], &["b"]]);
        assert_eq!(acyclicity_certificate(&two, -1, Coefficients::Rational), Ok(()));
        assert_eq!(
            acyclicity_certificate(&two, 0, Coefficients::Rational)
                .unwrap_err()
                .degree(),
            0
        );
    }

    #[test]
    fn circle_fails_in_degree_one() {
        let c = cx(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        assert_eq!(acyclicity_certificate(&c, 0, Coefficients::Rational), Ok(()));
        assert_eq!(
            acyclicity_certificate(&c, 1, Coefficients::Rational),
            Err(AcyclicityFailure::Homology { degree: 1 })
        );
        let disk = cx(&[&["a", "b", "c"]]);
        assert_eq!(acyclicity_certificate(&disk, 5, Coefficients::Integer), Ok(()));
    }

    #[test]
    fn range_compare_figure_profiles() {
        let x = profile(vec![1, 0, 2]);
        let nv = profile(vec![1, 0, 1]);
        assert!(range_compare(&x, &nv, 1).unwrap().iter().all(Check::passed));
        assert!(range_compare(&x, &x, 1).unwrap().iter().all(Check::passed));
        assert!(range_compare(&x, &nv, 2).is_err());
        let x3 = profile(vec![1, 0, 2, 0]);
        let n3 = profile(vec![1, 0, 1, 0]);
        let r = range_compare(&x3, &n3, 2).unwrap();
        assert!(!r.iter().all(Check::passed));
        assert_eq!(r.iter().find(|c| !c.passed()).unwrap().name, "h2-iso");
    }

    #[test]
    fn integer_mode_sees_torsion() {
        let mut a = profile(vec![1, 0]);
        a.coefficients = Coefficients::Integer;
        let mut b = a.clone();
        b.torsion[1] = vec![BigUint::from(2u8)];
        // Z/2 in degree 1 cannot be hit by a zero group.
        let r = range_compare(&a, &b, 0).unwrap();
        assert!(!r[1].passed());
        let r = range_compare(&b, &a, 0).unwrap();
        assert!(r.iter().all(Check::passed));
        assert_eq!(primes_dividing(&BigUint::from(12u8)), vec![2, 3]);
    }
}
