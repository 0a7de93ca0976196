use std::collections::BTreeMap;

use super::coherence::coherence;
use super::subset_token;
use crate::combinat::{order_complex, Poset, PosetMap};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::homology::{acyclicity_certificate, induced_map_with, Coefficients};
use crate::verdict::{Check, Verdict};

/// `f⁻¹(Q_{≥q})` as an induced subposet of the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuillenFiber {
    pub over: usize,
    /// Ascending domain indices.
    pub elements: Vec<usize>,
    pub poset: Poset,
}

impl QuillenFiber {
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn quillen_fibers(f: &PosetMap) -> Vec<QuillenFiber> {
    let q = f.codomain();
    (0..q.len())
        .map(|over| {
            let elements = f.preimage(&q.up_indices(over));
            QuillenFiber {
                over,
                poset: f.domain().induced(&elements),
                elements,
            }
        })
        .collect()
}

/// Which family of preimages the hypotheses range over. The parameter is the
/// connectivity required of the basic fibers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberMode {
    /// Every `f⁻¹(Q_{≥q})` is `k`-acyclic.
    Quillen(i64),
    /// `f⁻¹(Q_{≥∨μ})` is `(n − |μ| + 1)`-acyclic for bounded-above `μ ⊆ M(Q)`.
    Copo(i64),
    /// `f⁻¹(m₁ ∩ ⋯ ∩ m_k)` is `(n − k + 1)`-acyclic for distinct maximal
    /// chains.
    Achain(i64),
}

impl FiberMode {
    fn n(self) -> i64 {
        match self {
            FiberMode::Quillen(n) | FiberMode::Copo(n) | FiberMode::Achain(n) => n,
        }
    }
}

struct Item {
    name: String,
    what: String,
    elements: Vec<usize>,
    need: i64,
}

fn quillen_items(f: &PosetMap, k: i64) -> Vec<Item> {
    let q = f.codomain();
    quillen_fibers(f)
        .into_iter()
        .map(|fib| Item {
            name: format!("hypothesis/quillen/{}", q.element(fib.over)),
            what: format!("fiber over {}", q.element(fib.over)),
            elements: fib.elements,
            need: k,
        })
        .collect()
}

/// Distinct joins, each with the smallest subset realizing it; the smallest
/// subset carries the strictest requirement.
fn copo_items(f: &PosetMap, n: i64) -> Result<Vec<Item>> {
    let q = f.codomain();
    let cert = coherence(q);
    if !cert.is_valid() {
        let w = cert
            .failures
            .first()
            .map(|s| subset_token(q, s))
            .unwrap_or_default();
        return Err(Error::Incoherent(format!("{w} has no join")));
    }
    let mut best: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (s, j) in cert.join_table {
        let e = best.entry(j).or_insert_with(|| s.clone());
        if s.len() < e.len() {
            *e = s;
        }
    }
    Ok(best
        .into_iter()
        .map(|(j, s)| Item {
            name: format!("hypothesis/copo/{}", q.element(j)),
            what: format!("fiber over {} = ∨{}", q.element(j), subset_token(q, &s)),
            elements: f.preimage(&q.up_indices(j)),
            need: n - s.len() as i64 + 1,
        })
        .collect())
}

/// Each distinct intersection of maximal chains with the least number of
/// chains realizing it, found breadth-first.
fn chain_intersections(q: &Poset) -> BTreeMap<Vec<usize>, usize> {
    let maximal: Vec<Vec<usize>> = q
        .maximal_chains()
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    let mut depth: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut frontier = Vec::new();
    for m in &maximal {
        if depth.insert(m.clone(), 1).is_none() {
            frontier.push(m.clone());
        }
    }
    let mut k = 1;
    while !frontier.is_empty() {
        k += 1;
        let mut next = Vec::new();
        for a in &frontier {
            for m in &maximal {
                let c: Vec<usize> = a.iter().copied().filter(|x| m.binary_search(x).is_ok()).collect();
                if !depth.contains_key(&c) {
                    depth.insert(c.clone(), k);
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    depth
}

fn achain_items(f: &PosetMap, n: i64) -> Vec<Item> {
    let q = f.codomain();
    chain_intersections(q)
        .into_iter()
        .map(|(c, k)| Item {
            name: format!("hypothesis/achain/{}", subset_token(q, &c)),
            what: format!("preimage of {} (k = {k})", subset_token(q, &c)),
            elements: f.preimage(&c),
            need: n - k as i64 + 1,
        })
        .collect()
}

pub fn verify_fiber(f: &PosetMap, mode: FiberMode, coeffs: Coefficients) -> Result<Verdict> {
    verify_fiber_with(f, mode, coeffs, Execution::default())
}

/// Hypothesis checks per fiber, then, if they all hold, the homological
/// conclusion for `Δf`: iso through `n` and epi in degree `n + 1`.
pub fn verify_fiber_with(
    f: &PosetMap,
    mode: FiberMode,
    coeffs: Coefficients,
    exec: Execution,
) -> Result<Verdict> {
    if !coeffs.is_field() {
        return Err(Error::NotAField);
    }
    let items = match mode {
        FiberMode::Quillen(k) => quillen_items(f, k),
        FiberMode::Copo(n) => copo_items(f, n)?,
        FiberMode::Achain(n) => achain_items(f, n),
    };
    let p = f.domain();
    let checks = exec.map(&items, |it| {
        if it.elements.is_empty() && it.need <= -2 {
            return Check::skipped(&it.name, format!("{} is empty", it.what));
        }
        let k = order_complex(&p.induced(&it.elements));
        match acyclicity_certificate(&k, it.need, coeffs) {
            Ok(()) => Check::pass(&it.name),
            Err(e) => Check::fail(&it.name, format!("{} is not {}-acyclic: {e}", it.what, it.need))
                .with_numbers("degree", vec![e.degree()]),
        }
    });
    let mut verdict = Verdict::new(checks);
    let n = mode.n();
    let names: Vec<String> = (0..=n)
        .map(|k| format!("conclusion/h{k}-iso"))
        .chain((n + 1 >= 0).then(|| format!("conclusion/h{}-epi", n + 1)))
        .collect();
    if !verdict.passed() {
        for name in names {
            verdict.push(Check::skipped(name, "hypotheses failed"));
        }
        return Ok(verdict);
    }
    let top = (n + 1).max(0) as usize;
    let r = induced_map_with(&f.order_complex_map(), coeffs, top, exec)?;
    for k in 0..=n {
        verdict.push(Check::from_bool(
            format!("conclusion/h{k}-iso"),
            r.iso_through(k),
            || format!("induced map is not an isomorphism in degree {k}"),
        ));
    }
    if n + 1 >= 0 {
        verdict.push(Check::from_bool(
            format!("conclusion/h{}-epi", n + 1),
            r.epi_at(n + 1),
            || format!("induced map is not onto in degree {}", n + 1),
        ));
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Status;

    fn joinex_base() -> Poset {
        Poset::from_tokens(&["0", "0'", "1", "2"], &[("0", "1"), ("0'", "1"), ("1", "2")]).unwrap()
    }

    #[test]
    fn identity_fibers_are_cones() {
        let q = joinex_base();
        let f = PosetMap::identity(&q);
        for fib in quillen_fibers(&f) {
            assert_eq!(fib.elements, q.up_indices(fib.over));
            assert!(fib.poset.has_minimum());
        }
        for mode in [FiberMode::Quillen(2), FiberMode::Achain(2)] {
            let v = verify_fiber(&f, mode, Coefficients::Rational).unwrap();
            assert!(v.passed(), "{mode:?}: {v:?}");
        }
    }

    #[test]
    fn constant_to_maximum() {
        let q = joinex_base();
        let f = PosetMap::constant(&q, &q, q.index_of("2").unwrap());
        // Every cone contains the maximum.
        for fib in quillen_fibers(&f) {
            assert_eq!(fib.poset, q);
        }
    }

    #[test]
    fn incoherent_codomain_rejected() {
        let q = Poset::from_tokens(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        let f = PosetMap::identity(&q);
        assert!(matches!(
            verify_fiber(&f, FiberMode::Copo(1), Coefficients::Rational),
            Err(Error::Incoherent(_))
        ));
        assert_eq!(
            verify_fiber(&f, FiberMode::Copo(1), Coefficients::Integer),
            Err(Error::NotAField)
        );
    }

    #[test]
    fn chain_intersection_depths() {
        let q = joinex_base();
        let d = chain_intersections(&q);
        assert_eq!(d.get(&vec![2, 3]), Some(&2));
        assert_eq!(d.get(&vec![0, 2, 3]), Some(&1));
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn failing_hypotheses_skip_conclusions() {
        // Two points over a one-point codomain: the fiber is S⁰.
        let p = Poset::from_tokens::<&str>(&["x", "y"], &[]).unwrap();
        let q = Poset::from_tokens::<&str>(&["o"], &[]).unwrap();
        let f = PosetMap::constant(&p, &q, 0);
        let v = verify_fiber(&f, FiberMode::Quillen(0), Coefficients::Rational).unwrap();
        assert_eq!(v.get("hypothesis/quillen/o").unwrap().status, Status::Fail);
        assert_eq!(v.get("conclusion/h1-epi").unwrap().status, Status::Skipped);
    }
}
