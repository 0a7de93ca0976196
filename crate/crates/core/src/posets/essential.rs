use std::collections::BTreeSet;

use crate::combinat::Poset;

/// `p ∼ s` read as "comparable or equal".
fn related(p: &Poset, a: usize, b: usize) -> bool {
    a == b || p.comparable(a, b)
}

/// `N(S) = {p : p ∼ s for all s ∈ S}`, ascending.
pub fn neighborhood(p: &Poset, s: &[usize]) -> Vec<usize> {
    (0..p.len())
        .filter(|&x| s.iter().all(|&y| related(p, x, y)))
        .collect()
}

/// `C(S) = N_S(S)`, ascending.
pub fn core(p: &Poset, s: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = s
        .iter()
        .copied()
        .filter(|&x| s.iter().all(|&y| related(p, x, y)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn is_essential(p: &Poset, s: &[usize]) -> bool {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    core(p, &neighborhood(p, &s)) == s
}

/// A chain equal to the core of its neighborhood. Elements ascend by index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EssentialChain {
    pub elements: Vec<usize>,
}

/// Closure of the maximal chains under pairwise intersection.
pub fn essential_chains_by_intersection(p: &Poset) -> Vec<EssentialChain> {
    let maximal: Vec<Vec<usize>> = p
        .maximal_chains()
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    let mut found: BTreeSet<Vec<usize>> = maximal.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for m in &maximal {
                let c: Vec<usize> = a.iter().copied().filter(|x| m.binary_search(x).is_ok()).collect();
                if found.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    found
        .into_iter()
        .map(|elements| EssentialChain { elements })
        .collect()
}

/// Every chain, and the empty chain when `p` is nonempty, filtered by the
/// fixed-point test.
pub fn essential_chains_by_fixed_point(p: &Poset) -> Vec<EssentialChain> {
    let mut candidates: Vec<Vec<usize>> = p
        .chains()
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    if !p.is_empty() {
        candidates.push(Vec::new());
    }
    let mut out: Vec<EssentialChain> = candidates
        .into_iter()
        .filter(|c| is_essential(p, c))
        .map(|elements| EssentialChain { elements })
        .collect();
    out.sort();
    out
}

/// The essential chains of `p`, sorted.
pub fn essential_chains(p: &Poset) -> Vec<EssentialChain> {
    let out = essential_chains_by_intersection(p);
    debug_assert_eq!(out, essential_chains_by_fixed_point(p));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn joinex_base() -> Poset {
        Poset::from_tokens(&["0", "0'", "1", "2"], &[("0", "1"), ("0'", "1"), ("1", "2")]).unwrap()
    }

    #[test]
    fn maximal_chains_are_fixed_points() {
        let p = joinex_base();
        for m in p.maximal_chains() {
            let mut m = m;
            m.sort_unstable();
            assert_eq!(neighborhood(&p, &m), m);
            assert!(is_essential(&p, &m));
        }
    }

    #[test]
    fn empty_set() {
        let p = joinex_base();
        assert_eq!(neighborhood(&p, &[]), vec![0, 1, 2, 3]);
        // 1 and 2 are comparable to everything.
        assert_eq!(core(&p, &[0, 1, 2, 3]), vec![2, 3]);
        assert!(!is_essential(&p, &[]));
    }

    #[test]
    fn joinex_chains() {
        let p = joinex_base();
        let got: Vec<Vec<usize>> = essential_chains(&p).into_iter().map(|c| c.elements).collect();
        // Indices: 0, 0', 1, 2 sort as 0, 0', 1, 2.
        assert_eq!(got, vec![vec![0, 2, 3], vec![1, 2, 3], vec![2, 3]]);
        assert_eq!(essential_chains_by_fixed_point(&p), essential_chains(&p));
    }

    #[test]
    fn chain_has_one_essential_chain() {
        for n in 1..=5 {
            let toks: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let rels: Vec<(String, String)> = (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
            let p = Poset::from_tokens(&toks, &rels).unwrap();
            let all: Vec<usize> = (0..n).collect();
            assert_eq!(
                essential_chains_by_intersection(&p),
                vec![EssentialChain { elements: all }]
            );
            assert_eq!(
                essential_chains_by_fixed_point(&p),
                essential_chains_by_intersection(&p)
            );
        }
    }

    #[test]
    fn antichain_includes_empty() {
        let p = Poset::from_tokens::<&str>(&["a", "b"], &[]).unwrap();
        let e = essential_chains(&p);
        assert_eq!(e.len(), 3);
        assert_eq!(e[0].elements, Vec::<usize>::new());
        assert_eq!(essential_chains_by_fixed_point(&p), e);
    }
}
