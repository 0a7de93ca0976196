use fixedbitset::FixedBitSet;

use crate::combinat::Poset;

fn upper_bounds(q: &Poset, s: &[usize]) -> FixedBitSet {
    let mut ub = FixedBitSet::with_capacity(q.len());
    ub.insert_range(..);
    for &x in s {
        let mut up = q.strictly_above(x).clone();
        up.insert(x);
        ub.intersect_with(&up);
    }
    ub
}

fn minimum_of(q: &Poset, set: &FixedBitSet) -> Option<usize> {
    set.ones().find(|&m| set.ones().all(|u| q.le(m, u)))
}

/// The least common upper bound of `s`, if there is one. The join of the
/// empty set is the minimum of `q`.
pub fn join(q: &Poset, s: &[usize]) -> Option<usize> {
    minimum_of(q, &upper_bounds(q, s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceCertificate {
    pub minimal_elements: Vec<usize>,
    /// Every nonempty bounded-above subset of the minimal elements that has
    /// a join, in lexicographic order.
    pub join_table: Vec<(Vec<usize>, usize)>,
    /// Bounded-above subsets without a join.
    pub failures: Vec<Vec<usize>>,
    pub bounded_below: bool,
}

impl CoherenceCertificate {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty() && self.bounded_below
    }
}

/// Enumerates the nonempty subsets of `M(Q)` depth-first; a subset that is
/// not bounded above ends its branch since no superset is bounded either.
pub fn coherence(q: &Poset) -> CoherenceCertificate {
    let minimal = q.minimal();
    let bounded_below = (0..q.len()).all(|x| minimal.iter().any(|&m| q.le(m, x)));
    let mut join_table = Vec::new();
    let mut failures = Vec::new();
    fn grow(
        q: &Poset,
        minimal: &[usize],
        from: usize,
        current: &mut Vec<usize>,
        table: &mut Vec<(Vec<usize>, usize)>,
        failures: &mut Vec<Vec<usize>>,
    ) {
        for i in from..minimal.len() {
            current.push(minimal[i]);
            let ub = upper_bounds(q, current);
            if ub.count_ones(..) > 0 {
                match minimum_of(q, &ub) {
                    Some(j) => table.push((current.clone(), j)),
                    None => failures.push(current.clone()),
                }
                grow(q, minimal, i + 1, current, table, failures);
            }
            current.pop();
        }
    }
    grow(q, &minimal, 0, &mut Vec::new(), &mut join_table, &mut failures);
    CoherenceCertificate {
        minimal_elements: minimal,
        join_table,
        failures,
        bounded_below,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_join(q: &Poset, s: &[usize]) -> Option<usize> {
        let ub: Vec<usize> = (0..q.len()).filter(|&u| s.iter().all(|&x| q.le(x, u))).collect();
        let mins: Vec<usize> = ub
            .iter()
            .copied()
            .filter(|&m| ub.iter().all(|&u| q.le(m, u)))
            .collect();
        assert!(mins.len() <= 1);
        mins.first().copied()
    }

    #[test]
    fn lattice_is_coherent() {
        // Boolean lattice on two atoms.
        let q = Poset::from_tokens(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap();
        let c = coherence(&q);
        assert!(c.is_valid());
        assert_eq!(c.join_table, vec![(vec![0], 0)]);
    }

    #[test]
    fn bowtie_fails() {
        let q = Poset::from_tokens(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        let c = coherence(&q);
        assert!(!c.is_valid());
        assert_eq!(c.failures, vec![vec![0, 1]]);
        assert_eq!(join(&q, &[0, 1]), brute_join(&q, &[0, 1]));
        assert_eq!(join(&q, &[0]), Some(0));
    }

    #[test]
    fn chain_joins_are_maxima() {
        let q = Poset::from_tokens(&["0", "1", "2"], &[("0", "1"), ("1", "2")]).unwrap();
        assert!(coherence(&q).is_valid());
        assert_eq!(join(&q, &[0, 2]), Some(2));
        assert_eq!(join(&q, &[1, 0]), Some(1));
        assert_eq!(join(&q, &[]), Some(0));
    }

    #[test]
    fn join_matches_brute_force() {
        let q = Poset::from_tokens(
            &["a", "b", "c", "x", "y", "z"],
            &[
                ("a", "x"),
                ("b", "x"),
                ("b", "y"),
                ("c", "y"),
                ("x", "z"),
                ("y", "z"),
            ],
        )
        .unwrap();
        for mask in 0u32..(1 << q.len()) {
            let s: Vec<usize> = (0..q.len()).filter(|i| mask >> i & 1 == 1).collect();
            assert_eq!(join(&q, &s), brute_join(&q, &s), "{s:?}");
        }
    }
}
