use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use super::complex::{Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

/// A finite strict partial order.
///
/// Elements are kept sorted by token, so element indices are canonical.
/// Strict up- and down-sets are stored transitively closed as bit rows.
#[derive(Clone)]
pub struct Poset {
    elements: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel: Vec<String> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.elements[a], self.elements[b]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.elements)
            .field("covers", &rel)
            .finish()
    }
}

impl Poset {
    /// Builds the order generated by `relations` (each pair reads `a < b`).
    pub fn new(
        elements: impl IntoIterator<Item = VertexId>,
        relations: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut elements: Vec<VertexId> = elements.into_iter().collect();
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateToken(w[0].to_string()));
        }
        let index: HashMap<VertexId, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut edges = Vec::new();
        for (a, b) in relations {
            let ia = *index
                .get(&a)
                .ok_or_else(|| Error::UnknownElement(a.to_string()))?;
            let ib = *index
                .get(&b)
                .ok_or_else(|| Error::UnknownElement(b.to_string()))?;
            edges.push((ia, ib));
        }
        Poset::from_edges(elements, index, &edges)
    }

    /// Convenience constructor from string tokens.
    pub fn from_tokens<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Self> {
        let els = elements
            .iter()
            .map(|e| VertexId::new(e.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let rels = relations
            .iter()
            .map(|(a, b)| Ok((VertexId::new(a.as_ref())?, VertexId::new(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::new(els, rels)
    }

    /// The order on `elements` given by a strict comparison predicate, which
    /// must already be transitive and irreflexive.
    pub fn from_relation<T>(
        items: &[T],
        token: impl Fn(&T) -> VertexId,
        less: impl Fn(&T, &T) -> bool,
    ) -> Result<Self> {
        let tokens: Vec<VertexId> = items.iter().map(&token).collect();
        let mut rels = Vec::new();
        for (i, a) in items.iter().enumerate() {
            for (j, b) in items.iter().enumerate() {
                if i != j && less(a, b) {
                    rels.push((tokens[i].clone(), tokens[j].clone()));
                }
            }
        }
        Poset::new(tokens, rels)
    }

    fn from_edges(
        elements: Vec<VertexId>,
        index: HashMap<VertexId, usize>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let n = elements.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in edges {
            if a == b {
                return Err(Error::Cycle(vec![
                    elements[a].to_string(),
                    elements[a].to_string(),
                ]));
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = queue.pop_front() {
            topo.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if topo.len() < n {
            return Err(Error::Cycle(find_cycle(&elements, &succ, &indeg)));
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in topo.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            for &y in &succ[x] {
                row.insert(y);
                row.union_with(&up[y]);
            }
            up[x] = row;
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        Ok(Poset {
            elements,
            index,
            up,
            down,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[VertexId] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &VertexId {
        &self.elements[i]
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        let v = VertexId::new(token).ok()?;
        self.index.get(&v).copied()
    }

    pub fn index_of_id(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub(crate) fn require(&self, token: &str) -> Result<usize> {
        self.index_of(token)
            .ok_or_else(|| Error::UnknownElement(token.to_string()))
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    /// Comparable or equal.
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.lt(b, a)
    }

    /// Strict upper set as a bit row.
    pub fn strictly_above(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn strictly_below(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    /// Number of strict relations `a < b`.
    pub fn num_relations(&self) -> usize {
        self.up.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.up[a].ones().map(move |b| (a, b)))
            .collect()
    }

    /// Hasse diagram edges `(a, b)` with `b` covering `a`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            let mut reach = FixedBitSet::with_capacity(self.len());
            for z in self.up[a].ones() {
                reach.union_with(&self.up[z]);
            }
            for b in self.up[a].ones() {
                if !reach.contains(b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_clear()).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_clear()).collect()
    }

    /// `{p : p >= q}` as sorted indices.
    pub fn up_indices(&self, q: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.up[q].ones().collect();
        v.push(q);
        v.sort_unstable();
        v
    }

    pub fn down_indices(&self, q: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.down[q].ones().collect();
        v.push(q);
        v.sort_unstable();
        v
    }

    pub fn star_indices(&self, x: usize) -> Vec<usize> {
        let mut row = self.up[x].clone();
        row.union_with(&self.down[x]);
        row.insert(x);
        row.ones().collect()
    }

    pub fn upset(&self, q: &str) -> Result<Poset> {
        Ok(self.induced(&self.up_indices(self.require(q)?)))
    }

    pub fn downset(&self, q: &str) -> Result<Poset> {
        Ok(self.induced(&self.down_indices(self.require(q)?)))
    }

    pub fn star(&self, x: &str) -> Result<Poset> {
        Ok(self.induced(&self.star_indices(self.require(x)?)))
    }

    /// The induced subposet on the given element indices.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let n = keep.len();
        let elements: Vec<VertexId> = keep.iter().map(|&i| self.elements[i].clone()).collect();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, &ia) in keep.iter().enumerate() {
            for (b, &ib) in keep.iter().enumerate() {
                if self.lt(ia, ib) {
                    up[a].insert(b);
                    down[b].insert(a);
                }
            }
        }
        Poset {
            elements,
            index,
            up,
            down,
        }
    }

    pub fn induced_by_tokens<S: AsRef<str>>(&self, keep: &[S]) -> Result<Poset> {
        let idx = keep
            .iter()
            .map(|t| self.require(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.induced(&idx))
    }

    pub fn opposite(&self) -> Poset {
        Poset {
            elements: self.elements.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Classes of the equivalence generated by comparability, each sorted,
    /// ordered by least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut class = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for y in self.up[x].ones().chain(self.down[x].ones()) {
                    if !seen[y] {
                        seen[y] = true;
                        class.push(y);
                        stack.push(y);
                    }
                }
            }
            class.sort_unstable();
            out.push(class);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Maximal chains as ascending index lists, by depth-first extension along
    /// covers from each minimal element, in lexicographic order.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut upper_covers: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (a, b) in self.cover_pairs() {
            upper_covers[a].push(b);
        }
        let mut out = Vec::new();
        let mut path = Vec::new();
        fn extend(covers: &[Vec<usize>], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let last = *path.last().expect("nonempty path");
            if covers[last].is_empty() {
                out.push(path.clone());
                return;
            }
            for &b in &covers[last] {
                path.push(b);
                extend(covers, path, out);
                path.pop();
            }
        }
        for m in self.minimal() {
            path.push(m);
            extend(&upper_covers, &mut path, &mut out);
            path.pop();
        }
        out.sort();
        out
    }

    /// Every nonempty chain as an ascending index list.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn grow(p: &Poset, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(chain.clone());
            let last = *chain.last().expect("nonempty");
            for b in p.up[last].ones() {
                chain.push(b);
                grow(p, chain, out);
                chain.pop();
            }
        }
        for a in 0..self.len() {
            let mut chain = vec![a];
            grow(self, &mut chain, &mut out);
        }
        out
    }

    pub fn is_chain(&self, set: &[usize]) -> bool {
        set.iter()
            .tuple_combinations()
            .all(|(&a, &b)| self.comparable(a, b))
    }

    pub fn has_minimum(&self) -> bool {
        self.minimal().len() == 1 && !self.is_empty()
    }

    pub fn has_maximum(&self) -> bool {
        self.maximal().len() == 1 && !self.is_empty()
    }

    /// Simplex on the tokens of the given indices.
    pub(crate) fn simplex_of(&self, idx: &[usize]) -> Simplex {
        Simplex::new(idx.iter().map(|&i| self.elements[i].clone())).expect("nonempty chain")
    }

    /// Ascending-token relation list suitable for serialization.
    pub fn cover_relation_tokens(&self) -> Vec<(VertexId, VertexId)> {
        self.cover_pairs()
            .into_iter()
            .map(|(a, b)| (self.elements[a].clone(), self.elements[b].clone()))
            .collect()
    }
}

fn find_cycle(elements: &[VertexId], succ: &[Vec<usize>], indeg: &[usize]) -> Vec<String> {
    // Every vertex left with positive in-degree after Kahn's pass lies on or
    // downstream of a cycle; walking backwards from one must revisit a vertex.
    let n = elements.len();
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for (a, ss) in succ.iter().enumerate() {
        if indeg[a] == 0 {
            continue;
        }
        for &b in ss {
            if indeg[b] > 0 {
                pred[b] = Some(a);
            }
        }
    }
    let start = (0..n).find(|&i| indeg[i] > 0).expect("cycle exists");
    let mut seen = vec![false; n];
    let mut x = start;
    while !seen[x] {
        seen[x] = true;
        x = pred[x].expect("remaining vertex has a remaining predecessor");
    }
    let mut cycle = vec![x];
    let mut y = pred[x].expect("on cycle");
    while y != x {
        cycle.push(y);
        y = pred[y].expect("on cycle");
    }
    cycle.reverse();
    cycle.insert(0, x);
    cycle.into_iter().map(|i| elements[i].to_string()).collect()
}

/// The simplicial complex of nonempty chains of `p`.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    SimplicialComplex::from_simplices(p.maximal_chains().iter().map(|c| p.simplex_of(c)))
}

/// All simplices of `k` ordered by inclusion; tokens are the simplex tokens.
pub fn face_poset(k: &SimplicialComplex) -> Poset {
    let simplices = k.all_simplices();
    let token = |s: &Simplex| VertexId::new(&s.token()).expect("simplex tokens have no whitespace");
    let tokens: Vec<VertexId> = simplices.iter().map(token).collect();
    let mut rels = Vec::new();
    for (i, s) in simplices.iter().enumerate() {
        for j in 0..s.len() {
            if let Some(f) = s.delete(j) {
                let fi = k.position(&f).expect("face of simplex");
                let offset: usize = (0..f.dim()).map(|d| k.num_simplices(d)).sum();
                rels.push((tokens[offset + fi].clone(), tokens[i].clone()));
            }
        }
    }
    Poset::new(tokens, rels).expect("inclusion is acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::complex::cx;
    use crate::fixtures::square_circle_poset;
    use proptest::prelude::*;

    fn chain(tokens: &[&str]) -> Poset {
        let rels: Vec<(&str, &str)> = tokens.iter().copied().tuple_windows().collect();
        Poset::from_tokens(tokens, &rels).unwrap()
    }

    #[test]
    fn closure_and_cycle_detection() {
        let p = chain(&["a", "b", "c"]);
        assert!(p.lt(0, 2));
        assert_eq!(p.num_relations(), 3);
        assert_eq!(p.cover_pairs().len(), 2);
        let err = Poset::from_tokens(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap_err();
        match err {
            Error::Cycle(c) => {
                assert_eq!(c.first(), c.last());
                assert_eq!(c.len(), 4);
            }
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            Poset::from_tokens(&["a", "a"], &[]),
            Err(Error::DuplicateToken(_))
        ));
        assert!(matches!(
            Poset::from_tokens(&["a"], &[("a", "z")]),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn order_complex_examples() {
        let single = Poset::from_tokens(&["a"], &[]).unwrap();
        assert_eq!(order_complex(&single), cx(&[&["a"]]));
        let anti = Poset::from_tokens(&["a", "b"], &[]).unwrap();
        assert_eq!(order_complex(&anti), cx(&[&["a"], &["b"]]));
        let sq = order_complex(&square_circle_poset());
        assert_eq!(sq, cx(&[&["a", "c"], &["b", "c"], &["a", "d"], &["b", "d"]]));
    }

    #[test]
    fn face_poset_examples() {
        let edge = face_poset(&cx(&[&["a", "b"]]));
        assert_eq!(edge.len(), 3);
        assert_eq!(edge.cover_pairs().len(), 2);
        let tri = cx(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        let fp = face_poset(&tri);
        assert_eq!(fp.len(), 6);
        let sd = order_complex(&fp);
        assert_eq!(sd.vertices().len(), 6);
        assert_eq!(sd.facets().len(), 6);
    }

    #[test]
    fn components_and_stars() {
        let anti = Poset::from_tokens(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(anti.components().len(), 3);
        assert_eq!(square_circle_poset().components().len(), 1);
        let p = chain(&["a", "b", "c"]);
        assert_eq!(p.star("b").unwrap(), p);
        assert_eq!(p.upset("a").unwrap(), p);
        assert_eq!(p.downset("b").unwrap(), chain(&["a", "b"]));
        let iso = Poset::from_tokens(&["x", "y"], &[("x", "y")]).unwrap();
        let lone = Poset::from_tokens(&["x", "y", "z"], &[("x", "y")]).unwrap();
        assert_eq!(lone.star("z").unwrap().len(), 1);
        assert_eq!(lone.induced_by_tokens(&["x", "y"]).unwrap(), iso);
        assert!(p.star("q").is_err());
    }

    #[test]
    fn opposite_reverses() {
        let p = chain(&["a", "b"]);
        let op = p.opposite();
        assert!(op.lt(1, 0));
        assert_eq!(op.opposite(), p);
        assert_eq!(order_complex(&op), order_complex(&p));
    }

    #[test]
    fn maximal_chains_of_square_circle() {
        let p = square_circle_poset();
        let chains = p.maximal_chains();
        assert_eq!(chains, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        assert_eq!(p.chains().len(), 8);
    }

    fn arb_poset() -> impl Strategy<Value = Poset> {
        (1usize..8, prop::collection::vec(any::<bool>(), 28)).prop_map(|(n, bits)| {
            let toks: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let mut rels = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        rels.push((toks[i].clone(), toks[j].clone()));
                    }
                    k += 1;
                }
            }
            Poset::from_tokens(&toks, &rels).unwrap()
        })
    }

    proptest! {
        #[test]
        fn closure_is_transitive_and_irreflexive(p in arb_poset()) {
            for a in 0..p.len() {
                prop_assert!(!p.lt(a, a));
                for b in p.strictly_above(a).ones() {
                    prop_assert!(!p.lt(b, a));
                    for c in p.strictly_above(b).ones() {
                        prop_assert!(p.lt(a, c));
                    }
                }
            }
        }

        #[test]
        fn order_complex_simplices_are_chains(p in arb_poset()) {
            let k = order_complex(&p);
            let chains = p.chains();
            prop_assert_eq!(k.num_all_simplices(), chains.len());
            prop_assert_eq!(k.components().len(), p.components().len());
        }

        #[test]
        fn complex_components_match_face_poset(p in arb_poset()) {
            let k = order_complex(&p);
            prop_assert_eq!(k.components().len(), face_poset(&k).components().len());
        }
    }
}
