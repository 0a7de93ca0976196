use std::collections::HashMap;

use super::complex::{Simplex, SimplicialComplex, VertexId};
use super::poset::{order_complex, Poset};
use crate::error::{Error, Result};

/// A validated order-preserving map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    domain: Poset,
    codomain: Poset,
    assign: Vec<usize>,
}

impl PosetMap {
    /// `assignment` must give an image for every domain element.
    pub fn new(domain: Poset, codomain: Poset, assignment: &HashMap<VertexId, VertexId>) -> Result<Self> {
        let assign = domain
            .elements()
            .iter()
            .map(|p| {
                let q = assignment
                    .get(p)
                    .ok_or_else(|| Error::PartialMap(p.to_string()))?;
                codomain
                    .index_of_id(q)
                    .ok_or_else(|| Error::UnknownElement(q.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        PosetMap::from_indices(domain, codomain, assign)
    }

    pub fn from_indices(domain: Poset, codomain: Poset, assign: Vec<usize>) -> Result<Self> {
        if assign.len() != domain.len() {
            return Err(Error::Invalid(format!(
                "assignment has {} entries for {} elements",
                assign.len(),
                domain.len()
            )));
        }
        for (a, b) in domain.cover_pairs() {
            if !codomain.le(assign[a], assign[b]) {
                return Err(Error::NotOrderPreserving {
                    lower: domain.element(a).to_string(),
                    upper: domain.element(b).to_string(),
                    lower_image: codomain.element(assign[a]).to_string(),
                    upper_image: codomain.element(assign[b]).to_string(),
                });
            }
        }
        Ok(PosetMap {
            domain,
            codomain,
            assign,
        })
    }

    pub fn identity(p: &Poset) -> Self {
        PosetMap {
            domain: p.clone(),
            codomain: p.clone(),
            assign: (0..p.len()).collect(),
        }
    }

    pub fn constant(domain: &Poset, codomain: &Poset, target: usize) -> Self {
        PosetMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            assign: vec![target; domain.len()],
        }
    }

    pub fn domain(&self) -> &Poset {
        &self.domain
    }

    pub fn codomain(&self) -> &Poset {
        &self.codomain
    }

    pub fn apply(&self, p: usize) -> usize {
        self.assign[p]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assign
    }

    pub fn assignment_tokens(&self) -> Vec<(VertexId, VertexId)> {
        self.assign
            .iter()
            .enumerate()
            .map(|(p, &q)| (self.domain.element(p).clone(), self.codomain.element(q).clone()))
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.assign
            .iter()
            .all(|&q| !std::mem::replace(&mut seen[q], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.len() == self.codomain.len() && self.is_injective()
    }

    /// True when bijective and the inverse is order-preserving too.
    pub fn is_isomorphism(&self) -> bool {
        self.is_bijective()
            && self.domain.num_relations() == self.codomain.num_relations()
            && self
                .domain
                .relation_pairs()
                .into_iter()
                .all(|(a, b)| self.codomain.lt(self.assign[a], self.assign[b]))
    }

    /// Domain indices mapping into the given set of codomain indices.
    pub fn preimage(&self, targets: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.codomain.len()];
        for &t in targets {
            mark[t] = true;
        }
        (0..self.domain.len()).filter(|&p| mark[self.assign[p]]).collect()
    }

    /// The induced simplicial map between order complexes.
    pub fn order_complex_map(&self) -> SimplicialMap {
        let dom = order_complex(&self.domain);
        let cod = order_complex(&self.codomain);
        let assign = dom
            .vertices()
            .iter()
            .map(|v| {
                let p = self.domain.index_of_id(v).expect("vertex is element");
                self.codomain.element(self.assign[p]).clone()
            })
            .collect();
        SimplicialMap {
            domain: dom,
            codomain: cod,
            assign,
        }
    }

    pub fn compose(&self, then: &PosetMap) -> Result<PosetMap> {
        if self.codomain != then.domain {
            return Err(Error::Invalid("composable maps need matching posets".into()));
        }
        Ok(PosetMap {
            domain: self.domain.clone(),
            codomain: then.codomain.clone(),
            assign: self.assign.iter().map(|&q| then.assign[q]).collect(),
        })
    }
}

/// A vertex-induced simplicial map. Images of simplices collapse duplicate
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    domain: SimplicialComplex,
    codomain: SimplicialComplex,
    /// Aligned with `domain.vertices()`.
    assign: Vec<VertexId>,
}

impl SimplicialMap {
    pub fn new(
        domain: SimplicialComplex,
        codomain: SimplicialComplex,
        assignment: &HashMap<VertexId, VertexId>,
    ) -> Result<Self> {
        let assign = domain
            .vertices()
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::PartialMap(v.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = SimplicialMap {
            domain,
            codomain,
            assign,
        };
        for f in m.domain.facets() {
            let img = m.image(f);
            if !m.codomain.contains(&img) {
                return Err(Error::NotSimplicial {
                    simplex: f.to_string(),
                    image: img.to_string(),
                });
            }
        }
        Ok(m)
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        SimplicialMap {
            domain: k.clone(),
            codomain: k.clone(),
            assign: k.vertices().to_vec(),
        }
    }

    pub fn domain(&self) -> &SimplicialComplex {
        &self.domain
    }

    pub fn codomain(&self) -> &SimplicialComplex {
        &self.codomain
    }

    pub fn vertex_image(&self, v: &VertexId) -> Option<&VertexId> {
        let i = self.domain.vertices().binary_search(v).ok()?;
        Some(&self.assign[i])
    }

    pub fn assignment(&self) -> HashMap<VertexId, VertexId> {
        self.domain
            .vertices()
            .iter()
            .cloned()
            .zip(self.assign.iter().cloned())
            .collect()
    }

    /// Image vertex set of a domain simplex.
    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::new(
            s.vertices()
                .iter()
                .map(|v| self.vertex_image(v).expect("domain vertex").clone()),
        )
        .expect("nonempty")
    }

    pub fn compose(&self, then: &SimplicialMap) -> Result<SimplicialMap> {
        if self.codomain != then.domain {
            return Err(Error::Invalid("composable maps need matching complexes".into()));
        }
        Ok(SimplicialMap {
            domain: self.domain.clone(),
            codomain: then.codomain.clone(),
            assign: self
                .assign
                .iter()
                .map(|v| then.vertex_image(v).expect("codomain vertex").clone())
                .collect(),
        })
    }

    /// Restriction to a subcomplex of the domain, landing in a subcomplex of
    /// the codomain.
    pub fn restrict(
        &self,
        domain: &SimplicialComplex,
        codomain: &SimplicialComplex,
    ) -> Result<SimplicialMap> {
        let mut a = HashMap::new();
        for v in domain.vertices() {
            let img = self
                .vertex_image(v)
                .ok_or_else(|| Error::UnknownElement(v.to_string()))?;
            a.insert(v.clone(), img.clone());
        }
        SimplicialMap::new(domain.clone(), codomain.clone(), &a)
    }

    /// The largest subcomplex of the domain mapping into `target`.
    pub fn preimage(&self, target: &SimplicialComplex) -> SimplicialComplex {
        let keep: Vec<Simplex> = self
            .domain
            .all_simplices()
            .into_iter()
            .filter(|s| target.contains(&self.image(s)))
            .collect();
        SimplicialComplex::from_closed(&keep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::complex::{cx, v};

    #[test]
    fn poset_map_validation() {
        let p = Poset::from_tokens(&["a", "b"], &[("a", "b")]).unwrap();
        let q = Poset::from_tokens(&["x", "y"], &[("x", "y")]).unwrap();
        let good: HashMap<_, _> = [(v("a"), v("x")), (v("b"), v("y"))].into_iter().collect();
        let f = PosetMap::new(p.clone(), q.clone(), &good).unwrap();
        assert!(f.is_isomorphism());
        let bad: HashMap<_, _> = [(v("a"), v("y")), (v("b"), v("x"))].into_iter().collect();
        assert!(matches!(
            PosetMap::new(p.clone(), q.clone(), &bad),
            Err(Error::NotOrderPreserving { .. })
        ));
        let partial: HashMap<_, _> = [(v("a"), v("x"))].into_iter().collect();
        assert!(matches!(PosetMap::new(p, q, &partial), Err(Error::PartialMap(_))));
    }

    #[test]
    fn simplicial_map_collapses() {
        let tri = cx(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        let pt = cx(&[&["o"]]);
        let a: HashMap<_, _> = [(v("a"), v("o")), (v("b"), v("o")), (v("c"), v("o"))]
            .into_iter()
            .collect();
        let f = SimplicialMap::new(tri.clone(), pt.clone(), &a).unwrap();
        assert_eq!(f.image(&tri.facets()[0]).dim(), 0);
        let edge = cx(&[&["a", "b"]]);
        let g: HashMap<_, _> = [(v("a"), v("a")), (v("b"), v("b")), (v("c"), v("c"))]
            .into_iter()
            .collect();
        assert!(matches!(
            SimplicialMap::new(tri, edge, &g),
            Err(Error::NotSimplicial { .. })
        ));
    }
}
