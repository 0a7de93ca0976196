use std::collections::HashMap;

use super::cover::{complex_token, IndexedCover};
use crate::combinat::{Face, Poset, PosetMap, SimplicialComplex, SimplicialSetTrunc, VertexId};

/// An element `(F, C)`: a nerve face and one component of its intersection,
/// named by the component's least vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletedNerveElement {
    pub indices: Vec<usize>,
    pub rep: VertexId,
    pub component: SimplicialComplex,
}

/// The completed nerve. `elements[i]` is poset element `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletedNerve {
    pub elements: Vec<CompletedNerveElement>,
    pub poset: Poset,
}

impl CompletedNerve {
    pub fn find(&self, indices: &[usize], rep: &VertexId) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| e.indices == indices && &e.rep == rep)
    }
}

pub(crate) fn element_token(cov: &IndexedCover, indices: &[usize], rep: &VertexId) -> VertexId {
    VertexId::new(&format!("{}@{}", cov.set_token(indices), rep)).expect("tokens have no whitespace")
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// `(F, C) <= (F', C')` iff `F ⊆ F'` and `C' ⊆ C`. Containment of `C'` is
/// decided by where its representative lands, which suffices because `C'` is
/// connected and lies in `⋂F`.
pub fn completed_nerve(cov: &IndexedCover) -> CompletedNerve {
    let mut elements: Vec<(VertexId, CompletedNerveElement)> = cov
        .nerve_faces()
        .iter()
        .flat_map(|f| {
            f.components.iter().map(move |c| {
                (
                    element_token(cov, &f.indices, &c.rep),
                    CompletedNerveElement {
                        indices: f.indices.clone(),
                        rep: c.rep.clone(),
                        component: c.complex.clone(),
                    },
                )
            })
        })
        .collect();
    elements.sort_by(|a, b| a.0.cmp(&b.0));
    let mut rels = Vec::new();
    for (ta, a) in &elements {
        for (tb, b) in &elements {
            if a.indices.len() < b.indices.len()
                && is_subset(&a.indices, &b.indices)
                && a.component.contains_vertex(&b.rep)
            {
                rels.push((ta.clone(), tb.clone()));
            }
        }
    }
    let poset = Poset::new(elements.iter().map(|e| e.0.clone()), rels).expect("strict inclusion is acyclic");
    CompletedNerve {
        elements: elements.into_iter().map(|e| e.1).collect(),
        poset,
    }
}

/// The simplicial set whose nondegenerate `k`-simplices are strictly
/// increasing index tuples of length `k + 1` with a component of their
/// intersection, truncated at `d`.
pub fn completed_nerve_sset(cov: &IndexedCover, d: usize) -> SimplicialSetTrunc {
    let faces = cov.nerve_faces();
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); d + 1];
    let mut keys: Vec<Vec<(Vec<usize>, VertexId)>> = vec![Vec::new(); d + 1];
    for f in faces {
        let k = f.indices.len() - 1;
        if k > d {
            continue;
        }
        for c in &f.components {
            labels[k].push(element_token(cov, &f.indices, &c.rep).to_string());
            keys[k].push((f.indices.clone(), c.rep.clone()));
        }
    }
    let position: Vec<HashMap<(Vec<usize>, VertexId), usize>> = keys
        .iter()
        .map(|lvl| lvl.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
        .collect();
    let lookup = cov.face_lookup();
    let mut face_lists: Vec<Vec<Vec<Face>>> = vec![Vec::new(); d + 1];
    for k in 1..=d {
        for (indices, rep) in &keys[k] {
            let list = (0..=k)
                .map(|i| {
                    let mut sub = indices.clone();
                    sub.remove(i);
                    let face = &faces[lookup[&sub]];
                    let target = face
                        .components
                        .iter()
                        .find(|c| c.complex.contains_vertex(rep))
                        .expect("components push forward");
                    Face::Simplex(position[k - 1][&(sub, target.rep.clone())])
                })
                .collect();
            face_lists[k].push(list);
        }
    }
    SimplicialSetTrunc::new(labels, face_lists).expect("face maps of a simplicial set")
}

/// The Grothendieck construction of `π₀` over the opposite of the nerve,
/// with its comparison map to the opposite completed nerve.
#[derive(Clone, Debug)]
pub struct GrothendieckModel {
    pub poset: Poset,
    pub to_completed_op: PosetMap,
    pub is_isomorphism: bool,
}

/// Objects are `(F, c)` with `c ∈ π₀(⋂F)`, numbered by position; `(F, c) <=
/// (F', c')` when `F' ⊆ F` and the inclusion `⋂F → ⋂F'` sends `c` to `c'`.
pub fn grothendieck_model(cov: &IndexedCover) -> GrothendieckModel {
    let faces = cov.nerve_faces();
    let mut objects: Vec<(usize, usize)> = Vec::new();
    for (fi, f) in faces.iter().enumerate() {
        for ci in 0..f.components.len() {
            objects.push((fi, ci));
        }
    }
    let token = |&(fi, ci): &(usize, usize)| {
        VertexId::new(&format!("{}#{}", cov.set_token(&faces[fi].indices), ci)).expect("token")
    };
    // π₀ of an inclusion: follow any vertex of the source component.
    let pi0 = |fi: usize, ci: usize, gi: usize| -> usize {
        let probe = faces[fi].components[ci]
            .complex
            .vertices()
            .last()
            .expect("components are nonempty");
        faces[gi]
            .components
            .iter()
            .position(|c| c.complex.contains_vertex(probe))
            .expect("inclusion of intersections")
    };
    let poset = Poset::from_relation(&objects, token, |&(fa, ca), &(fb, cb)| {
        let (a, b) = (&faces[fa].indices, &faces[fb].indices);
        b.len() < a.len() && is_subset(b, a) && pi0(fa, ca, fb) == cb
    })
    .expect("strict inclusion is acyclic");
    let completed = completed_nerve(cov);
    let target = completed.poset.opposite();
    let assign: Vec<usize> = poset
        .elements()
        .iter()
        .map(|t| {
            let &(fi, ci) = objects.iter().find(|o| &token(o) == t).expect("own token");
            let f = &faces[fi];
            let tok = element_token(cov, &f.indices, &f.components[ci].rep);
            target.index_of_id(&tok).expect("every (F, c) is an element")
        })
        .collect();
    let to_completed_op =
        PosetMap::from_indices(poset.clone(), target, assign).expect("order-preserving comparison");
    let is_isomorphism = to_completed_op.is_isomorphism();
    GrothendieckModel {
        poset,
        to_completed_op,
        is_isomorphism,
    }
}

/// The poset of distinct component subcomplexes under inclusion, with the
/// map from the opposite completed nerve.
#[derive(Clone, Debug)]
pub struct Vbar {
    pub poset: Poset,
    /// Aligned with `poset` indices.
    pub members: Vec<SimplicialComplex>,
    pub q: PosetMap,
}

pub fn vbar(cov: &IndexedCover) -> Vbar {
    let completed = completed_nerve(cov);
    let mut members: Vec<SimplicialComplex> = Vec::new();
    for e in &completed.elements {
        if !members.contains(&e.component) {
            members.push(e.component.clone());
        }
    }
    let poset = Poset::from_relation(&members, complex_token, |a, b| a != b && a.is_subcomplex_of(b))
        .expect("strict inclusion is acyclic");
    let members: Vec<SimplicialComplex> = poset
        .elements()
        .iter()
        .map(|t| {
            members
                .iter()
                .find(|m| &complex_token(m) == t)
                .expect("own token")
                .clone()
        })
        .collect();
    let assign = completed
        .elements
        .iter()
        .map(|e| {
            poset
                .index_of_id(&complex_token(&e.component))
                .expect("component listed")
        })
        .collect();
    let q = PosetMap::from_indices(completed.poset.opposite(), poset.clone(), assign)
        .expect("q is order-preserving");
    Vbar { poset, members, q }
}
