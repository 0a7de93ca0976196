use std::collections::{BTreeSet, HashMap, HashSet};

use super::completed::{completed_nerve, element_token, CompletedNerve};
use super::cover::{nerve, IndexedCover};
use crate::combinat::{PosetMap, SimplicialMap, VertexId};
use crate::error::{Error, Result};

/// A morphism of covers: a simplicial map of ambients and an index map with
/// `f(V(i)) ⊆ W(φ(i))` for every index.
#[derive(Clone, Debug)]
pub struct CoverMorphism {
    source: IndexedCover,
    target: IndexedCover,
    map: SimplicialMap,
    phi: Vec<usize>,
}

impl CoverMorphism {
    pub fn new(
        source: IndexedCover,
        target: IndexedCover,
        vertex_map: &HashMap<VertexId, VertexId>,
        index_map: &HashMap<VertexId, VertexId>,
    ) -> Result<Self> {
        let map = SimplicialMap::new(source.ambient().clone(), target.ambient().clone(), vertex_map)?;
        let phi = source
            .index_order()
            .iter()
            .map(|i| {
                let j = index_map.get(i).ok_or_else(|| Error::PartialMap(i.to_string()))?;
                target
                    .position(j.as_str())
                    .ok_or_else(|| Error::UnknownElement(j.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, &j) in phi.iter().enumerate() {
            let w = target.member(j);
            if source
                .member(i)
                .facets()
                .iter()
                .any(|s| !w.contains(&map.image(s)))
            {
                return Err(Error::InvalidMorphism {
                    index: source.index(i).to_string(),
                    target: target.index(j).to_string(),
                });
            }
        }
        Ok(CoverMorphism {
            source,
            target,
            map,
            phi,
        })
    }

    pub fn identity(cov: &IndexedCover) -> Self {
        CoverMorphism {
            source: cov.clone(),
            target: cov.clone(),
            map: SimplicialMap::identity(cov.ambient()),
            phi: (0..cov.len()).collect(),
        }
    }

    pub fn source(&self) -> &IndexedCover {
        &self.source
    }

    pub fn target(&self) -> &IndexedCover {
        &self.target
    }

    pub fn ambient_map(&self) -> &SimplicialMap {
        &self.map
    }

    fn image_set(&self, indices: &[usize]) -> Vec<usize> {
        indices
            .iter()
            .map(|&i| self.phi[i])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// `φ` is a bijection and `φ⁻¹` carries nerve faces of the target to
    /// nerve faces of the source.
    pub fn is_equivalence(&self) -> bool {
        let distinct: HashSet<usize> = self.phi.iter().copied().collect();
        if self.phi.len() != self.target.len() || distinct.len() != self.phi.len() {
            return false;
        }
        let mut inverse = vec![0; self.phi.len()];
        for (i, &j) in self.phi.iter().enumerate() {
            inverse[j] = i;
        }
        let source_faces = self.source.face_lookup();
        self.target.nerve_faces().iter().all(|g| {
            let mut pre: Vec<usize> = g.indices.iter().map(|&j| inverse[j]).collect();
            pre.sort_unstable();
            source_faces.contains_key(&pre)
        })
    }

    /// For every source face `F`, `π₀(⋂F) → π₀(⋂φ(F))` is a bijection.
    pub fn is_pi0_bijective(&self) -> bool {
        let target_faces = self.target.face_lookup();
        self.source.nerve_faces().iter().all(|f| {
            let g = &self.target.nerve_faces()[target_faces[&self.image_set(&f.indices)]];
            let hits: HashSet<usize> = f
                .components
                .iter()
                .map(|c| self.component_image(g, &c.rep))
                .collect();
            hits.len() == f.components.len() && hits.len() == g.components.len()
        })
    }

    fn component_image(&self, g: &super::cover::NerveFace, rep: &VertexId) -> usize {
        let img = self.map.vertex_image(rep).expect("ambient vertex");
        g.components
            .iter()
            .position(|c| c.complex.contains_vertex(img))
            .expect("f(⋂F) ⊆ ⋂φ(F)")
    }
}

/// The maps a cover morphism induces on nerves and completed nerves.
#[derive(Clone, Debug)]
pub struct InducedNerveMaps {
    pub nerve_map: SimplicialMap,
    pub completed_map: PosetMap,
    pub source_completed: CompletedNerve,
    pub target_completed: CompletedNerve,
    pub equivalence: bool,
    pub pi0_bijective: bool,
    pub nerve_iso: bool,
    pub completed_iso: bool,
}

/// `F ↦ φ(F)` on nerves and `(F, C) ↦ (φ(F), [f(C)])` on completed nerves.
pub fn induced_nerve_maps(m: &CoverMorphism) -> Result<InducedNerveMaps> {
    let nv = nerve(&m.source);
    let nw = nerve(&m.target);
    let vertex_assign: HashMap<VertexId, VertexId> = nv
        .vertices()
        .iter()
        .map(|v| {
            let i = m.source.position(v.as_str()).expect("nerve vertices are indices");
            (v.clone(), m.target.index(m.phi[i]).clone())
        })
        .collect();
    let nerve_map = SimplicialMap::new(nv, nw, &vertex_assign)?;

    let sc = completed_nerve(&m.source);
    let tc = completed_nerve(&m.target);
    let target_faces = m.target.face_lookup();
    let assign = sc
        .elements
        .iter()
        .map(|e| {
            let img = m.image_set(&e.indices);
            let g = &m.target.nerve_faces()[target_faces[&img]];
            let c = &g.components[m.component_image(g, &e.rep)];
            let tok = element_token(&m.target, &img, &c.rep);
            tc.poset.index_of_id(&tok).expect("image element exists")
        })
        .collect();
    let completed_map = PosetMap::from_indices(sc.poset.clone(), tc.poset.clone(), assign)?;

    let nerve_iso = {
        let n = nerve_map.domain();
        let all = n.all_simplices();
        let images: HashSet<_> = all.iter().map(|s| nerve_map.image(s)).collect();
        n.vertices().len() == nerve_map.codomain().vertices().len()
            && images.len() == all.len()
            && all.iter().all(|s| nerve_map.image(s).len() == s.len())
            && nerve_map.codomain().num_all_simplices() == all.len()
    };
    Ok(InducedNerveMaps {
        equivalence: m.is_equivalence(),
        pi0_bijective: m.is_pi0_bijective(),
        nerve_iso,
        completed_iso: completed_map.is_isomorphism(),
        nerve_map,
        completed_map,
        source_completed: sc,
        target_completed: tc,
    })
}
