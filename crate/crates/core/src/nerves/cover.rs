use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use itertools::Itertools;

use crate::combinat::{Component, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// A family of subcomplexes of a fixed ambient complex, indexed by a totally
/// ordered set of tokens. The same subcomplex may appear under two indices.
#[derive(Clone)]
pub struct IndexedCover {
    ambient: SimplicialComplex,
    index_order: Vec<VertexId>,
    members: Vec<SimplicialComplex>,
    full: bool,
    faces: OnceLock<Arc<Vec<NerveFace>>>,
}

impl PartialEq for IndexedCover {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.index_order == other.index_order
            && self.members == other.members
    }
}

impl Eq for IndexedCover {}

impl std::fmt::Debug for IndexedCover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IndexedCover")
            .field("ambient", &self.ambient)
            .field("index_order", &self.index_order)
            .field("members", &self.members)
            .finish()
    }
}

/// A nonempty index set (ascending positions in the index order) with
/// nonempty intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveFace {
    pub indices: Vec<usize>,
    pub intersection: SimplicialComplex,
    pub components: Vec<Component>,
}

impl IndexedCover {
    pub fn new(
        ambient: SimplicialComplex,
        index_order: Vec<VertexId>,
        members: Vec<SimplicialComplex>,
    ) -> Result<Self> {
        if index_order.len() != members.len() {
            return Err(Error::Invalid(format!(
                "{} indices for {} members",
                index_order.len(),
                members.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for i in &index_order {
            if !seen.insert(i) {
                return Err(Error::DuplicateToken(i.to_string()));
            }
        }
        for (i, m) in index_order.iter().zip(&members) {
            if let Some(s) = m.facets().iter().find(|s| !ambient.contains(s)) {
                return Err(Error::NotSubcomplex {
                    index: i.to_string(),
                    simplex: s.to_string(),
                });
            }
        }
        let full = ambient
            .facets()
            .iter()
            .all(|f| members.iter().any(|m| m.contains(f)));
        Ok(IndexedCover {
            ambient,
            index_order,
            members,
            full,
            faces: OnceLock::new(),
        })
    }

    pub fn ambient(&self) -> &SimplicialComplex {
        &self.ambient
    }

    pub fn index_order(&self) -> &[VertexId] {
        &self.index_order
    }

    pub fn members(&self) -> &[SimplicialComplex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index(&self, i: usize) -> &VertexId {
        &self.index_order[i]
    }

    pub fn member(&self, i: usize) -> &SimplicialComplex {
        &self.members[i]
    }

    pub fn position(&self, token: &str) -> Option<usize> {
        self.index_order.iter().position(|t| t.as_str() == token)
    }

    pub fn is_full_cover(&self) -> bool {
        self.full
    }

    /// `Ok` for a full cover; otherwise names an uncovered ambient facet.
    pub fn require_full(&self) -> Result<()> {
        match self
            .ambient
            .facets()
            .iter()
            .find(|f| !self.members.iter().any(|m| m.contains(f)))
        {
            None => Ok(()),
            Some(f) => Err(Error::NotFullCover(f.to_string())),
        }
    }

    /// The same cover with indices listed in `order`.
    pub fn reordered(&self, order: &[VertexId]) -> Result<Self> {
        let pos: HashMap<&VertexId, usize> =
            self.index_order.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut members = Vec::with_capacity(order.len());
        for t in order {
            let i = pos.get(t).ok_or_else(|| Error::UnknownElement(t.to_string()))?;
            members.push(self.members[*i].clone());
        }
        IndexedCover::new(self.ambient.clone(), order.to_vec(), members)
    }

    /// `⋂F`; the ambient complex for the empty family.
    pub fn intersection(&self, indices: &[usize]) -> SimplicialComplex {
        let mut it = indices.iter();
        let Some(&first) = it.next() else {
            return self.ambient.clone();
        };
        it.fold(self.members[first].clone(), |acc, &i| {
            acc.intersection(&self.members[i])
        })
    }

    /// Indices of members containing `s`.
    pub fn indices_containing(&self, s: &Simplex) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.members[i].contains(s)).collect()
    }

    /// `{u,w}` in index order.
    pub fn set_token(&self, indices: &[usize]) -> String {
        format!("{{{}}}", indices.iter().map(|&i| &self.index_order[i]).join(","))
    }

    /// All nerve faces, lexicographic in index positions.
    pub fn nerve_faces(&self) -> &[NerveFace] {
        self.nerve_faces_with(Execution::default())
    }

    pub fn nerve_faces_with(&self, exec: Execution) -> &[NerveFace] {
        self.faces.get_or_init(|| Arc::new(self.enumerate_faces(exec)))
    }

    fn enumerate_faces(&self, exec: Execution) -> Vec<NerveFace> {
        fn grow(
            cov: &IndexedCover,
            indices: &mut Vec<usize>,
            inter: &SimplicialComplex,
            out: &mut Vec<NerveFace>,
        ) {
            out.push(NerveFace {
                indices: indices.clone(),
                intersection: inter.clone(),
                components: inter.components(),
            });
            let last = *indices.last().expect("nonempty");
            for j in last + 1..cov.len() {
                let next = inter.intersection(&cov.members[j]);
                if !next.is_empty() {
                    indices.push(j);
                    grow(cov, indices, &next, out);
                    indices.pop();
                }
            }
        }
        let per_start = exec.map_range(self.len(), |i| {
            let mut out = Vec::new();
            if !self.members[i].is_empty() {
                grow(self, &mut vec![i], &self.members[i], &mut out);
            }
            out
        });
        let mut all: Vec<NerveFace> = per_start.into_iter().flatten().collect();
        all.sort_by(|a, b| a.indices.cmp(&b.indices));
        all
    }

    pub(crate) fn face_lookup(&self) -> HashMap<Vec<usize>, usize> {
        self.nerve_faces()
            .iter()
            .enumerate()
            .map(|(i, f)| (f.indices.clone(), i))
            .collect()
    }
}

/// Token naming a subcomplex by its facets.
pub fn complex_token(k: &SimplicialComplex) -> VertexId {
    VertexId::new(&k.token()).expect("facet tokens contain no whitespace")
}

/// The Borsuk nerve: index sets with nonempty intersection.
pub fn nerve(cov: &IndexedCover) -> SimplicialComplex {
    SimplicialComplex::from_simplices(
        cov.nerve_faces()
            .iter()
            .map(|f| Simplex::new(f.indices.iter().map(|&i| cov.index(i).clone())).expect("nonempty face")),
    )
}
