use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use itertools::Itertools;

use crate::error::{Error, Result};

/// A vertex token. Ordered lexicographically; equality is string equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(Arc<str>);

impl VertexId {
    pub fn new(token: &str) -> Result<Self> {
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(Error::InvalidToken(token.to_string()));
        }
        Ok(VertexId(Arc::from(token)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<&str> for VertexId {
    type Error = Error;
    fn try_from(s: &str) -> Result<Self> {
        VertexId::new(s)
    }
}

impl TryFrom<String> for VertexId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        VertexId::new(&s)
    }
}

/// A nonempty simplex with vertices stored strictly ascending.
///
/// The ascending order fixes boundary orientation signs for every chain
/// complex built from it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Sorts and deduplicates; fails only on an empty vertex list.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut v: Vec<VertexId> = vertices.into_iter().collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            return Err(Error::EmptySimplex);
        }
        Ok(Simplex(v))
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: impl IntoIterator<Item = S>) -> Result<Self> {
        let v = tokens
            .into_iter()
            .map(|t| VertexId::new(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Simplex::new(v)
    }

    pub(crate) fn from_sorted(v: Vec<VertexId>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                match w.cmp(v) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// The face obtained by deleting the vertex at position `i`; `None` for a vertex.
    pub fn delete(&self, i: usize) -> Option<Simplex> {
        if self.0.len() == 1 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(i);
        Some(Simplex(v))
    }

    /// All nonempty faces of dimension `k`.
    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = Simplex> + '_ {
        self.0.iter().cloned().combinations(k + 1).map(Simplex)
    }

    pub fn token(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All faces of one dimension, sorted, with a position index.
#[derive(Debug)]
pub(crate) struct DimFaces {
    pub(crate) list: Vec<Simplex>,
    pub(crate) index: HashMap<Simplex, usize>,
}

/// A finite abstract simplicial complex presented by its maximal facets.
///
/// Faces of each dimension are enumerated on first use and cached.
pub struct SimplicialComplex {
    vertices: Vec<VertexId>,
    facets: Vec<Simplex>,
    faces: Vec<OnceLock<Arc<DimFaces>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            vertices: self.vertices.clone(),
            facets: self.facets.clone(),
            faces: self.faces.clone(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets && self.vertices == other.vertices
    }
}

impl Eq for SimplicialComplex {}

impl std::hash::Hash for SimplicialComplex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.facets.hash(state);
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("facets", &self.facets)
            .finish()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex::from_maximal(Vec::new())
    }

    /// Builds the complex on `vertices` whose simplices are the faces of
    /// `facets`. Vertices that lie in no facet become isolated points;
    /// non-maximal facets are dropped.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        facets: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        let vertex_set: BTreeSet<VertexId> = vertices.into_iter().collect();
        let mut facets: Vec<Simplex> = facets.into_iter().collect();
        for s in &facets {
            for v in s.vertices() {
                if !vertex_set.contains(v) {
                    return Err(Error::UnknownVertex {
                        simplex: s.to_string(),
                        vertex: v.to_string(),
                    });
                }
            }
        }
        let covered: HashSet<&VertexId> = facets.iter().flat_map(|s| s.vertices()).collect();
        let isolated: Vec<Simplex> = vertex_set
            .iter()
            .filter(|v| !covered.contains(v))
            .map(|v| Simplex::vertex(v.clone()))
            .collect();
        facets.extend(isolated);
        Ok(SimplicialComplex::from_simplices(facets))
    }

    /// The downward closure of an arbitrary collection of simplices.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut cands: Vec<Simplex> = simplices.into_iter().collect();
        cands.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        cands.dedup();
        let mut kept: Vec<Simplex> = Vec::new();
        for s in cands {
            if !kept.iter().any(|k| k.len() > s.len() && s.is_face_of(k)) {
                kept.push(s);
            }
        }
        SimplicialComplex::from_maximal(kept)
    }

    /// `simplices` must be downward closed; keeps the ones with no coface.
    pub(crate) fn from_closed(simplices: &[Simplex]) -> Self {
        let mut non_max: HashSet<Simplex> = HashSet::new();
        for s in simplices {
            for i in 0..s.len() {
                if let Some(f) = s.delete(i) {
                    non_max.insert(f);
                }
            }
        }
        let facets = simplices
            .iter()
            .filter(|s| !non_max.contains(*s))
            .cloned()
            .collect();
        SimplicialComplex::from_maximal(facets)
    }

    fn from_maximal(mut facets: Vec<Simplex>) -> Self {
        facets.sort();
        facets.dedup();
        let mut vertices: Vec<VertexId> = facets.iter().flat_map(|s| s.vertices().iter().cloned()).collect();
        vertices.sort();
        vertices.dedup();
        let top = facets.iter().map(Simplex::len).max().unwrap_or(0);
        SimplicialComplex {
            vertices,
            facets,
            faces: (0..top).map(|_| OnceLock::new()).collect(),
        }
    }

    /// The full simplex on the given vertices.
    pub fn full_simplex(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        Ok(SimplicialComplex::from_maximal(vec![Simplex::new(vertices)?]))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub(crate) fn dim_faces(&self, k: usize) -> Option<&Arc<DimFaces>> {
        let cell = self.faces.get(k)?;
        Some(cell.get_or_init(|| {
            let mut list: Vec<Simplex> = self
                .facets
                .iter()
                .filter(|f| f.len() > k)
                .flat_map(|f| f.faces_of_dim(k))
                .collect();
            list.sort();
            list.dedup();
            let index = list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
            Arc::new(DimFaces { list, index })
        }))
    }

    /// The `k`-simplices in lexicographic order.
    pub fn simplices_of_dim(&self, k: usize) -> &[Simplex] {
        self.dim_faces(k).map(|d| d.list.as_slice()).unwrap_or(&[])
    }

    pub fn num_simplices(&self, k: usize) -> usize {
        self.simplices_of_dim(k).len()
    }

    /// Position of `s` within [`Self::simplices_of_dim`].
    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.dim_faces(s.dim())?.index.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.position(s).is_some()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    /// Every simplex, by dimension then lexicographically.
    pub fn all_simplices(&self) -> Vec<Simplex> {
        (0..self.faces.len())
            .flat_map(|k| self.simplices_of_dim(k).iter().cloned())
            .collect()
    }

    pub fn num_all_simplices(&self) -> usize {
        (0..self.faces.len()).map(|k| self.num_simplices(k)).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.faces.len())
            .map(|k| {
                let n = self.num_simplices(k) as i64;
                if k % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| other.contains(f))
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let (small, large) = if self.num_all_simplices() <= other.num_all_simplices() {
            (self, other)
        } else {
            (other, self)
        };
        let common: Vec<Simplex> = small
            .all_simplices()
            .into_iter()
            .filter(|s| large.contains(s))
            .collect();
        SimplicialComplex::from_closed(&common)
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex::from_simplices(self.facets.iter().chain(other.facets.iter()).cloned())
    }

    /// The subcomplex of simplices whose vertices all lie in `keep`.
    pub fn induced(&self, keep: &HashSet<VertexId>) -> SimplicialComplex {
        let pieces = self.facets.iter().filter_map(|f| {
            let v: Vec<VertexId> = f
                .vertices()
                .iter()
                .filter(|v| keep.contains(*v))
                .cloned()
                .collect();
            (!v.is_empty()).then(|| Simplex::from_sorted(v))
        });
        SimplicialComplex::from_simplices(pieces)
    }

    /// Connected components, each labeled by its least vertex, in label order.
    pub fn components(&self) -> Vec<Component> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let pos = |v: &VertexId| self.vertices.binary_search(v).expect("vertex of facet");
        for f in &self.facets {
            let first = pos(&f.vertices()[0]);
            for v in &f.vertices()[1..] {
                let (a, b) = (find(&mut parent, first), find(&mut parent, pos(v)));
                if a != b {
                    // Keep the smaller index as root so roots are least vertices.
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
        let mut groups: Vec<Vec<Simplex>> = vec![Vec::new(); n];
        for f in &self.facets {
            let r = find(&mut parent, pos(&f.vertices()[0]));
            groups[r].push(f.clone());
        }
        groups
            .into_iter()
            .enumerate()
            .filter(|(_, g)| !g.is_empty())
            .map(|(r, g)| Component {
                rep: self.vertices[r].clone(),
                complex: SimplicialComplex::from_maximal(g),
            })
            .collect()
    }

    /// The component containing vertex `v`, if `v` is a vertex.
    pub fn component_of(&self, v: &VertexId) -> Option<Component> {
        self.components()
            .into_iter()
            .find(|c| c.complex.contains_vertex(v))
    }

    /// A token naming this complex by its facets.
    pub fn token(&self) -> String {
        if self.facets.is_empty() {
            return "{}".to_string();
        }
        self.facets.iter().join("")
    }
}

/// A connected component with its canonical (least-vertex) representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub rep: VertexId,
    pub complex: SimplicialComplex,
}

#[cfg(test)]
pub(crate) fn v(s: &str) -> VertexId {
    VertexId::new(s).unwrap()
}

#[cfg(test)]
pub(crate) fn cx(facets: &[&[&str]]) -> SimplicialComplex {
    SimplicialComplex::from_simplices(facets.iter().map(|f| Simplex::from_tokens(f.iter()).unwrap()))
}
