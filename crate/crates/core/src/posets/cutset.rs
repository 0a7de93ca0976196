use std::collections::HashSet;

use super::subset_token;
use crate::combinat::{order_complex, Poset, PosetMap, VertexId};
use crate::error::{Error, Result};
use crate::nerves::{complex_token, vbar, IndexedCover};

/// A subset `X` of a poset whose stars cover every chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cutset {
    base: Poset,
    members: Vec<usize>,
}

impl Cutset {
    pub fn new<S: AsRef<str>>(base: &Poset, members: &[S]) -> Result<Self> {
        let idx = resolve(base, members)?;
        if let Some(chain) = uncovered_chain(base, &idx) {
            return Err(Error::NotCutset(format!(
                "{}: maximal chain {} misses it",
                subset_token(base, &idx),
                subset_token(base, &chain)
            )));
        }
        Ok(Cutset {
            base: base.clone(),
            members: idx,
        })
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    /// Ascending element indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn tokens(&self) -> Vec<VertexId> {
        self.members
            .iter()
            .map(|&i| self.base.element(i).clone())
            .collect()
    }
}

fn resolve<S: AsRef<str>>(p: &Poset, x: &[S]) -> Result<Vec<usize>> {
    let mut idx = x
        .iter()
        .map(|t| {
            p.index_of(t.as_ref())
                .ok_or_else(|| Error::UnknownElement(t.as_ref().to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

/// A chain extends by `x` exactly when a maximal chain through it contains
/// `x`, so it is enough to look for a maximal chain avoiding `X`.
fn uncovered_chain(p: &Poset, x: &[usize]) -> Option<Vec<usize>> {
    p.maximal_chains()
        .into_iter()
        .find(|m| !m.iter().any(|e| x.binary_search(e).is_ok()))
}

/// `Ok(())` when `X` is a cutset, otherwise a maximal chain disjoint from `X`.
pub fn is_cutset<S: AsRef<str>>(p: &Poset, x: &[S]) -> Result<std::result::Result<(), Vec<usize>>> {
    let idx = resolve(p, x)?;
    Ok(match uncovered_chain(p, &idx) {
        None => Ok(()),
        Some(chain) => Err(chain),
    })
}

/// `Δ(St(x))` for each `x ∈ X`, indexed by `x`, covering `Δ(P)`.
pub fn star_cover(x: &Cutset) -> IndexedCover {
    let p = &x.base;
    let members = x
        .members
        .iter()
        .map(|&i| order_complex(&p.induced(&p.star_indices(i))))
        .collect();
    IndexedCover::new(order_complex(p), x.tokens(), members).expect("stars are subcomplexes")
}

/// Element sets of the components of nonempty star intersections, each
/// ascending, in ascending order. Components of an induced subposet are the
/// components of its order complex.
fn star_components(x: &Cutset) -> Vec<Vec<usize>> {
    let p = &x.base;
    let stars: Vec<Vec<usize>> = x.members.iter().map(|&i| p.star_indices(i)).collect();
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    fn grow(
        p: &Poset,
        stars: &[Vec<usize>],
        from: usize,
        current: &[usize],
        found: &mut HashSet<Vec<usize>>,
    ) {
        for j in from..stars.len() {
            let next: Vec<usize> = current
                .iter()
                .copied()
                .filter(|e| stars[j].binary_search(e).is_ok())
                .collect();
            if next.is_empty() {
                continue;
            }
            let sub = p.induced(&next);
            for comp in sub.components() {
                let ids: Vec<usize> = comp
                    .iter()
                    .map(|&c| p.index_of_id(sub.element(c)).expect("induced element"))
                    .collect();
                found.insert(ids);
            }
            grow(p, stars, j + 1, &next, found);
        }
    }
    let all: Vec<usize> = (0..p.len()).collect();
    grow(p, &stars, 0, &all, &mut found);
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort();
    out
}

/// `Γ(P, X)`: components of star intersections ordered by inclusion, with
/// the element set of each node (aligned with `poset` indices).
#[derive(Clone, Debug)]
pub struct Gamma {
    pub poset: Poset,
    pub sets: Vec<Vec<usize>>,
}

pub fn gamma_poset(x: &Cutset) -> Gamma {
    let p = &x.base;
    let sets = star_components(x);
    let is_sub = |a: &Vec<usize>, b: &Vec<usize>| a.iter().all(|e| b.binary_search(e).is_ok());
    let poset = Poset::from_relation(&sets, |s| token(p, s), |a, b| a != b && is_sub(a, b))
        .expect("strict inclusion is acyclic");
    let sets = poset
        .elements()
        .iter()
        .map(|t| {
            sets.iter()
                .find(|s| &token(p, s) == t)
                .expect("own token")
                .clone()
        })
        .collect();
    Gamma { poset, sets }
}

fn token(p: &Poset, s: &[usize]) -> VertexId {
    VertexId::new(&subset_token(p, s)).expect("element tokens contain no whitespace")
}

/// `C ↦ Δ(C)` from `Γ(P, X)` to the component poset of the star cover.
/// Fails if some `Δ(C)` is not a node there.
pub fn gamma_to_vbar(x: &Cutset) -> Result<PosetMap> {
    let g = gamma_poset(x);
    let vb = vbar(&star_cover(x));
    let assign = g
        .sets
        .iter()
        .map(|s| {
            let t = complex_token(&order_complex(&x.base.induced(s)));
            vb.poset
                .index_of_id(&t)
                .ok_or_else(|| Error::UnknownElement(t.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    PosetMap::from_indices(g.poset, vb.poset, assign)
}
