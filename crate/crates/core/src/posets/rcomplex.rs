use std::collections::VecDeque;

use itertools::Itertools;
use num_bigint::BigUint;

use super::cutset::{gamma_to_vbar, is_cutset, Cutset};
use super::subset_token;
use crate::combinat::{order_complex, Poset, VertexId};
use crate::error::{Error, Result};
use crate::homology::snf::smith_form;
use crate::homology::{acyclicity_certificate, simplicial_homology, Coefficients, SparseMatrix};
use crate::verdict::{Check, Verdict};

/// An edge of `R(P, X)`: one component of `St(x) ∩ St(x′)`, oriented from the
/// smaller to the larger end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct REdge {
    pub ends: (usize, usize),
    /// Ascending element indices of the component.
    pub component: Vec<usize>,
    pub token: String,
}

/// A 2-cell of `R(P, X)`: one component of a triple star intersection, glued
/// along the three edges whose components contain it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RTriangle {
    pub corners: (usize, usize, usize),
    pub component: Vec<usize>,
    /// Edges on `(a,b)`, `(b,c)`, `(a,c)`.
    pub edges: [usize; 3],
}

/// The regular 2-complex `R(P, X)`. Vertices are positions in `vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RComplex {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<REdge>,
    pub triangles: Vec<RTriangle>,
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|e| b.binary_search(e).is_ok()).collect()
}

fn components_of(p: &Poset, set: &[usize]) -> Vec<Vec<usize>> {
    if set.is_empty() {
        return Vec::new();
    }
    let sub = p.induced(set);
    sub.components()
        .into_iter()
        .map(|c| {
            c.iter()
                .map(|&i| p.index_of_id(sub.element(i)).expect("induced"))
                .collect()
        })
        .collect()
}

pub fn r_complex(x: &Cutset) -> Result<RComplex> {
    let p = x.base();
    if !p.is_connected() {
        return Err(Error::Disconnected);
    }
    let xs = x.members();
    let stars: Vec<Vec<usize>> = xs.iter().map(|&i| p.star_indices(i)).collect();
    let mut edges = Vec::new();
    for (a, b) in (0..xs.len()).tuple_combinations() {
        for comp in components_of(p, &intersect(&stars[a], &stars[b])) {
            let token = format!(
                "{{{},{}}}@{}",
                p.element(xs[a]),
                p.element(xs[b]),
                p.element(comp[0])
            );
            edges.push(REdge {
                ends: (a, b),
                component: comp,
                token,
            });
        }
    }
    let edge_containing = |a: usize, b: usize, comp: &[usize]| -> usize {
        edges
            .iter()
            .position(|e| e.ends == (a, b) && e.component.binary_search(&comp[0]).is_ok())
            .expect("a component of a triple intersection lies in one pairwise component")
    };
    let mut triangles = Vec::new();
    for (a, b, c) in (0..xs.len()).tuple_combinations() {
        let triple = intersect(&intersect(&stars[a], &stars[b]), &stars[c]);
        for comp in components_of(p, &triple) {
            let tri = [
                edge_containing(a, b, &comp),
                edge_containing(b, c, &comp),
                edge_containing(a, c, &comp),
            ];
            debug_assert!(tri
                .iter()
                .all(|&e| comp.iter().all(|x| edges[e].component.binary_search(x).is_ok())));
            triangles.push(RTriangle {
                corners: (a, b, c),
                component: comp,
                edges: tri,
            });
        }
    }
    Ok(RComplex {
        vertices: x.tokens(),
        edges,
        triangles,
    })
}

/// Generators are the edges outside a spanning tree; each relator is the
/// boundary word of a triangle with tree edges deleted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(usize, i64)>>,
}

impl GroupPresentation {
    /// Free rank and invariant factors greater than one of the abelianized
    /// group.
    pub fn abelianization(&self) -> (usize, Vec<BigUint>) {
        // One column per relator so that column operations act on relators.
        let mut columns = Vec::with_capacity(self.relators.len());
        for r in &self.relators {
            let mut col = vec![0i64; self.generators.len()];
            for &(g, e) in r {
                col[g] += e;
            }
            columns.push(col.into_iter().enumerate().filter(|(_, v)| *v != 0).collect());
        }
        let m = SparseMatrix {
            rows: self.generators.len(),
            columns,
        };
        let snf = smith_form(&m, true);
        let torsion = snf.torsion.iter().map(|t| t.magnitude().clone()).collect();
        (self.generators.len() - snf.rank, torsion)
    }
}

/// The presentation of `π₁(R, root)` from a breadth-first spanning tree.
pub fn presentation(r: &RComplex, root: usize) -> Result<GroupPresentation> {
    let n = r.vertices.len();
    if root >= n {
        return Err(Error::Invalid(format!("root {root} out of range")));
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in r.edges.iter().enumerate() {
        adj[e.ends.0].push((e.ends.1, i));
        adj[e.ends.1].push((e.ends.0, i));
    }
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; r.edges.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::Invalid(format!(
            "R(P,X) is disconnected at {}",
            r.vertices[v]
        )));
    }
    let mut gen_of = vec![None; r.edges.len()];
    let mut generators = Vec::new();
    for (i, e) in r.edges.iter().enumerate() {
        if !in_tree[i] {
            gen_of[i] = Some(generators.len());
            generators.push(e.token.clone());
        }
    }
    let relators = r
        .triangles
        .iter()
        .map(|t| {
            t.edges
                .iter()
                .zip([1, 1, -1])
                .filter_map(|(&e, s)| gen_of[e].map(|g| (g, s)))
                .collect()
        })
        .collect();
    Ok(GroupPresentation { generators, relators })
}

/// Abelianized `π₁` of `R(P, X)` using the tree rooted at the least vertex.
pub fn pi1_abelianized(r: &RComplex) -> Result<(usize, Vec<BigUint>)> {
    Ok(presentation(r, 0)?.abelianization())
}

/// `cutset`: `X` meets every maximal chain. `star/<x>`: each star is
/// acyclic. `gamma-vbar`: `Γ(P, X)` is the component poset of the star cover.
/// For connected `P` (`hypothesis/connected`), `conclusion/h1-rank` and
/// `conclusion/h1-torsion` compare the abelianized `π₁(R(P, X))` with
/// `H₁(ΔP; ℤ)`.
pub fn verify_cutset<S: AsRef<str>>(p: &Poset, x: &[S]) -> Result<Verdict> {
    let later = [
        "gamma-vbar",
        "hypothesis/connected",
        "conclusion/h1-rank",
        "conclusion/h1-torsion",
    ];
    let cut = match is_cutset(p, x)? {
        Ok(()) => Cutset::new(p, x)?,
        Err(chain) => {
            let mut v = Verdict::new(vec![Check::fail(
                "cutset",
                format!("maximal chain {} misses X", subset_token(p, &chain)),
            )]);
            for name in later {
                v.push(Check::skipped(name, "not a cutset"));
            }
            return Ok(v);
        }
    };
    let mut checks = vec![Check::pass("cutset")];
    for &i in cut.members() {
        let star = order_complex(&p.induced(&p.star_indices(i)));
        let top = star.dim().unwrap_or(0) as i64;
        let name = format!("star/{}", p.element(i));
        checks.push(match acyclicity_certificate(&star, top, Coefficients::Integer) {
            Ok(()) => Check::pass(name),
            Err(e) => Check::fail(name, e.to_string()),
        });
    }
    let iso = gamma_to_vbar(&cut).map(|m| m.is_isomorphism()).unwrap_or(false);
    checks.push(Check::from_bool("gamma-vbar", iso, || {
        "Γ(P, X) differs from the component poset of the star cover".into()
    }));
    let mut v = Verdict::new(checks);
    if !p.is_connected() {
        v.push(Check::fail(
            "hypothesis/connected",
            format!("{} components", p.components().len()),
        ));
        v.push(Check::skipped("conclusion/h1-rank", "hypotheses failed"));
        v.push(Check::skipped("conclusion/h1-torsion", "hypotheses failed"));
        return Ok(v);
    }
    v.push(Check::pass("hypothesis/connected"));
    let (rank, torsion) = pi1_abelianized(&r_complex(&cut)?)?;
    let h = simplicial_homology(&order_complex(p), 1, Coefficients::Integer);
    let (hrank, htorsion) = (h.betti[1], h.torsion[1].clone());
    v.push(
        Check::from_bool("conclusion/h1-rank", rank == hrank, || {
            format!("R(P, X) has rank {rank}, ΔP has rank {hrank}")
        })
        .with_numbers("rank", vec![rank as i64, hrank as i64]),
    );
    v.push(Check::from_bool(
        "conclusion/h1-torsion",
        torsion == htorsion,
        || format!("R(P, X) has torsion {torsion:?}, ΔP has {htorsion:?}"),
    ));
    Ok(v)
}
