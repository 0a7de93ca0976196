use std::collections::BTreeSet;

use super::cover::{complex_token, IndexedCover};
use crate::combinat::{order_complex, Poset, PosetMap, Simplex, SimplicialComplex, VertexId};
use crate::error::Result;
use crate::exec::Execution;
use crate::homology::{acyclicity_certificate, range_compare, simplicial_homology_with, Coefficients};
use crate::verdict::{Check, Verdict};

/// The completion of a full cover.
#[derive(Clone, Debug)]
pub struct Completion {
    /// Distinct `C_σ` under inclusion.
    pub poset: Poset,
    /// Aligned with `poset` indices.
    pub members: Vec<SimplicialComplex>,
    /// Distinct `V_σ` under reverse inclusion.
    pub tilde: Poset,
    /// `V_σ ↦ ⋂V_σ`, or a simplex whose `⋂V_σ` is disconnected.
    pub c: std::result::Result<PosetMap, Simplex>,
}

impl Completion {
    /// The completion as an indexed cover of the same ambient complex.
    pub fn as_cover(&self, ambient: &SimplicialComplex) -> IndexedCover {
        IndexedCover::new(
            ambient.clone(),
            self.poset.elements().to_vec(),
            self.members.clone(),
        )
        .expect("components are subcomplexes")
    }
}

pub fn completion(cov: &IndexedCover) -> Result<Completion> {
    completion_with(cov, Execution::default())
}

pub fn completion_with(cov: &IndexedCover, exec: Execution) -> Result<Completion> {
    cov.require_full()?;
    let lookup = cov.face_lookup();
    let faces = cov.nerve_faces();
    let simplices = cov.ambient().all_simplices();
    // (V_σ, component index of σ, whether ⋂V_σ is connected)
    let data = exec.map(&simplices, |s| {
        let idx = cov.indices_containing(s);
        let f = &faces[lookup[&idx]];
        let ci = f
            .components
            .iter()
            .position(|c| c.complex.contains(s))
            .expect("σ ∈ ⋂V_σ");
        (idx, ci, f.components.len() == 1)
    });
    let mut comps: Vec<SimplicialComplex> = Vec::new();
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut disconnected: Option<Simplex> = None;
    for (s, (idx, ci, connected)) in simplices.iter().zip(&data) {
        let c = &faces[lookup[idx]].components[*ci].complex;
        if !comps.contains(c) {
            comps.push(c.clone());
        }
        sets.insert(idx.clone());
        if !connected && disconnected.is_none() {
            disconnected = Some(s.clone());
        }
    }
    let poset = Poset::from_relation(&comps, complex_token, |a, b| a != b && a.is_subcomplex_of(b))
        .expect("strict inclusion is acyclic");
    let members: Vec<SimplicialComplex> = poset
        .elements()
        .iter()
        .map(|t| {
            comps
                .iter()
                .find(|m| &complex_token(m) == t)
                .expect("own token")
                .clone()
        })
        .collect();
    let sets: Vec<Vec<usize>> = sets.into_iter().collect();
    let set_token = |s: &Vec<usize>| VertexId::new(&cov.set_token(s)).expect("token");
    let tilde = Poset::from_relation(&sets, set_token, |a, b| {
        a.len() > b.len() && b.iter().all(|x| a.contains(x))
    })
    .expect("strict inclusion is acyclic");
    let c = match disconnected {
        Some(s) => Err(s),
        None => {
            let assign = tilde
                .elements()
                .iter()
                .map(|t| {
                    let set = sets.iter().find(|s| &set_token(s) == t).expect("own token");
                    let inter = &faces[lookup[set]].intersection;
                    poset
                        .index_of_id(&complex_token(inter))
                        .expect("⋂V_σ = C_σ is listed")
                })
                .collect();
            Ok(PosetMap::from_indices(tilde.clone(), poset.clone(), assign)?)
        }
    };
    Ok(Completion {
        poset,
        members,
        tilde,
        c,
    })
}

/// Every `⋂F` over the nerve equals the union of the members it contains.
/// On failure returns such an `F`.
pub fn is_complete(cov: &IndexedCover) -> std::result::Result<(), Vec<usize>> {
    for f in cov.nerve_faces() {
        let inside: Vec<&SimplicialComplex> = cov
            .members()
            .iter()
            .filter(|m| !m.is_empty() && m.is_subcomplex_of(&f.intersection))
            .collect();
        let covered = f
            .intersection
            .facets()
            .iter()
            .all(|s| inside.iter().any(|m| m.contains(s)));
        if !covered {
            return Err(f.indices.clone());
        }
    }
    Ok(())
}

/// For every `F` with `1 <= |F| <= n`, each component of `⋂F` must be
/// `(n − |F| + 1)`-acyclic. One check per `(F, component)`, named
/// `hypothesis/<F>@<rep>`.
pub fn hypothesis_check(cov: &IndexedCover, n: i64, coeffs: Coefficients) -> Verdict {
    hypothesis_check_with(cov, n, coeffs, Execution::default())
}

pub fn hypothesis_check_with(cov: &IndexedCover, n: i64, coeffs: Coefficients, exec: Execution) -> Verdict {
    component_checks(cov, coeffs, exec, |f| {
        ((f.len() as i64) <= n).then(|| n - f.len() as i64 + 1)
    })
}

/// One acyclicity check per component of `⋂F`, for every nerve face `F` that
/// `need` assigns a degree to.
pub(crate) fn component_checks(
    cov: &IndexedCover,
    coeffs: Coefficients,
    exec: Execution,
    need: impl Fn(&[usize]) -> Option<i64> + Sync + Send,
) -> Verdict {
    let items: Vec<(usize, usize, i64)> = cov
        .nerve_faces()
        .iter()
        .enumerate()
        .filter_map(|(fi, f)| need(&f.indices).map(|d| (fi, f, d)))
        .flat_map(|(fi, f, d)| (0..f.components.len()).map(move |ci| (fi, ci, d)))
        .collect();
    let checks = exec.map(&items, |&(fi, ci, need)| {
        let f = &cov.nerve_faces()[fi];
        let c = &f.components[ci];
        let name = format!("hypothesis/{}@{}", cov.set_token(&f.indices), c.rep);
        match acyclicity_certificate(&c.complex, need, coeffs) {
            Ok(()) => Check::pass(name),
            Err(e) => Check::fail(
                name,
                format!(
                    "component {} of ⋂{} is not {}-acyclic: {}",
                    c.rep,
                    cov.set_token(&f.indices),
                    need,
                    e
                ),
            )
            .with_numbers("degree", vec![e.degree()]),
        }
    });
    Verdict::new(checks)
}

pub fn verify_completion(cov: &IndexedCover, n: i64, coeffs: Coefficients) -> Result<Verdict> {
    verify_completion_with(cov, n, coeffs, Execution::default())
}

/// `complete`: the completion, as a cover, is complete. Hypotheses: every
/// member of the completion is `n`-acyclic. Conclusions: the ambient complex
/// and the order complex of the completion agree in homology through `n`,
/// with the degree-`n+1` comparison.
pub fn verify_completion_with(
    cov: &IndexedCover,
    n: i64,
    coeffs: Coefficients,
    exec: Execution,
) -> Result<Verdict> {
    let c = completion_with(cov, exec)?;
    let mut verdict = Verdict::default();
    verdict.push(match is_complete(&c.as_cover(cov.ambient())) {
        Ok(()) => Check::pass("complete"),
        Err(f) => Check::fail(
            "complete",
            format!("⋂ of members {f:?} is not a union of members"),
        ),
    });
    let checks = exec.map_range(c.members.len(), |i| {
        let name = format!("hypothesis/{}", c.poset.element(i));
        match acyclicity_certificate(&c.members[i], n, coeffs) {
            Ok(()) => Check::pass(name),
            Err(e) => Check::fail(name, format!("member is not {n}-acyclic: {e}"))
                .with_numbers("degree", vec![e.degree()]),
        }
    });
    let hypotheses = Verdict::new(checks);
    let held = hypotheses.passed();
    verdict.extend(hypotheses);
    if !held {
        let names = (0..=n)
            .map(|k| format!("conclusion/h{k}-iso"))
            .chain((n + 1 >= 0).then(|| format!("conclusion/h{}-surjectability", n + 1)));
        for name in names {
            verdict.push(Check::skipped(name, "hypotheses failed"));
        }
        return Ok(verdict);
    }
    let top = (n + 1).max(0) as usize;
    let hx = simplicial_homology_with(cov.ambient(), top, coeffs, exec);
    let hv = simplicial_homology_with(&order_complex(&c.poset), top, coeffs, exec);
    for check in range_compare(&hx, &hv, n)? {
        let name = format!("conclusion/{}", check.name);
        verdict.push(Check { name, ..check });
    }
    Ok(verdict)
}
