use std::collections::{BTreeMap, HashMap};

use super::completed::{completed_nerve, element_token, CompletedNerve};
use super::completion::component_checks;
use super::cover::IndexedCover;
use crate::combinat::{
    face_poset, order_complex, PosetMap, Simplex, SimplicialComplex, SimplicialMap, VertexId,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::homology::{induced_map_with, Coefficients};
use crate::verdict::{Check, Verdict};

/// `η(σ) = ({i : σ ∈ V(i)}, [σ])` from the opposite face poset of the ambient
/// complex to the completed nerve, and the induced map of order complexes.
#[derive(Clone, Debug)]
pub struct EtaMap {
    pub completed: CompletedNerve,
    pub poset_map: PosetMap,
    pub simplicial: SimplicialMap,
}

pub fn eta_map(cov: &IndexedCover) -> Result<EtaMap> {
    cov.require_full()?;
    let completed = completed_nerve(cov);
    let lookup = cov.face_lookup();
    let faces = cov.nerve_faces();
    let domain = face_poset(cov.ambient()).opposite();
    let assign: Vec<usize> = domain
        .elements()
        .iter()
        .map(|tok| {
            let s = parse_simplex(tok);
            let idx = cov.indices_containing(&s);
            let f = &faces[lookup[&idx]];
            let c = f
                .components
                .iter()
                .find(|c| c.complex.contains(&s))
                .expect("σ lies in ⋂V_σ");
            completed
                .poset
                .index_of_id(&element_token(cov, &idx, &c.rep))
                .expect("η lands in the completed nerve")
        })
        .collect();
    let poset_map = PosetMap::from_indices(domain, completed.poset.clone(), assign)?;
    let simplicial = poset_map.order_complex_map();
    Ok(EtaMap {
        completed,
        poset_map,
        simplicial,
    })
}

/// Inverse of [`Simplex::token`].
pub(crate) fn parse_simplex(tok: &VertexId) -> Simplex {
    let inner = tok
        .as_str()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .expect("simplex token");
    Simplex::from_tokens(inner.split(',')).expect("simplex token")
}

/// For each completed-nerve element `(F, C)`, whether the Quillen fiber
/// `η⁻¹(N̂_{≥(F,C)})` has exactly the simplices of `C`. Returns the elements
/// where it does not.
pub fn eta_fiber_mismatches(eta: &EtaMap, exec: Execution) -> Vec<String> {
    let p = &eta.completed.poset;
    let dom = eta.poset_map.domain();
    let mut preimages: HashMap<usize, Vec<usize>> = HashMap::new();
    for s in 0..dom.len() {
        preimages.entry(eta.poset_map.apply(s)).or_default().push(s);
    }
    let results = exec.map_range(eta.completed.elements.len(), |q| {
        let e = &eta.completed.elements[q];
        let mut fiber: BTreeMap<Simplex, ()> = BTreeMap::new();
        for t in p.up_indices(q) {
            for &s in preimages.get(&t).map(Vec::as_slice).unwrap_or(&[]) {
                fiber.insert(parse_simplex(dom.element(s)), ());
            }
        }
        let fiber: Vec<Simplex> = fiber.into_keys().collect();
        let mut expected = e.component.all_simplices();
        expected.sort();
        (fiber != expected).then(|| p.element(q).to_string())
    });
    results.into_iter().flatten().collect()
}

/// The order complex of the completed nerve.
pub fn completed_nerve_complex(c: &CompletedNerve) -> SimplicialComplex {
    order_complex(&c.poset)
}

pub fn verify_eta(cov: &IndexedCover, n: i64, coeffs: Coefficients) -> Result<Verdict> {
    verify_eta_with(cov, n, coeffs, Execution::default())
}

/// `eta-fibers`: every Quillen fiber of `η` is its component. Hypotheses:
/// every component of every `⋂F` is `n`-acyclic. Conclusions: `Δη` is an
/// isomorphism in homology through `n` and onto in degree `n + 1`.
pub fn verify_eta_with(cov: &IndexedCover, n: i64, coeffs: Coefficients, exec: Execution) -> Result<Verdict> {
    if !coeffs.is_field() {
        return Err(Error::NotAField);
    }
    let eta = eta_map(cov)?;
    let mut verdict = component_checks(cov, coeffs, exec, |_| Some(n));
    let held = verdict.passed();
    let bad = eta_fiber_mismatches(&eta, exec);
    verdict.push(Check::from_bool("eta-fibers", bad.is_empty(), || {
        format!("fiber differs from its component over {}", bad.join(", "))
    }));
    let names: Vec<String> = (0..=n)
        .map(|k| format!("conclusion/h{k}-iso"))
        .chain((n + 1 >= 0).then(|| format!("conclusion/h{}-epi", n + 1)))
        .collect();
    if !held {
        for name in names {
            verdict.push(Check::skipped(name, "hypotheses failed"));
        }
        return Ok(verdict);
    }
    let r = induced_map_with(&eta.simplicial, coeffs, (n + 1).max(0) as usize, exec)?;
    for k in 0..=n {
        verdict.push(Check::from_bool(
            format!("conclusion/h{k}-iso"),
            r.iso_through(k),
            || format!("induced map is not an isomorphism in degree {k}"),
        ));
    }
    if n + 1 >= 0 {
        verdict.push(Check::from_bool(
            format!("conclusion/h{}-epi", n + 1),
            r.epi_at(n + 1),
            || format!("induced map is not onto in degree {}", n + 1),
        ));
    }
    Ok(verdict)
}
