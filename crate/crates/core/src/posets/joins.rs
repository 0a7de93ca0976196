use itertools::Itertools;

use crate::combinat::{order_complex, Poset, PosetMap, SimplicialComplex, SimplicialMap, VertexId};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::homology::{acyclicity_certificate, induced_map_with, Coefficients};
use crate::nerves::IndexedCover;
use crate::verdict::{Check, Verdict};

/// `P^Q` and its projection to `P`.
#[derive(Clone, Debug)]
pub struct PqJoin {
    pub poset: Poset,
    pub projection: PosetMap,
}

/// Tokens of `P^Q` are `p:q`. `fibers` is aligned with the elements of `p`.
pub fn pq_join(p: &Poset, fibers: &[Poset]) -> Result<PqJoin> {
    if fibers.len() != p.len() {
        return Err(Error::Invalid(format!(
            "{} fiber posets for {} elements",
            fibers.len(),
            p.len()
        )));
    }
    let items: Vec<(usize, usize)> = fibers
        .iter()
        .enumerate()
        .flat_map(|(a, q)| (0..q.len()).map(move |b| (a, b)))
        .collect();
    let token = |&(a, b): &(usize, usize)| {
        VertexId::new(&format!("{}:{}", p.element(a), fibers[a].element(b))).expect("no whitespace")
    };
    let poset = Poset::from_relation(&items, token, |&(a, b), &(c, d)| {
        (a == c && fibers[a].lt(b, d)) || p.lt(a, c)
    })?;
    let assign = poset
        .elements()
        .iter()
        .map(|t| {
            let i = items.iter().position(|it| &token(it) == t).expect("own token");
            items[i].0
        })
        .collect();
    let projection = PosetMap::from_indices(poset.clone(), p.clone(), assign)?;
    Ok(PqJoin { poset, projection })
}

/// The two-point antichain.
pub fn s0() -> Poset {
    Poset::from_tokens::<&str>(&["+", "-"], &[]).expect("valid tokens")
}

fn chain_fingerprint(p: &Poset, chain: &[usize]) -> VertexId {
    VertexId::new(&super::subset_token(p, chain)).expect("no whitespace")
}

/// The cover of `Δ(P^{S⁰})` by preimages of the maximal chains of `p`,
/// indexed by the sorted element lists of the chains.
pub fn covex_cover(p: &Poset) -> Result<IndexedCover> {
    let j = pq_join(p, &vec![s0(); p.len()])?;
    let members = p
        .maximal_chains()
        .iter()
        .map(|m| {
            (
                chain_fingerprint(p, m),
                order_complex(&j.poset.induced(&j.projection.preimage(m))),
            )
        })
        .collect_vec();
    let (index, members): (Vec<_>, Vec<_>) = members.into_iter().unzip();
    IndexedCover::new(order_complex(&j.poset), index, members)
}

/// The cover of `Δ(P)` by the order complexes of its maximal chains.
pub fn chain_cover(p: &Poset) -> IndexedCover {
    let (index, members): (Vec<_>, Vec<_>) = p
        .maximal_chains()
        .iter()
        .map(|m| (chain_fingerprint(p, m), order_complex(&p.induced(m))))
        .unzip();
    IndexedCover::new(order_complex(p), index, members).expect("chains are subcomplexes")
}

/// The largest `c` with `k` `c`-acyclic, `None` when `k` is acyclic in every
/// degree. The empty complex gives −2.
pub fn acyclicity_degree(k: &SimplicialComplex, coeffs: Coefficients) -> Option<i64> {
    let top = k.dim().unwrap_or(0) as i64;
    acyclicity_certificate(k, top, coeffs)
        .err()
        .map(|e| e.degree() - 1)
}

pub fn detection_check(
    f: &SimplicialMap,
    cov: &IndexedCover,
    n: i64,
    coeffs: Coefficients,
) -> Result<Verdict> {
    detection_check_with(f, cov, n, coeffs, Execution::default())
}

/// For each nerve face `S` of the codomain cover, the restriction
/// `f⁻¹(⋂S) → ⋂S` must be `(n − |S| + 1)`-connected homologically; if all
/// are, `f` itself is checked to be `n`-connected. Preimages are indexed by
/// the same set, so repeated preimages are kept apart.
pub fn detection_check_with(
    f: &SimplicialMap,
    cov: &IndexedCover,
    n: i64,
    coeffs: Coefficients,
    exec: Execution,
) -> Result<Verdict> {
    if !coeffs.is_field() {
        return Err(Error::NotAField);
    }
    if cov.ambient() != f.codomain() {
        return Err(Error::Invalid("cover is not a cover of the codomain".into()));
    }
    cov.require_full()?;
    let faces = cov.nerve_faces_with(exec);
    let items: Vec<usize> = (0..faces.len())
        .filter(|&i| n - faces[i].indices.len() as i64 + 1 >= 0)
        .collect();
    let checks = exec.map(&items, |&i| {
        let face = &faces[i];
        let m = n - face.indices.len() as i64 + 1;
        let name = format!("hypothesis/{}", cov.set_token(&face.indices));
        let dom = f.preimage(&face.intersection);
        let g = f
            .restrict(&dom, &face.intersection)
            .expect("preimage maps into the intersection");
        let r = induced_map_with(&g, coeffs, m as usize, Execution::Sequential).expect("field");
        if r.is_n_connected(m) {
            Check::pass(name)
        } else {
            let bad = (0..m)
                .find(|&k| !r.iso_through(k))
                .map(|k| format!("not an isomorphism in degree {k}"))
                .unwrap_or_else(|| format!("not onto in degree {m}"));
            Check::fail(
                name,
                format!("restriction over ⋂{} is {bad}", cov.set_token(&face.indices)),
            )
        }
    });
    let mut verdict = Verdict::new(checks);
    let names: Vec<String> = (0..n)
        .map(|k| format!("conclusion/h{k}-iso"))
        .chain((n >= 0).then(|| format!("conclusion/h{n}-epi")))
        .collect();
    if !verdict.passed() {
        for name in names {
            verdict.push(Check::skipped(name, "hypotheses failed"));
        }
        return Ok(verdict);
    }
    let r = induced_map_with(f, coeffs, n.max(0) as usize, exec)?;
    for k in 0..n {
        verdict.push(Check::from_bool(
            format!("conclusion/h{k}-iso"),
            r.iso_through(k),
            || format!("induced map is not an isomorphism in degree {k}"),
        ));
    }
    if n >= 0 {
        verdict.push(Check::from_bool(
            format!("conclusion/h{n}-epi"),
            r.epi_at(n),
            || format!("induced map is not onto in degree {n}"),
        ));
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::simplicial_homology;

    fn chain(n: usize) -> Poset {
        let toks: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let rels: Vec<(String, String)> = (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
        Poset::from_tokens(&toks, &rels).unwrap()
    }

    #[test]
    fn points_give_back_p() {
        let p = chain(3);
        let pt = Poset::from_tokens::<&str>(&["*"], &[]).unwrap();
        let j = pq_join(&p, &vec![pt; 3]).unwrap();
        assert_eq!(j.poset.len(), 3);
        assert_eq!(j.poset.num_relations(), p.num_relations());
        assert!(j.projection.is_isomorphism());
    }

    #[test]
    fn covex_chain_is_a_sphere() {
        for k in 1..=4 {
            let cov = covex_cover(&chain(k)).unwrap();
            assert_eq!(cov.len(), 1);
            let h = simplicial_homology(cov.ambient(), k, Coefficients::Integer);
            let mut want = vec![0; k + 1];
            want[0] += 1;
            want[k - 1] += 1;
            assert_eq!(h.betti, want, "k = {k}");
        }
    }

    #[test]
    fn degrees() {
        let pt = SimplicialComplex::full_simplex([VertexId::new("a").unwrap()]).unwrap();
        assert_eq!(acyclicity_degree(&pt, Coefficients::Rational), None);
        assert_eq!(
            acyclicity_degree(&SimplicialComplex::empty(), Coefficients::Rational),
            Some(-2)
        );
        let s0 = order_complex(&s0());
        assert_eq!(acyclicity_degree(&s0, Coefficients::Rational), Some(-1));
    }

    #[test]
    fn identity_detects() {
        let p = Poset::from_tokens(&["0", "0'", "1", "2"], &[("0", "1"), ("0'", "1"), ("1", "2")]).unwrap();
        let cov = chain_cover(&p);
        let f = SimplicialMap::identity(cov.ambient());
        assert!(detection_check(&f, &cov, 3, Coefficients::Rational)
            .unwrap()
            .passed());
    }
}
