mod common;

use std::collections::HashMap;

use common::betti_oracle;
use nervekit::fixtures::{
    b3_minus_bounds, chain_poset, joinex_base, quillen_counterexample, square_circle_poset,
};
use nervekit::posets::*;
use nervekit::random::{all_posets, random_fiber, random_poset, rng};
use nervekit::{order_complex, Coefficients, Poset, SimplicialComplex, SimplicialMap, Status, VertexId};
use rand::Rng;

fn subset(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn is_sub(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

/// The laws, with `C` the core and `N` the neighborhood:
/// 1. `S ⊆ C(N(S))`
/// 2. `C(N(S)) ⊆ N(N(S))`
/// 3. `S ⊆ T ⟹ N(T) ⊆ N(S)`
/// 4. `S ⊆ T ⟹ C(N(S)) ∩ N(T) ⊆ C(N(T))`
///
/// Laws 2–4 hold for every `S ⊆ T`. Law 1 holds exactly when `S` is a
/// chain, since two incomparable elements of `S` exclude each other from
/// `N(S)`.
fn neighborhood_laws_hold(p: &Poset, s: &[usize], t: &[usize]) -> Result<(), String> {
    let cn = |x: &[usize]| core(p, &neighborhood(p, x));
    let (ns, nt) = (neighborhood(p, s), neighborhood(p, t));
    if is_sub(s, &cn(s)) != p.is_chain(s) {
        return Err(format!("law 1 at {s:?}"));
    }
    if !is_sub(&cn(s), &neighborhood(p, &ns)) {
        return Err(format!("law 2 at {s:?}"));
    }
    if is_sub(s, t) {
        if !is_sub(&nt, &ns) {
            return Err(format!("law 3 at {s:?} ⊆ {t:?}"));
        }
        if !is_sub(&intersect(&cn(s), &nt), &cn(t)) {
            return Err(format!("law 4 at {s:?} ⊆ {t:?}"));
        }
    }
    Ok(())
}

#[test]
fn neighborhood_laws_exhaustive_small() {
    for n in 0..=4 {
        for p in all_posets(n) {
            for ms in 0u32..(1 << n) {
                for mt in 0u32..(1 << n) {
                    if ms & mt == ms {
                        neighborhood_laws_hold(&p, &subset(ms, n), &subset(mt, n)).unwrap();
                    }
                }
            }
        }
    }
}

#[test]
fn neighborhood_laws_random() {
    let mut r = rng(11);
    for _ in 0..40 {
        let n = r.gen_range(5..=9);
        let density = r.gen_range(0.2..0.7);
        let p = random_poset(&mut r, n, density);
        for _ in 0..50 {
            let mt: u32 = r.gen_range(0..1 << n);
            let ms = mt & r.gen_range(0..1 << n);
            neighborhood_laws_hold(&p, &subset(ms, n), &subset(mt, n)).unwrap();
        }
    }
}

#[test]
fn essential_chain_intersections_are_essential() {
    let mut r = rng(12);
    let mut corpus: Vec<Poset> = (0..=5).flat_map(all_posets).collect();
    corpus.extend((0..30).map(|_| {
        let n = r.gen_range(5..=8);
        random_poset(&mut r, n, 0.4)
    }));
    for p in &corpus {
        let ess = essential_chains_by_fixed_point(p);
        assert_eq!(ess, essential_chains_by_intersection(p));
        for a in &ess {
            for b in &ess {
                let c = intersect(&a.elements, &b.elements);
                assert!(is_essential(p, &c), "{a:?} ∩ {b:?}");
            }
        }
        for m in p.maximal_chains() {
            let mut m = m;
            m.sort_unstable();
            assert_eq!(neighborhood(p, &m), m);
        }
    }
}

#[test]
fn joinex_essential_chains() {
    let p = joinex_base();
    let got: Vec<Vec<&str>> = essential_chains(&p)
        .iter()
        .map(|c| c.elements.iter().map(|&i| p.element(i).as_str()).collect())
        .collect();
    assert_eq!(
        got,
        vec![vec!["0", "1", "2"], vec!["0'", "1", "2"], vec!["1", "2"]]
    );
}

#[test]
fn join_of_union() {
    let mut checked = 0;
    for n in 1..=6 {
        for q in all_posets(n) {
            let cert = coherence(&q);
            if !cert.is_valid() {
                continue;
            }
            let table: HashMap<&Vec<usize>, usize> = cert.join_table.iter().map(|(s, j)| (s, *j)).collect();
            for (a, ja) in &cert.join_table {
                for (b, jb) in &cert.join_table {
                    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
                    u.sort_unstable();
                    u.dedup();
                    let direct = table.get(&u).copied();
                    assert_eq!(direct, join(&q, &[*ja, *jb]), "{a:?} ∪ {b:?}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

/// Reduced rational Betti numbers, index 0 standing for degree −1.
fn reduced(k: &SimplicialComplex) -> Vec<usize> {
    if k.is_empty() {
        return vec![1];
    }
    let dim = k.dim().unwrap();
    let mut b = betti_oracle(k, dim);
    b[0] -= 1;
    let mut out = vec![0];
    out.extend(b);
    out
}

/// `H̃_{n+1}(X * Y) = ⊕_{i+j=n} H̃_i(X) ⊗ H̃_j(Y)`.
fn join_betti(x: &[usize], y: &[usize]) -> Vec<usize> {
    let mut out = vec![0; x.len() + y.len()];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

#[test]
fn pq_join_preimages_follow_kunneth() {
    let mut r = rng(13);
    for _ in 0..15 {
        let n = r.gen_range(2..=4);
        let p = random_poset(&mut r, n, 0.6);
        let fibers: Vec<Poset> = (0..n).map(|_| random_fiber(&mut r)).collect();
        let j = pq_join(&p, &fibers).unwrap();
        for sigma in p.chains() {
            let pre = order_complex(&j.poset.induced(&j.projection.preimage(&sigma)));
            let expected = sigma
                .iter()
                .map(|&e| reduced(&order_complex(&fibers[e])))
                .fold(vec![1], |acc, b| join_betti(&acc, &b));
            let mut got = reduced(&pre);
            while got.len() > 1 && got.last() == Some(&0) {
                got.pop();
            }
            assert_eq!(got, expected, "σ = {sigma:?}");
        }
    }
}

#[test]
fn points_give_back_the_base() {
    let p = joinex_base();
    let point = Poset::from_tokens::<&str>(&["*"], &[]).unwrap();
    let j = pq_join(&p, &vec![point; p.len()]).unwrap();
    assert!(j.projection.is_isomorphism());
}

#[test]
fn quillen_counterexample_modes() {
    let f = quillen_counterexample();
    for n in 0..=3 {
        let v = verify_fiber(&f, FiberMode::Achain(n), Coefficients::Rational).unwrap();
        assert!(v.passed(), "achain({n}): {v:?}");
    }
    let v = verify_fiber(&f, FiberMode::Quillen(0), Coefficients::Rational).unwrap();
    let failed: Vec<&str> = v.failures().map(|c| c.name.as_str()).collect();
    assert!(failed.contains(&"hypothesis/quillen/2"), "{failed:?}");
    assert_eq!(v.get("conclusion/h0-iso").unwrap().status, Status::Skipped);
    // The fiber over 2 is Q₂ = S⁰.
    let fib = &quillen_fibers(&f)[f.codomain().index_of("2").unwrap()];
    assert_eq!(fib.poset.len(), 2);
    assert_eq!(fib.poset.num_relations(), 0);
}

#[test]
fn covex_spheres() {
    for k in 1..=4 {
        let cov = covex_cover(&chain_poset(k)).unwrap();
        assert_eq!(cov.len(), 1);
        let mut sphere = vec![0; k];
        sphere[0] += 1;
        sphere[k - 1] += 1;
        assert_eq!(betti_oracle(cov.ambient(), k - 1), sphere, "k = {k}");
    }
}

#[test]
fn detection_on_chain_covers() {
    let f = quillen_counterexample();
    let g = f.order_complex_map();
    let cov = chain_cover(f.codomain());
    let v = detection_check(&g, &cov, 2, Coefficients::Rational).unwrap();
    assert!(v.passed(), "{v:?}");
    let p = b3_minus_bounds();
    let id = SimplicialMap::identity(&order_complex(&p));
    assert!(detection_check(&id, &chain_cover(&p), 3, Coefficients::Rational)
        .unwrap()
        .passed());
}

#[test]
fn detection_reports_the_broken_member() {
    // Two points collapsed onto one vertex: the preimage of member `m` is S⁰.
    let x =
        SimplicialComplex::from_simplices(["x", "y"].map(|t| nervekit::Simplex::from_tokens([t]).unwrap()));
    let y = SimplicialComplex::from_simplices([nervekit::Simplex::from_tokens(["o"]).unwrap()]);
    let o = VertexId::new("o").unwrap();
    let assign: HashMap<VertexId, VertexId> = x.vertices().iter().map(|v| (v.clone(), o.clone())).collect();
    let f = SimplicialMap::new(x, y.clone(), &assign).unwrap();
    let cov = nervekit::IndexedCover::new(y.clone(), vec![VertexId::new("m").unwrap()], vec![y]).unwrap();
    let v = detection_check(&f, &cov, 1, Coefficients::Rational).unwrap();
    let failed: Vec<&str> = v.failures().map(|c| c.name.as_str()).collect();
    assert_eq!(failed, vec!["hypothesis/{m}"]);
    assert!(detection_check(&f, &cov, 0, Coefficients::Rational)
        .unwrap()
        .passed());
}

#[test]
fn cutset_h1_matches_order_complex() {
    for (p, x) in [
        (square_circle_poset(), vec!["a", "b"]),
        (b3_minus_bounds(), vec!["a", "b", "c"]),
    ] {
        let cut = Cutset::new(&p, &x).unwrap();
        let (rank, torsion) = pi1_abelianized(&r_complex(&cut).unwrap()).unwrap();
        assert_eq!(rank, betti_oracle(&order_complex(&p), 1)[1]);
        assert!(torsion.is_empty());
    }
}
