//! Seeded instance generators and exhaustive enumeration of small posets.

use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinat::{Poset, PosetMap, Simplex, SimplicialComplex, VertexId};
use crate::homology::{acyclicity_certificate, Coefficients};
use crate::nerves::IndexedCover;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn vid(prefix: &str, i: usize) -> VertexId {
    VertexId::new(&format!("{prefix}{i}")).expect("valid token")
}

fn random_simplex(rng: &mut impl Rng, vertices: &[VertexId], max_len: usize) -> Simplex {
    let len = rng.gen_range(1..=max_len.min(vertices.len()));
    Simplex::new(vertices.choose_multiple(rng, len).cloned()).expect("nonempty")
}

/// A complex on `4..=max_vertices` vertices with facets of dimension at most
/// `max_dim`. Every vertex is used.
pub fn random_complex(rng: &mut impl Rng, max_vertices: usize, max_dim: usize) -> SimplicialComplex {
    let n = rng.gen_range(4.min(max_vertices)..=max_vertices);
    let vertices: Vec<VertexId> = (0..n).map(|i| vid("v", i)).collect();
    let m = rng.gen_range(n / 2 + 1..=n + 2);
    let mut simplices: Vec<Simplex> = (0..m)
        .map(|_| random_simplex(rng, &vertices, max_dim + 1))
        .collect();
    simplices.extend(vertices.iter().cloned().map(Simplex::vertex));
    SimplicialComplex::from_simplices(simplices)
}

/// A full cover of a random complex by `2..=max_members` members. Each
/// facet lies in one or two members; members also pick up stray faces so
/// that intersections vary.
pub fn random_cover(rng: &mut impl Rng, max_vertices: usize, max_members: usize) -> IndexedCover {
    let ambient = random_complex(rng, max_vertices, 2);
    let k = rng.gen_range(2..=max_members);
    let mut parts: Vec<Vec<Simplex>> = vec![Vec::new(); k];
    for f in ambient.facets() {
        let copies = rng.gen_range(1..=2);
        for i in (0..k).collect_vec().choose_multiple(rng, copies) {
            parts[*i].push(f.clone());
        }
    }
    for part in parts.iter_mut() {
        if part.is_empty() || rng.gen_bool(0.5) {
            let f = ambient.facets().choose(rng).expect("nonempty complex");
            let len = rng.gen_range(1..=f.len());
            let face = Simplex::new(f.vertices().choose_multiple(rng, len).cloned()).expect("nonempty");
            part.push(face);
        }
    }
    let members = parts.into_iter().map(SimplicialComplex::from_simplices).collect();
    IndexedCover::new(ambient, (0..k).map(|i| vid("m", i)).collect(), members).expect("valid cover")
}

/// Every component of every nonempty intersection is `n`-acyclic.
pub fn uniformly_acyclic(cov: &IndexedCover, n: i64, coeffs: Coefficients) -> bool {
    cov.nerve_faces().iter().all(|f| {
        f.components
            .iter()
            .all(|c| acyclicity_certificate(&c.complex, n, coeffs).is_ok())
    })
}

/// A cover by closed vertex stars (cones over links) whose intersections
/// have `n`-acyclic components, found by rejection. The star centers form a
/// vertex cover of the facets, so the cover is full.
pub fn coned_cover(rng: &mut impl Rng, max_vertices: usize, n: i64) -> IndexedCover {
    loop {
        let ambient = random_complex(rng, max_vertices, 2);
        let mut centers: Vec<VertexId> = Vec::new();
        let mut facets: Vec<&Simplex> = ambient.facets().iter().collect();
        facets.shuffle(rng);
        for f in facets {
            if !f.vertices().iter().any(|v| centers.contains(v)) {
                centers.push(f.vertices().choose(rng).expect("nonempty").clone());
            }
        }
        if centers.len() > 5 {
            continue;
        }
        centers.sort();
        let members: Vec<SimplicialComplex> = centers
            .iter()
            .map(|c| {
                SimplicialComplex::from_simplices(ambient.facets().iter().filter(|f| f.contains(c)).cloned())
            })
            .collect();
        let cov = IndexedCover::new(ambient, centers, members).expect("stars are subcomplexes");
        if uniformly_acyclic(&cov, n, Coefficients::Rational) {
            return cov;
        }
    }
}

/// A poset on `n` elements `p0…` where each pair `i < j` is related with
/// probability `density` before closure.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> Poset {
    let els: Vec<VertexId> = (0..n).map(|i| vid("p", i)).collect();
    let mut rels = Vec::new();
    for (i, j) in (0..n).tuple_combinations() {
        if rng.gen_bool(density) {
            rels.push((els[i].clone(), els[j].clone()));
        }
    }
    Poset::new(els, rels).expect("forward relations are acyclic")
}

pub fn random_connected_poset(rng: &mut impl Rng, n: usize, density: f64) -> Poset {
    loop {
        let p = random_poset(rng, n, density);
        if p.is_connected() {
            return p;
        }
    }
}

/// A random order-preserving map, assigning elements along a linear
/// extension to a random common upper bound of the images below them.
/// `None` if the codomain runs out of upper bounds on every attempt.
pub fn random_poset_map(rng: &mut impl Rng, p: &Poset, q: &Poset) -> Option<PosetMap> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&x| p.strictly_below(x).count_ones(..));
    'attempt: for _ in 0..20 {
        let mut assign = vec![usize::MAX; p.len()];
        for &x in &order {
            let below: Vec<usize> = p.strictly_below(x).ones().map(|y| assign[y]).collect();
            let options: Vec<usize> = (0..q.len())
                .filter(|&c| below.iter().all(|&b| q.le(b, c)))
                .collect();
            match options.choose(rng) {
                Some(&c) => assign[x] = c,
                None => continue 'attempt,
            }
        }
        return Some(PosetMap::from_indices(p.clone(), q.clone(), assign).expect("order-preserving"));
    }
    None
}

/// A small random poset to use as a fiber in `P^Q`: empty, a point, `S⁰`,
/// a chain, or a random poset.
pub fn random_fiber(rng: &mut impl Rng) -> Poset {
    match rng.gen_range(0..6) {
        0 => Poset::new(Vec::new(), Vec::new()).expect("empty"),
        1 => Poset::from_tokens::<&str>(&["*"], &[]).expect("point"),
        2 => crate::posets::s0(),
        3 => Poset::from_tokens(&["x", "y"], &[("x", "y")]).expect("chain"),
        _ => {
            let n = rng.gen_range(2..=4);
            random_poset(rng, n, 0.4)
        }
    }
}

/// Canonical key of a poset under relabeling: the lexicographically least
/// strict-order matrix over orderings that respect a refined invariant
/// coloring.
fn canonical_key(p: &Poset) -> Vec<u64> {
    let n = p.len();
    let mut color: Vec<u64> = (0..n)
        .map(|x| (p.strictly_below(x).count_ones(..) * 16 + p.strictly_above(x).count_ones(..)) as u64)
        .collect();
    for _ in 0..n {
        let sig: Vec<(u64, Vec<u64>, Vec<u64>)> = (0..n)
            .map(|x| {
                let mut d: Vec<u64> = p.strictly_below(x).ones().map(|y| color[y]).collect();
                let mut u: Vec<u64> = p.strictly_above(x).ones().map(|y| color[y]).collect();
                d.sort_unstable();
                u.sort_unstable();
                (color[x], d, u)
            })
            .collect();
        let distinct: Vec<&(u64, Vec<u64>, Vec<u64>)> = sig.iter().sorted().dedup().collect();
        let next: Vec<u64> = sig
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present") as u64)
            .collect();
        if next.iter().unique().count() == color.iter().unique().count() {
            color = next;
            break;
        }
        color = next;
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for c in color.iter().copied().sorted().dedup() {
        classes.push((0..n).filter(|&x| color[x] == c).collect());
    }
    let mut best: Option<Vec<u64>> = None;
    let per_class: Vec<Vec<Vec<usize>>> = classes
        .iter()
        .map(|cl| cl.iter().copied().permutations(cl.len()).collect())
        .collect();
    for choice in per_class.iter().multi_cartesian_product() {
        let order: Vec<usize> = choice.into_iter().flatten().copied().collect();
        let mut key = vec![n as u64];
        key.extend(color.iter().copied().sorted());
        for &a in &order {
            let mut row = 0u64;
            for (j, &b) in order.iter().enumerate() {
                if p.lt(a, b) {
                    row |= 1 << j;
                }
            }
            key.push(row);
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap_or_else(|| vec![0])
}

/// One representative of every isomorphism class of posets with `n`
/// elements, obtained by adding a new maximal element above each down-closed
/// subset of the `(n−1)`-element classes.
pub fn all_posets(n: usize) -> Vec<Poset> {
    let mut level: Vec<Poset> = vec![Poset::new(Vec::new(), Vec::new()).expect("empty")];
    for size in 1..=n {
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut next = Vec::new();
        for p in &level {
            for ideal in down_sets(p) {
                let new = vid("p", size - 1);
                let els: Vec<VertexId> = p.elements().iter().cloned().chain([new.clone()]).collect();
                let rels: Vec<(VertexId, VertexId)> = p
                    .relation_pairs()
                    .into_iter()
                    .map(|(a, b)| (p.element(a).clone(), p.element(b).clone()))
                    .chain(ideal.iter().map(|&a| (p.element(a).clone(), new.clone())))
                    .collect();
                let q = Poset::new(els, rels).expect("new element is maximal");
                if seen.insert(canonical_key(&q)) {
                    next.push(q);
                }
            }
        }
        level = next;
    }
    level
}

fn down_sets(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    // Antichains generate the down-closed sets bijectively.
    let mut out = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for mask in 0u32..(1 << n) {
        let gens: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if !gens
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| !p.comparable(a, b))
        {
            continue;
        }
        let mut set: Vec<usize> = (0..n).filter(|&x| gens.iter().any(|&g| p.le(x, g))).collect();
        set.sort_unstable();
        if seen.insert(set.clone()) {
            out.push(set);
        }
    }
    out
}
