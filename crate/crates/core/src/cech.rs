//! Čech levels, the discrete Čech complex `Čᵟ` and the nerve-theorem harness.

use std::collections::HashMap;

use itertools::Itertools;

use crate::combinat::{Face, SimplicialComplex, SimplicialSetTrunc};
use crate::error::Result;
use crate::exec::Execution;
use crate::homology::{range_compare, simplicial_homology_with, sset_homology, Coefficients};
use crate::nerves::{completed_nerve, completed_nerve_complex, hypothesis_check_with, IndexedCover};
use crate::verdict::{Check, Verdict};

/// One cell of a Čech level: an index tuple (repeats allowed) and its
/// nonempty intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCell {
    pub tuple: Vec<usize>,
    pub intersection: SimplicialComplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechLevel {
    pub k: usize,
    /// Lexicographic in the tuple.
    pub cells: Vec<CechCell>,
}

/// Levels `0..=k_max`. Every intersection is computed through the sorted
/// index set of its tuple.
pub fn cech_levels(cov: &IndexedCover, k_max: usize) -> Vec<CechLevel> {
    cech_levels_with(cov, k_max, Execution::default())
}

pub fn cech_levels_with(cov: &IndexedCover, k_max: usize, exec: Execution) -> Vec<CechLevel> {
    let lookup = cov.face_lookup();
    let faces = cov.nerve_faces_with(exec);
    let mut levels: Vec<CechLevel> = Vec::with_capacity(k_max + 1);
    let mut tuples: Vec<Vec<usize>> = (0..cov.len())
        .filter(|&i| !cov.member(i).is_empty())
        .map(|i| vec![i])
        .collect();
    for k in 0..=k_max {
        let cells = tuples
            .iter()
            .map(|t| CechCell {
                tuple: t.clone(),
                intersection: faces[lookup[&index_set(t)]].intersection.clone(),
            })
            .collect();
        levels.push(CechLevel { k, cells });
        if k == k_max {
            break;
        }
        let children = exec.map(&tuples, |t| {
            let set = index_set(t);
            (0..cov.len())
                .filter_map(|j| {
                    let mut s = set.clone();
                    if let Err(pos) = s.binary_search(&j) {
                        s.insert(pos, j);
                    }
                    lookup.contains_key(&s).then(|| {
                        let mut c = t.clone();
                        c.push(j);
                        c
                    })
                })
                .collect::<Vec<_>>()
        });
        tuples = children.into_iter().flatten().collect();
    }
    levels
}

fn index_set(t: &[usize]) -> Vec<usize> {
    t.iter().copied().sorted_unstable().dedup().collect()
}

/// Checks that level `k` is the fiber product of level `k − 1` and level 1
/// over level 0: joining cells that agree on the shared index and whose
/// intersections meet gives every level-`k` cell exactly once, with the
/// intersection of the two regions. Returns a description of the first
/// discrepancy.
pub fn fiber_product_check(levels: &[CechLevel], k: usize) -> std::result::Result<(), String> {
    if k == 0 || k >= levels.len() || levels.len() < 2 {
        return Err(format!("level {k} has no fiber-product description here"));
    }
    let target: HashMap<&[usize], &SimplicialComplex> = levels[k]
        .cells
        .iter()
        .map(|c| (c.tuple.as_slice(), &c.intersection))
        .collect();
    let mut hit = 0usize;
    for a in &levels[k - 1].cells {
        for b in &levels[1].cells {
            if a.tuple.last() != b.tuple.first() {
                continue;
            }
            let region = a.intersection.intersection(&b.intersection);
            if region.is_empty() {
                continue;
            }
            let mut t = a.tuple.clone();
            t.push(b.tuple[1]);
            match target.get(t.as_slice()) {
                Some(r) if **r == region => hit += 1,
                Some(_) => return Err(format!("tuple {t:?} has a different region")),
                None => return Err(format!("tuple {t:?} missing from level {k}")),
            }
        }
    }
    // Distinct pairs give distinct tuples, so counting suffices.
    if hit != target.len() {
        return Err(format!("{} of {} level-{k} cells reached", hit, target.len()));
    }
    Ok(())
}

/// `Čᵟ(V)` truncated at degree `d`: nondegenerate `k`-simplices are index
/// tuples with no two adjacent entries equal, paired with a component of
/// their intersection. Labels read `(u,w,u)@rep`.
pub fn cech_delta(cov: &IndexedCover, d: usize) -> SimplicialSetTrunc {
    cech_delta_with(cov, d, Execution::default())
}

pub fn cech_delta_with(cov: &IndexedCover, d: usize, exec: Execution) -> SimplicialSetTrunc {
    let lookup = cov.face_lookup();
    let faces = cov.nerve_faces_with(exec);
    // Per degree: (tuple, nerve face position, component position).
    let mut levels: Vec<Vec<(Vec<usize>, usize, usize)>> = Vec::with_capacity(d + 1);
    let mut tuples: Vec<(Vec<usize>, usize)> = (0..cov.len())
        .filter_map(|i| lookup.get(&vec![i]).map(|&f| (vec![i], f)))
        .collect();
    for k in 0..=d {
        levels.push(
            tuples
                .iter()
                .flat_map(|(t, f)| (0..faces[*f].components.len()).map(move |c| (t.clone(), *f, c)))
                .collect(),
        );
        if k == d {
            break;
        }
        let children = exec.map(&tuples, |(t, _)| {
            let last = *t.last().expect("nonempty tuple");
            let set = index_set(t);
            (0..cov.len())
                .filter(|&j| j != last)
                .filter_map(|j| {
                    let mut s = set.clone();
                    if let Err(pos) = s.binary_search(&j) {
                        s.insert(pos, j);
                    }
                    lookup.get(&s).map(|&f| {
                        let mut c = t.clone();
                        c.push(j);
                        (c, f)
                    })
                })
                .collect::<Vec<_>>()
        });
        tuples = children.into_iter().flatten().collect();
    }
    let labels: Vec<Vec<String>> = levels
        .iter()
        .map(|lvl| {
            lvl.iter()
                .map(|(t, f, c)| {
                    format!(
                        "({})@{}",
                        t.iter().map(|&i| cov.index(i)).join(","),
                        faces[*f].components[*c].rep
                    )
                })
                .collect()
        })
        .collect();
    let position: Vec<HashMap<(&[usize], usize), usize>> = levels
        .iter()
        .map(|lvl| {
            lvl.iter()
                .enumerate()
                .map(|(i, (t, _, c))| ((t.as_slice(), *c), i))
                .collect()
        })
        .collect();
    let mut face_lists: Vec<Vec<Vec<Face>>> = vec![Vec::new()];
    for k in 1..=d {
        let lists = exec.map(&levels[k], |(t, f, c)| {
            let rep = &faces[*f].components[*c].rep;
            (0..=k)
                .map(|i| {
                    if i > 0 && i < k && t[i - 1] == t[i + 1] {
                        return Face::Degenerate;
                    }
                    let mut sub = t.clone();
                    sub.remove(i);
                    let target = &faces[lookup[&index_set(&sub)]];
                    let ci = target
                        .components
                        .iter()
                        .position(|comp| comp.complex.contains_vertex(rep))
                        .expect("components push forward");
                    Face::Simplex(position[k - 1][&(sub.as_slice(), ci)])
                })
                .collect::<Vec<Face>>()
        });
        face_lists.push(lists);
    }
    SimplicialSetTrunc::new(labels, face_lists).expect("face maps of a simplicial set")
}

pub fn verify_nerve_theorem(cov: &IndexedCover, n: i64, coeffs: Coefficients) -> Result<Verdict> {
    verify_nerve_theorem_with(cov, n, coeffs, Execution::default())
}

/// Hypotheses: every component of `⋂F` with `|F| <= n` is
/// `(n − |F| + 1)`-acyclic. Conclusions, checked only when the hypotheses
/// hold: the ambient complex and the completed nerve agree in homology
/// through `n` with the degree-`n+1` comparison, and `Čᵟ` has the homology
/// of the completed nerve through `n + 1`.
pub fn verify_nerve_theorem_with(
    cov: &IndexedCover,
    n: i64,
    coeffs: Coefficients,
    exec: Execution,
) -> Result<Verdict> {
    cov.require_full()?;
    let mut verdict = hypothesis_check_with(cov, n, coeffs, exec);
    let top = (n + 1).max(0) as usize;
    if !verdict.passed() {
        let names = (0..=n)
            .map(|k| format!("conclusion/h{k}-iso"))
            .chain((n + 1 >= 0).then(|| format!("conclusion/h{}-surjectability", n + 1)))
            .chain(std::iter::once("conclusion/cech-agreement".to_string()));
        for name in names {
            verdict.push(Check::skipped(name, "hypotheses failed"));
        }
        return Ok(verdict);
    }
    let hx = simplicial_homology_with(cov.ambient(), top, coeffs, exec);
    let nerve = completed_nerve_complex(&completed_nerve(cov));
    let hn = simplicial_homology_with(&nerve, top, coeffs, exec);
    for c in range_compare(&hx, &hn, n)? {
        let name = format!("conclusion/{}", c.name);
        verdict.push(Check { name, ..c });
    }
    let hc = sset_homology(&cech_delta_with(cov, top + 1, exec), top, coeffs)?;
    let same = hc.betti == hn.betti && hc.torsion == hn.torsion;
    verdict.push(
        Check::from_bool("conclusion/cech-agreement", same, || {
            format!("Čᵟ Betti {:?} but completed nerve Betti {:?}", hc.betti, hn.betti)
        })
        .with_numbers("cech", hc.betti.iter().map(|&b| b as i64).collect())
        .with_numbers("completed-nerve", hn.betti.iter().map(|&b| b as i64).collect()),
    );
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{cx, v};
    use crate::homology::Coefficients::Rational;

    fn cover(ambient: SimplicialComplex, members: &[(&str, SimplicialComplex)]) -> IndexedCover {
        IndexedCover::new(
            ambient,
            members.iter().map(|(t, _)| v(t)).collect(),
            members.iter().map(|(_, m)| m.clone()).collect(),
        )
        .unwrap()
    }

    fn hollow_triangle() -> IndexedCover {
        let k = cx(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        cover(
            k,
            &[
                ("ab", cx(&[&["a", "b"]])),
                ("ac", cx(&[&["a", "c"]])),
                ("bc", cx(&[&["b", "c"]])),
            ],
        )
    }

    #[test]
    fn singleton_levels() {
        let k = cx(&[&["a", "b"]]);
        let cov = cover(k.clone(), &[("u", k)]);
        for lvl in cech_levels(&cov, 3) {
            assert_eq!(lvl.cells.len(), 1);
        }
        let s = cech_delta(&cov, 3);
        assert_eq!(s.counts(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn hollow_triangle_levels() {
        let levels = cech_levels(&hollow_triangle(), 3);
        assert_eq!(levels[1].cells.len(), 9);
        for k in 1..=3 {
            fiber_product_check(&levels, k).unwrap();
        }
    }

    #[test]
    fn two_members_alternate() {
        let k = cx(&[&["a", "b"], &["b", "c"]]);
        let cov = cover(k, &[("u", cx(&[&["a", "b"]])), ("w", cx(&[&["b", "c"]]))]);
        let s = cech_delta(&cov, 2);
        assert_eq!(s.counts(), vec![2, 2, 2]);
        assert_eq!(s.labels(2), &["(u,w,u)@b".to_string(), "(w,u,w)@b".to_string()]);
        assert_eq!(s.face(2, 0, 1), Face::Degenerate);
    }

    #[test]
    fn square_circle_cech() {
        let k = cx(&[&["1", "2"], &["2", "3"], &["3", "4"], &["1", "4"]]);
        let cov = cover(
            k,
            &[
                ("u", cx(&[&["1", "4"], &["1", "2"]])),
                ("w", cx(&[&["2", "3"], &["3", "4"]])),
            ],
        );
        let s = cech_delta(&cov, 2);
        assert_eq!(s.counts(), vec![2, 4, 4]);
        let h = sset_homology(&s, 1, Rational).unwrap();
        assert_eq!(h.betti, vec![1, 1]);
    }

    #[test]
    fn hollow_triangle_theorem() {
        let v = verify_nerve_theorem(&hollow_triangle(), 1, Rational).unwrap();
        assert!(v.passed(), "{v:?}");
        assert!(v.get("conclusion/h1-iso").unwrap().passed());
    }

    #[test]
    fn parallel_matches_sequential() {
        let cov = hollow_triangle();
        assert_eq!(
            cech_delta_with(&cov, 3, Execution::Sequential),
            cech_delta_with(&cov, 3, Execution::Parallel)
        );
    }
}
