mod common;

use std::collections::BTreeSet;

use common::{all_faces, betti_oracle, components, Faces};
use nervekit::cech::verify_nerve_theorem;
use nervekit::fixtures::{fig1, hollow_triangle, square_circle};
use nervekit::homology::simplicial_homology;
use nervekit::nerves::*;
use nervekit::{order_complex, Coefficients, Execution, SimplicialComplex, Status};

fn betti(k: &SimplicialComplex) -> Vec<usize> {
    simplicial_homology(k, 3, Coefficients::Rational)
        .betti_through(3)
        .to_vec()
}

/// Distinct nonempty intersections' components, by brute force over subsets.
fn component_oracle(cov: &IndexedCover) -> BTreeSet<Faces> {
    let faces: Vec<Faces> = cov.members().iter().map(all_faces).collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << faces.len()) {
        let mut inter: Option<Faces> = None;
        for (i, f) in faces.iter().enumerate() {
            if mask >> i & 1 == 1 {
                inter = Some(match inter {
                    None => f.clone(),
                    Some(acc) => acc.intersection(f).cloned().collect(),
                });
            }
        }
        let inter = inter.unwrap();
        for comp in components(&inter) {
            out.insert(inter.iter().filter(|s| comp.contains(&s[0])).cloned().collect());
        }
    }
    out
}

#[test]
fn fig1_homotopy_types() {
    let cov = fig1();
    assert_eq!(betti(cov.ambient()), vec![1, 0, 2, 0]);
    assert_eq!(betti_oracle(cov.ambient(), 3), vec![1, 0, 2, 0]);
    assert_eq!(betti(&nerve(&cov)), vec![1, 0, 1, 0]);
    let cn = completed_nerve(&cov);
    assert_eq!(betti(&order_complex(&cn.poset)), vec![1, 0, 1, 0]);
    let c = completion(&cov).unwrap();
    assert_eq!(betti(&order_complex(&c.poset)), vec![1, 0, 2, 0]);
}

#[test]
fn fig1_intersection_poset() {
    let cov = fig1();
    let vb = vbar(&cov);
    let oracle = component_oracle(&cov);
    assert_eq!(vb.poset.len(), oracle.len());
    assert_eq!(vb.poset.len(), 16);
    let got: BTreeSet<Faces> = vb.members.iter().map(all_faces).collect();
    assert_eq!(got, oracle);
    assert_eq!(betti(&order_complex(&vb.poset)), vec![1, 0, 1, 0]);

    // The completion drops exactly the equator.
    let c = completion(&cov).unwrap();
    let pos = |t: &str| cov.position(t).unwrap();
    let equator = cov.intersection(&[pos("D+"), pos("D-")]);
    let mut expected: Vec<SimplicialComplex> =
        vb.members.iter().filter(|m| **m != equator).cloned().collect();
    let mut members = c.members.clone();
    expected.sort_by_key(complex_token);
    members.sort_by_key(complex_token);
    assert_eq!(members, expected);
}

#[test]
fn fig1_nerve_theorem_range() {
    let cov = fig1();
    let v = verify_nerve_theorem(&cov, 1, Coefficients::Rational).unwrap();
    assert!(v.passed(), "{v:?}");
    let v = verify_nerve_theorem(&cov, 2, Coefficients::Rational).unwrap();
    assert!(!v.passed());
    let failed: Vec<&str> = v.failures().map(|c| c.name.as_str()).collect();
    assert_eq!(failed, vec!["hypothesis/{D+,D-}@e1"]);
    assert_eq!(
        v.get("conclusion/cech-agreement").unwrap().status,
        Status::Skipped
    );
}

#[test]
fn square_circle_models() {
    let cov = square_circle();
    assert_eq!(betti(&nerve(&cov)), vec![1, 0, 0, 0]);
    let cn = completed_nerve(&cov);
    let tokens: Vec<&str> = cn.poset.elements().iter().map(|e| e.as_str()).collect();
    assert_eq!(tokens, vec!["{u,w}@2", "{u,w}@4", "{u}@1", "{w}@2"]);
    assert_eq!(betti(&order_complex(&cn.poset)), vec![1, 1, 0, 0]);
    assert_eq!(is_complete(&cov), Err(vec![0, 1]));

    let eta = eta_map(&cov).unwrap();
    let v2 = eta.poset_map.domain().index_of("{2}").unwrap();
    assert_eq!(
        eta.completed.poset.element(eta.poset_map.apply(v2)).as_str(),
        "{u,w}@2"
    );
    let v1 = eta.poset_map.domain().index_of("{1}").unwrap();
    assert_eq!(
        eta.completed.poset.element(eta.poset_map.apply(v1)).as_str(),
        "{u}@1"
    );
}

#[test]
fn grothendieck_and_eta_on_fixtures() {
    for cov in [fig1(), square_circle(), hollow_triangle()] {
        assert!(grothendieck_model(&cov).is_isomorphism);
        let eta = eta_map(&cov).unwrap();
        assert!(eta_fiber_mismatches(&eta, Execution::default()).is_empty());
        let c = completion(&cov).unwrap();
        assert!(is_complete(&c.as_cover(cov.ambient())).is_ok());
    }
}

#[test]
fn hollow_triangle_nerve_is_hollow() {
    let cov = hollow_triangle();
    assert_eq!(betti(&nerve(&cov)), vec![1, 1, 0, 0]);
    let vb = vbar(&cov);
    // three edges and three vertices
    assert_eq!(vb.poset.len(), 6);
    assert_eq!(betti(&order_complex(&vb.poset)), betti_oracle(cov.ambient(), 3));
}
