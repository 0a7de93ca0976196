//! Named example instances.

use crate::combinat::{Poset, PosetMap, Simplex, SimplicialComplex, VertexId};
use crate::nerves::IndexedCover;
use crate::posets::{covex_cover, pq_join, s0};

/// A fixture is one of the four manifest payload kinds.
#[derive(Clone, Debug)]
pub enum Fixture {
    Complex(SimplicialComplex),
    Poset(Poset),
    Cover(IndexedCover),
    PosetMap(PosetMap),
}

pub const NAMES: &[&str] = &[
    "b3-minus-bounds",
    "chain-covex",
    "fig1",
    "fig1-ambient",
    "hollow-triangle",
    "quillen-counterexample",
    "quillen-counterexample-base",
    "rp2",
    "square-circle",
    "square-circle-poset",
];

pub fn by_name(name: &str) -> Option<Fixture> {
    Some(match name {
        "b3-minus-bounds" => Fixture::Poset(b3_minus_bounds()),
        "chain-covex" => Fixture::Cover(chain_covex()),
        "fig1" => Fixture::Cover(fig1()),
        "fig1-ambient" => Fixture::Complex(fig1().ambient().clone()),
        "hollow-triangle" => Fixture::Cover(hollow_triangle()),
        "quillen-counterexample" => Fixture::PosetMap(quillen_counterexample()),
        "quillen-counterexample-base" => Fixture::Poset(joinex_base()),
        "rp2" => Fixture::Complex(rp2()),
        "square-circle" => Fixture::Cover(square_circle()),
        "square-circle-poset" => Fixture::Poset(square_circle_poset()),
        _ => return None,
    })
}

fn simplex(tokens: &[&str]) -> Simplex {
    Simplex::from_tokens(tokens).expect("fixture tokens are valid")
}

fn complex(facets: &[&[&str]]) -> SimplicialComplex {
    SimplicialComplex::from_simplices(facets.iter().map(|f| simplex(f)))
}

fn cover(ambient: SimplicialComplex, members: Vec<(&str, SimplicialComplex)>) -> IndexedCover {
    let (index, members): (Vec<_>, Vec<_>) = members
        .into_iter()
        .map(|(t, m)| (VertexId::new(t).expect("valid token"), m))
        .unzip();
    IndexedCover::new(ambient, index, members).expect("fixture cover is valid")
}

fn cone(apex: &str, path: &[&str], closed: bool) -> SimplicialComplex {
    let mut edges: Vec<[&str; 2]> = path.windows(2).map(|w| [w[0], w[1]]).collect();
    if closed {
        edges.push([path[path.len() - 1], path[0]]);
    }
    SimplicialComplex::from_simplices(edges.iter().map(|[a, b]| simplex(&[apex, a, b])))
}

/// A 2-sphere (two cones over a hexagonal equator) with an equatorial disk
/// split into three sectors. Index order A, B, C, D+, D-.
pub fn fig1() -> IndexedCover {
    let hex = ["e1", "e2", "e3", "e4", "e5", "e6"];
    let a = cone("c", &["e1", "e2", "e3"], false);
    let b = cone("c", &["e3", "e4", "e5"], false);
    let c = cone("c", &["e5", "e6", "e1"], false);
    let up = cone("N", &hex, true);
    let down = cone("S", &hex, true);
    let ambient = [&b, &c, &up, &down].iter().fold(a.clone(), |acc, m| acc.union(m));
    cover(
        ambient,
        vec![("A", a), ("B", b), ("C", c), ("D+", up), ("D-", down)],
    )
}

/// A square split into two paths meeting in two opposite corners.
pub fn square_circle() -> IndexedCover {
    let ambient = complex(&[&["1", "2"], &["2", "3"], &["3", "4"], &["1", "4"]]);
    cover(
        ambient,
        vec![
            ("u", complex(&[&["1", "4"], &["1", "2"]])),
            ("w", complex(&[&["2", "3"], &["3", "4"]])),
        ],
    )
}

/// Two minima below two maxima; its order complex is a square.
pub fn square_circle_poset() -> Poset {
    Poset::from_tokens(
        &["a", "b", "c", "d"],
        &[("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")],
    )
    .expect("valid fixture")
}

/// The boundary of a triangle covered by its three edges.
pub fn hollow_triangle() -> IndexedCover {
    let ambient = complex(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
    cover(
        ambient,
        vec![
            ("ab", complex(&[&["a", "b"]])),
            ("ac", complex(&[&["a", "c"]])),
            ("bc", complex(&[&["b", "c"]])),
        ],
    )
}

pub fn chain_poset(n: usize) -> Poset {
    let toks: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let rels: Vec<(String, String)> = (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
    Poset::from_tokens(&toks, &rels).expect("valid chain")
}

/// The preimage cover over a 3-chain with every fiber `S⁰`.
pub fn chain_covex() -> IndexedCover {
    covex_cover(&chain_poset(3)).expect("valid fixture")
}

/// `{0, 0', 1, 2}` with `0, 0' < 1 < 2`.
pub fn joinex_base() -> Poset {
    Poset::from_tokens(&["0", "0'", "1", "2"], &[("0", "1"), ("0'", "1"), ("1", "2")]).expect("valid fixture")
}

/// The projection `P^Q → P` over [`joinex_base`] with `Q₁` a point and the
/// other fibers `S⁰`.
pub fn quillen_counterexample() -> PosetMap {
    let p = joinex_base();
    let point = Poset::from_tokens::<&str>(&["*"], &[]).expect("valid");
    let fibers: Vec<Poset> = p
        .elements()
        .iter()
        .map(|e| if e.as_str() == "1" { point.clone() } else { s0() })
        .collect();
    pq_join(&p, &fibers).expect("valid fixture").projection
}

/// The six-vertex real projective plane.
pub fn rp2() -> SimplicialComplex {
    complex(&[
        &["1", "2", "3"],
        &["1", "3", "4"],
        &["1", "4", "5"],
        &["1", "5", "6"],
        &["1", "2", "6"],
        &["2", "3", "5"],
        &["2", "4", "5"],
        &["2", "4", "6"],
        &["3", "4", "6"],
        &["3", "5", "6"],
    ])
}

/// The proper part of the Boolean lattice on three atoms.
pub fn b3_minus_bounds() -> Poset {
    Poset::from_tokens(
        &["a", "b", "c", "ab", "ac", "bc"],
        &[
            ("a", "ab"),
            ("b", "ab"),
            ("a", "ac"),
            ("c", "ac"),
            ("b", "bc"),
            ("c", "bc"),
        ],
    )
    .expect("valid fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        for n in NAMES {
            assert!(by_name(n).is_some(), "{n}");
        }
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn fig1_intersections() {
        let cov = fig1();
        assert!(cov.is_full_cover());
        let pos = |t: &str| cov.position(t).unwrap();
        let (a, b, c, up, down) = (pos("A"), pos("B"), pos("C"), pos("D+"), pos("D-"));
        assert_eq!(cov.intersection(&[a, b]), complex(&[&["c", "e3"]]));
        assert_eq!(
            cov.intersection(&[a, up]),
            complex(&[&["e1", "e2"], &["e2", "e3"]])
        );
        assert_eq!(cov.intersection(&[up, down]).num_simplices(1), 6);
        assert_eq!(cov.intersection(&[a, b, c]), complex(&[&["c"]]));
        assert!(cov.intersection(&[a, b, c, up]).is_empty());
    }
}
