//! Cutsets, cutset complexes, coherent posets, fiber verifiers, essential
//! chains and the `P^Q` construction.

mod coherence;
mod cutset;
mod essential;
mod fibers;
mod joins;
mod rcomplex;

pub use coherence::{coherence, join, CoherenceCertificate};
pub use cutset::{gamma_poset, gamma_to_vbar, is_cutset, star_cover, Cutset, Gamma};
pub use essential::{
    core, essential_chains, essential_chains_by_fixed_point, essential_chains_by_intersection, is_essential,
    neighborhood, EssentialChain,
};
pub use fibers::{quillen_fibers, verify_fiber, verify_fiber_with, FiberMode, QuillenFiber};
pub use joins::{
    acyclicity_degree, chain_cover, covex_cover, detection_check, detection_check_with, pq_join, s0, PqJoin,
};
pub use rcomplex::{
    pi1_abelianized, presentation, r_complex, verify_cutset, GroupPresentation, RComplex, REdge, RTriangle,
};

use crate::combinat::Poset;

/// `{a,b}` listing the tokens of the given elements in index order; `{}`
/// when empty.
pub fn subset_token(p: &Poset, s: &[usize]) -> String {
    let mut s = s.to_vec();
    s.sort_unstable();
    let toks: Vec<&str> = s.iter().map(|&i| p.element(i).as_str()).collect();
    format!("{{{}}}", toks.join(","))
}
