//! Finite simplicial complexes, posets, truncated simplicial sets and their maps.

mod complex;
mod maps;
mod poset;
mod sset;

pub use complex::{Component, Simplex, SimplicialComplex, VertexId};
pub use maps::{PosetMap, SimplicialMap};
pub use poset::{face_poset, order_complex, Poset};
pub use sset::{Face, SimplicialSetTrunc};

#[cfg(test)]
pub(crate) use complex::{cx, v};
