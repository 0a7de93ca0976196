//! Nerve-type combinatorial models for finite simplicial covers and poset maps.
//!
//! The crate builds the Borsuk nerve, the completed nerve (as a poset, as a
//! simplicial set and as a Grothendieck construction), the discrete Čech
//! complex, cover completions, cutset complexes and poset fiber data, and
//! compares all of them through exact homology over ℚ, 𝔽ₚ and ℤ.
//!
//! Everything is a pure function over immutable values. Batch work (Čech
//! levels, per-face intersections, fiber checks) runs on rayon when the
//! `parallel` feature is enabled and falls back to plain iterators otherwise;
//! both paths produce identical output.

pub mod cech;
pub mod combinat;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod homology;
pub mod nerves;
pub mod posets;
pub mod random;
pub mod verdict;

pub use combinat::{
    face_poset, order_complex, Face, Poset, PosetMap, Simplex, SimplicialComplex, SimplicialMap,
    SimplicialSetTrunc, VertexId,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use homology::{Coefficients, HomologyResult};
pub use nerves::IndexedCover;
pub use verdict::{Check, Status, Verdict};
