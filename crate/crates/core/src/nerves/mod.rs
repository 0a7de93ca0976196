//! Nerve-type constructions on indexed simplicial covers.

mod completed;
mod completion;
mod cover;
mod eta;
mod morphism;

pub use completed::{
    completed_nerve, completed_nerve_sset, grothendieck_model, vbar, CompletedNerve, CompletedNerveElement,
    GrothendieckModel, Vbar,
};
pub use completion::{
    completion, completion_with, hypothesis_check, hypothesis_check_with, is_complete, verify_completion,
    verify_completion_with, Completion,
};
pub use cover::{complex_token, nerve, IndexedCover, NerveFace};
pub use eta::{completed_nerve_complex, eta_fiber_mismatches, eta_map, verify_eta, verify_eta_with, EtaMap};
pub use morphism::{induced_nerve_maps, CoverMorphism, InducedNerveMaps};
