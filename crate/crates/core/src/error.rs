use thiserror::Error;

/// Input and contract violations. Verification failures are not errors; they
/// are reported through [`crate::Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid token {0:?}: tokens must be nonempty and contain no whitespace")]
    InvalidToken(String),
    #[error("duplicate token {0:?}")]
    DuplicateToken(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("simplex {simplex} uses vertex {vertex:?} outside the vertex set")]
    UnknownVertex { simplex: String, vertex: String },
    #[error("empty simplex")]
    EmptySimplex,
    #[error("relation cycle: {}", .0.join(" < "))]
    Cycle(Vec<String>),
    #[error("map is not order-preserving: {lower} <= {upper} but {lower_image} is not <= {upper_image}")]
    NotOrderPreserving {
        lower: String,
        upper: String,
        lower_image: String,
        upper_image: String,
    },
    #[error("map is not simplicial: image of {simplex} is {image}, which is not a simplex of the codomain")]
    NotSimplicial { simplex: String, image: String },
    #[error("map is not total: no image for {0:?}")]
    PartialMap(String),
    #[error("member {index:?} is not a subcomplex of the ambient complex: {simplex} is missing")]
    NotSubcomplex { index: String, simplex: String },
    #[error("cover does not cover the ambient complex: {0} lies in no member")]
    NotFullCover(String),
    #[error("invalid cover morphism: image of member {index:?} is not contained in {target:?}")]
    InvalidMorphism { index: String, target: String },
    #[error("{0} is not a cutset")]
    NotCutset(String),
    #[error("poset is not connected")]
    Disconnected,
    #[error("poset is not coherent: {0}")]
    Incoherent(String),
    #[error("truncation at degree {available} is too low for degree {requested}")]
    TruncationTooLow { requested: usize, available: usize },
    #[error("integer coefficients are not a field")]
    NotAField,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
