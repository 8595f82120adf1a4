use thiserror::Error;

use crate::simplex::Simplex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("facet {0} repeats a vertex")]
    DuplicateVertexInFacet(String),
    #[error("vertex {0} appears in both operands")]
    VertexCollision(String),
    #[error("complex is not pure")]
    NotPure,
    #[error("{0} is not a face of the complex")]
    FaceNotInComplex(Simplex),
    #[error("sequences are not permutations of the same vertex set")]
    NotAPermutation,
    #[error("complex is not orientable; propagation contradicts itself at {witness}")]
    NonOrientable { witness: Simplex },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("complex has boundary")]
    NotClosed,
    #[error("polygon length {0} is not a positive multiple of 3")]
    BadLength(usize),
    #[error("map is undefined on vertex {0}")]
    MapNotTotal(String),
    #[error("image of {0} is not a simplex of the target")]
    NotSimplicial(Simplex),
    #[error("algebraic numbers disagree across target facets: {0:?}")]
    InconsistentAlg(Vec<i64>),
    #[error("top-dimensional cycle space has rank {0}, expected 1")]
    KernelRankNotOne(usize),
    #[error("map values are not in the domain of the next map: {0}")]
    DomainMismatch(String),
    #[error("{0} is outside the supported range")]
    OutOfRange(String),
}
