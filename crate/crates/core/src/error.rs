use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand is not positive under the chosen embedding")]
    NegativeRadicand,
    #[error("d = {0} must be a square-free integer >= 1")]
    NotSquareFree(i64),
    #[error("embedding index {0} is not valid for this field")]
    InvalidEmbedding(u8),
    #[error("defining polynomial has no real root")]
    NoRealRoot,
    #[error("operands belong to different quaternion algebras")]
    AlgebraMismatch,
    #[error("element is not invertible (reduced norm zero)")]
    NotInvertible,
    #[error("algebra is ramified at the requested embedding")]
    NotSplit,
    #[error("bounded search found no presentation with positive a at the split places")]
    NotNormalizable,
    #[error("element does not lie in the order")]
    NotInOrder,
    #[error("algebra parameters a, b must be integral to define the order")]
    NonIntegralAlgebra,
    #[error("element is not polar regular")]
    NotPolarRegular,
    #[error("matrix does not have determinant one")]
    NotUnimodular,
    #[error("matrix does not have two distinct real eigenvalues")]
    NotHyperbolicLike,
    #[error("boundary points are not pairwise distinct")]
    DegenerateTriple,
    #[error("geodesics share an endpoint")]
    SharedEndpoint,
    #[error("flats live in products of different dimension")]
    DimensionMismatch,
    #[error("search window exhausted without a match")]
    NotFound,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("cannot parse {0:?}")]
    Parse(alloc::string::String),
}
