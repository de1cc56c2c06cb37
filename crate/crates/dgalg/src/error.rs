use thiserror::Error;

/// Errors raised by the algebra kernel and the modules built on top of it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("relations are not confluent below the cap: monomial {monomial} has normal forms {left} and {right}")]
    NonConfluentRelations {
        monomial: String,
        left: String,
        right: String,
    },
    #[error("rewriting did not terminate while reducing {0}")]
    NonTerminatingRewrite(String),
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("operation requires field coefficients, got {0}")]
    NonFieldCoefficients(String),
    #[error("operation requires a homogeneous element, got degrees {0:?}")]
    Inhomogeneous(Vec<i64>),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid DGA: {0}")]
    InvalidDga(String),
    #[error("product table is not associative: {0}")]
    NonAssociativeTable(String),
    #[error("homology representative failure: {0}")]
    RepresentativeFailure(String),
    #[error("candidate is not a basis: {0}")]
    NotABasis(String),
    #[error("wedge model associativity failure: {0}")]
    AssociativityFailure(String),
    #[error("algebra is not unital: {0}")]
    NonUnital(String),
    #[error("graded pieces are not free: {0}")]
    NonFreePieces(String),
    #[error("no Dyer-Lashof action is shipped for {op} on generator {generator}")]
    MissingGeneratorAction { op: String, generator: String },
    #[error("Dyer-Lashof evaluation leaves the degree cap: needs degree {needed}, cap is {cap}")]
    DegreeOverflow { needed: i64, cap: i64 },
    #[error("input is not certified as an extension; pass the override flag to assume it")]
    NotCertified,
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("cap too small: need at least {need}, got {got}")]
    CapTooSmall { need: i64, got: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
