use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("operation not supported over this base: {0}")]
    UnsupportedBase(String),
    #[error("degree bound exceeded: {0}")]
    DegreeBound(String),
    #[error("polynomial is reducible over the top layer: {0}")]
    Reducible(String),
    #[error("zero divisor met: a defining polynomial is reducible")]
    ZeroDivisor,
    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("closure exceeded {0} elements")]
    ClosureBound(usize),
    #[error("primitive element search exhausted after {0} candidates")]
    PrimitiveElementNotFound(usize),
    #[error("kernel is not closed under products")]
    NotAField,
    #[error("eigenvalue outside the field: {0}")]
    EigenvalueOutsideField(String),
    #[error("bimodule is not split: {0}")]
    NotSplit(String),
    #[error("characteristic polynomial is not a power of the minimal polynomial")]
    NotAPower,
    #[error("classification failed: {0}")]
    ClassificationFailed(String),
    #[error("not quasi-Galois: {0}")]
    NotQuasiGalois(String),
    #[error("divisibility violated: {0}")]
    Violated(String),
    #[error("not a primitive root of unity: {0}")]
    NotPrimitiveRoot(String),
    #[error("action is not a module-algebra action: {0}")]
    NotModuleAlgebra(String),
    #[error("axiom violated: {0}")]
    AxiomViolation(String),
    #[error("map is not invertible: {0}")]
    NotInvertible(String),
    #[error("coefficient escapes the central subalgebra: {0}")]
    CoefficientEscapesZ(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not idempotent: {0}")]
    NotIdempotent(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
