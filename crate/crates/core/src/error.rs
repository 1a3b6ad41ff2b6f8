use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("minimal polynomial {0} is reducible")]
    ReduciblePolynomial(String),
    #[error("bad field descriptor: {0}")]
    BadFieldDescriptor(String),
    #[error("operation requires positive characteristic")]
    CharZeroField,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("relation is not a triangular rewrite rule: {0}")]
    NotTriangular(String),
    #[error("map `{map}` does not respect relation `{relation}` (residue {residue})")]
    RelationNotRespected {
        map: String,
        relation: String,
        residue: String,
    },
    #[error("axiom `{axiom}` fails on `{generator}`: difference {witness}")]
    AxiomViolation {
        axiom: String,
        generator: String,
        witness: String,
    },
    #[error("invalid finite algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid bialgebra: {0}")]
    InvalidBialgebra(String),
    #[error("carrier is infinite-dimensional and has no grading")]
    GradingRequired,
    #[error("pushed relation leaves the triangular fragment: {0}")]
    RelationOutsideFragment(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("plethysm is not a biring map: {0}")]
    NotBiringMap(String),
    #[error("plethysm is not associative on {triple}: difference {witness}")]
    NotAssociative { triple: String, witness: String },
    #[error("unit law fails: {0}")]
    UnitLawFails(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("comultiplication leaves the primitives: {0}")]
    ComultiplicationEscapesPrim(String),
    #[error("plethysm of primitives leaves the computed range: {0}")]
    PlethysmEscapesPrim(String),
    #[error("basis not adapted to the F-action: {0}")]
    BasisNotAdapted(String),
    #[error("Verschiebung is nonzero on `{generator}`: V = {witness}")]
    VerschiebungNonzero { generator: String, witness: String },
    #[error("ideal membership undecidable in the supported fragment: {0}")]
    MembershipUndecidable(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("construction requires a finite base field")]
    InfiniteField,
}
