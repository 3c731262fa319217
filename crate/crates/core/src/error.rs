use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^31")]
    InvalidPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus is reducible or not monic: {0}")]
    BadModulus(String),
    #[error("polynomial is not a polynomial in x^p (exponent {0} not divisible by p)")]
    NotPPower(usize),
    #[error("pole of order {order} exceeds the cap {cap}")]
    PoleOrderExceedsCap { order: usize, cap: usize },
    #[error("root search unsupported: {0}")]
    UnsupportedSearchSpace(String),
    #[error("duplicate singularity {0}")]
    DuplicateSingularity(String),
    #[error("bad arity for {what}: expected {expected}, got {got}")]
    BadArity {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("exponent at infinity inconsistent with the Riemann relation: expected {expected}, got {got}")]
    ExponentMismatch { expected: u64, got: u64 },
    #[error("operator is not Fuchsian: {0}")]
    NotFuchsian(String),
    #[error("local exponents at {point} are not in F_p (sum {sum}, product {product})")]
    NotInPrimeField {
        point: String,
        sum: String,
        product: String,
    },
    #[error("p1 is not Q'/Q for the normalized Q")]
    P1MismatchQ,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("indicator does not have logarithmic shape: {0}")]
    NotLogarithmicShape(String),
    #[error("u is not squarefree")]
    UNonSquarefree,
    #[error("u vanishes at the singularity {0}")]
    UMeetsSingularity(String),
    #[error("shape error: {0}")]
    ShapeError(String),
    #[error("nonzero residue of 1/(Qu^2) at a root of u: {0}")]
    ResidueObstruction(String),
    #[error("strength mismatch: sum of n_x = {sum}, (r-2)(p-1)-2d = {formula}")]
    StrengthMismatch { sum: i64, formula: i64 },
    #[error("(p-1) does not divide the sum of the a_i ({0})")]
    DivisibilityError(u64),
    #[error("degree {0} is not admissible")]
    DegreeNotAdmissible(usize),
    #[error("coefficient recursion degenerates: {0}")]
    RecursionDegenerate(String),
    #[error("grid of size {size} exceeds the budget {budget}")]
    GridTooLarge { size: u128, budget: u64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("operator does not have nilpotent nonzero p-curvature")]
    NotNilpotentNonzero,
    #[error("parse error: {0}")]
    Parse(String),
}
