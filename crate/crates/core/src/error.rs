use thiserror::Error;

/// Errors raised by field construction, polynomial operations and the sweeps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degrees must be positive (e = {e}, n = {n})")]
    InvalidDegree { e: u32, n: u32 },
    #[error("field of order {p}^{degree} exceeds the supported size")]
    FieldTooLarge { p: u32, degree: u32 },
    #[error("modulus has degree {got}, expected {expected}")]
    ModulusDegree { expected: u32, got: u32 },
    #[error("modulus is not monic")]
    ModulusNotMonic,
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("element {value} is out of range for a field of order {order}")]
    ElementOutOfRange { value: u64, order: u64 },
    #[error("{m} does not divide {n}")]
    NotADivisor { m: u32, n: u32 },
    #[error("gcd({s}, {n}) != 1")]
    NotCoprime { s: u32, n: u32 },
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("operands live in different fields")]
    ContextMismatch,
    #[error("basis elements are linearly dependent over F_q")]
    DependentBasis,
    #[error("constant coefficient is zero")]
    ZeroConstantTerm,
    #[error("semilinear map does not have order n (B != I)")]
    NotOrderN,
    #[error("matrix order exceeds the iteration cap {cap}")]
    OrderCapExceeded { cap: u64 },
    #[error("sweep of {needed} items exceeds the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed field spec: {0}")]
    MalformedFieldSpec(String),
    #[error("malformed polynomial spec: {0}")]
    MalformedPolySpec(String),
    #[error("malformed coefficient tuple: {0}")]
    MalformedTuple(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable identifier used in JSON error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::InvalidDegree { .. } => "invalid_degree",
            Error::FieldTooLarge { .. } => "field_too_large",
            Error::ModulusDegree { .. } => "modulus_degree",
            Error::ModulusNotMonic => "modulus_not_monic",
            Error::ReducibleModulus(_) => "reducible_modulus",
            Error::ElementOutOfRange { .. } => "element_out_of_range",
            Error::NotADivisor { .. } => "not_a_divisor",
            Error::NotCoprime { .. } => "not_coprime",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::ContextMismatch => "context_mismatch",
            Error::DependentBasis => "dependent_basis",
            Error::ZeroConstantTerm => "zero_constant_term",
            Error::NotOrderN => "not_order_n",
            Error::OrderCapExceeded { .. } => "order_cap_exceeded",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::Precondition(_) => "precondition",
            Error::MalformedFieldSpec(_) => "malformed_field_spec",
            Error::MalformedPolySpec(_) => "malformed_poly_spec",
            Error::MalformedTuple(_) => "malformed_tuple",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
