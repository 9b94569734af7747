use thiserror::Error;

/// Errors surfaced by the algebra engine and the DSL front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in GF({p})")]
    DivisionByZero { p: u64 },

    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),

    #[error("operands live over different rings (variable count or characteristic mismatch)")]
    ArityMismatch,

    #[error("{q} is not a power of the characteristic {p}")]
    InvalidFrobeniusExponent { q: u64, p: u64 },

    #[error("exponent arithmetic overflowed")]
    ExponentOverflow,

    #[error("polynomial and basis use different monomial orders")]
    OrderMismatch,

    #[error("work budget exhausted after {0} S-pair reductions")]
    BudgetExceeded(u64),

    #[error("defining ideal is the unit ideal")]
    UnitDefiningIdeal,

    #[error("ideal is not primary at the origin; length is infinite")]
    NotPrimaryAtOrigin,

    #[error("operation requires homogeneous generators")]
    NonHomogeneousInput,

    #[error("expected ideal containment I \u{2286} J does not hold")]
    ContainmentViolated,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("syntax error at {line}:{col}: unexpected `{token}`")]
    Syntax { line: u32, col: u32, token: String },

    #[error("name `{0}` is not bound")]
    UnboundName(String),
}

impl Error {
    /// Stable machine-readable code used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero { .. } => "DivisionByZero",
            Error::NonPrimeCharacteristic(_) => "NonPrimeCharacteristic",
            Error::ArityMismatch => "ArityMismatch",
            Error::InvalidFrobeniusExponent { .. } => "InvalidFrobeniusExponent",
            Error::ExponentOverflow => "ExponentOverflow",
            Error::OrderMismatch => "OrderMismatch",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::UnitDefiningIdeal => "UnitDefiningIdeal",
            Error::NotPrimaryAtOrigin => "NotPrimaryAtOrigin",
            Error::NonHomogeneousInput => "NonHomogeneousInput",
            Error::ContainmentViolated => "ContainmentViolated",
            Error::Internal(_) => "InternalError",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnboundName(_) => "UnboundName",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
