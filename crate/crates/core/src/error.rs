use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a supported prime")]
    InvalidField(u64),

    #[error("parse error at byte {pos} in {input:?}: {message}")]
    Parse {
        input: String,
        pos: usize,
        message: String,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("coefficient {0} is not invertible over the coefficient field")]
    NotInvertible(String),

    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),

    #[error("operands belong to different polynomial rings")]
    RingMismatch,

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("{what} exceeded its cap of {limit}")]
    CapExceeded { what: &'static str, limit: u64 },

    #[error("ideal is not homogeneous")]
    NotHomogeneous,

    #[error("leading monomials of the divisor ideal do not share one degree")]
    DegreeMismatch,

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("shape {0} is outside the classified table")]
    Unclassified(String),

    #[error("characteristic 2 is not supported here: {0}")]
    CharacteristicTwo(String),

    #[error("probe polynomial already lies in the ideal")]
    ProbeInIdeal,

    #[error("exact division failed: {0}")]
    DivisionFailed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
