//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the 2^31 bound")]
    ModulusTooLarge(u64),
    #[error("scalars belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("zero has no inverse")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("ring dimension must satisfy 1 <= n <= {max}, got {n}")]
    RingDimOutOfRange { n: usize, max: usize },
    #[error("degree must satisfy {min} <= d <= {max}, got {d}")]
    DegreeOutOfRange { d: usize, min: usize, max: usize },
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("group closure exceeded the cap of {0} elements")]
    ClosureCapExceeded(usize),
    #[error("group must be non-trivial")]
    TrivialGroup,
    #[error("field characteristic {p} divides the group order {order}")]
    CharDividesOrder { p: u64, order: usize },
    #[error("matrix is not an element of the group")]
    ElementNotInGroup,
    #[error("values do not define a character: {0}")]
    InvalidCharacter(String),
    #[error("character enumeration requires a finite field")]
    FieldNotFinite,
    #[error("character enumeration space is too large ({0} candidate maps)")]
    OracleTooLarge(u128),
    #[error("functional must be non-trivial")]
    ZeroFunctional,
    #[error("functional is not equivariant for the declared character")]
    NotEquivariant,
    #[error("the invariant subspace is zero in degree {0}")]
    InvariantsVanish(usize),
    #[error("ideal piece 0 must be zero (proper ideal required)")]
    ImproperIdeal,
    #[error("ideal is not stable under the group action")]
    NotGInvariant,
    #[error("unknown built-in group '{0}'")]
    UnknownZooGroup(String),
    #[error("unknown replication target '{0}'")]
    UnknownExample(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable tag, used in the CLI's JSON error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::ModulusTooLarge(_) => "modulus_too_large",
            Error::FieldMismatch(_, _) => "field_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::SingularMatrix => "singular_matrix",
            Error::RingDimOutOfRange { .. } => "ring_dim_out_of_range",
            Error::DegreeOutOfRange { .. } => "degree_out_of_range",
            Error::RingMismatch => "ring_mismatch",
            Error::ClosureCapExceeded(_) => "closure_cap_exceeded",
            Error::TrivialGroup => "trivial_group",
            Error::CharDividesOrder { .. } => "char_divides_group_order",
            Error::ElementNotInGroup => "element_not_in_group",
            Error::InvalidCharacter(_) => "invalid_character",
            Error::FieldNotFinite => "field_not_finite",
            Error::OracleTooLarge(_) => "oracle_too_large",
            Error::ZeroFunctional => "zero_functional",
            Error::NotEquivariant => "not_equivariant",
            Error::InvariantsVanish(_) => "invariants_vanish",
            Error::ImproperIdeal => "improper_ideal",
            Error::NotGInvariant => "not_g_invariant",
            Error::UnknownZooGroup(_) => "unknown_zoo_group",
            Error::UnknownExample(_) => "unknown_example",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}
