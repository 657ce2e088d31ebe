use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the field construction and every evaluation method.
///
/// Variants documented as "implementation bug" can only be produced if an
/// internal identity fails; they are never an expected outcome.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Parameters outside the supported domain (non-prime `p`, `r < 2`, ...).
    InvalidParameters(String),
    /// A size limit from [`crate::Limits`] was exceeded.
    SizeCapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    /// The requested norm target does not name a generator of `F_q^x`.
    InvalidNormTarget(u64),
    DivisionByZero,
    /// Discrete logarithm of zero.
    ZeroArgument,
    /// `x^(p^m) != x` for the requested subfield degree `m`.
    NotInSubfield {
        degree: u32,
    },
    /// Binomial coefficient requested with `m > k`.
    OutOfRange,
    /// `(a, b)` outside `[0, q-2]^2`.
    CellOutOfRange {
        a: u64,
        b: u64,
        e: u64,
    },
    PrecisionBudgetExceeded {
        required: f64,
        budget: f64,
    },
    /// Implementation bug: a character-sum value did not round to an integer.
    RoundingResidualTooLarge {
        value: f64,
        residual: f64,
    },
    /// Natural vertex numbering only exists for prime `q`.
    NaturalOrderingUnavailable {
        q: u64,
    },
    /// Implementation bug: the leading term of the walk formula is fractional.
    NonIntegerLeadingTerm,
    /// The method has no meaning for this context.
    MethodInapplicable {
        method: &'static str,
        reason: &'static str,
    },
    /// Implementation bug: a computed value contradicts the bound classification.
    TheoremViolation {
        a: u64,
        b: u64,
        detail: String,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameters(reason) => write!(f, "invalid parameters: {}", reason),
            Error::SizeCapExceeded { what, size, cap } => {
                write!(f, "{} of {} exceeds the cap {}", what, size, cap)
            }
            Error::InvalidNormTarget(t) => {
                write!(f, "norm target {} does not name a generator of F_q^x", t)
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroArgument => write!(f, "discrete logarithm of zero"),
            Error::NotInSubfield { degree } => {
                write!(
                    f,
                    "element does not lie in the subfield of degree {}",
                    degree
                )
            }
            Error::OutOfRange => write!(f, "binomial coefficient with m > k"),
            Error::CellOutOfRange { a, b, e } => {
                write!(f, "cell ({}, {}) outside [0, {}]^2", a, b, e - 1)
            }
            Error::PrecisionBudgetExceeded { required, budget } => write!(
                f,
                "character sum needs magnitude {:e}, above the precision budget {:e}",
                required, budget
            ),
            Error::RoundingResidualTooLarge { value, residual } => write!(
                f,
                "character sum {} is {} away from an integer",
                value, residual
            ),
            Error::NaturalOrderingUnavailable { q } => {
                write!(f, "natural vertex ordering needs prime q, got q = {}", q)
            }
            Error::NonIntegerLeadingTerm => {
                write!(f, "leading term of the walk formula is not an integer")
            }
            Error::MethodInapplicable { method, reason } => {
                write!(f, "method {} is not applicable: {}", method, reason)
            }
            Error::TheoremViolation { a, b, detail } => {
                write!(
                    f,
                    "cell ({}, {}) violates the bound classification: {}",
                    a, b, detail
                )
            }
        }
    }
}

impl core::error::Error for Error {}
