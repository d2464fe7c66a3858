//! Crate-wide error type.

use core::fmt;

/// Errors reported by the library.
///
/// Semantically invalid ciphertexts and signatures are *not* errors:
/// decapsulation and verification handle those through implicit rejection.
/// The variants here cover structural problems only — bad parameters,
/// mismatched dimensions, malformed byte strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter profile failed validation.
    InvalidParams(&'static str),
    /// Matrix operands have incompatible dimensions.
    DimensionMismatch { expected: usize, actual: usize },
    /// A matrix entry lies outside the range its ring allows.
    EntryOutOfRange { index: usize, value: u64 },
    /// A byte string has the wrong length for the object being decoded.
    Framing { expected: usize, actual: usize },
    /// A decoded key violates a structural invariant.
    InvalidKey(&'static str),
    /// The params-id byte does not name a known profile.
    UnknownProfile(u8),
    /// A polynomial coefficient vector was empty or all zero.
    AllZeroCoefficients,
    /// A known-answer-test file could not be parsed.
    KatFormat(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::DimensionMismatch { expected, actual } => {
                write!(f, "dimension mismatch: expected {expected}, got {actual}")
            }
            Error::EntryOutOfRange { index, value } => {
                write!(
                    f,
                    "matrix entry {value} at flat index {index} is out of range"
                )
            }
            Error::Framing { expected, actual } => {
                write!(f, "framing error: expected {expected} bytes, got {actual}")
            }
            Error::InvalidKey(msg) => write!(f, "invalid key: {msg}"),
            Error::UnknownProfile(id) => write!(f, "unknown params-id byte 0x{id:02x}"),
            Error::AllZeroCoefficients => {
                write!(f, "polynomial coefficient vector must not be all zero")
            }
            Error::KatFormat(msg) => write!(f, "malformed KAT file: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
