//! Error type shared by every module of the crate.

use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two polynomials with different ambient variable counts were combined.
    VarCountMismatch { left: usize, right: usize },
    /// Division left a nonzero remainder. Inside seed mutation this signals
    /// an implementation bug, since the Laurent phenomenon guarantees
    /// exactness.
    InexactDivision,
    /// Division by the zero polynomial.
    DivisionByZero,
    /// Tropical evaluation of the zero polynomial is undefined.
    ZeroPolynomial,
    /// A mutation direction outside `[0, n)`.
    DirectionOutOfRange { direction: usize, rank: usize },
    /// No positive diagonal `S` makes `S·B` skew-symmetric.
    NotSkewSymmetrizable(String),
    /// A supplied symmetrizer fails `s_i·b_ij == -s_j·b_ji`.
    InvalidSymmetrizer,
    /// A principal cluster variable failed the multidegree homogeneity
    /// check. Never expected; reported as a theorem-check failure.
    NotHomogeneous(String),
    /// An F-polynomial violated "nonnegative coefficients, constant term 1".
    /// Never expected; reported as a theorem-check failure.
    GhkkViolation(String),
    /// The compatibility oracle needs a fully enumerated exchange graph.
    IncompleteGraph,
    /// Dimension mismatch in a vector argument (exponents, g-vectors, ...).
    LengthMismatch { expected: usize, got: usize },
    /// A malformed input value (bad rank, empty matrix, ...).
    BadInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VarCountMismatch { left, right } => {
                write!(f, "variable-count mismatch: {left} vs {right}")
            }
            Error::InexactDivision => write!(f, "inexact polynomial division"),
            Error::DivisionByZero => write!(f, "division by the zero polynomial"),
            Error::ZeroPolynomial => write!(f, "tropical evaluation of the zero polynomial"),
            Error::DirectionOutOfRange { direction, rank } => {
                write!(f, "direction {direction} out of range for rank {rank}")
            }
            Error::NotSkewSymmetrizable(why) => write!(f, "not skew-symmetrizable: {why}"),
            Error::InvalidSymmetrizer => write!(f, "supplied symmetrizer does not symmetrize B"),
            Error::NotHomogeneous(why) => write!(f, "cluster variable not homogeneous: {why}"),
            Error::GhkkViolation(why) => write!(f, "F-polynomial positivity violated: {why}"),
            Error::IncompleteGraph => write!(f, "exchange graph hit its node cap; oracle unavailable"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            Error::BadInput(why) => write!(f, "bad input: {why}"),
        }
    }
}

impl core::error::Error for Error {}
