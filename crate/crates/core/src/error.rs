//! Error type shared by all engine modules.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different ambient dimensions.
    DimensionMismatch { expected: usize, found: usize },
    /// Variable index outside 1..=n.
    IndexOutOfRange { index: usize, dim: usize },
    /// A supplied coefficient or coordinate is NaN or infinite.
    NonFinite,
    /// Degree or term-count cap exceeded.
    ResourceLimit(&'static str),
    /// Order of growth is undefined for the zero function.
    ZeroFunction,
    /// Antiderivative leaves the exponential-polynomial class
    /// (exponent not of the form λ·z_j + q(rest) in the variable).
    NotIntegrableInClass,
    /// Periodic-direction weights do not annihilate the shift vector.
    NotInKernel,
    /// A supplied periodic part is not shift-periodic (or carries a
    /// constant term, which belongs in the scalar parameters).
    NotPeriodic,
    /// An equation coefficient required to be nonzero vanishes
    /// (includes a₁² + a₃² = 0 for the second equation).
    ZeroCoefficient(&'static str),
    /// The shift vector is zero.
    ZeroShift,
    /// μ, ν out of order or ν missing where required.
    IndexOrder,
    /// The right-hand exponent polynomial is constant.
    ConstantRhs,
    /// Parameter bundle does not match the requested theorem case.
    CaseMismatch,
    /// β_μ (or the analogous b_μ, d_μ) vanishes where the case needs it.
    ZeroBetaMu,
    /// A case denominator such as a₂a₃β_μ − a₁a₄β_ν vanishes.
    DegenerateDenominator,
    /// Logarithmic constraint target is zero.
    ZeroTarget,
    /// Weight at the unknown shift component is zero.
    ZeroWeight,
    /// Newton search converged to no root from any grid start.
    NoRootFound,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::IndexOutOfRange { index, dim } => {
                write!(f, "variable index {index} out of range 1..={dim}")
            }
            Error::NonFinite => write!(f, "non-finite coefficient or coordinate"),
            Error::ResourceLimit(what) => write!(f, "resource limit exceeded: {what}"),
            Error::ZeroFunction => write!(f, "order is undefined for the zero function"),
            Error::NotIntegrableInClass => {
                write!(f, "antiderivative not in the exponential-polynomial class")
            }
            Error::NotInKernel => write!(f, "direction weights do not annihilate the shift"),
            Error::NotPeriodic => {
                write!(
                    f,
                    "polynomial is not shift-periodic with zero constant term"
                )
            }
            Error::ZeroCoefficient(which) => write!(f, "coefficient must be nonzero: {which}"),
            Error::ZeroShift => write!(f, "shift vector must be nonzero"),
            Error::IndexOrder => write!(f, "indices must satisfy 1 <= mu < nu <= n"),
            Error::ConstantRhs => write!(f, "right-hand exponent must be non-constant"),
            Error::CaseMismatch => write!(f, "parameters do not match the requested case"),
            Error::ZeroBetaMu => write!(f, "exponent parameter at mu must be nonzero"),
            Error::DegenerateDenominator => write!(f, "case denominator vanishes"),
            Error::ZeroTarget => write!(f, "constraint target must be nonzero"),
            Error::ZeroWeight => write!(f, "weight at the unknown component must be nonzero"),
            Error::NoRootFound => write!(f, "no root found from any grid start"),
        }
    }
}

impl std::error::Error for Error {}
