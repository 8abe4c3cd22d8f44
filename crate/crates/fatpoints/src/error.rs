//! Error type shared by every module of the crate.

use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong while building or probing a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Ambient dimension must be at least 1.
    InvalidAmbientDimension(u32),
    /// An operation required degree and multiplicities to be non-negative.
    NotEffectiveForm,
    /// Two multiplicity lists (or a point list and a multiplicity list) disagree in length.
    LengthMismatch { left: usize, right: usize },
    /// A Cremona base set has the wrong size.
    BaseSizeMismatch { expected: usize, got: usize },
    /// A point index appears twice in a base set.
    DuplicateIndex(usize),
    /// A point index is outside `0..r`.
    IndexOutOfRange { index: usize, r: usize },
    /// The exponent tuple is not a member of the monomial exponent set it
    /// was claimed to belong to.
    NotInExponentSet,
    /// The modulus is not prime.
    NotPrime(u64),
    /// The modulus is below the smallest supported value (3).
    PrimeTooSmall(u64),
    /// The modulus exceeds the largest supported value.
    PrimeTooLarge(u64),
    /// A projective point must have a nonzero coordinate.
    ZeroPoint,
    /// Two points of a point set coincide as projective points.
    DuplicatePoint { first: usize, second: usize },
    /// Rejection sampling failed to produce enough distinct points.
    SamplingFailed { wanted: usize, got: usize },
    /// More distinct points were requested than the projective space holds.
    TooManyPoints { requested: usize },
    /// A point has the wrong number of coordinates.
    AmbientMismatch { point_len: usize, expected: usize },
    /// Vanishing order for a condition row must be at least 1.
    InvalidMultiplicity(i64),
    /// The selected dehomogenization chart has a zero coordinate.
    NonInvertibleChart { index: usize },
    /// Polynomial degrees do not satisfy the required relation.
    DegreeMismatch { have: i64, want: i64 },
    /// The conditions matrix would exceed the configured size cap.
    MatrixTooLarge { rows: usize, cols: usize },
    /// The linear system has no members, so the requested probe is undefined.
    EmptySystem,
    /// A common-zero search needs at least one polynomial.
    EmptyPolyList,
    /// At least one trial (seed) and one prime are required.
    EmptyTrials,
    /// Section dimension exceeds the enumeration bound.
    SectionTooLarge { k: u32, max: u32 },
    /// Section dimension must be smaller than the ambient dimension.
    InvalidSectionDim { k: u32, n: u32 },
    /// The point grid is larger than the configured enumeration budget.
    BudgetExceeded { points: u128, budget: u64 },
    /// A kernel had unexpected dimension.
    KernelDimension { expected: usize, got: usize },
    /// An exact integer does not fit the requested machine type.
    ValueOutOfRange,
    /// Integer overflow in a transform coefficient.
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidAmbientDimension(n) => {
                write!(f, "ambient dimension must be >= 1, got {n}")
            }
            Error::NotEffectiveForm => {
                write!(f, "class must have non-negative degree and multiplicities")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            Error::BaseSizeMismatch { expected, got } => {
                write!(f, "base set must have {expected} indices, got {got}")
            }
            Error::DuplicateIndex(i) => write!(f, "duplicate point index {i}"),
            Error::IndexOutOfRange { index, r } => {
                write!(f, "point index {index} out of range for {r} points")
            }
            Error::NotInExponentSet => write!(f, "exponent tuple violates the set constraints"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::PrimeTooSmall(p) => write!(f, "prime {p} is too small (need p >= 3)"),
            Error::PrimeTooLarge(p) => write!(f, "prime {p} exceeds the supported range"),
            Error::ZeroPoint => write!(f, "projective point must have a nonzero coordinate"),
            Error::DuplicatePoint { first, second } => {
                write!(f, "points {first} and {second} coincide in projective space")
            }
            Error::SamplingFailed { wanted, got } => {
                write!(f, "random sampling produced only {got} of {wanted} distinct points")
            }
            Error::TooManyPoints { requested } => {
                write!(f, "{requested} distinct points exceed the size of the projective space")
            }
            Error::AmbientMismatch { point_len, expected } => {
                write!(f, "point has {point_len} coordinates, expected {expected}")
            }
            Error::InvalidMultiplicity(m) => {
                write!(f, "vanishing order must be >= 1, got {m}")
            }
            Error::NonInvertibleChart { index } => {
                write!(f, "chart coordinate {index} vanishes at the point")
            }
            Error::DegreeMismatch { have, want } => {
                write!(f, "degree mismatch: have {have}, want {want}")
            }
            Error::MatrixTooLarge { rows, cols } => {
                write!(f, "conditions matrix {rows}x{cols} exceeds the size cap")
            }
            Error::EmptySystem => write!(f, "linear system is empty"),
            Error::EmptyPolyList => write!(f, "need at least one polynomial"),
            Error::EmptyTrials => write!(f, "need at least one seed and one prime"),
            Error::SectionTooLarge { k, max } => {
                write!(f, "section dimension {k} exceeds the enumeration bound {max}")
            }
            Error::InvalidSectionDim { k, n } => {
                write!(f, "section dimension {k} must be < ambient dimension {n}")
            }
            Error::BudgetExceeded { points, budget } => {
                write!(f, "grid of {points} points exceeds the budget of {budget}")
            }
            Error::KernelDimension { expected, got } => {
                write!(f, "kernel has dimension {got}, expected {expected}")
            }
            Error::ValueOutOfRange => write!(f, "exact value does not fit the target type"),
            Error::Overflow => write!(f, "integer overflow in transform coefficient"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
