//! Error type shared by every module.

use thiserror::Error;

/// Everything that can go wrong while building or evaluating objects.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("permutation closure exceeds {0} elements")]
    ClosureTooLarge(usize),
    #[error("element {0} is out of range")]
    OutOfRange(usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("level {new} is not a multiple of {old}")]
    NotAMultiple { old: u64, new: u64 },
    #[error("levels {0} and {1} differ")]
    LevelMismatch(u64, u64),
    #[error("invalid level {0}")]
    InvalidLevel(u64),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("operation not supported for this module: {0}")]
    UnsupportedModule(String),
    #[error("wrong degree: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cochain has wrong shape: {0}")]
    ShapeMismatch(String),
    #[error("not a cocycle (first failure at tuple {0:?})")]
    NotACocycle(Vec<usize>),
    #[error("cocycle is not normalized (nonzero at tuple {0:?})")]
    NotNormalized(Vec<usize>),
    #[error("homotopy is only defined in positive degree")]
    DegreeZero,
    #[error("bound exceeded: {0}")]
    TooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not a cyclotomic integer")]
    NotIntegral,
    #[error("boundary is not a homomorphism at ({0}, {1})")]
    NotAHomomorphism(usize, usize),
    #[error("not an action: {0}")]
    NotAnAction(String),
    #[error("boundary is not equivariant at g={g}, h={h}")]
    EquivarianceFailure { g: usize, h: usize },
    #[error("Peiffer identity fails at ({h1}, {h2})")]
    PeifferFailure { h1: usize, h2: usize },
    #[error("two-morphisms are not composable")]
    NotComposable,
    #[error("conjugate is not contained in the target: {0}")]
    NotContained(String),
    #[error("representations have different ambient groups")]
    AmbientMismatch,
    #[error("objects live over different groups")]
    GroupMismatch,
    #[error("character is not a homomorphism on the Schur group")]
    AlphaNotHomomorphism,
    #[error("character depends on the cocycle representative")]
    AlphaIllDefined,
    #[error("elements {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("triple ({a}, {b}, {h}) is not in the triple set")]
    TripleNotInG { a: usize, b: usize, h: usize },
    #[error("matrix is not a scalar multiple of the expected one")]
    NotScalarMultiple,
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// Process exit code: 1 for a failed cross-check, 3 for an exceeded bound, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CrossCheckFailed(_) => 1,
            Error::TooLarge(_) | Error::ClosureTooLarge(_) => 3,
            _ => 2,
        }
    }
}
