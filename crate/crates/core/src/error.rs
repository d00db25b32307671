use thiserror::Error;

use crate::element::ElementId;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed matroid description.
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("element {0} is not in the ground set")]
    NotInGround(ElementId),

    #[error("element {0} is not in the basis")]
    NotInBasis(ElementId),

    #[error("set is not a basis: {0}")]
    NotABasis(String),

    #[error("matroid has no basis: {0}")]
    NoBasis(String),

    /// `which` names the offending sequence ("source", "target", ...).
    #[error("{which} {reason}")]
    Infeasible { which: &'static str, reason: Infeasibility },

    /// A caller broke an operation's precondition.
    #[error("precondition violated: {0}")]
    Contract(String),

    /// An internal invariant failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    /// A brute-force enumeration would exceed its configured cap.
    #[error("refusing to enumerate: {0}")]
    CapExceeded(String),

    #[error("invalid set cover instance: {0}")]
    SetCover(String),

    #[error("random generation failed: {0}")]
    Generation(String),

    /// Malformed problem-instance file.
    #[error("invalid instance: {0}")]
    Instance(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Why a tuple of sets is not a feasible basis sequence.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Infeasibility {
    #[error("expected {expected} bases, got {got}")]
    Length { expected: usize, got: usize },
    #[error("basis {index} contains {element}, outside the ground set of matroid {index}")]
    Foreign { index: usize, element: ElementId },
    #[error("basis {index} is not a basis of matroid {index}")]
    NotBasis { index: usize },
    #[error("basis {index} lists element {element} twice")]
    Duplicate { index: usize, element: ElementId },
    #[error("bases {first} and {second} share element {element}")]
    Overlap { first: usize, second: usize, element: ElementId },
}

impl From<Infeasibility> for Error {
    fn from(reason: Infeasibility) -> Self {
        Error::Infeasible { which: "sequence", reason }
    }
}

impl Infeasibility {
    pub fn of(self, which: &'static str) -> Error {
        Error::Infeasible { which, reason: self }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
