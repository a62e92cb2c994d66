use thiserror::Error;

use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parameter mismatch: {0}")]
    ParamsMismatch(String),
    #[error("word kind mismatch")]
    KindMismatch,
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("{nu} is not a prefix of {eta}")]
    NotAPrefix { eta: Word, nu: Word },
    #[error("not an antichain: {0} is a prefix of {1}")]
    NotAntichain(Word, Word),
    #[error("incomplete antichain: {0}")]
    Incomplete(String),
    #[error("invalid prefix map: {0}")]
    InvalidPrefixMap(String),
    #[error("the element is the identity")]
    IsIdentity,
    #[error("target set is empty")]
    EmptyTarget,
    #[error("source set is not proper (it covers the whole space)")]
    E1NotProper,
    #[error("point lies outside U")]
    PointOutsideU,
    #[error("V is not contained in U")]
    VNotInsideU,
    #[error("points are not in strict circular order")]
    NotCircularlyOrdered,
    #[error("{0} is not an n-adic rational in [0, r)")]
    NotNAdic(String),
    #[error("segment leaf counts differ mod n-1 ({0}); no T-element realises this configuration")]
    ResidueMismatch(String),
    #[error("avoided cone {0} contains the point")]
    AvoidContainsX(Word),
    #[error("invalid transducer: {0}")]
    InvalidTransducer(String),
    #[error("state {0} has an output row that is not a permutation")]
    NotInvertible(usize),
    #[error("transducer is not synchronizing (cycle through {0:?})")]
    NotSynchronizing(Vec<Vec<usize>>),
    #[error("inverse transducer is not synchronizing")]
    InverseNotSynchronizing,
    #[error("core edge from state {0} has output of length {1}")]
    CoreNotSynchronous(usize, usize),
    #[error("core state {0} has an output row that is not a permutation")]
    CoreNotInvertible(usize),
    #[error("output {0} is not a rooted word")]
    MissingRootOutput(String),
    #[error("not bijective: images {0} and {1} overlap")]
    NotBijective(Word, Word),
    #[error("not bijective: images do not cover the space")]
    NotSurjective,
    #[error("map is not compatible with the circle gluing")]
    NotCircleMap,
    #[error("map does not fix the point")]
    DoesNotFixPoint,
    #[error("map is not orientation preserving")]
    NotOrientationPreserving,
    #[error("offsets are not yet stable at depth {0}")]
    DepthTooSmall(usize),
    #[error("germ variants differ")]
    VariantMismatch,
    #[error("unknown header: {0}")]
    UnknownHeader(String),
    #[error("line {line}: syntax error: {reason}")]
    SyntaxError { line: usize, reason: String },
    #[error("line {line}: {reason}")]
    InvariantViolation { line: usize, reason: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable identifier printed by the command line tool.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "InvalidParams",
            Error::ParamsMismatch(_) => "ParamsMismatch",
            Error::KindMismatch => "KindMismatch",
            Error::InvalidWord(_) => "InvalidWord",
            Error::NotAPrefix { .. } => "NotAPrefix",
            Error::NotAntichain(..) => "NotAntichain",
            Error::Incomplete(_) => "Incomplete",
            Error::InvalidPrefixMap(_) => "InvalidPrefixMap",
            Error::IsIdentity => "IsIdentity",
            Error::EmptyTarget => "EmptyTarget",
            Error::E1NotProper => "E1NotProper",
            Error::PointOutsideU => "PointOutsideU",
            Error::VNotInsideU => "VNotInsideU",
            Error::NotCircularlyOrdered => "NotCircularlyOrdered",
            Error::NotNAdic(_) => "NotNAdic",
            Error::ResidueMismatch(_) => "ResidueMismatch",
            Error::AvoidContainsX(_) => "AvoidContainsX",
            Error::InvalidTransducer(_) => "InvalidTransducer",
            Error::NotInvertible(_) => "NotInvertible",
            Error::NotSynchronizing(_) => "NotSynchronizing",
            Error::InverseNotSynchronizing => "InverseNotSynchronizing",
            Error::CoreNotSynchronous(..) => "CoreNotSynchronous",
            Error::CoreNotInvertible(_) => "CoreNotInvertible",
            Error::MissingRootOutput(_) => "MissingRootOutput",
            Error::NotBijective(..) => "NotBijective",
            Error::NotSurjective => "NotSurjective",
            Error::NotCircleMap => "NotCircleMap",
            Error::DoesNotFixPoint => "DoesNotFixPoint",
            Error::NotOrientationPreserving => "NotOrientationPreserving",
            Error::DepthTooSmall(_) => "DepthTooSmall",
            Error::VariantMismatch => "VariantMismatch",
            Error::UnknownHeader(_) => "UnknownHeader",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::InvariantViolation { .. } => "InvariantViolation",
            Error::Unsupported(_) => "Unsupported",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
