use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// [`Error::name`] gives a stable identifier suitable for machine-readable
/// output (the CLI prints it next to the message).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("unknown Cartan type {0:?}")]
    UnknownCartan(String),
    #[error("objects are defined over different Cartan data")]
    MixedCartanData,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("Cartan data is not of finite type")]
    NotFiniteType,
    #[error("Cartan data is not simply laced")]
    NotSimplyLaced,
    #[error("node index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("tensor product needs at least one factor")]
    EmptyFactorList,
    #[error("factor {factor}: crystal truncated at node {node}, operator target lies beyond the depth cutoff")]
    TruncatedStatistics { factor: usize, node: usize },
    #[error("requested range reaches beyond a truncated factor")]
    TruncatedRange,
    #[error("crystal is truncated; request a partial character explicitly")]
    TruncatedWithoutFlag,
    #[error("cannot compare a partial character with a complete one")]
    PartialComparison,
    #[error("string word cycle must contain every node index")]
    WordSupportIncomplete,
    #[error("string parametrization did not reach the highest weight within {0} steps")]
    NonTerminating(usize),
    #[error("exponent sequences are over different words")]
    WordMismatch,
    #[error("factor index {index} out of range for {len} factors")]
    FactorIndexOutOfRange { index: usize, len: usize },
    #[error("residue {r} is not valid modulo {p}")]
    BadResidue { p: usize, r: usize },
    #[error("block size {block} exceeds alphabet size {m}")]
    BlockTooLarge { block: usize, m: usize },
    #[error("{what}: expected {expected}, found {found}")]
    DimensionMismatch { what: &'static str, expected: u64, found: u64 },
    #[error("no element matches {0}")]
    NoSuchElement(String),
    #[error("element selection is ambiguous: {0}")]
    AmbiguousElement(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotGcm(_) => "NotGCM",
            Error::NotSymmetrizable => "NotSymmetrizable",
            Error::UnknownCartan(_) => "UnknownCartan",
            Error::MixedCartanData => "MixedCartanData",
            Error::LengthMismatch(..) => "LengthMismatch",
            Error::NotDominant(_) => "NotDominant",
            Error::NotFiniteType => "NotFiniteType",
            Error::NotSimplyLaced => "NotSimplyLaced",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::EmptyFactorList => "EmptyFactorList",
            Error::TruncatedStatistics { .. } => "TruncatedStatistics",
            Error::TruncatedRange => "TruncatedRange",
            Error::TruncatedWithoutFlag => "TruncatedWithoutFlag",
            Error::PartialComparison => "PartialComparison",
            Error::WordSupportIncomplete => "WordSupportIncomplete",
            Error::NonTerminating(_) => "NonTerminating",
            Error::WordMismatch => "WordMismatch",
            Error::FactorIndexOutOfRange { .. } => "FactorIndexOutOfRange",
            Error::BadResidue { .. } => "BadResidue",
            Error::BlockTooLarge { .. } => "BlockTooLarge",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NoSuchElement(_) => "NoSuchElement",
            Error::AmbiguousElement(_) => "AmbiguousElement",
            Error::Parse(_) => "Parse",
        }
    }

    /// Which module the error originates from.
    pub fn module(&self) -> &'static str {
        match self {
            Error::NotGcm(_)
            | Error::NotSymmetrizable
            | Error::UnknownCartan(_)
            | Error::MixedCartanData
            | Error::LengthMismatch(..) => "root_data",
            Error::NotDominant(_) | Error::IndexOutOfRange { .. } => "path_crystal",
            Error::NotFiniteType
            | Error::NotSimplyLaced
            | Error::TruncatedWithoutFlag
            | Error::PartialComparison
            | Error::DimensionMismatch { .. } => "characters",
            Error::BadResidue { .. } | Error::BlockTooLarge { .. } => "typea_combinatorics",
            Error::Parse(_) | Error::NoSuchElement(_) | Error::AmbiguousElement(_) => "cli",
            _ => "tensor_crystal",
        }
    }
}
