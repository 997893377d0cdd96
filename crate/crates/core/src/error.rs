use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty corpus: no nonempty documents")]
    EmptyCorpus,

    #[error("term id {term} out of range (vocabulary size {vocab_size})")]
    TermOutOfRange { term: usize, vocab_size: usize },

    #[error("term id {0} has zero occurrences")]
    ZeroCount(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite value while evaluating {0}")]
    NonFinite(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("malformed XML at byte {offset}: {message}")]
    Xml { offset: u64, message: String },

    #[error("article {article}: missing required element <{element}>")]
    MissingElement { article: String, element: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message} (line {line})")]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{0}: no documents after normalization")]
    NoDocuments(PathBuf),

    #[error("enumeration needs {required} term-document matrices, limit is {limit}")]
    Infeasible { required: u128, limit: u128 },

    #[error("conditioning event B = {b} has zero probability")]
    ZeroProbabilityCondition { b: u64 },

    #[error("no sample out of {samples} satisfied B = {b}; increase the sample count")]
    NoAcceptedSamples { samples: u64, b: u64 },

    #[error("score for term id {term} is not finite")]
    NonFiniteScore { term: usize },

    #[error("k = {k} exceeds the vocabulary size {vocab_size}")]
    KOutOfRange { k: usize, vocab_size: usize },

    #[error("none of the stopwords occur in the vocabulary")]
    NoStopwordsInVocab,

    #[error("quantile of an empty list")]
    EmptyQuantileInput,

    #[error("unknown measure `{0}` (expected one of chi_sq, cg, icb, dop, ricf)")]
    UnknownMeasure(String),

    #[error("ranking file {0} not found; run `ricf score` first")]
    MissingRanking(PathBuf),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::UnknownMeasure(_) | Error::KOutOfRange { .. } => 2,
            Error::Infeasible { .. } => 4,
            _ => 3,
        }
    }
}
