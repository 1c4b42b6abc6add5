use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong inside the analysis core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A score fed to the imbalance formula was negative or not finite.
    InvalidScore(f64),
    /// A date string was not a valid `YYYY-MM-DD` civil date.
    InvalidDate(String),
    /// A data file (lexicon, gazetteer, ...) could not be parsed.
    Parse { line: usize, message: String },
    /// A lexicon or gazetteer violated one of its invariants.
    InvalidLexicon(String),
    /// A metric was asked to score a document built in the wrong mode.
    ModeMismatch { metric: &'static str, expected: &'static str },
    /// The operation needs a non-empty corpus.
    EmptyCorpus,
    /// DTW needs at least one observed point per sequence.
    EmptySequence,
    /// Clustering needs at least two series.
    TooFewSeries(usize),
    /// Homogeneity needs at least two places.
    TooFewPlaces(usize),
    /// Labels handed to the clusterer must be unique.
    DuplicateLabel(String),
    /// No token survived the `min_count` cut.
    EmptyVocabulary,
    /// Too few shared tokens to fit an alignment.
    InsufficientAnchors { needed: usize, found: usize },
    /// Two spaces or matrices disagree on dimensionality.
    DimensionMismatch { expected: usize, found: usize },
    /// A target word is not in the embedding vocabulary.
    OutOfVocabulary(String),
    /// None of the words of a set is in the embedding vocabulary.
    EmptyWordSet(&'static str),
    /// The WEAT denominator vanished.
    DegenerateSpread,
    /// Both vote preferences are zero, so the popularity share is undefined.
    UndefinedProbability,
    /// A prompt must contain exactly one mask slot.
    MaskCount(usize),
    /// A masked-LM backend failed or returned an invalid distribution.
    Backend(String),
    /// Catch-all for violated argument contracts.
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidScore(v) => write!(f, "document score must be finite and non-negative, got {v}"),
            Error::InvalidDate(s) => write!(f, "invalid date {s:?}, expected YYYY-MM-DD"),
            Error::Parse { line, message } => write!(f, "line {line}: {message}"),
            Error::InvalidLexicon(msg) => write!(f, "invalid lexicon: {msg}"),
            Error::ModeMismatch { metric, expected } => {
                write!(f, "metric {metric} requires a {expected} document")
            }
            Error::EmptyCorpus => f.write_str("corpus is empty"),
            Error::EmptySequence => f.write_str("sequence has no observed points"),
            Error::TooFewSeries(n) => write!(f, "clustering needs at least 2 series, got {n}"),
            Error::TooFewPlaces(n) => write!(f, "too few places ({n})"),
            Error::DuplicateLabel(l) => write!(f, "duplicate series label {l:?}"),
            Error::EmptyVocabulary => f.write_str("vocabulary is empty after min_count filtering"),
            Error::InsufficientAnchors { needed, found } => {
                write!(f, "alignment needs at least {needed} shared anchor tokens, found {found}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::OutOfVocabulary(w) => write!(f, "word {w:?} is not in the vocabulary"),
            Error::EmptyWordSet(which) => write!(f, "no word of set {which} is in the vocabulary"),
            Error::DegenerateSpread => {
                f.write_str("standard deviation of differential associations is zero; score undefined")
            }
            Error::UndefinedProbability => {
                f.write_str("both vote preferences are zero; popularity share undefined")
            }
            Error::MaskCount(n) => write!(f, "prompt must contain exactly one mask slot, found {n}"),
            Error::Backend(msg) => write!(f, "backend error: {msg}"),
            Error::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
