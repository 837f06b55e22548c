use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed slope `{0}`")]
    MalformedSlope(String),
    #[error("malformed continued fraction `{0}`")]
    MalformedContinuedFraction(String),
    #[error("malformed word `{0}`")]
    MalformedWord(String),
    #[error("0/0 is not a slope")]
    ZeroOverZero,
    #[error("slope {slope} is outside the accepted range {range}")]
    SlopeOutOfRange { slope: String, range: &'static str },
    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(&'static str),
    #[error("integer does not fit the working machine type: {0}")]
    Overflow(String),
    #[error("empty word")]
    EmptyWord,
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("word has only one exponent sign; its cyclic S-sequence does not alternate")]
    SingleSign,
    #[error("T-sequence requires a continued fraction of length at least 2 (got {0})")]
    TSequenceUndefined(String),
    #[error("cyclic sequence is not of the form (S1,S2,S1,S2): {0}")]
    NotDecomposable(String),
    #[error("S-sequence of {slope} does not have the expected shape: {detail}")]
    UnexpectedShape { slope: String, detail: String },
    #[error("Heckoid index must satisfy n >= 2 (got {0})")]
    InvalidIndex(String),
    #[error("slope {0} is integral; the construction needs a non-integral slope")]
    IntegralSlope(String),
    #[error("decomposition routes disagree for {0}")]
    RouteDisagreement(String),
    #[error("normalization budget of {0} steps exhausted")]
    NormalizationBudget(u64),
    #[error("word is not a subword of any relator")]
    NotASubword,
    #[error("conjugacy search budget of {0} candidates exhausted")]
    SearchBudget(u64),
    #[error("context must have r = 1/p (got {0})")]
    NotTorusContext(String),
    #[error("root finder failed: {0}")]
    RootFinding(String),
    #[error("unknown property suite: {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
