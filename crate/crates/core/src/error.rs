use alloc::string::String;
use core::fmt;

/// Why a budgeted search stopped before deciding everything it was asked to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// `max_words` tree nodes were examined.
    Words,
    /// The wall-clock limit elapsed.
    WallClock,
    /// The horizon was reached without collecting enough evidence.
    Horizon,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StopReason::Words => f.write_str("word budget exhausted"),
            StopReason::WallClock => f.write_str("wall-clock limit reached"),
            StopReason::Horizon => f.write_str("horizon reached"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    EmptyWord,
    SymbolOutOfRange { symbol: usize, alphabet: usize },
    AlphabetTooLarge(usize),
    /// An iterate left every piece domain (`step` is 1-based).
    UndefinedAtPoint { step: usize },
    UndefinedOnSet { step: usize },
    OutsidePartition { step: usize },
    InvalidMap(String),
    InvalidSystem(String),
    InvalidLanguage(String),
    EmptyLanguage,
    InadmissiblePair { index: usize },
    InadmissibleSeeds { index: usize },
    PreconditionFailed(String),
    EmptyRefinement,
    NonCommuting,
    TableTooLarge { rows: u128, cap: usize },
    NotCovered { point: usize },
    InvalidInput(String),
    BudgetExceeded(StopReason),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyWord => f.write_str("words must be nonempty"),
            Error::SymbolOutOfRange { symbol, alphabet } => {
                write!(f, "symbol {symbol} outside alphabet of size {alphabet}")
            }
            Error::AlphabetTooLarge(m) => write!(f, "alphabet size {m} exceeds 64"),
            Error::UndefinedAtPoint { step } => {
                write!(f, "iterate {step} lies outside every piece domain")
            }
            Error::UndefinedOnSet { step } => {
                write!(f, "set leaves the piece domains at step {step}")
            }
            Error::OutsidePartition { step } => {
                write!(f, "iterate {step} lies in no partition cell")
            }
            Error::InvalidMap(msg) => write!(f, "invalid map: {msg}"),
            Error::InvalidSystem(msg) => write!(f, "invalid system: {msg}"),
            Error::InvalidLanguage(msg) => write!(f, "invalid language: {msg}"),
            Error::EmptyLanguage => f.write_str("switching language is empty"),
            Error::InadmissiblePair { index } => {
                write!(f, "pair {index}: U does not meet K or V does not meet Q")
            }
            Error::InadmissibleSeeds { index } => write!(f, "seed {index} does not meet K"),
            Error::PreconditionFailed(msg) => write!(f, "precondition failed: {msg}"),
            Error::EmptyRefinement => f.write_str("refined set is empty"),
            Error::NonCommuting => f.write_str("maps do not commute on the sampled points"),
            Error::TableTooLarge { rows, cap } => {
                write!(f, "assignment table has {rows} rows, cap is {cap}")
            }
            Error::NotCovered { point } => {
                write!(f, "point {point} is not covered by the certificate balls")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::BudgetExceeded(r) => write!(f, "budget exceeded: {r}"),
        }
    }
}

/// Failure of a budgeted search that may still have produced partial evidence.
#[derive(Clone, Debug)]
pub enum SearchError<P> {
    Budget { partial: P, reason: StopReason },
    Invalid(Error),
}

impl<P> SearchError<P> {
    pub fn partial(&self) -> Option<&P> {
        match self {
            SearchError::Budget { partial, .. } => Some(partial),
            SearchError::Invalid(_) => None,
        }
    }

    /// Drops any partial result.
    pub fn into_error(self) -> Error {
        match self {
            SearchError::Budget { reason, .. } => Error::BudgetExceeded(reason),
            SearchError::Invalid(e) => e,
        }
    }
}

impl<P> From<Error> for SearchError<P> {
    fn from(e: Error) -> Self {
        SearchError::Invalid(e)
    }
}

impl<P> fmt::Display for SearchError<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::Budget { reason, .. } => write!(f, "budget exceeded: {reason}"),
            SearchError::Invalid(e) => fmt::Display::fmt(e, f),
        }
    }
}

impl core::error::Error for Error {}
impl<P: fmt::Debug> core::error::Error for SearchError<P> {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
