use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic must be odd, got {0}")]
    EvenPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("field of order {p}^{r} exceeds the tabulation budget")]
    FieldTooLarge { p: u64, r: u32 },
    #[error("zero is outside the domain of {0}")]
    ZeroArgument(&'static str),
    #[error("the zero polynomial has no well-defined root count")]
    ZeroPolynomial,
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("denominator of {value} is divisible by p = {p}")]
    DenominatorDivisibleByP { value: String, p: u64 },
    #[error("precision budget exceeded: {p}^{prec} is above the table limit")]
    PrecisionBudget { p: u64, prec: u32 },
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("parameter lists must be non-empty and of equal length (top {top}, bottom {bottom})")]
    ParamLength { top: usize, bottom: usize },
    #[error("singular curve: {0}")]
    Singular(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integer recovery failed: {0}")]
    IntegerRecovery(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
