use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distribution has no symbols")]
    EmptyDistribution,
    #[error("probability mass at index {index} is {value}, need a finite value >= 0")]
    InvalidMass { index: usize, value: f64 },
    #[error("probability masses sum to {sum}, need 1 within {tolerance}")]
    MassNotNormalized { sum: f64, tolerance: f64 },
    #[error("value {value} outside domain {domain}")]
    OutOfDomain { value: f64, domain: &'static str },
    #[error("parameter {name} is {value}, need a finite value > 0")]
    NonPositive { name: &'static str, value: f64 },
    #[error("entropy is zero, coefficient of variation undefined")]
    ZeroEntropy,
    #[error("fluctuation variance {value} is negative beyond rounding tolerance")]
    NegativeVariance { value: f64 },
    #[error("binary fluctuation derivative is singular at p = {p}")]
    SingularPoint { p: f64 },
    #[error("curve grid needs at least {minimum} points, got {size}")]
    GridTooSmall { size: usize, minimum: usize },
    #[error("degrees of freedom must be at least 1")]
    ZeroDegreesOfFreedom,
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },
    #[error("counts sum to zero, need at least one observation")]
    EmptySequence,
    #[error("symbol {symbol} outside alphabet of size {alphabet_size}")]
    SymbolOutOfRange { symbol: usize, alphabet_size: usize },
    #[error("sample of size {length} too small, need at least {minimum}")]
    LengthTooShort { length: u64, minimum: u64 },
    #[error("fluctuation is zero, statistic undefined for a degenerate source")]
    DegenerateSource,
    #[error("extension order must be at least 1")]
    ZeroOrder,
    #[error("extension alphabet would have {required} entries, cap is {cap}")]
    ExtensionTooLarge { required: u128, cap: u64 },
    #[error("codeword for symbol {symbol} would need {length} bits, limit is 64")]
    CodewordTooLong { symbol: usize, length: u32 },
    #[error("codebook covers {codebook} symbols, distribution has {distribution}")]
    SizeMismatch { codebook: usize, distribution: usize },
    #[error("bit stream ends inside a codeword")]
    IncompleteCodeword,
    #[error("bit stream contains a prefix matching no codeword")]
    UnknownCodeword,
    #[error("padded byte stream is inconsistent: {reason}")]
    InvalidPadding { reason: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
