use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which structural requirement of a cyclic specification failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecViolation {
    /// Only odd quaternary length is supported.
    OddBetaOnly(usize),
    /// `f*h*g` is not `x^beta - 1` over Z4.
    Factorization(String),
    /// `b` does not divide `x^alpha - 1` over Z2.
    Divisibility(String),
    /// The divisibility conditions tying `b` to `l`, `h`, `g` fail, so the
    /// pair of generators is not in standard form.
    Inconsistent(String),
    /// A generator is zero or has a non-unit leading coefficient.
    NotNormalizable(String),
}

impl std::fmt::Display for SpecViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpecViolation::OddBetaOnly(b) => write!(f, "odd-beta-only: beta = {b} is even"),
            SpecViolation::Factorization(m) => write!(f, "factorization: {m}"),
            SpecViolation::Divisibility(m) => write!(f, "divisibility: {m}"),
            SpecViolation::Inconsistent(m) => write!(f, "inconsistency: {m}"),
            SpecViolation::NotNormalizable(m) => write!(f, "normalization: {m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("cannot parse word {input:?}: {reason}")]
    ParseWord { input: String, reason: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("divisor has non-unit leading coefficient {0}")]
    NonUnitLeading(u8),

    #[error("extended gcd of two zero polynomials")]
    BothZero,

    #[error("n = {0} must be odd")]
    EvenLength(usize),

    #[error("n = {0} must be positive")]
    ZeroLength(usize),

    #[error("GF(2^{m}) needed for n = {n} exceeds the extension-degree limit {max}")]
    FieldTooLarge { n: usize, m: usize, max: usize },

    #[error("{poly} does not divide x^{n} - 1")]
    NotADivisor { poly: String, n: usize },

    #[error("{0} is not a product of distinct irreducible factors of x^n - 1")]
    NotSquarefreeDivisor(String),

    #[error("binary reductions of {0} and {1} are not coprime")]
    NotCoprime(String, String),

    #[error("polynomial degree {degree} exceeds the limit {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("unsupported ambient space alpha = {alpha}, beta = {beta} (need alpha, beta <= 64 and alpha + 2*beta <= 128)")]
    Ambient { alpha: usize, beta: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("code has 2^{log2_size} codewords, above the enumeration limit 2^{limit_log2}")]
    TooLarge { log2_size: u32, limit_log2: u32 },

    #[error("invalid cyclic code specification: {0}")]
    InvalidSpec(SpecViolation),

    #[error("type parameters out of range: {0}")]
    InvalidType(String),

    #[error("k = {0} does not divide g")]
    NotDividingG(String),

    #[error("search space too large: {0}")]
    SearchTooLarge(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    /// True for errors raised by a resource guard rather than bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            Error::TooLarge { .. }
                | Error::FieldTooLarge { .. }
                | Error::DegreeTooLarge { .. }
                | Error::SearchTooLarge(_)
        )
    }
}
