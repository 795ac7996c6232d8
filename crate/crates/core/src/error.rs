use thiserror::Error;

/// Errors raised by the group, field and module algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("images do not form a bijection on {degree} points")]
    NotBijective { degree: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group order {order} exceeds enumeration cap {cap}")]
    CapExceeded { order: u128, cap: u128 },
    #[error("group order does not fit in 128 bits")]
    OrderOverflow,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("primes must be distinct (p = q = {0})")]
    EqualPrimes(u64),
    #[error("group is not {q}-solvable")]
    NotQSolvable { q: u64 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field of order {p}^{k} is not supported")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("no irreducibility certificate after {attempts} random algebra elements")]
    IterationLimit { attempts: usize },
    #[error("module is not irreducible")]
    NotIrreducible,
    #[error("Brauer count mismatch: {found} absolutely irreducible constituents, {expected} p-regular classes")]
    ClassCountMismatch { expected: usize, found: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
