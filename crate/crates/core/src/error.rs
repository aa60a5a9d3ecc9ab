use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("{divisor} does not divide {n}")]
    NotADivisor { divisor: usize, n: usize },

    #[error("{b} is not a unit modulo {n}")]
    NotAUnit { b: usize, n: usize },

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("modulus {n} exceeds the configured cap {cap}")]
    ModulusTooLarge { n: usize, cap: usize },

    #[error("element {element} occurs more than once in a plain set")]
    DuplicateElement { element: usize },

    #[error("expected a plain set but element {element} has multiplicity {count}")]
    NotAPlainSet { element: usize, count: u64 },

    #[error("0 lies in the rotation part X; the Cayley digraph would have loops")]
    Loop,

    #[error("parameters do not fit the dihedrant: {0}")]
    ParamsMismatch(String),

    #[error("parameters are not feasible: {0}")]
    Infeasible(String),

    #[error("{0} is not a prime power")]
    NotAPrimePower(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("construction conditions violated: {0}")]
    Inadmissible(String),

    #[error("search space too large: {0}")]
    SearchTooLarge(String),

    #[error("could not parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}
