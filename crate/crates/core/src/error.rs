use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term is not a unit of the coefficient ring")]
    NonUnitConstantTerm,
    #[error("coefficient index {index} is beyond truncation order {order}")]
    IndexBeyondTruncation { index: usize, order: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("part {part} is not congruent to {residue} mod {modulus}")]
    MalformedPart {
        part: u32,
        residue: u32,
        modulus: u32,
    },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("not a copartition: {0}")]
    NotACopartition(String),
    #[error("pair is not in CP': {0}")]
    NotInCpPrime(String),
    #[error("f is not defined: {0}")]
    FNotDefined(String),
    #[error("g is not defined: sky is empty")]
    GNotDefined,
    #[error("outside the domain of {map}: {reason}")]
    OutsideDomain { map: &'static str, reason: String },
    #[error("invalid overline set: {0}")]
    InvalidOverlines(String),
    #[error("identity {identity} fails at n={n}{}", r.map(|r| format!(", r={r}")).unwrap_or_default())]
    MismatchFound {
        identity: String,
        n: usize,
        r: Option<usize>,
    },
    #[error("decode error: {0}")]
    Decode(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
