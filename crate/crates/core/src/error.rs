use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("Cartan parameter r must be at least 3 (got {0})")]
    InvalidCartan(u64),
    #[error("zero weight has no root class")]
    ZeroWeight,
    #[error("count formula requires coprime endpoint (got ({n}, {m}))")]
    NotCoprime { n: String, m: String },
    #[error("weight ({c0}, {c1}) is too large for this operation")]
    WeightTooLarge { c0: String, c1: String },
    #[error("enumeration requires both coordinates to be positive")]
    DegenerateEndpoint,
    #[error("non-canonical string data: interior run {index} is zero")]
    NonCanonical { index: usize },
    #[error("condition defined for complete paths (got odd run count {0})")]
    OddLength(usize),
    #[error("weight height {height} exceeds the exhaustive limit {limit}; use kostant_count")]
    ExhaustiveLimit { height: u64, limit: u64 },
    #[error("path listing exceeds the limit of {0} paths; use counting-only mode")]
    ListingLimit(usize),
    #[error("Peterson denominator vanishes with nonzero numerator at ({c0}, {c1})")]
    PetersonSingular { c0: u64, c1: u64 },
    #[error("multiplicity at ({c0}, {c1}) is not a nonnegative integer: {value}")]
    Inconsistent { c0: u64, c1: u64, value: String },
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("invalid letter {0:?} in word (expected '0' or '1')")]
    InvalidLetter(char),
}
