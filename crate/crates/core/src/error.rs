use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    NoGenerators,
    #[error("at most 64 generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("edge endpoint `{0}` is not a declared generator")]
    UnknownEndpoint(String),
    #[error("self-loop on generator `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("weight of generator `{0}` must be strictly positive")]
    NonPositiveWeight(String),
    #[error("invalid preset `{0}`; expected free:n, abelian:n, path:n or cycle:n")]
    InvalidPreset(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("elements belong to different graphs")]
    GraphMismatch,
    #[error("left factor does not divide the element")]
    NotADivisor,
    #[error("series constant term must be 1")]
    ConstantTermNotOne,
    #[error("cutoff must be nonnegative")]
    NegativeCutoff,
    #[error("tolerance must be positive and finite")]
    InvalidTolerance,
    #[error("inverse temperature must be positive")]
    NonPositiveBeta,
    #[error("inverse temperature must be nonnegative")]
    NegativeBeta,
    #[error("inverse temperature {beta} does not exceed the critical value {beta_c}")]
    NotAboveCritical { beta: f64, beta_c: f64 },
    #[error("clique polynomial has no root in (0, 1]")]
    NoRootInUnitInterval,
    #[error("growth table below the cutoff has fewer than two levels")]
    InsufficientData,
    #[error("operator dimensions differ ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("vacuum projection: product and clique-sum forms differ at basis index {0}")]
    VacuumMismatch(usize),
    #[error("partition sum vanished")]
    ZeroDenominator,
}
