use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("representation mismatch: expected {expected} field")]
    RepresentationMismatch { expected: &'static str },
    #[error("grid mismatch between operands")]
    GridMismatch,
    #[error("multiplier symbol is not finite at lattice point (kx={kx}, ky={ky})")]
    NonFiniteSymbol { kx: f64, ky: f64 },
    #[error("multiplier symbol breaks Hermitian symmetry at (kx={kx}, ky={ky})")]
    NonHermitianSymbol { kx: f64, ky: f64 },
    #[error("field has nonzero kx = 0 content (relative size {relative:.3e})")]
    NonzeroXMean { relative: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("linear front reaches the periodic seam: 3 kmax^2 t = {reach:.3} exceeds {limit:.3}")]
    WrapAroundRisk { reach: f64, limit: f64 },
    #[error("initial datum is not localized: outer/peak = {ratio:.3e}")]
    NotLocalized { ratio: f64 },
    #[error("decay hypothesis alpha/2 - 1 < beta < alpha/2 fails for alpha={alpha}, beta={beta}")]
    HypothesisViolation { alpha: f64, beta: f64 },
    #[error("quadrature did not converge within {budget} evaluations (error estimate {estimate:.3e})")]
    QuadratureBudget { budget: usize, estimate: f64 },
    #[error("time step {dt} exceeds stability budget {limit}")]
    StabilityBudgetExceeded { dt: f64, limit: f64 },
    #[error("non-finite value detected at step {step}")]
    NonFinite { step: usize },
    #[error("frequency box cannot be resolved: {0}")]
    BoxUnresolvable(String),
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("malformed snapshot: {0}")]
    Snapshot(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("experiment {name}: {source}")]
    Experiment { name: String, source: Box<Error> },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
