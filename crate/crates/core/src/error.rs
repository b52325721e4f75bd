use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation order mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("expected a {expected} Poisson bivector, got a {found} one")]
    WrongClass { expected: String, found: String },
    #[error("not a Poisson bivector: Jacobi defect at ({i},{j},{k}) is {defect}")]
    NotPoisson {
        i: usize,
        j: usize,
        k: usize,
        defect: String,
    },
    #[error("cannot orient relation {relation}: leading coefficient {coeff} is not a unit")]
    NonUnitLeading { relation: String, coeff: String },
    #[error("degree {degree} exceeds the certified bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("completion exceeded the budget of {budget} rules ({rules} rules, {pending} pending)")]
    CompletionBudget {
        budget: usize,
        rules: usize,
        pending: usize,
    },
    #[error("rewrite system is {0}, not completed")]
    NotCompleted(String),
    #[error("infeasible size: {0}")]
    Infeasible(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::TruncationMismatch(..) => "truncation_mismatch",
            Error::DimensionMismatch(..) => "dimension_mismatch",
            Error::WrongClass { .. } => "wrong_class",
            Error::NotPoisson { .. } => "not_poisson",
            Error::NonUnitLeading { .. } => "non_unit_leading",
            Error::DegreeOverflow { .. } => "degree_overflow",
            Error::CompletionBudget { .. } => "completion_budget",
            Error::NotCompleted(_) => "not_completed",
            Error::Infeasible(_) => "infeasible",
            Error::Parse { .. } => "parse",
            Error::Invalid(_) => "invalid",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Toml(_) => "toml",
        }
    }
}
