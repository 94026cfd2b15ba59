use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the function being evaluated.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// A series or iteration ran out of terms before meeting its tolerance.
    #[error("{func} did not converge after {terms} terms (partial value {partial})")]
    Convergence {
        func: &'static str,
        partial: f64,
        terms: usize,
    },

    /// Parameter vector violates the support constraints.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Observations are unusable for the requested operation.
    #[error("invalid data: {0}")]
    InvalidData(String),

    /// Every optimizer start failed to reach an interior stationary point.
    #[error("maximum likelihood fit for {family} failed: {detail}")]
    NonConvergence { family: String, detail: String },

    /// The random variate generator kept producing unusable draws.
    #[error("generator fault: {redraws} redraws exceeded the budget for {requested} draws")]
    GeneratorFault { redraws: usize, requested: usize },

    /// The fitted information matrix cannot be inverted.
    #[error("standard errors unavailable: {0}")]
    StdErrorsUnavailable(String),

    /// Two families passed to a likelihood-ratio test are not nested.
    #[error("{null} is not nested in {alt}")]
    NotNested { null: String, alt: String },

    /// Likelihood-ratio statistic came out negative beyond optimizer tolerance.
    #[error("optimizer failure: negative likelihood-ratio statistic {0}")]
    NegativeLrStat(f64),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Convergence { .. } => "convergence",
            Error::InvalidParams(_) => "invalid_params",
            Error::InvalidData(_) => "invalid_data",
            Error::NonConvergence { .. } => "non_convergence",
            Error::GeneratorFault { .. } => "generator_fault",
            Error::StdErrorsUnavailable(_) => "std_errors_unavailable",
            Error::NotNested { .. } => "not_nested",
            Error::NegativeLrStat(_) => "negative_lr_stat",
            Error::Config(_) => "config",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        func,
        detail: detail.into(),
    }
}
