use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate:e}, error estimate {error_estimate:e})"
    )]
    NonConvergence {
        estimate: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("characteristic function is not decaying: |phi| = {magnitude:e} at u = {at}")]
    NotDecaying { at: f64, magnitude: f64 },

    #[error("law not mean-normalized: E[e^Y] = {moment} (deviation {deviation:e})")]
    NotMeanNormalized { moment: f64, deviation: f64 },

    #[error(
        "internal inconsistency between price paths: via risk {via_risk}, \
         via tails {via_tails}, via integral {via_integral} (tolerance {tolerance:e})"
    )]
    Inconsistent {
        via_risk: f64,
        via_tails: f64,
        via_integral: f64,
        tolerance: f64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("evaluation failed at t = {t}: {source}")]
    AtMaturity {
        t: f64,
        #[source]
        source: Box<Error>,
    },
}
