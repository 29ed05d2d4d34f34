use thiserror::Error;

/// Error type shared by the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge: {what} (partial sum {partial}, {terms} terms)")]
    NonConvergence {
        what: String,
        partial: f64,
        terms: usize,
    },

    #[error("quadrature subdivision limit reached (best {best}, error estimate {error_estimate})")]
    Quadrature { best: f64, error_estimate: f64 },

    #[error("ODE step size underflow at t = {t}; problem too stiff for this integrator")]
    Stiffness { t: f64 },

    #[error("no sign change found while scanning for a root: {0}")]
    BracketSearch(String),

    #[error("eigenvalue iteration did not converge within {iterations} iterations (last estimate {last})")]
    EigNonConvergence { last: f64, iterations: usize },

    #[error("unsupported geometry: {0}")]
    Geometry(String),

    #[error("radius file error at line {line}: {msg}")]
    Ingestion { line: usize, msg: String },

    #[error("singular linear system in {0}")]
    SingularSystem(String),

    #[error("tail-fit window is empty: {0}")]
    FitWindow(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
