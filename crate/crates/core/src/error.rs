use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("argument {value} is outside the domain of {function}")]
    Domain { function: &'static str, value: f64 },

    #[error("invalid network configuration: {0}")]
    InvalidConfig(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("{count} links exceed the enumeration limit of {limit}")]
    TooManyLinks { count: usize, limit: usize },

    #[error("negative SNR argument {0}")]
    NegativeSnr(f64),

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate}, error estimate {error_estimate})"
    )]
    NoConvergence {
        estimate: f64,
        error_estimate: f64,
        subdivisions: usize,
    },
}
