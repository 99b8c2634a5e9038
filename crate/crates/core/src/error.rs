use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Bloch four-vector (r0 = {r0}, |r| = {norm}): {reason}")]
    InvalidBloch { r0: f64, norm: f64, reason: &'static str },

    #[error("density matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("negative eigenvalue {value:e}")]
    NegativeEigenvalue { value: f64 },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("Poisson weights need more than {cap} Fock states (alpha = {alpha})")]
    NonConvergent { alpha: f64, cap: usize },

    #[error("truncated state norm {norm} deviates from 1 by more than {allowed:e} at tau = {tau}")]
    Truncation { tau: f64, norm: f64, allowed: f64 },

    #[error("characteristic polynomial has complex roots (discriminant {discriminant:e})")]
    ComplexRoots { discriminant: f64 },

    #[error("invalid model parameter: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
