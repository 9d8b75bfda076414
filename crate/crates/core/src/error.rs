use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the operation's domain of definition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A profile or discretization parameter set is inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("no bound state: {0}")]
    NoBoundState(String),

    #[error("tabulated input, row {row}: {message}")]
    Tabulated { row: usize, message: String },

    #[error("region {region}: no wave case fits E = {energy}")]
    CaseSelection { region: usize, energy: f64 },

    #[error("energy {energy} is not an eigenvalue: |determinant| = {residual:e} > {tolerance:e}")]
    StaleEnergy {
        energy: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error("dressed Green's function denominator too close to zero at s = {s}: |D| = {magnitude:e}")]
    PoleProximity { s: Complex64, magnitude: f64 },

    #[error("accuracy target missed: {what} (achieved {achieved:e})")]
    Accuracy { what: String, achieved: f64 },
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::CaseSelection { .. }
                | Error::StaleEnergy { .. }
                | Error::PoleProximity { .. }
                | Error::Accuracy { .. }
        )
    }
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
