//! Error and warning types shared across the crate.
//!
//! Hard failures (invalid cable descriptions, violated method assumptions,
//! unparsable input files) are [`CoreError`]s. Conditions that are suspicious
//! but still produce a number (negative armor loss, correction factors outside
//! their fitted domain) are [`Warning`]s carried alongside results, never
//! silently clamped.

use std::fmt;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum CoreError {
    /// A cable description violates an invariant. Names the offending field.
    #[error("invalid cable spec: {field}: {message}")]
    InvalidSpec {
        field: &'static str,
        message: String,
    },

    /// A required model parameter is missing or unusable.
    #[error("configuration error: {parameter}: {message}")]
    Config {
        parameter: &'static str,
        message: String,
    },

    /// A measurement-method working assumption does not hold for the inputs.
    #[error("method assumption violated: {0}")]
    AssumptionViolated(String),

    /// Inputs make the problem singular or otherwise unsolvable.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Cable file parse failure, attributed to a location in the source.
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    /// An operation requiring at least one element received none.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// Reference value for a comparison is zero or negative.
    #[error("invalid reference: {0}")]
    InvalidReference(String),

    /// Requested bundled template does not exist.
    #[error("unknown template '{0}'")]
    UnknownTemplate(String),

    /// I/O failure, with the path that produced it.
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CoreError {
    pub fn invalid_spec(field: &'static str, message: impl Into<String>) -> Self {
        CoreError::InvalidSpec {
            field,
            message: message.into(),
        }
    }

    pub fn config(parameter: &'static str, message: impl Into<String>) -> Self {
        CoreError::Config {
            parameter,
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CoreError::Io {
            path: path.into(),
            source,
        }
    }
}

/// Non-fatal diagnostics attached to computed results.
///
/// Report emission renders these verbatim (via `Display`) so that every
/// warning raised by an inner computation is visible in the row it produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// Conductor proximity correction came out below one (geometric bracket
    /// negative); outside the domain the correction was fitted on.
    ProximityCorrectionBelowUnity { f_c: f64 },
    /// Armor presence correction negative (crossing pitch large relative to
    /// ln mu'); outside the fitted domain.
    NegativeArmorCorrection { y_a: f64 },
    /// Armor loss factor from the standard formula came out negative;
    /// out-of-model inputs, reported as computed.
    NegativeArmorLossFactor { lambda2: f64 },
    /// Sheath reactance log argument 2s/d <= 1; nonphysical for this cable
    /// class, value still returned.
    NonPhysicalSheathSpacing { two_s_over_d: f64 },
    /// Skin/proximity argument exceeds the validity bound of the standard
    /// formulas (x <= 2.8).
    SkinFactorOutOfRange { which: &'static str, x: f64 },
    /// Allocated armor loss is negative: the measurements are inconsistent
    /// with the loss model.
    NegativeArmorLoss { p_a: f64 },
    /// Measured armored-cable power below the unarmored one; armor is
    /// expected to add losses.
    ArmoredPowerBelowUnarmored { delta_p_m: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::ProximityCorrectionBelowUnity { f_c } => {
                write!(f, "f_c = {f_c:.6} < 1: outside fitted domain")
            }
            Warning::NegativeArmorCorrection { y_a } => {
                write!(f, "y_a = {y_a:.6} < 0: outside fitted domain")
            }
            Warning::NegativeArmorLossFactor { lambda2 } => {
                write!(f, "lambda2 = {lambda2:.6} < 0: out-of-model inputs")
            }
            Warning::NonPhysicalSheathSpacing { two_s_over_d } => {
                write!(
                    f,
                    "2s/d = {two_s_over_d:.6} <= 1: sheath reactance nonphysical"
                )
            }
            Warning::SkinFactorOutOfRange { which, x } => {
                write!(f, "{which} = {x:.4} > 2.8: outside skin-formula validity")
            }
            Warning::NegativeArmorLoss { p_a } => {
                write!(f, "P_a = {p_a:.6} W/m < 0: inconsistent measurements")
            }
            Warning::ArmoredPowerBelowUnarmored { delta_p_m } => {
                write!(
                    f,
                    "delta P_m = {delta_p_m:.6} W/m < 0: armored test below unarmored"
                )
            }
        }
    }
}
